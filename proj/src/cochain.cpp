#include "vac/cochain.hpp"

#include <sstream>
#include <stdexcept>

namespace vac {

namespace {

// (a,b) -> t(A a, b)
BilinearTable compose_left(const BilinearTable& t, const QMatrix& A)
{
    BilinearTable r = BilinearTable::zero(t.left_dim, t.right_dim, t.out_dim);
    for (int i = 0; i < t.left_dim; ++i)
        for (int k = 0; k < t.left_dim; ++k) {
            if (A.at(k, i) == 0)
                continue;
            for (int j = 0; j < t.right_dim; ++j)
                axpy_into(r.e[size_t(i)][size_t(j)], A.at(k, i), t.entry(k, j));
        }
    return r;
}

BilinearTable scale_table(const BilinearTable& t, const Rational& c)
{
    BilinearTable r = t;
    for (auto& row : r.e)
        for (auto& v : row)
            for (auto& x : v)
                x *= c;
    return r;
}

BilinearTable add_tables(const BilinearTable& a, const BilinearTable& b)
{
    BilinearTable r = a;
    for (int i = 0; i < a.left_dim; ++i)
        for (int j = 0; j < a.right_dim; ++j)
            add_into(r.e[size_t(i)][size_t(j)], b.entry(i, j));
    return r;
}

bool table_is_zero(const BilinearTable& t)
{
    for (const auto& row : t.e)
        for (const auto& v : row)
            if (!is_zero(v))
                return false;
    return true;
}

// d^j / j! for j = 0..jmax
std::vector<QMatrix> divided_powers(const QMatrix& d, int jmax)
{
    std::vector<QMatrix> p;
    p.push_back(QMatrix::identity(d.rows));
    for (int j = 1; j <= jmax; ++j) {
        QMatrix m = p.back().mul(d);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c)
                m.at(r, c) /= j;
        p.push_back(std::move(m));
    }
    return p;
}

} // namespace

std::vector<std::string> validate_C1(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                                     const OneCochain& g)
{
    std::vector<std::string> errs;
    if (g.g.rows != M.dim || g.g.cols != V.dim) {
        errs.push_back("cochain matrix has wrong shape");
        return errs;
    }
    if (!is_zero(g.apply(V.vacuum)))
        errs.push_back("g(vacuum) is nonzero");
    QMatrix gd = g.g.mul(V.D), dg = M.d.mul(g.g);
    for (int r = 0; r < M.dim; ++r)
        for (int c = 0; c < V.dim; ++c)
            if (gd.at(r, c) != dg.at(r, c)) {
                errs.push_back("g does not intertwine the derivations");
                return errs;
            }
    return errs;
}

std::vector<OneCochain> c1_basis(const FiniteVertexAlgebra& V, const ModuleStructure& M)
{
    int n = M.dim * V.dim;
    auto idx = [&](int r, int c) { return r * V.dim + c; };
    std::vector<QVec> rows;
    // (g D - d g)_{r,c} = 0
    for (int r = 0; r < M.dim; ++r)
        for (int c = 0; c < V.dim; ++c) {
            QVec row = zero_vec(n);
            for (int k = 0; k < V.dim; ++k)
                row[size_t(idx(r, k))] += V.D.at(k, c);
            for (int k = 0; k < M.dim; ++k)
                row[size_t(idx(k, c))] -= M.d.at(r, k);
            rows.push_back(std::move(row));
        }
    // g(vacuum) = 0
    for (int r = 0; r < M.dim; ++r) {
        QVec row = zero_vec(n);
        for (int c = 0; c < V.dim; ++c)
            row[size_t(idx(r, c))] = V.vacuum[size_t(c)];
        rows.push_back(std::move(row));
    }
    QMatrix A(int(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n; ++j)
            A.at(int(i), j) = rows[i][size_t(j)];
    std::vector<OneCochain> basis;
    for (const auto& v : kernel_basis(A)) {
        QMatrix g(M.dim, V.dim);
        for (int r = 0; r < M.dim; ++r)
            for (int c = 0; c < V.dim; ++c)
                g.at(r, c) = v[size_t(idx(r, c))];
        basis.push_back(OneCochain{std::move(g)});
    }
    return basis;
}

TwoCochain TwoCochain::zero(const FiniteVertexAlgebra& V, const ModuleStructure& M, int T)
{
    TwoCochain f;
    f.tail_depth = T;
    f.tail_gen = BilinearTable::zero(V.dim, V.dim, M.dim);
    f.zero_coeff = BilinearTable::zero(V.dim, V.dim, M.dim);
    return f;
}

TwoCochain TwoCochain::operator+(const TwoCochain& o) const
{
    if (tail_depth != o.tail_depth)
        throw std::invalid_argument("cochain sum requires equal tail depth");
    return {tail_depth, add_tables(tail_gen, o.tail_gen), add_tables(zero_coeff, o.zero_coeff)};
}

TwoCochain TwoCochain::operator-(const TwoCochain& o) const
{
    return *this + o.scaled(-1);
}

TwoCochain TwoCochain::scaled(const Rational& c) const
{
    return {tail_depth, scale_table(tail_gen, c), scale_table(zero_coeff, c)};
}

BilinearTable coefficient(const FiniteVertexAlgebra& V, const TwoCochain& f, int k)
{
    int T = f.tail_depth;
    int md = f.zero_coeff.out_dim;
    if (k < -T)
        return BilinearTable::zero(V.dim, V.dim, md);
    if (k == 0)
        return f.zero_coeff;
    if (k < 0) {
        // climb the negative chain from the tail generator
        BilinearTable t = f.tail_gen;
        for (int m = -T; m < k; ++m)
            t = scale_table(compose_left(t, V.D), Rational(1) / (m + 1));
        return t;
    }
    // f^(k) = f^(0)(D^k ., .) / k!
    BilinearTable t = f.zero_coeff;
    Rational fact = 1;
    for (int m = 1; m <= k; ++m) {
        t = compose_left(t, V.D);
        fact *= m;
    }
    return scale_table(t, 1 / fact);
}

VecSeries1 cochain_series(const FiniteVertexAlgebra& V, const TwoCochain& f, const QVec& a,
                          const QVec& b, int trunc)
{
    int T = f.tail_depth;
    VecSeries1 s = VecSeries1::zero(f.zero_coeff.out_dim, trunc);
    s.low = -T;
    for (int k = -T; k < 0; ++k)
        s.set(k, coefficient(V, f, k).apply(a, b));
    // positive side directly from the recurrence; terminates iff D^k a dies
    QVec ak = a;
    Rational fact = 1;
    int k = 0;
    for (; k <= trunc; ++k) {
        if (is_zero(ak))
            break;
        if (k > 0)
            fact *= k;
        s.set(k, scale(f.zero_coeff.apply(ak, b), 1 / fact));
        ak = V.D.apply(ak);
    }
    s.exact = is_zero(ak) || k <= trunc;
    if (k > trunc && !is_zero(ak))
        s.exact = false;
    if (s.exact)
        s.trunc = std::max(s.max_stored(), 0);
    return s;
}

CheckReport validate_C2(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                        const TwoCochain& f, const Window& w)
{
    CheckReport rep;
    int T = f.tail_depth;
    int klo = std::max(-T, w.low_z);
    int khi = w.high_z;
    // beyond khi every condition is automatic once both nilpotency chains die
    bool exact = false;
    auto pV = nilpotency_index(V.D);
    auto pM = nilpotency_index(M.d);
    if (pV && pM && khi >= *pV + *pM - 2)
        exact = true;
    Verdict pass = exact ? Verdict::PassExact : Verdict::PassTruncated;

    std::vector<BilinearTable> coefs;
    for (int k = klo; k <= khi; ++k)
        coefs.push_back(coefficient(V, f, k));
    auto coef = [&](int k) -> const BilinearTable& { return coefs[size_t(k - klo)]; };

    CheckItem unit{"c2-unit", {}, pass, std::nullopt, std::nullopt, ""};
    for (int k = klo; k <= khi && unit.verdict != Verdict::Fail; ++k)
        for (int i = 0; i < V.dim; ++i) {
            QVec ei = V.basis_vec(i);
            if (!is_zero(coef(k).apply(V.vacuum, ei)) || !is_zero(coef(k).apply(ei, V.vacuum))) {
                unit.verdict = Verdict::Fail;
                unit.detail = "vacuum slot nonzero at k=" + std::to_string(k) + " basis " +
                              V.name(i);
                break;
            }
        }
    rep.items.push_back(unit);

    CheckItem term{"c2-terminal", {}, Verdict::PassExact, std::nullopt, std::nullopt, ""};
    BilinearTable fm1 = compose_left(coefficient(V, f, -1), V.D);
    if (!table_is_zero(fm1)) {
        term.verdict = Verdict::Fail;
        term.detail = "f^(-1)(D.,.) is nonzero";
    }
    rep.items.push_back(term);

    CheckItem leib{"c2-leibniz", {}, pass, std::nullopt, std::nullopt, ""};
    for (int k = klo; k <= khi && leib.verdict != Verdict::Fail; ++k)
        for (int i = 0; i < V.dim && leib.verdict != Verdict::Fail; ++i)
            for (int j = 0; j < V.dim; ++j) {
                QVec lhs = M.d.apply(coef(k).entry(i, j));
                QVec rhs = add(coef(k).apply(V.D.apply(V.basis_vec(i)), V.basis_vec(j)),
                               coef(k).apply(V.basis_vec(i), V.D.apply(V.basis_vec(j))));
                if (lhs != rhs) {
                    leib.verdict = Verdict::Fail;
                    leib.detail = "k=" + std::to_string(k) + " pair (" + V.name(i) + "," +
                                  V.name(j) + ")";
                    break;
                }
            }
    rep.items.push_back(leib);

    CheckItem sym{"c2-symmetry", {}, pass, std::nullopt, std::nullopt, ""};
    auto dp = divided_powers(M.d, khi + T >= 0 ? khi + T : 0);
    for (int k = klo; k <= khi && sym.verdict != Verdict::Fail; ++k)
        for (int i = 0; i < V.dim && sym.verdict != Verdict::Fail; ++i)
            for (int j = 0; j < V.dim; ++j) {
                QVec rhs = zero_vec(M.dim);
                for (int m = 0; m <= k + T; ++m) {
                    QVec term_v = dp[size_t(m)].apply(coefficient(V, f, k - m).entry(j, i));
                    if (((k - m) % 2 + 2) % 2 != 0)
                        term_v = scale(term_v, -1);
                    add_into(rhs, term_v);
                }
                if (coef(k).entry(i, j) != rhs) {
                    sym.verdict = Verdict::Fail;
                    sym.detail = "k=" + std::to_string(k) + " pair (" + V.name(i) + "," +
                                 V.name(j) + ")";
                    break;
                }
            }
    rep.items.push_back(sym);
    return rep;
}

TwoCochain delta1(const FiniteVertexAlgebra& V, const ModuleStructure& M, const OneCochain& g,
                  int trunc)
{
    int T = std::max(V.max_pole(), M.max_pole());
    auto raw = [&](int i, int j) {
        QVec a = V.basis_vec(i), b = V.basis_vec(j);
        VecSeries1 s = module_action(V, M, a, g.apply(b), trunc);
        s = s - extend_series1(
                    zproduct(V, a, b, trunc), M.dim,
                    [&](const QVec& v) { return VecSeries1::constant(g.apply(v)); }, 0);
        s = s + right_action(V, M, g.apply(a), b, trunc);
        return s;
    };
    TwoCochain f = TwoCochain::zero(V, M, T);
    std::vector<std::vector<VecSeries1>> series(size_t(V.dim),
                                                std::vector<VecSeries1>(size_t(V.dim)));
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) {
            series[size_t(i)][size_t(j)] = raw(i, j);
            const VecSeries1& s = series[size_t(i)][size_t(j)];
            if (T > 0)
                f.tail_gen.e[size_t(i)][size_t(j)] = s.coeff(-T);
            f.zero_coeff.e[size_t(i)][size_t(j)] = s.coeff(0);
        }
    // the computed series must coincide with its re-generated parametrization
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) {
            const VecSeries1& s = series[size_t(i)][size_t(j)];
            VecSeries1 r = cochain_series(V, f, V.basis_vec(i), V.basis_vec(j), trunc);
            auto eq = series1_equal(s, r, -T - 2, trunc);
            if (!eq.equal || eq.window_empty) {
                std::ostringstream os;
                os << "delta1 extraction failure at pair (" << V.name(i) << "," << V.name(j)
                   << ")";
                if (eq.mismatch)
                    os << " coefficient z^" << eq.mismatch->j << ": " << rat_str(eq.mismatch->lhs)
                       << " vs " << rat_str(eq.mismatch->rhs);
                throw std::runtime_error(os.str());
            }
        }
    return f;
}

namespace {

// shared term assembly for is_cocycle and delta2_defect
struct CocycleTerms {
    VecSeries2 lhs, rhs;
};

CocycleTerms cocycle_sides(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                           const TwoCochain& f, int i, int j, int k, int tr, const Window& w)
{
    QVec a = V.basis_vec(i), b = V.basis_vec(j), c = V.basis_vec(k);
    auto zp = [&](const QVec& u, const QVec& v) { return zproduct(V, u, v, tr); };
    auto act = [&](const QVec& u, const QVec& v) { return module_action(V, M, u, v, tr); };
    auto fz = [&](const QVec& u, const QVec& v) { return cochain_series(V, f, u, v, tr); };
    // f_z(a_x b, c): x from the product, z from the cochain
    VecSeries2 t1 =
        compose_outer_x(zp(a, b), M.dim, [&](const QVec& v) { return fz(v, c); }).transposed();
    // f_x(a, b)_z c: x from the cochain, z from the right action
    VecSeries2 t2 = compose_outer_x(fz(a, b), M.dim, [&](const QVec& v) {
                        return right_action(V, M, v, c, tr);
                    }).transposed();
    // a_{x+z} f_z(b, c)
    VecSeries2 t3 =
        extend_substitute(fz(b, c), M.dim, [&](const QVec& v) { return act(a, v); }, w);
    // f_{x+z}(a, b_z c)
    VecSeries2 t4 =
        extend_substitute(zp(b, c), M.dim, [&](const QVec& v) { return fz(a, v); }, w);
    return {t1 + t2, t3 + t4};
}

} // namespace

CheckReport is_cocycle(const FiniteVertexAlgebra& V, const ModuleStructure& M, const TwoCochain& f,
                       int n_max, const Window& w)
{
    CheckReport rep;
    int tr = std::max(default_trunc(V, &M), w.high_z);
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            for (int k = 0; k < V.dim; ++k) {
                auto terms = cocycle_sides(V, M, f, i, j, k, tr, w);
                rep.items.push_back(witness_search(
                    "cocycle", {i, j, k}, terms.lhs, terms.rhs, n_max, w,
                    [&](int n) { return expand_binomial(n, w); }));
            }
    return rep;
}

CheckReport delta2_defect(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                          const TwoCochain& f, const Window& w)
{
    CheckReport rep;
    int tr = std::max(default_trunc(V, &M), w.high_z);
    int mp = std::max(V.max_pole(), M.max_pole());
    int T = f.tail_depth;
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            for (int k = 0; k < V.dim; ++k) {
                QVec a = V.basis_vec(i), b = V.basis_vec(j), c = V.basis_vec(k);
                auto zp = [&](const QVec& u, const QVec& v) { return zproduct(V, u, v, tr); };
                auto act = [&](const QVec& u, const QVec& v) {
                    return module_action(V, M, u, v, tr);
                };
                auto fz = [&](const QVec& u, const QVec& v) {
                    return cochain_series(V, f, u, v, tr);
                };
                auto terms = cocycle_sides(V, M, f, i, j, k, tr, w);
                // b_z (f_{z+x}(a,c) - f_{x+z}(a,c)), one series
                VecSeries1 fac = fz(a, c);
                VecSeries2 fdiff = substitute_shift(fac, w, true) - substitute_shift(fac, w, false);
                VecSeries2 t5 = extend_series2_z(
                    fdiff, M.dim, [&](const QVec& v) { return act(b, v); }, -mp);
                // f_z(b, a_{z+x} c - a_{x+z} c)
                VecSeries1 ac = zp(a, c);
                VecSeries2 adiff = substitute_shift(ac, w, true) - substitute_shift(ac, w, false);
                VecSeries2 t6 = extend_series2_z(
                    adiff, M.dim, [&](const QVec& v) { return fz(b, v); }, -T);
                VecSeries2 defect = terms.lhs - terms.rhs - t5 - t6;
                rep.items.push_back(item_from_eq("delta2-defect", {i, j, k},
                                                  series2_equal(defect, VecSeries2::zero(M.dim),
                                                                w)));
            }
    return rep;
}

} // namespace vac
