#include "vac/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

namespace vac {

namespace {

int param_count(const FiniteVertexAlgebra& V, const ModuleStructure& M, int T)
{
    int block = V.dim * V.dim * M.dim;
    return (T > 0 ? 2 : 1) * block;
}

// stacked numeric residuals of the linear C^2 conditions (unit, terminal,
// d-Leibniz, per-coefficient symmetry) over the z-range of w
QVec c2_residuals(const FiniteVertexAlgebra& V, const ModuleStructure& M, const TwoCochain& f,
                  const Window& w)
{
    int T = f.tail_depth;
    int klo = -T;
    int khi = w.high_z;
    std::vector<BilinearTable> coefs;
    for (int k = klo; k <= khi; ++k)
        coefs.push_back(coefficient(V, f, k));
    auto coef = [&](int k) -> const BilinearTable& { return coefs[size_t(k - klo)]; };

    std::vector<QMatrix> dp;
    dp.push_back(QMatrix::identity(M.dim));
    for (int j = 1; j <= khi + T; ++j) {
        QMatrix m = dp.back().mul(M.d);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c)
                m.at(r, c) /= j;
        dp.push_back(std::move(m));
    }

    QVec out;
    auto push = [&](const QVec& v) { out.insert(out.end(), v.begin(), v.end()); };
    for (int k = klo; k <= khi; ++k)
        for (int i = 0; i < V.dim; ++i) {
            push(coef(k).apply(V.vacuum, V.basis_vec(i)));
            push(coef(k).apply(V.basis_vec(i), V.vacuum));
        }
    BilinearTable fm1 = coefficient(V, f, -1);
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            push(fm1.apply(V.D.apply(V.basis_vec(i)), V.basis_vec(j)));
    for (int k = klo; k <= khi; ++k)
        for (int i = 0; i < V.dim; ++i)
            for (int j = 0; j < V.dim; ++j) {
                QVec r = M.d.apply(coef(k).entry(i, j));
                add_into(r, scale(coef(k).apply(V.D.apply(V.basis_vec(i)), V.basis_vec(j)), -1));
                add_into(r, scale(coef(k).apply(V.basis_vec(i), V.D.apply(V.basis_vec(j))), -1));
                push(r);
            }
    for (int k = klo; k <= khi; ++k)
        for (int i = 0; i < V.dim; ++i)
            for (int j = 0; j < V.dim; ++j) {
                QVec r = coef(k).entry(i, j);
                for (int m = 0; m <= k + T; ++m) {
                    QVec t = dp[size_t(m)].apply(coef(k - m).entry(j, i));
                    if (((k - m) % 2 + 2) % 2 == 0)
                        t = scale(t, -1);
                    add_into(r, t);
                }
                push(r);
            }
    return out;
}

struct TripleResiduals {
    std::vector<VecSeries2> series; // one per basis triple
    bool exact = true;
};

// (x+z)^n_max (lhs - rhs) of the cocycle identity per basis triple
TripleResiduals cocycle_residuals(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                                  const TwoCochain& f, int n_max, const Window& w)
{
    TripleResiduals res;
    int tr = std::max(default_trunc(V, &M), w.high_z);
    VecSeries2 mul = expand_binomial(n_max, w);
    auto zp = [&](const QVec& u, const QVec& v) { return zproduct(V, u, v, tr); };
    auto act = [&](const QVec& u, const QVec& v) { return module_action(V, M, u, v, tr); };
    auto fz = [&](const QVec& u, const QVec& v) { return cochain_series(V, f, u, v, tr); };
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            for (int k = 0; k < V.dim; ++k) {
                QVec a = V.basis_vec(i), b = V.basis_vec(j), c = V.basis_vec(k);
                VecSeries2 t1 = compose_outer_x(zp(a, b), M.dim, [&](const QVec& v) {
                                    return fz(v, c);
                                }).transposed();
                VecSeries2 t2 = compose_outer_x(fz(a, b), M.dim, [&](const QVec& v) {
                                    return right_action(V, M, v, c, tr);
                                }).transposed();
                VecSeries2 t3 = extend_substitute(
                    fz(b, c), M.dim, [&](const QVec& v) { return act(a, v); }, w);
                VecSeries2 t4 = extend_substitute(
                    zp(b, c), M.dim, [&](const QVec& v) { return fz(a, v); }, w);
                VecSeries2 r = mul_scalar2(mul, t1 + t2 - t3 - t4);
                if (!r.exact)
                    res.exact = false;
                res.series.push_back(std::move(r));
            }
    return res;
}

} // namespace

QVec cochain_params(const TwoCochain& f)
{
    QVec p;
    auto push_table = [&](const BilinearTable& t) {
        for (const auto& row : t.e)
            for (const auto& v : row)
                p.insert(p.end(), v.begin(), v.end());
    };
    if (f.tail_depth > 0)
        push_table(f.tail_gen);
    push_table(f.zero_coeff);
    return p;
}

TwoCochain cochain_from_params(const FiniteVertexAlgebra& V, const ModuleStructure& M, int T,
                               const QVec& p)
{
    TwoCochain f = TwoCochain::zero(V, M, T);
    size_t pos = 0;
    auto fill = [&](BilinearTable& t) {
        for (auto& row : t.e)
            for (auto& v : row)
                for (auto& x : v)
                    x = p[pos++];
    };
    if (T > 0)
        fill(f.tail_gen);
    fill(f.zero_coeff);
    return f;
}

CohomologyReport h0(const FiniteVertexAlgebra& V, const ModuleStructure& M)
{
    (void)V;
    CohomologyReport rep;
    rep.degree = 0;
    rep.dimension = M.dim;
    for (int i = 0; i < M.dim; ++i)
        rep.reps0.push_back(M.basis_vec(i));
    return rep;
}

CohomologyReport h1(const FiniteVertexAlgebra& V, const ModuleStructure& M, int trunc)
{
    CohomologyReport rep;
    rep.degree = 1;
    auto basis = c1_basis(V, M);
    int T = std::max(V.max_pole(), M.max_pole());
    // delta1 of each basis element, in depth-T parameter coordinates
    std::vector<QVec> cols;
    for (const auto& g : basis)
        cols.push_back(cochain_params(delta1(V, M, g, trunc)));
    int rows = cols.empty() ? 0 : int(cols[0].size());
    QMatrix A(rows, int(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r < rows; ++r)
            A.at(r, int(c)) = cols[c][size_t(r)];
    for (const auto& coord : kernel_basis(A)) {
        OneCochain g = OneCochain::zero(V, M);
        for (size_t b = 0; b < basis.size(); ++b)
            for (int r = 0; r < M.dim; ++r)
                for (int c = 0; c < V.dim; ++c)
                    g.g.at(r, c) += coord[b] * basis[b].g.at(r, c);
        rep.reps1.push_back(std::move(g));
    }
    rep.dimension = int(rep.reps1.size());
    rep.tail_bound = T;
    rep.exact = V.D_nilpotent() && M.d_nilpotent();
    return rep;
}

CohomologyReport h2(const FiniteVertexAlgebra& V, const ModuleStructure& M, int T, int n_max,
                    const Window& w)
{
    CohomologyReport rep;
    rep.degree = 2;
    rep.tail_bound = T;
    rep.n_max = n_max;
    rep.window = w;

    int P = param_count(V, M, T);
    // evaluate the linear constraint pipeline on each parameter basis vector
    std::vector<QVec> c2cols;
    std::vector<TripleResiduals> cocols;
    for (int p = 0; p < P; ++p) {
        QVec unit_p = zero_vec(P);
        unit_p[size_t(p)] = 1;
        TwoCochain f = cochain_from_params(V, M, T, unit_p);
        c2cols.push_back(c2_residuals(V, M, f, w));
        cocols.push_back(cocycle_residuals(V, M, f, n_max, w));
        if (!cocols.back().exact)
            rep.exact = false;
    }
    if (!(V.D_nilpotent() && M.d_nilpotent()))
        rep.exact = false;

    // shared extraction rectangles per triple: w minus the multiplier margin,
    // clipped to every column's validity region
    size_t ntriples = P > 0 ? cocols[0].series.size() : 0;
    std::vector<Window> rects(ntriples, w.shrunk(n_max));
    for (size_t t = 0; t < ntriples; ++t)
        for (int p = 0; p < P; ++p) {
            const VecSeries2& s = cocols[size_t(p)].series[t];
            if (s.exact)
                continue;
            rects[t].low_x = std::max(rects[t].low_x, s.low_x);
            rects[t].high_x = std::min(rects[t].high_x, s.high_x);
            rects[t].low_z = std::max(rects[t].low_z, s.low_z);
            rects[t].high_z = std::min(rects[t].high_z, s.high_z);
        }

    // exact columns also constrain support outside the shared rectangle;
    // collect the union of such keys so rows stay aligned across columns
    std::vector<std::vector<std::pair<int, int>>> extra(ntriples);
    for (size_t t = 0; t < ntriples; ++t) {
        std::map<std::pair<int, int>, bool> seen;
        for (int p = 0; p < P; ++p) {
            const VecSeries2& s = cocols[size_t(p)].series[t];
            if (!s.exact)
                continue;
            const Window& r = rects[t];
            for (const auto& [key, v] : s.coeffs)
                if (key.first < r.low_x || key.first > r.high_x || key.second < r.low_z ||
                    key.second > r.high_z)
                    seen[key] = true;
        }
        for (const auto& [key, v] : seen)
            extra[t].push_back(key);
    }

    std::vector<QVec> cols;
    for (int p = 0; p < P; ++p) {
        QVec col = c2cols[size_t(p)];
        for (size_t t = 0; t < ntriples; ++t) {
            const VecSeries2& s = cocols[size_t(p)].series[t];
            const Window& r = rects[t];
            for (int i = r.low_x; i <= r.high_x; ++i)
                for (int j = r.low_z; j <= r.high_z; ++j) {
                    QVec v = s.coeff(i, j);
                    col.insert(col.end(), v.begin(), v.end());
                }
            for (const auto& key : extra[t]) {
                QVec v = s.coeff(key.first, key.second);
                col.insert(col.end(), v.begin(), v.end());
            }
        }
        cols.push_back(std::move(col));
    }

    int rows = cols.empty() ? 0 : int(cols[0].size());
    QMatrix A(rows, P);
    for (int p = 0; p < P; ++p)
        for (int r = 0; r < rows; ++r)
            A.at(r, p) = cols[size_t(p)][size_t(r)];
    std::vector<QVec> Z = kernel_basis(A);

    // coboundaries, embedded at depth T (delta1 images have tail depth equal
    // to the structure pole bound; zero tails embed into any deeper bound)
    int trunc = std::max(default_trunc(V, &M), w.high_z);
    int Td = std::max(V.max_pole(), M.max_pole());
    if (Td > T)
        throw std::runtime_error("tail bound below the structure pole order");
    std::vector<QVec> B;
    for (const auto& g : c1_basis(V, M)) {
        TwoCochain df = delta1(V, M, g, trunc);
        if (df.tail_depth != T) {
            // re-embed: the family has no poles beyond the delta1 depth
            TwoCochain lift = TwoCochain::zero(V, M, T);
            lift.zero_coeff = df.zero_coeff;
            if (df.tail_depth > 0) {
                // nonzero shallow tails cannot be re-parametrized at depth T
                for (int i = 0; i < V.dim; ++i)
                    for (int j = 0; j < V.dim; ++j)
                        if (!is_zero(df.tail_gen.entry(i, j)))
                            throw std::runtime_error(
                                "coboundary tail incompatible with requested bound");
            }
            df = lift;
        }
        B.push_back(cochain_params(df));
    }

    rep.dimension = quotient_dim(Z, B);
    for (const auto& v : quotient_representatives(Z, B))
        rep.reps2.push_back(cochain_from_params(V, M, T, v));
    for (const auto& f : rep.reps2) {
        auto cr = is_cocycle(V, M, f, n_max, w);
        int wmax = 0;
        for (const auto& it : cr.items)
            if (it.witness)
                wmax = std::max(wmax, it.witness->exponent);
        rep.witnesses.push_back(wmax);
    }
    return rep;
}

std::optional<OneCochain> same_class(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                                     const TwoCochain& f1, const TwoCochain& f2)
{
    int trunc = default_trunc(V, &M);
    auto basis = c1_basis(V, M);
    std::vector<TwoCochain> dimg;
    int Tbig = std::max(f1.tail_depth, f2.tail_depth);
    for (const auto& g : basis) {
        dimg.push_back(delta1(V, M, g, trunc));
        Tbig = std::max(Tbig, dimg.back().tail_depth);
    }
    // compare coefficient families on k in [-Tbig, 0]; the positive
    // coefficients are generated from f^(0), so equality there is implied
    auto family = [&](const TwoCochain& f) {
        QVec v;
        for (int k = -Tbig; k <= 0; ++k) {
            BilinearTable t = coefficient(V, f, k);
            for (const auto& row : t.e)
                for (const auto& cell : row)
                    v.insert(v.end(), cell.begin(), cell.end());
        }
        return v;
    };
    QVec rhs = family(f1);
    QVec f2fam = family(f2);
    for (size_t i = 0; i < rhs.size(); ++i)
        rhs[i] -= f2fam[i];
    int rows = int(rhs.size());
    QMatrix A(rows, int(basis.size()));
    for (size_t b = 0; b < basis.size(); ++b) {
        QVec col = family(dimg[b]);
        for (int r = 0; r < rows; ++r)
            A.at(r, int(b)) = col[size_t(r)];
    }
    auto sol = solve(A, rhs);
    if (!sol)
        return std::nullopt;
    OneCochain g = OneCochain::zero(V, M);
    for (size_t b = 0; b < basis.size(); ++b)
        for (int r = 0; r < M.dim; ++r)
            for (int c = 0; c < V.dim; ++c)
                g.g.at(r, c) += (*sol)[b] * basis[b].g.at(r, c);
    return g;
}

} // namespace vac
