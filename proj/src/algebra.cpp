#include "vac/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vac {

namespace {
constexpr int kUnb = 1 << 20;
}

// ---------------- structure data ----------------

BilinearTable BilinearTable::zero(int l, int r, int o)
{
    BilinearTable t;
    t.left_dim = l;
    t.right_dim = r;
    t.out_dim = o;
    t.e.assign(static_cast<size_t>(l), std::vector<QVec>(static_cast<size_t>(r), zero_vec(o)));
    return t;
}

QVec BilinearTable::apply(const QVec& a, const QVec& b) const
{
    QVec out = zero_vec(out_dim);
    for (int i = 0; i < left_dim; ++i) {
        if (a[static_cast<size_t>(i)] == 0)
            continue;
        for (int j = 0; j < right_dim; ++j) {
            if (b[static_cast<size_t>(j)] == 0)
                continue;
            axpy_into(out, a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)], entry(i, j));
        }
    }
    return out;
}

int ExplicitTable::max_pole() const
{
    int p = 0;
    for (const auto& [key, v] : products)
        p = std::max(p, -std::get<2>(key));
    return p;
}

VecSeries1 ExplicitTable::series(const QVec& a, const QVec& b) const
{
    VecSeries1 r = VecSeries1::zero(out_dim);
    r.low = -max_pole();
    for (const auto& [key, v] : products) {
        auto [i, j, k] = key;
        Rational c = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        if (c == 0)
            continue;
        r.set(k, add(r.coeff(k), scale(v, c)));
    }
    r.trunc = std::max(r.max_stored(), 0);
    r.exact = true;
    return r;
}

int FiniteVertexAlgebra::max_pole() const
{
    if (holomorphic())
        return 0;
    return std::get<ExplicitTable>(structure).max_pole();
}

QVec FiniteVertexAlgebra::basis_vec(int i) const
{
    QVec v = zero_vec(dim);
    v[static_cast<size_t>(i)] = 1;
    return v;
}

std::string FiniteVertexAlgebra::name(int i) const
{
    if (i < static_cast<int>(basis_names.size()))
        return basis_names[static_cast<size_t>(i)];
    return "e" + std::to_string(i);
}

int ModuleStructure::max_pole() const
{
    if (holomorphic())
        return 0;
    return std::get<ExplicitTable>(action).max_pole();
}

QVec ModuleStructure::basis_vec(int i) const
{
    QVec v = zero_vec(dim);
    v[static_cast<size_t>(i)] = 1;
    return v;
}

ModuleStructure regular_module(const FiniteVertexAlgebra& V)
{
    ModuleStructure M;
    M.dim = V.dim;
    M.d = V.D;
    M.action = V.structure;
    M.basis_names = V.basis_names;
    return M;
}

int default_trunc(const FiniteVertexAlgebra& V, const ModuleStructure* M)
{
    int mp = V.max_pole();
    if (M)
        mp = std::max(mp, M->max_pole());
    return std::max(mp + 8, V.dim + (M ? M->dim : 0) + 2);
}

int default_lmax(const FiniteVertexAlgebra& V) { return 2 * V.dim + 4; }

Window default_window(const FiniteVertexAlgebra& V, const ModuleStructure* M, int l_max)
{
    if (l_max < 0)
        l_max = default_lmax(V);
    int mp = V.max_pole();
    if (M)
        mp = std::max(mp, M->max_pole());
    int lo = -(2 * mp + l_max + 2);
    int hi = default_trunc(V, M);
    return Window{lo, hi, lo, hi};
}

// ---------------- products ----------------

VecSeries1 zproduct(const FiniteVertexAlgebra& V, const QVec& a, const QVec& b, int trunc)
{
    if (V.holomorphic()) {
        const auto& mult = std::get<BilinearTable>(V.structure);
        VecSeries1 s = apply_exp(V.D, a, trunc);
        VecSeries1 r = VecSeries1::zero(V.dim, s.trunc);
        r.exact = s.exact;
        r.low = 0;
        for (const auto& [k, v] : s.coeffs)
            r.set(k, mult.apply(v, b));
        return r;
    }
    return std::get<ExplicitTable>(V.structure).series(a, b);
}

VecSeries1 module_action(const FiniteVertexAlgebra& V, const ModuleStructure& M, const QVec& a,
                         const QVec& u, int trunc)
{
    if (M.holomorphic()) {
        const auto& act = std::get<BilinearTable>(M.action);
        VecSeries1 s = apply_exp(V.D, a, trunc);
        VecSeries1 r = VecSeries1::zero(M.dim, s.trunc);
        r.exact = s.exact;
        r.low = 0;
        for (const auto& [k, v] : s.coeffs)
            r.set(k, act.apply(v, u));
        return r;
    }
    return std::get<ExplicitTable>(M.action).series(a, u);
}

VecSeries1 right_action(const FiniteVertexAlgebra& V, const ModuleStructure& M, const QVec& m,
                        const QVec& a, int trunc)
{
    VecSeries1 s = module_action(V, M, a, m, trunc);
    return apply_exp_series(M.d, s.negated_var(), trunc);
}

// ---------------- series-extension helpers ----------------

VecSeries1 extend_series1(const VecSeries1& s, int out_dim,
                          const std::function<VecSeries1(const QVec&)>& f, int f_low)
{
    VecSeries1 r = VecSeries1::zero(out_dim);
    r.low = s.low + f_low;
    int hi = s.exact ? kUnb : s.trunc + f_low;
    bool exact = s.exact;
    std::vector<std::pair<int, VecSeries1>> parts;
    for (const auto& [k, v] : s.coeffs) {
        VecSeries1 o = f(v);
        if (!o.exact) {
            exact = false;
            hi = std::min(hi, k + o.trunc);
        }
        parts.emplace_back(k, std::move(o));
    }
    r.exact = exact;
    r.trunc = exact ? 0 : hi;
    for (auto& [k, o] : parts)
        for (const auto& [m, v] : o.coeffs)
            if (exact || k + m <= hi)
                r.set(k + m, add(r.coeff(k + m), v));
    if (exact)
        r.trunc = std::max(r.max_stored(), 0);
    return r;
}

VecSeries2 extend_series2_z(const VecSeries2& s, int out_dim,
                            const std::function<VecSeries1(const QVec&)>& f, int f_low)
{
    VecSeries2 r = VecSeries2::zero(out_dim);
    r.low_x = s.exact ? -kUnb : std::max(-kUnb, s.low_x);
    r.high_x = s.exact ? kUnb : std::min(kUnb, s.high_x);
    r.low_z = s.exact ? -kUnb : std::max(-kUnb, s.low_z + f_low);
    int hz = (s.exact || s.high_z >= kUnb) ? kUnb : s.high_z + f_low;
    bool exact = s.exact;
    std::vector<std::tuple<int, int, VecSeries1>> parts;
    for (const auto& [key, v] : s.coeffs) {
        VecSeries1 o = f(v);
        if (!o.exact) {
            exact = false;
            hz = std::min(hz, key.second + o.trunc);
        }
        parts.emplace_back(key.first, key.second, std::move(o));
    }
    r.exact = exact;
    r.high_z = std::min(hz, kUnb);
    for (auto& [i, j, o] : parts)
        for (const auto& [m, v] : o.coeffs)
            if (exact || j + m <= r.high_z)
                r.set(i, j + m, add(r.coeff(i, j + m), v));
    return r;
}

VecSeries2 extend_substitute(const VecSeries1& u, int out_dim,
                             const std::function<VecSeries1(const QVec&)>& f, const Window& w,
                             bool swap_major)
{
    VecSeries2 r = VecSeries2::zero(out_dim);
    for (const auto& [n, v] : u.coeffs) {
        VecSeries1 p = f(v);
        r = r + substitute_shift(p, w, swap_major).shifted(0, n);
    }
    if (!u.exact) {
        r.exact = false;
        r.high_z = std::min(r.exact ? kUnb : r.high_z, u.trunc);
        if (r.high_x >= kUnb)
            r.high_x = w.high_x;
        if (r.low_x <= -kUnb)
            r.low_x = w.low_x;
        if (r.low_z <= -kUnb)
            r.low_z = w.low_z;
    }
    return r;
}

VecSeries2 compose_outer_x(const VecSeries1& u, int out_dim,
                           const std::function<VecSeries1(const QVec&)>& f)
{
    VecSeries2 r = VecSeries2::zero(out_dim);
    bool exact = u.exact;
    int hx = kUnb;
    std::vector<std::pair<int, VecSeries1>> parts;
    for (const auto& [n, v] : u.coeffs) {
        VecSeries1 o = f(v);
        if (!o.exact) {
            exact = false;
            hx = std::min(hx, o.trunc);
        }
        parts.emplace_back(n, std::move(o));
    }
    r.exact = exact;
    r.low_x = -kUnb;
    r.high_x = hx;
    r.low_z = -kUnb;
    r.high_z = u.exact ? kUnb : u.trunc;
    for (auto& [n, o] : parts)
        for (const auto& [m, v] : o.coeffs)
            if (exact || m <= hx)
                r.set(m, n, add(r.coeff(m, n), v));
    return r;
}

VecSeries2 expand_x_minus_z(int k)
{
    VecSeries2 r;
    r.dim = 1;
    r.exact = true;
    for (int j = 0; j <= k; ++j) {
        Rational c = binom(k, j);
        if (j % 2 != 0)
            c = -c;
        r.set(k - j, j, QVec{c});
    }
    return r;
}

// ---------------- reports ----------------

bool CheckReport::passed() const
{
    for (const auto& it : items)
        if (it.verdict == Verdict::Fail)
            return false;
    return true;
}

bool CheckReport::all_exact() const
{
    for (const auto& it : items)
        if (it.verdict != Verdict::PassExact)
            return false;
    return true;
}

std::string CheckReport::str(const std::vector<std::string>* names) const
{
    std::ostringstream os;
    for (const auto& it : items) {
        os << it.axiom << " [";
        for (size_t k = 0; k < it.indices.size(); ++k) {
            if (k)
                os << ",";
            int idx = it.indices[k];
            if (names && idx < static_cast<int>(names->size()))
                os << (*names)[static_cast<size_t>(idx)];
            else
                os << idx;
        }
        os << "] ";
        switch (it.verdict) {
        case Verdict::PassExact: os << "pass exact"; break;
        case Verdict::PassTruncated: os << "pass to-truncation"; break;
        case Verdict::Fail: os << "FAIL"; break;
        }
        if (it.witness)
            os << " witness=" << it.witness->exponent;
        if (!it.detail.empty())
            os << " (" << it.detail << ")";
        os << "\n";
    }
    return os.str();
}

namespace {

std::string mismatch_str(const EqResult& eq)
{
    if (!eq.mismatch)
        return {};
    std::ostringstream os;
    os << "mismatch at x^" << eq.mismatch->i << " z^" << eq.mismatch->j << " coord "
       << eq.mismatch->coord << ": " << rat_str(eq.mismatch->lhs) << " vs "
       << rat_str(eq.mismatch->rhs);
    return os.str();
}

} // namespace

CheckItem item_from_eq(std::string axiom, std::vector<int> idx, const EqResult& eq)
{
    CheckItem it;
    it.axiom = std::move(axiom);
    it.indices = std::move(idx);
    if (eq.window_empty) {
        it.verdict = Verdict::Fail;
        it.detail = "empty comparison window";
    } else if (eq.equal) {
        it.verdict = eq.exact ? Verdict::PassExact : Verdict::PassTruncated;
    } else {
        it.verdict = Verdict::Fail;
        it.mismatch = eq.mismatch;
        it.detail = mismatch_str(eq);
    }
    return it;
}

CheckItem witness_search(std::string axiom, std::vector<int> idx, const VecSeries2& lhs,
                         const VecSeries2& rhs, int l_max, const Window& w,
                         const std::function<VecSeries2(int)>& mul)
{
    CheckItem it;
    it.axiom = std::move(axiom);
    it.indices = std::move(idx);
    bool saw_exact_compare = false;
    bool all_empty = true;
    EqResult last;
    for (int l = 0; l <= l_max; ++l) {
        VecSeries2 m = mul(l);
        EqResult eq = series2_equal(mul_scalar2(m, lhs), mul_scalar2(m, rhs), w.shrunk(l));
        last = eq;
        if (eq.window_empty)
            continue;
        all_empty = false;
        if (eq.exact)
            saw_exact_compare = true;
        if (eq.equal) {
            it.verdict = eq.exact ? Verdict::PassExact : Verdict::PassTruncated;
            it.witness = LocalityWitness{l, eq.window, eq.exact};
            return it;
        }
        if (eq.exact) {
            // both sides are Laurent polynomials; a higher multiplier power
            // cannot repair a genuine coefficient mismatch
            it.verdict = Verdict::Fail;
            it.mismatch = eq.mismatch;
            it.detail = "coefficient mismatch at witness " + std::to_string(l) + ": " +
                        mismatch_str(eq);
            return it;
        }
    }
    it.verdict = Verdict::Fail;
    if (all_empty)
        it.detail = "empty comparison window";
    else if (saw_exact_compare) {
        it.mismatch = last.mismatch;
        it.detail = "coefficient mismatch: " + mismatch_str(last);
    }
    else
        it.detail = "no witness <= " + std::to_string(l_max);
    return it;
}

// ---------------- checkers ----------------

CheckReport check_axioms(const FiniteVertexAlgebra& V, int l_max, const Window& w)
{
    CheckReport rep;
    int tr = std::max(default_trunc(V), w.high_z);
    auto zp = [&](const QVec& a, const QVec& b) { return zproduct(V, a, b, tr); };

    for (int i = 0; i < V.dim; ++i) {
        QVec ei = V.basis_vec(i);
        rep.items.push_back(item_from_eq(
            "unit-left", {i},
            series1_equal(zp(V.vacuum, ei), VecSeries1::constant(ei), w.low_z, w.high_z)));
        rep.items.push_back(item_from_eq(
            "unit-right", {i},
            series1_equal(zp(ei, V.vacuum), apply_exp(V.D, ei, tr), w.low_z, w.high_z)));
    }
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) {
            QVec ei = V.basis_vec(i), ej = V.basis_vec(j);
            VecSeries1 p = zp(ei, ej);
            rep.items.push_back(item_from_eq(
                "translation", {i, j},
                series1_equal(zp(V.D.apply(ei), ej), ddz(p), w.low_z, w.high_z)));
            rep.items.push_back(item_from_eq(
                "derivation", {i, j},
                series1_equal(p.mapped(V.D), zp(V.D.apply(ei), ej) + zp(ei, V.D.apply(ej)),
                              w.low_z, w.high_z)));
            rep.items.push_back(item_from_eq(
                "commutativity", {i, j},
                series1_equal(p, apply_exp_series(V.D, zp(ej, ei).negated_var(), tr), w.low_z,
                              w.high_z)));
        }
    int mp = V.max_pole();
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            for (int k = 0; k < V.dim; ++k) {
                QVec ei = V.basis_vec(i), ej = V.basis_vec(j), ek = V.basis_vec(k);
                // (a_z b)_w c, axes (x=z, z=w)
                VecSeries2 lhs = extend_series2_z(
                    lift_x(zp(ei, ej)), V.dim, [&](const QVec& v) { return zp(v, ek); }, -mp);
                // a_{z+w}(b_w c)
                VecSeries2 rhs = extend_substitute(
                    zp(ej, ek), V.dim, [&](const QVec& v) { return zp(ei, v); }, w);
                rep.items.push_back(witness_search(
                    "associativity", {i, j, k}, lhs, rhs, l_max, w,
                    [&](int l) { return expand_binomial(l, w); }));
            }
    return rep;
}

CheckReport check_associator(const FiniteVertexAlgebra& V, const Window& w)
{
    CheckReport rep;
    int tr = std::max(default_trunc(V), w.high_z);
    int mp = V.max_pole();
    auto zp = [&](const QVec& a, const QVec& b) { return zproduct(V, a, b, tr); };
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            for (int k = 0; k < V.dim; ++k) {
                QVec a = V.basis_vec(i), b = V.basis_vec(j), c = V.basis_vec(k);
                // axes (x=z, z=y)
                VecSeries2 t1 = extend_series2_z(
                    lift_x(zp(a, b)), V.dim, [&](const QVec& v) { return zp(v, c); }, -mp);
                VecSeries2 t2 = extend_substitute(
                    zp(b, c), V.dim, [&](const QVec& v) { return zp(a, v); }, w);
                // a_{y+z} c - a_{z+y} c, computed as one series
                VecSeries1 ac = zp(a, c);
                VecSeries2 diff = substitute_shift(ac, w, true) - substitute_shift(ac, w, false);
                VecSeries2 rhs = extend_series2_z(
                    diff, V.dim, [&](const QVec& v) { return zp(b, v); }, -mp);
                rep.items.push_back(
                    item_from_eq("associator", {i, j, k}, series2_equal(t1 - t2, rhs, w)));
            }
    return rep;
}

CheckReport check_module(const FiniteVertexAlgebra& V, const ModuleStructure& M, int l_max,
                         const Window& w)
{
    CheckReport rep;
    int tr = std::max(default_trunc(V, &M), w.high_z);
    int mp = std::max(V.max_pole(), M.max_pole());
    auto zp = [&](const QVec& a, const QVec& b) { return zproduct(V, a, b, tr); };
    auto act = [&](const QVec& a, const QVec& u) { return module_action(V, M, a, u, tr); };

    for (int u = 0; u < M.dim; ++u) {
        QVec mu = M.basis_vec(u);
        rep.items.push_back(item_from_eq(
            "module-unit", {u},
            series1_equal(act(V.vacuum, mu), VecSeries1::constant(mu), w.low_z, w.high_z)));
    }
    for (int i = 0; i < V.dim; ++i)
        for (int u = 0; u < M.dim; ++u) {
            QVec a = V.basis_vec(i);
            QVec mu = M.basis_vec(u);
            VecSeries1 p = act(a, mu);
            rep.items.push_back(item_from_eq(
                "module-translation", {i, u},
                series1_equal(act(V.D.apply(a), mu), ddz(p), w.low_z, w.high_z)));
            rep.items.push_back(item_from_eq(
                "module-derivation", {i, u},
                series1_equal(p.mapped(M.d), act(V.D.apply(a), mu) + act(a, M.d.apply(mu)),
                              w.low_z, w.high_z)));
        }
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            for (int u = 0; u < M.dim; ++u) {
                QVec a = V.basis_vec(i), b = V.basis_vec(j);
                QVec mu = M.basis_vec(u);
                VecSeries2 lhs = extend_series2_z(
                    lift_x(zp(a, b)), M.dim, [&](const QVec& v) { return act(v, mu); }, -mp);
                VecSeries2 rhs = extend_substitute(
                    act(b, mu), M.dim, [&](const QVec& v) { return act(a, v); }, w);
                rep.items.push_back(witness_search(
                    "module-associativity", {i, j, u}, lhs, rhs, l_max, w,
                    [&](int l) { return expand_binomial(l, w); }));
                // locality, axes (x, y): a acts along x on both sides
                VecSeries2 loc_l = compose_outer_x(act(b, mu), M.dim,
                                                   [&](const QVec& v) { return act(a, v); });
                VecSeries2 loc_r = compose_outer_x(act(a, mu), M.dim, [&](const QVec& v) {
                                       return act(b, v);
                                   }).transposed();
                rep.items.push_back(witness_search(
                    "module-locality", {i, j, u}, loc_l, loc_r, l_max, w,
                    [&](int l) { return expand_x_minus_z(l); }));
            }
    return rep;
}

// ---------------- structural validation ----------------

std::vector<std::string> validate_structure(const FiniteVertexAlgebra& V)
{
    std::vector<std::string> errs;
    if (static_cast<int>(V.vacuum.size()) != V.dim)
        errs.push_back("vacuum vector has wrong length");
    if (V.D.rows != V.dim || V.D.cols != V.dim)
        errs.push_back("D matrix has wrong shape");
    if (!errs.empty())
        return errs;
    if (!is_zero(V.D.apply(V.vacuum)))
        errs.push_back("D(vacuum) is nonzero");
    if (V.holomorphic()) {
        const auto& t = std::get<BilinearTable>(V.structure);
        for (int i = 0; i < V.dim; ++i) {
            QVec ei = V.basis_vec(i);
            if (t.apply(V.vacuum, ei) != ei)
                errs.push_back("vacuum is not a left unit on basis " + V.name(i));
            if (t.apply(ei, V.vacuum) != ei)
                errs.push_back("vacuum is not a right unit on basis " + V.name(i));
        }
        for (int i = 0; i < V.dim; ++i)
            for (int j = i + 1; j < V.dim; ++j)
                if (t.entry(i, j) != t.entry(j, i))
                    errs.push_back("multiplication not commutative on pair (" + V.name(i) + "," +
                                   V.name(j) + ")");
        for (int i = 0; i < V.dim; ++i)
            for (int j = 0; j < V.dim; ++j)
                for (int k = 0; k < V.dim; ++k)
                    if (t.apply(t.entry(i, j), V.basis_vec(k)) !=
                        t.apply(V.basis_vec(i), t.entry(j, k)))
                        errs.push_back("multiplication not associative on triple (" + V.name(i) +
                                       "," + V.name(j) + "," + V.name(k) + ")");
        for (int i = 0; i < V.dim; ++i)
            for (int j = 0; j < V.dim; ++j) {
                QVec lhs = V.D.apply(t.entry(i, j));
                QVec rhs = add(t.apply(V.D.apply(V.basis_vec(i)), V.basis_vec(j)),
                               t.apply(V.basis_vec(i), V.D.apply(V.basis_vec(j))));
                if (lhs != rhs)
                    errs.push_back("D fails the Leibniz rule on pair (" + V.name(i) + "," +
                                   V.name(j) + ")");
            }
    } else {
        const auto& t = std::get<ExplicitTable>(V.structure);
        for (const auto& [key, v] : t.products) {
            auto [i, j, k] = key;
            if (i < 0 || i >= V.dim || j < 0 || j >= V.dim ||
                static_cast<int>(v.size()) != V.dim)
                errs.push_back("explicit table entry out of range");
        }
    }
    return errs;
}

std::vector<std::string> validate_module_structure(const FiniteVertexAlgebra& V,
                                                   const ModuleStructure& M)
{
    std::vector<std::string> errs;
    if (M.d.rows != M.dim || M.d.cols != M.dim)
        errs.push_back("d matrix has wrong shape");
    if (!errs.empty())
        return errs;
    if (M.holomorphic()) {
        const auto& t = std::get<BilinearTable>(M.action);
        if (t.left_dim != V.dim || t.right_dim != M.dim || t.out_dim != M.dim) {
            errs.push_back("action table has wrong shape");
            return errs;
        }
        for (int u = 0; u < M.dim; ++u) {
            QVec mu = M.basis_vec(u);
            if (t.apply(V.vacuum, mu) != mu)
                errs.push_back("vacuum does not act as identity on module basis " +
                               std::to_string(u));
        }
        for (int i = 0; i < V.dim; ++i)
            for (int u = 0; u < M.dim; ++u) {
                QVec lhs = M.d.apply(t.entry(i, u));
                QVec rhs = add(t.apply(V.D.apply(V.basis_vec(i)), M.basis_vec(u)),
                               t.apply(V.basis_vec(i), M.d.apply(M.basis_vec(u))));
                if (lhs != rhs)
                    errs.push_back("d fails the Leibniz rule on action pair (" + V.name(i) + "," +
                                   std::to_string(u) + ")");
            }
    }
    return errs;
}

} // namespace vac
