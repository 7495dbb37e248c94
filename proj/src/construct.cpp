#include "vac/construct.hpp"

#include <sstream>
#include <stdexcept>

namespace vac {

namespace {

void store_series(ExplicitTable& t, int i, int j, const VecSeries1& s, int lift, int width)
{
    if (!s.exact)
        throw std::runtime_error("extension product does not terminate; nilpotent preset required");
    for (const auto& [k, v] : s.coeffs) {
        QVec& cell = t.products[{i, j, k}];
        if (cell.empty())
            cell = zero_vec(width);
        for (size_t c = 0; c < v.size(); ++c)
            cell[size_t(lift) + c] += v[c];
        if (is_zero(cell))
            t.products.erase({i, j, k});
    }
}

} // namespace

SquareZeroExtension build_extension(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                                    const TwoCochain& psi)
{
    SquareZeroExtension ext;
    ext.base = V;
    ext.fiber = M;
    ext.cocycle = psi;

    int N = V.dim + M.dim;
    int tr = 4 * default_trunc(V, &M); // generous; exactness is enforced anyway
    FiniteVertexAlgebra L;
    L.dim = N;
    L.vacuum = zero_vec(N);
    for (int i = 0; i < V.dim; ++i)
        L.vacuum[size_t(i)] = V.vacuum[size_t(i)];
    L.D = QMatrix(N, N);
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            L.D.at(i, j) = V.D.at(i, j);
    for (int i = 0; i < M.dim; ++i)
        for (int j = 0; j < M.dim; ++j)
            L.D.at(V.dim + i, V.dim + j) = M.d.at(i, j);
    for (int i = 0; i < V.dim; ++i)
        L.basis_names.push_back(V.name(i));
    for (int i = 0; i < M.dim; ++i)
        L.basis_names.push_back(
            i < int(M.basis_names.size()) ? "m:" + M.basis_names[size_t(i)]
                                          : "m" + std::to_string(i));

    ExplicitTable t;
    t.left_dim = t.right_dim = t.out_dim = N;
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) {
            QVec a = V.basis_vec(i), b = V.basis_vec(j);
            store_series(t, i, j, zproduct(V, a, b, tr), 0, N);
            store_series(t, i, j, cochain_series(V, psi, a, b, tr), V.dim, N);
        }
    for (int i = 0; i < V.dim; ++i)
        for (int u = 0; u < M.dim; ++u) {
            store_series(t, i, V.dim + u,
                         module_action(V, M, V.basis_vec(i), M.basis_vec(u), tr), V.dim, N);
            store_series(t, V.dim + u, i,
                         right_action(V, M, M.basis_vec(u), V.basis_vec(i), tr), V.dim, N);
        }
    // (0,u) (.)_z (0,v) = 0: no entries
    L.structure = std::move(t);
    ext.total = std::move(L);
    return ext;
}

QMatrix canonical_section(const SquareZeroExtension& ext)
{
    QMatrix G(ext.total.dim, ext.base.dim);
    for (int i = 0; i < ext.base.dim; ++i)
        G.at(i, i) = 1;
    return G;
}

TwoCochain extract_cocycle(const SquareZeroExtension& ext, const QMatrix& Gamma)
{
    const FiniteVertexAlgebra& V = ext.base;
    const ModuleStructure& M = ext.fiber;
    const FiniteVertexAlgebra& L = ext.total;
    if (Gamma.rows != L.dim || Gamma.cols != V.dim)
        throw std::invalid_argument("section has wrong shape");
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            if (Gamma.at(i, j) != (i == j ? Rational(1) : Rational(0)))
                throw std::invalid_argument("p1 composed with the section is not the identity");
    if (Gamma.apply(V.vacuum) != L.vacuum)
        throw std::invalid_argument("section does not preserve the vacuum");
    QMatrix gd = Gamma.mul(V.D), dg = L.D.mul(Gamma);
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < V.dim; ++j)
            if (gd.at(i, j) != dg.at(i, j))
                throw std::invalid_argument("section does not intertwine the derivations");

    int T = std::max({L.max_pole(), V.max_pole(), M.max_pole()});
    int tr = 4 * default_trunc(V, &M);
    auto fiber_part = [&](const VecSeries1& s) {
        VecSeries1 r = VecSeries1::zero(M.dim, s.trunc);
        r.low = s.low;
        r.exact = s.exact;
        for (const auto& [k, v] : s.coeffs) {
            QVec m = zero_vec(M.dim);
            for (int c = 0; c < M.dim; ++c)
                m[size_t(c)] = v[size_t(V.dim + c)];
            r.set(k, m);
        }
        return r;
    };
    std::vector<std::vector<VecSeries1>> raw(size_t(V.dim), std::vector<VecSeries1>(size_t(V.dim)));
    TwoCochain f = TwoCochain::zero(V, M, T);
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) {
            QVec a = V.basis_vec(i), b = V.basis_vec(j);
            VecSeries1 s = zproduct(L, Gamma.apply(a), Gamma.apply(b), tr);
            VecSeries1 gprod = extend_series1(
                zproduct(V, a, b, tr), L.dim,
                [&](const QVec& v) { return VecSeries1::constant(Gamma.apply(v)); }, 0);
            VecSeries1 d = fiber_part(s - gprod);
            raw[size_t(i)][size_t(j)] = d;
            if (T > 0)
                f.tail_gen.e[size_t(i)][size_t(j)] = d.coeff(-T);
            f.zero_coeff.e[size_t(i)][size_t(j)] = d.coeff(0);
        }
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) {
            VecSeries1 rec = cochain_series(V, f, V.basis_vec(i), V.basis_vec(j), tr);
            auto eq = series1_equal(raw[size_t(i)][size_t(j)], rec, -T - 2, tr);
            if (!eq.equal || eq.window_empty) {
                std::ostringstream os;
                os << "extracted cochain does not fit the parametrization at pair (" << V.name(i)
                   << "," << V.name(j) << ")";
                throw std::runtime_error(os.str());
            }
        }
    return f;
}

std::optional<OneCochain> extensions_equivalent(const FiniteVertexAlgebra& V,
                                                const ModuleStructure& M, const TwoCochain& psi,
                                                const TwoCochain& phi)
{
    auto g = same_class(V, M, psi, phi);
    if (!g)
        return std::nullopt;
    // verify h(a,u) = (a, u + g(a)) is an isomorphism of the totals
    auto e1 = build_extension(V, M, psi);
    auto e2 = build_extension(V, M, phi);
    int N = e1.total.dim;
    QMatrix h = QMatrix::identity(N);
    for (int r = 0; r < M.dim; ++r)
        for (int c = 0; c < V.dim; ++c)
            h.at(V.dim + r, c) = g->g.at(r, c);
    int tr = 4 * default_trunc(V, &M);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            QVec a = e1.total.basis_vec(i), b = e1.total.basis_vec(j);
            VecSeries1 lhs = zproduct(e1.total, a, b, tr).mapped(h);
            VecSeries1 rhs = zproduct(e2.total, h.apply(a), h.apply(b), tr);
            auto eq = series1_equal(lhs, rhs, -tr, tr);
            if (!eq.equal)
                throw std::runtime_error("equivalence map is not an isomorphism");
        }
    return g;
}

FirstOrderDeformation build_deformation(const FiniteVertexAlgebra& V, const TwoCochain& f)
{
    FirstOrderDeformation def;
    def.base = V;
    def.cocycle = f;
    // V (+) tV is the square-zero extension by the regular module along f
    auto ext = build_extension(V, regular_module(V), f);
    def.total = ext.total;
    auto w = default_window(def.total);
    def.verdicts = check_axioms(def.total, default_lmax(def.total), w);
    for (auto& it : def.verdicts.items)
        if (it.verdict == Verdict::Fail && it.mismatch) {
            const char* layer = it.mismatch->coord < V.dim ? "t^0" : "t^1";
            it.detail += std::string(it.detail.empty() ? "" : "; ") + "layer " + layer;
        }
    return def;
}

std::pair<VecSeries1, VecSeries1> star_product(const FiniteVertexAlgebra& V, const TwoCochain& f,
                                               const QVec& a, const QVec& b, int trunc)
{
    return {zproduct(V, a, b, trunc), cochain_series(V, f, a, b, trunc)};
}

std::optional<OneCochain> deformations_equivalent(const FiniteVertexAlgebra& V,
                                                  const TwoCochain& f1, const TwoCochain& f2)
{
    auto M = regular_module(V);
    auto g = same_class(V, M, f1, f2);
    if (!g)
        return std::nullopt;
    // phi_t = 1 + t g must intertwine the two star products mod t^2:
    // t^1 layer of phi(a *1_z b) = g(a_z b) + f1_z(a,b); of
    // phi(a) *2_z phi(b) = a_z g(b) + g(a)_z b + f2_z(a,b)
    int tr = default_trunc(V, &M);
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) {
            QVec a = V.basis_vec(i), b = V.basis_vec(j);
            VecSeries1 lhs = extend_series1(
                zproduct(V, a, b, tr), V.dim,
                [&](const QVec& v) { return VecSeries1::constant(g->apply(v)); }, 0);
            lhs = lhs + cochain_series(V, f1, a, b, tr);
            VecSeries1 rhs = module_action(V, M, a, g->apply(b), tr) +
                             right_action(V, M, g->apply(a), b, tr) +
                             cochain_series(V, f2, a, b, tr);
            auto eq = series1_equal(lhs, rhs, -tr, tr);
            if (!eq.equal)
                throw std::runtime_error("phi_t does not intertwine the deformed products");
        }
    return g;
}

} // namespace vac
