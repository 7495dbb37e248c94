#include "vac/harrison.hpp"

#include <stdexcept>

namespace vac {

QVec CommAlgebra::basis_vec(int i) const
{
    QVec v = zero_vec(dim);
    v[size_t(i)] = 1;
    return v;
}

QVec CommModule::basis_vec(int i) const
{
    QVec v = zero_vec(dim);
    v[size_t(i)] = 1;
    return v;
}

CommAlgebra comm_algebra(const FiniteVertexAlgebra& V)
{
    if (!V.holomorphic() || !V.D.is_zero_matrix())
        throw std::invalid_argument("not a D = 0 preset");
    return {V.dim, V.vacuum, std::get<BilinearTable>(V.structure)};
}

CommModule comm_module(const ModuleStructure& M)
{
    if (!M.holomorphic() || !M.d.is_zero_matrix())
        throw std::invalid_argument("not a d = 0 module");
    return {M.dim, std::get<BilinearTable>(M.action)};
}

std::vector<std::string> validate_comm(const CommAlgebra& A)
{
    std::vector<std::string> errs;
    const auto& t = A.mult;
    for (int i = 0; i < A.dim; ++i) {
        if (t.apply(A.unit, A.basis_vec(i)) != A.basis_vec(i))
            errs.push_back("unit fails on basis " + std::to_string(i));
        for (int j = i + 1; j < A.dim; ++j)
            if (t.entry(i, j) != t.entry(j, i))
                errs.push_back("not commutative at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
    }
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k)
                if (t.apply(t.entry(i, j), A.basis_vec(k)) !=
                    t.apply(A.basis_vec(i), t.entry(j, k)))
                    errs.push_back("not associative at (" + std::to_string(i) + "," +
                                   std::to_string(j) + "," + std::to_string(k) + ")");
    return errs;
}

std::vector<std::string> validate_comm_module(const CommAlgebra& A, const CommModule& M)
{
    std::vector<std::string> errs;
    const auto& act = M.action;
    if (act.left_dim != A.dim || act.right_dim != M.dim || act.out_dim != M.dim) {
        errs.push_back("action table has wrong shape");
        return errs;
    }
    for (int u = 0; u < M.dim; ++u)
        if (act.apply(A.unit, M.basis_vec(u)) != M.basis_vec(u))
            errs.push_back("unit does not act as identity on module basis " + std::to_string(u));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int u = 0; u < M.dim; ++u)
                if (act.apply(A.mult.entry(i, j), M.basis_vec(u)) !=
                    act.apply(A.basis_vec(i), act.entry(j, u)))
                    errs.push_back("action not associative at (" + std::to_string(i) + "," +
                                   std::to_string(j) + "," + std::to_string(u) + ")");
    return errs;
}

HarrisonReport harrison_h2(const CommAlgebra& A, const CommModule& M)
{
    if (!validate_comm(A).empty() || !validate_comm_module(A, M).empty())
        throw std::invalid_argument("harrison_h2 requires a genuine algebra/module pair");

    int n = A.dim * A.dim * M.dim; // unknowns f(i,j) in M
    auto idx = [&](int i, int j, int c) { return (i * A.dim + j) * M.dim + c; };
    std::vector<QVec> rows;
    auto row = [&]() { return zero_vec(n); };

    // symmetry
    for (int i = 0; i < A.dim; ++i)
        for (int j = i + 1; j < A.dim; ++j)
            for (int c = 0; c < M.dim; ++c) {
                QVec r = row();
                r[size_t(idx(i, j, c))] = 1;
                r[size_t(idx(j, i, c))] = -1;
                rows.push_back(std::move(r));
            }
    // normalization f(1, .) = f(., 1) = 0
    for (int j = 0; j < A.dim; ++j)
        for (int c = 0; c < M.dim; ++c) {
            QVec r1 = row(), r2 = row();
            for (int i = 0; i < A.dim; ++i) {
                r1[size_t(idx(i, j, c))] = A.unit[size_t(i)];
                r2[size_t(idx(j, i, c))] = A.unit[size_t(i)];
            }
            rows.push_back(std::move(r1));
            rows.push_back(std::move(r2));
        }
    // cocycle: a f(b,c) - f(ab,c) + f(a,bc) - f(a,b) c = 0
    for (int a = 0; a < A.dim; ++a)
        for (int b = 0; b < A.dim; ++b)
            for (int c = 0; c < A.dim; ++c)
                for (int co = 0; co < M.dim; ++co) {
                    QVec r = row();
                    for (int m = 0; m < M.dim; ++m)
                        r[size_t(idx(b, c, m))] += M.action.entry(a, m)[size_t(co)];
                    QVec ab = A.mult.entry(a, b);
                    for (int m = 0; m < A.dim; ++m)
                        r[size_t(idx(m, c, co))] -= ab[size_t(m)];
                    QVec bc = A.mult.entry(b, c);
                    for (int m = 0; m < A.dim; ++m)
                        r[size_t(idx(a, m, co))] += bc[size_t(m)];
                    for (int m = 0; m < M.dim; ++m)
                        r[size_t(idx(a, b, m))] -= M.action.entry(c, m)[size_t(co)];
                    rows.push_back(std::move(r));
                }

    QMatrix C(int(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n; ++j)
            C.at(int(i), j) = rows[i][size_t(j)];
    std::vector<QVec> Z = kernel_basis(C);

    // coboundaries (delta g)(a,b) = a g(b) - g(ab) + g(a) b, over g(1) = 0
    int ng = A.dim * M.dim;
    auto gidx = [&](int a, int c) { return a * M.dim + c; };
    std::vector<QVec> grows;
    for (int c = 0; c < M.dim; ++c) {
        QVec r = zero_vec(ng);
        for (int a = 0; a < A.dim; ++a)
            r[size_t(gidx(a, c))] = A.unit[size_t(a)];
        grows.push_back(std::move(r));
    }
    QMatrix G(int(grows.size()), ng);
    for (size_t i = 0; i < grows.size(); ++i)
        for (int j = 0; j < ng; ++j)
            G.at(int(i), j) = grows[i][size_t(j)];
    std::vector<QVec> B;
    for (const auto& gv : kernel_basis(G)) {
        auto g = [&](int a) {
            QVec v = zero_vec(M.dim);
            for (int c = 0; c < M.dim; ++c)
                v[size_t(c)] = gv[size_t(gidx(a, c))];
            return v;
        };
        QVec params = zero_vec(n);
        for (int a = 0; a < A.dim; ++a)
            for (int b = 0; b < A.dim; ++b) {
                QVec v = M.action.apply(A.basis_vec(a), g(b));
                QVec ab = A.mult.entry(a, b);
                for (int m = 0; m < A.dim; ++m)
                    add_into(v, scale(g(m), -ab[size_t(m)]));
                add_into(v, M.action.apply(A.basis_vec(b), g(a)));
                for (int c = 0; c < M.dim; ++c)
                    params[size_t(idx(a, b, c))] = v[size_t(c)];
            }
        B.push_back(std::move(params));
    }

    HarrisonReport rep;
    rep.dimension = quotient_dim(Z, B);
    for (const auto& v : quotient_representatives(Z, B)) {
        BilinearTable t = BilinearTable::zero(A.dim, A.dim, M.dim);
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j)
                for (int c = 0; c < M.dim; ++c)
                    t.e[size_t(i)][size_t(j)][size_t(c)] = v[size_t(idx(i, j, c))];
        rep.representatives.push_back(std::move(t));
    }
    return rep;
}

} // namespace vac
