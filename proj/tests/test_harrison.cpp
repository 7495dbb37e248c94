#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "vac/cohomology.hpp"
#include "vac/harrison.hpp"

#include <random>

using namespace vac;

namespace {

bool harrison_cocycle_holds(const CommAlgebra& A, const CommModule& M, const BilinearTable& f)
{
    for (int a = 0; a < A.dim; ++a)
        for (int b = 0; b < A.dim; ++b)
            for (int c = 0; c < A.dim; ++c) {
                QVec v = M.action.apply(A.basis_vec(a), f.entry(b, c));
                add_into(v, scale(f.apply(A.mult.entry(a, b), A.basis_vec(c)), -1));
                add_into(v, f.apply(A.basis_vec(a), A.mult.entry(b, c)));
                add_into(v, scale(M.action.apply(A.basis_vec(c), f.entry(a, b)), -1));
                if (!is_zero(v))
                    return false;
            }
    return true;
}

} // namespace

TEST_CASE("harrison_h2 examples")
{
    auto k = comm_algebra(fx::base_field());
    CHECK(harrison_h2(k, comm_module(regular_module(fx::base_field()))).dimension == 0);

    auto W = comm_algebra(fx::dual_numbers());
    auto MW = comm_module(regular_module(fx::dual_numbers()));
    auto rep = harrison_h2(W, MW);
    CHECK(rep.dimension == 1);
    REQUIRE(rep.representatives.size() == 1);
    // the class of f(x,x) = 1: coboundaries only reach span{x} at (x,x)
    CHECK(rep.representatives[0].entry(1, 1)[0] != 0);

    auto KK = comm_algebra(fx::k_times_k());
    CHECK(harrison_h2(KK, comm_module(regular_module(fx::k_times_k()))).dimension == 0);
}

TEST_CASE("non-module input rejected")
{
    auto A = comm_algebra(fx::dual_numbers());
    CommModule M = comm_module(regular_module(fx::dual_numbers()));
    M.action.e[0][0] = QVec{0, 1}; // unit no longer acts as identity
    CHECK_THROWS_AS(harrison_h2(A, M), std::invalid_argument);
}

TEST_CASE("harrison coboundaries are cocycles")
{
    std::mt19937 rng(47);
    for (const auto& V : fx::commutative_fixtures()) {
        auto A = comm_algebra(V);
        auto M = comm_module(regular_module(V));
        for (int it = 0; it < 30; ++it) {
            // random g with g(1) = 0: pick values on non-vacuum basis only
            std::vector<QVec> gv(size_t(A.dim), zero_vec(M.dim));
            for (int a = 1; a < A.dim; ++a)
                gv[size_t(a)] = fx::rand_vec(M.dim, rng);
            BilinearTable t = BilinearTable::zero(A.dim, A.dim, M.dim);
            for (int a = 0; a < A.dim; ++a)
                for (int b = 0; b < A.dim; ++b) {
                    QVec v = M.action.apply(A.basis_vec(a), gv[size_t(b)]);
                    QVec ab = A.mult.entry(a, b);
                    for (int m = 0; m < A.dim; ++m)
                        add_into(v, scale(gv[size_t(m)], -ab[size_t(m)]));
                    add_into(v, M.action.apply(A.basis_vec(b), gv[size_t(a)]));
                    t.e[size_t(a)][size_t(b)] = v;
                }
            CHECK(harrison_cocycle_holds(A, M, t));
        }
    }
}

TEST_CASE("oracle agreement with h2 on the D = 0 fixtures")
{
    for (const auto& V : fx::commutative_fixtures()) {
        auto M = regular_module(V);
        auto A = comm_algebra(V);
        auto CM = comm_module(M);
        auto hrep = harrison_h2(A, CM);
        auto w = default_window(V, &M);
        int nmax = default_lmax(V);
        auto vrep = h2(V, M, 0, nmax, w);
        CHECK(hrep.dimension == vrep.dimension);

        int tr = default_trunc(V, &M);
        std::vector<QVec> B;
        for (const auto& g : c1_basis(V, M))
            B.push_back(cochain_params(delta1(V, M, g, tr)));

        // every harrison representative is a vertex cocycle, and the set is
        // independent modulo vertex coboundaries
        std::vector<QVec> all = B;
        std::vector<TwoCochain> lifted;
        for (const auto& t : hrep.representatives) {
            TwoCochain f = TwoCochain::zero(V, M);
            f.zero_coeff = t;
            CHECK(validate_C2(V, M, f, w).passed());
            CHECK(is_cocycle(V, M, f, nmax, w).passed());
            all.push_back(cochain_params(f));
            lifted.push_back(std::move(f));
        }
        CHECK(quotient_dim(all, B) == hrep.dimension);

        // class-level matching: each lifted representative equals some linear
        // combination of the h2 representatives up to a coboundary
        for (const auto& f : lifted) {
            int nr = int(vrep.reps2.size());
            int rows = int(cochain_params(f).size());
            QMatrix S(rows, nr + int(B.size()));
            for (int c = 0; c < nr; ++c) {
                QVec col = cochain_params(vrep.reps2[size_t(c)]);
                for (int r = 0; r < rows; ++r)
                    S.at(r, c) = col[size_t(r)];
            }
            for (size_t c = 0; c < B.size(); ++c)
                for (int r = 0; r < rows; ++r)
                    S.at(r, nr + int(c)) = B[c][size_t(r)];
            auto sol = solve(S, cochain_params(f));
            REQUIRE(sol);
            TwoCochain combo = TwoCochain::zero(V, M);
            for (int c = 0; c < nr; ++c)
                combo = combo + vrep.reps2[size_t(c)].scaled((*sol)[size_t(c)]);
            CHECK(same_class(V, M, f, combo).has_value());
        }
    }
}
