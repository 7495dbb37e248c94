#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vac/linalg.hpp"

#include <random>

using namespace vac;

namespace {
QMatrix mat(std::vector<std::vector<int>> rows)
{
    QMatrix A(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            A.at(int(i), int(j)) = rows[i][j];
    return A;
}
} // namespace

TEST_CASE("kernel basis examples")
{
    CHECK(kernel_basis(QMatrix::identity(3)).empty());
    CHECK(kernel_basis(QMatrix(2, 3)).size() == 3);
    auto k = kernel_basis(mat({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == QVec{-1, 1});
}

TEST_CASE("solve examples")
{
    auto x = solve(QMatrix::identity(2), {3, 4});
    REQUIRE(x);
    CHECK(*x == QVec{3, 4});
    CHECK(!solve(mat({{1}, {1}}), {0, 1}));
    auto y = solve(mat({{2}}), {1});
    REQUIRE(y);
    CHECK((*y)[0] == Rational(1, 2));
}

TEST_CASE("quotient dim examples")
{
    std::vector<QVec> std3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(quotient_dim(std3, {{1, 0, 0}}) == 2);
    CHECK(quotient_dim(std3, std3) == 0);
    CHECK(quotient_dim(std3, {}) == 3);
    CHECK_THROWS(quotient_dim({{1, 0, 0}}, {{0, 1, 0}}));
}

TEST_CASE("exactness properties on random systems")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> e(-5, 5), dims(1, 6);
    for (int it = 0; it < 100; ++it) {
        int r = dims(rng), c = dims(rng);
        QMatrix A(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                A.at(i, j) = e(rng);
        CHECK(rank(A) == rank(A.transposed()));
        auto K = kernel_basis(A);
        CHECK(int(K.size()) == c - rank(A));
        for (const auto& v : K)
            CHECK(is_zero(A.apply(v)));
        // solve against a constructed consistent rhs
        QVec x0((size_t(c)));
        for (auto& t : x0)
            t = e(rng);
        QVec b = A.apply(x0);
        auto x = solve(A, b);
        REQUIRE(x);
        CHECK(A.apply(*x) == b);
    }
}

TEST_CASE("nilpotency index")
{
    CHECK(*nilpotency_index(QMatrix::zero(3)) == 1);
    auto N = mat({{0, 1}, {0, 0}});
    CHECK(*nilpotency_index(N) == 2);
    CHECK(!nilpotency_index(QMatrix::identity(2)));
}

TEST_CASE("quotient representatives stay independent modulo the subspace")
{
    std::vector<QVec> Z = {{1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
    std::vector<QVec> B = {{1, 0, 0}};
    auto reps = quotient_representatives(Z, B);
    CHECK(int(reps.size()) == quotient_dim(Z, B));
    auto all = B;
    for (const auto& r : reps) {
        CHECK(!in_span(all, r));
        all.push_back(r);
    }
}
