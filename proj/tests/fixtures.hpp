#pragma once

#include "vac/algebra.hpp"

#include <random>

// Shared in-memory fixture algebras: the commutative D=0 set plus the
// nilpotent-derivation truncated polynomial algebra.
namespace fx {

using namespace vac;

inline FiniteVertexAlgebra holomorphic(int dim, QVec vacuum, QMatrix D,
                                       std::vector<std::tuple<int, int, QVec>> entries,
                                       std::vector<std::string> names)
{
    FiniteVertexAlgebra V;
    V.dim = dim;
    V.vacuum = std::move(vacuum);
    V.D = std::move(D);
    V.basis_names = std::move(names);
    BilinearTable t = BilinearTable::zero(dim, dim, dim);
    for (auto& [i, j, v] : entries) {
        t.e[size_t(i)][size_t(j)] = v;
        t.e[size_t(j)][size_t(i)] = v;
    }
    V.structure = std::move(t);
    return V;
}

// k
inline FiniteVertexAlgebra base_field()
{
    return holomorphic(1, {1}, QMatrix::zero(1), {{0, 0, {1}}}, {"1"});
}

// k[x]/(x^2), D = 0
inline FiniteVertexAlgebra dual_numbers()
{
    return holomorphic(2, {1, 0}, QMatrix::zero(2),
                       {{0, 0, {1, 0}}, {0, 1, {0, 1}}, {1, 1, {0, 0}}}, {"1", "x"});
}

// k[x]/(x^3), D = 0
inline FiniteVertexAlgebra kx3()
{
    return holomorphic(3, {1, 0, 0}, QMatrix::zero(3),
                       {{0, 0, {1, 0, 0}},
                        {0, 1, {0, 1, 0}},
                        {0, 2, {0, 0, 1}},
                        {1, 1, {0, 0, 1}},
                        {1, 2, {0, 0, 0}},
                        {2, 2, {0, 0, 0}}},
                       {"1", "x", "x2"});
}

// k[x]/(x^3) with the derivation D(x) = x^2
inline FiniteVertexAlgebra kx3_deriv()
{
    FiniteVertexAlgebra V = kx3();
    V.D.at(2, 1) = 1; // x -> x^2
    return V;
}

// k x k; vacuum (1,1)
inline FiniteVertexAlgebra k_times_k()
{
    return holomorphic(2, {1, 1}, QMatrix::zero(2),
                       {{0, 0, {1, 0}}, {0, 1, {0, 0}}, {1, 1, {0, 1}}}, {"p", "q"});
}

// k[x,y]/(x^2, xy, y^2), D = 0
inline FiniteVertexAlgebra kxy()
{
    return holomorphic(3, {1, 0, 0}, QMatrix::zero(3),
                       {{0, 0, {1, 0, 0}},
                        {0, 1, {0, 1, 0}},
                        {0, 2, {0, 0, 1}},
                        {1, 1, {0, 0, 0}},
                        {1, 2, {0, 0, 0}},
                        {2, 2, {0, 0, 0}}},
                       {"1", "x", "y"});
}

// The five commutative D=0 fixtures of the acceptance suite.
inline std::vector<FiniteVertexAlgebra> commutative_fixtures()
{
    return {base_field(), dual_numbers(), kx3(), k_times_k(), kxy()};
}

// k[x]/(x^2) with the non-nilpotent derivation D(x) = x: the truncated,
// to-truncation-only preset.
inline FiniteVertexAlgebra dual_numbers_euler()
{
    FiniteVertexAlgebra V = dual_numbers();
    V.D.at(1, 1) = 1;
    return V;
}

inline Rational rand_rat(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
    return Rational(num(rng), den(rng));
}

inline QVec rand_vec(int dim, std::mt19937& rng)
{
    QVec v = zero_vec(dim);
    for (auto& c : v)
        c = rand_rat(rng);
    return v;
}

} // namespace fx
