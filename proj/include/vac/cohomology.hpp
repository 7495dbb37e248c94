#pragma once

#include "vac/cochain.hpp"

#include <optional>

namespace vac {

struct CohomologyReport {
    int degree = 0;
    int dimension = 0;
    std::vector<QVec> reps0;       // degree 0
    std::vector<OneCochain> reps1; // degree 1
    std::vector<TwoCochain> reps2; // degree 2
    int tail_bound = 0;
    int n_max = 0;
    Window window;
    bool exact = true;
    std::vector<int> witnesses; // per representative, degree 2
};

// H^0 = Ker delta_0 = M.
CohomologyReport h0(const FiniteVertexAlgebra& V, const ModuleStructure& M);

// H^1 = Ker delta_1 (vertex derivations), inside the C^1 constraint space.
CohomologyReport h1(const FiniteVertexAlgebra& V, const ModuleStructure& M, int trunc);

// H^2 = Z^2 / Im delta_1 at tail bound T, cocycle identity imposed at the
// single witness exponent n_max (the n-indexed systems are nested).
CohomologyReport h2(const FiniteVertexAlgebra& V, const ModuleStructure& M, int T, int n_max,
                    const Window& w);

// Solves delta_1(g) = f1 - f2 over C^1, comparing at the coefficient-family
// level so differing tail depths are handled; nullopt means distinct classes.
std::optional<OneCochain> same_class(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                                     const TwoCochain& f1, const TwoCochain& f2);

// Parameter-space coordinates of a TwoCochain at depth T: tail_gen entries
// (when T > 0) followed by zero_coeff entries, row-major.
QVec cochain_params(const TwoCochain& f);
TwoCochain cochain_from_params(const FiniteVertexAlgebra& V, const ModuleStructure& M, int T,
                               const QVec& p);

} // namespace vac
