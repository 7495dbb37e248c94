#pragma once

#include "vac/algebra.hpp"

namespace vac {

// Plain commutative associative unital algebra, the D = 0 degeneration.
struct CommAlgebra {
    int dim = 0;
    QVec unit;
    BilinearTable mult;

    QVec basis_vec(int i) const;
};

// Module over a CommAlgebra: action table A x M -> M.
struct CommModule {
    int dim = 0;
    BilinearTable action;

    QVec basis_vec(int i) const;
};

// Strip a D = 0 preset down to its underlying algebra / module.
CommAlgebra comm_algebra(const FiniteVertexAlgebra& V);
CommModule comm_module(const ModuleStructure& M);

// Table scans: commutative, associative, unital; module unital and
// associative. Empty when sound.
std::vector<std::string> validate_comm(const CommAlgebra& A);
std::vector<std::string> validate_comm_module(const CommAlgebra& A, const CommModule& M);

struct HarrisonReport {
    int dimension = 0;
    std::vector<BilinearTable> representatives; // symmetric normalized cocycles
};

// Degree-2 Harrison cohomology by direct linear algebra over the symmetric
// normalized complex. Throws std::invalid_argument on non-module input.
HarrisonReport harrison_h2(const CommAlgebra& A, const CommModule& M);

} // namespace vac
