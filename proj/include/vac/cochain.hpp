#pragma once

#include "vac/algebra.hpp"

namespace vac {

// g: V -> M with g(1) = 0 and g compatible with the derivations, stored as a
// dim_M x dim_V matrix.
struct OneCochain {
    QMatrix g;

    static OneCochain zero(const FiniteVertexAlgebra& V, const ModuleStructure& M)
    {
        return {QMatrix(M.dim, V.dim)};
    }
    QVec apply(const QVec& a) const { return g.apply(a); }
};

// Structural diagnostics for the C^1 invariants; empty when sound.
std::vector<std::string> validate_C1(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                                     const OneCochain& g);

// Basis of the C^1 constraint space {g D = d g, g(vacuum) = 0}.
std::vector<OneCochain> c1_basis(const FiniteVertexAlgebra& V, const ModuleStructure& M);

// Finite parametrization of f_z in C^2(V, M): the coefficients f^(k) are
// generated from f^(-T) (tail_gen, the deepest pole) and f^(0) (zero_coeff)
// by the translation recurrence (k+1) f^(k+1)(a,b) = f^(k)(Da,b).
struct TwoCochain {
    int tail_depth = 0;        // T >= 0
    BilinearTable tail_gen;    // f^(-T); ignored when tail_depth = 0
    BilinearTable zero_coeff;  // f^(0)

    static TwoCochain zero(const FiniteVertexAlgebra& V, const ModuleStructure& M, int T = 0);

    TwoCochain operator+(const TwoCochain& o) const;
    TwoCochain operator-(const TwoCochain& o) const;
    TwoCochain scaled(const Rational& c) const;
};

// f^(k) as a bilinear map. Zero for k < -T; for k >= 1 equals
// f^(0)(D^k ., .) / k!.
BilinearTable coefficient(const FiniteVertexAlgebra& V, const TwoCochain& f, int k);

// f_z(a, b) as a Laurent expansion; exact when the positive coefficients
// terminate (nilpotent D), else truncated at `trunc`.
VecSeries1 cochain_series(const FiniteVertexAlgebra& V, const TwoCochain& f, const QVec& a,
                          const QVec& b, int trunc);

// Unit, d-Leibniz, terminal tail constraint, and per-coefficient symmetry
// over the z-range of w.
CheckReport validate_C2(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                        const TwoCochain& f, const Window& w);

// (delta_1 g)_z(a,b) = a_z g(b) - g(a_z b) + g(a)_z b, re-extracted into the
// finite parametrization. Throws std::runtime_error when the computed series
// does not fit the parametrization (truncation artifact on non-nilpotent
// presets).
TwoCochain delta1(const FiniteVertexAlgebra& V, const ModuleStructure& M, const OneCochain& g,
                  int trunc);

// Z^2 membership: per basis triple, smallest n <= n_max with
// (x+z)^n [f_z(a_x b, c) + f_x(a,b)_z c]
//   = (x+z)^n [a_{x+z} f_z(b,c) + f_{x+z}(a, b_z c)].
CheckReport is_cocycle(const FiniteVertexAlgebra& V, const ModuleStructure& M, const TwoCochain& f,
                       int n_max, const Window& w);

// The associator-variant defect; one item per basis triple, passing when the
// defect vanishes on w.
CheckReport delta2_defect(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                          const TwoCochain& f, const Window& w);

} // namespace vac
