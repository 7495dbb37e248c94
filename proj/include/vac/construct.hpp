#pragma once

#include "vac/cohomology.hpp"

namespace vac {

// Lambda = V (+) M with vacuum (1, 0), derivation (Da, du) and product
// (a,u) (.)_z (b,v) = (a_z b, a_z v + u_z b + psi_z(a,b)). The first dim_V
// coordinates of `total` are the base, the rest the fiber.
struct SquareZeroExtension {
    FiniteVertexAlgebra base;
    ModuleStructure fiber;
    TwoCochain cocycle;
    FiniteVertexAlgebra total; // ExplicitTable on V (+) M
};

// Materializes the extension; the product series must terminate (nilpotent
// presets), otherwise throws std::runtime_error.
SquareZeroExtension build_extension(const FiniteVertexAlgebra& V, const ModuleStructure& M,
                                    const TwoCochain& psi);

// The canonical section a -> (a, 0).
QMatrix canonical_section(const SquareZeroExtension& ext);

// psi_z(a,b) = fiber component of Gamma(a) (.)_z Gamma(b) - Gamma(a (.)_z b).
// Preconditions p1 Gamma = id, Gamma(1) = 1, Gamma D = D Gamma are checked;
// violations throw std::invalid_argument naming the failed one.
TwoCochain extract_cocycle(const SquareZeroExtension& ext, const QMatrix& Gamma);

// same_class, then the isomorphism h(a,u) = (a, u + g(a)) between the two
// totals is verified before g is returned.
std::optional<OneCochain> extensions_equivalent(const FiniteVertexAlgebra& V,
                                                const ModuleStructure& M, const TwoCochain& psi,
                                                const TwoCochain& phi);

// a *_z b = a_z b + t f_z(a,b) over k[t]/(t^2), materialized as the algebra
// V (+) tV so the generic axiom checker applies; failing verdicts carry the
// t^0 / t^1 layer in their detail.
struct FirstOrderDeformation {
    FiniteVertexAlgebra base;
    TwoCochain cocycle;
    FiniteVertexAlgebra total; // dim 2 dim_V
    CheckReport verdicts;
};

FirstOrderDeformation build_deformation(const FiniteVertexAlgebra& V, const TwoCochain& f);

// The star product on real vectors: (a_z b, f_z(a,b)) as (t^0, t^1) layers.
std::pair<VecSeries1, VecSeries1> star_product(const FiniteVertexAlgebra& V, const TwoCochain& f,
                                               const QVec& a, const QVec& b, int trunc);

// same_class with M = V, then the intertwining of phi_t = 1 + t g between the
// two star products is verified.
std::optional<OneCochain> deformations_equivalent(const FiniteVertexAlgebra& V,
                                                  const TwoCochain& f1, const TwoCochain& f2);

} // namespace vac
