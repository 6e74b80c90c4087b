#pragma once

#include <array>
#include <vector>

#include "closures.hpp"

namespace bsm {

// Nodal right-hand sides of one material's low-order system (already divided
// by p_l): `zeroth` feeds the weight-1 rows, `first` the weight-mu rows.
struct MaterialLowOrderSource {
  NodalField zeroth;
  NodalField first;
};

struct MaterialLowOrderResult {
  NodalField phi_p, phi_m;
  double residual = 0.0;  // max-norm of the assembled system residual
};

/// Direct solve of the LD-consistent Yvon-Mertens system of one material:
///   d/dx(C+ phi+ + C- phi-) + (sigma_a + r C+) phi+ + (sigma_a - r C-) phi- = S0
///   d/dx(E+ phi+ + E- phi-) + (sigma_t C+ + r E+) phi+
///                           + (sigma_t C- - r E-) phi- = S1
/// with removal rate r, nodal closure factors and upwinded edge half-range
/// moments. Inflow enters through the boundary half-range moments.
MaterialLowOrderResult solve_material_loym(const MaterialFactors& factors,
                                           double sigma_a, double sigma_t,
                                           double removal,
                                           const MaterialLowOrderSource& source,
                                           const InflowMoments& inflow,
                                           double h, std::size_t n_cells);

/// One Gauss-Seidel pass over the coupled material equations: material 1
/// with material 2's terms taken from `initial`, then material 2 with the
/// fresh material 1 solution.
PartialFluxField loym_gs_pass(const std::array<MaterialFactors, 2>& factors,
                              const PartialFluxField& initial,
                              const ProblemSpec& problem);

// Ensemble half-range moments <phi+->, <J+-> at every node.
struct EnsemblePartialMoments {
  NodalField phi_p, phi_m, j_p, j_m;
};

/// Decoupled solve where the inter-material sums are replaced by ensemble
/// data: removal (1/lambda_l + 1/lambda_l'), right-hand sides
/// (<J+> - <J->)/lambda_l' and (<<E+>><phi+> - <<E->><phi->)/lambda_l'.
PartialFluxField modified_loym_solve(const std::array<MaterialFactors, 2>& factors,
                                     const std::vector<HalfEddington>& eddington,
                                     const EnsemblePartialMoments& ensemble,
                                     const ProblemSpec& problem);

}  // namespace bsm
