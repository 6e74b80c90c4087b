#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "highorder.hpp"

namespace bsm {

// Relative size below which a closure denominator counts as zero. The scale
// is the matching sum of magnitudes, so cancellation also triggers it.
inline constexpr double kDegenerateRatio = 1e-13;

// ---------------------------------------------------------------------------
// Material linear-fractional factors: C+- = J+-/phi+-, E+- = K+-/phi+-
// (half-range mean cosine and mean cosine squared of psi_l).

struct HalfRangeFactors {
  double c_p = 0.5, c_m = -0.5, e_p = 1.0 / 3.0, e_m = 1.0 / 3.0;
};

/// Factors from the node values of one direction set (ordering of
/// AngularQuadrature::mu). Falls back to the isotropic values per half when
/// that half carries no flux.
HalfRangeFactors factors_from_values(std::span<const double> values,
                                     const AngularQuadrature& quad);

struct MaterialFactors {
  NodalField c_p, c_m, e_p, e_m;
};

MaterialFactors material_factors(std::span<const double> psi_l,
                                 const AngularQuadrature& quad,
                                 std::size_t n_cells);

MaterialFactors isotropic_factors(std::size_t n_cells);

// ---------------------------------------------------------------------------
// Ensemble ("double-bracket") coefficients at one point. Inputs are the
// partial fluxes and factors of both materials at that point.

struct MaterialPoint {
  double phi_p = 0.0, phi_m = 0.0;
  HalfRangeFactors f;
};

struct LoqdCoefficients {
  double sigma_a = 0.0;  // <<sigma_a>>
  double sigma_t = 0.0;  // <<sigma_t>>
  double eta = 0.0;      // <<eta>>
  double e = 1.0 / 3.0;  // <<E>>
  double c_p = 0.5;      // <<C+>>
  double c_m = -0.5;     // <<C->>
};

struct ProlongationFactors {
  double beta_p = 1.0, beta_m = -1.0;
  double gamma_p = 0.5, gamma_m = 0.5;
  double ct_p = 0.5, ct_m = -0.5;  // <<C~+->>
};

struct HalfEddington {
  double e_p = 1.0 / 3.0, e_m = 1.0 / 3.0;  // <<E+->>
};

LoqdCoefficients ensemble_coefficients(const std::array<MaterialPoint, 2>& m,
                                       const std::array<double, 2>& p,
                                       const std::array<MaterialSpec, 2>& mats);

HalfEddington ensemble_epm(const std::array<MaterialPoint, 2>& m,
                           const std::array<double, 2>& p);

ProlongationFactors prolongation_factors(const std::array<MaterialPoint, 2>& m,
                                         const std::array<double, 2>& p);

// ---------------------------------------------------------------------------
// The same coefficients evaluated at every LD node.

struct PartialFluxField {
  std::array<NodalField, 2> phi_p, phi_m;
};

struct EnsembleCoefficients {
  std::vector<LoqdCoefficients> loqd;
  std::vector<ProlongationFactors> prolongation;
  std::vector<HalfEddington> eddington;
};

std::array<MaterialPoint, 2> material_point(
    const PartialFluxField& flux, const std::array<MaterialFactors, 2>& factors,
    std::size_t node);

EnsembleCoefficients ensemble_coefficient_field(
    const PartialFluxField& flux, const std::array<MaterialFactors, 2>& factors,
    const ProblemSpec& problem);

}  // namespace bsm
