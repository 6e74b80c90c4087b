#pragma once

#include "driver.hpp"

namespace bsm {

struct SourceIterationResult {
  AngularFluxField psi;
  std::array<NodalField, 2> scalar_flux;
  NodalField ensemble_phi;      // sum_l p_l phi_l
  NodalField ensemble_current;  // sum_l p_l J_l
  IterationHistory history;
};

/// Unaccelerated source iteration: each outer iteration runs the same n_max
/// Gauss-Seidel material sweeps as the multilevel method with the scattering
/// source lagged, then takes phi_l from the angular moments.
SourceIterationResult run_source_iteration(const ProblemSpec& problem,
                                           const IterationOptions& options);

}  // namespace bsm
