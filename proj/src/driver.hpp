#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "loqd.hpp"
#include "loym.hpp"

namespace bsm {

struct IterationOptions {
  double epsilon = 1e-10;   // relative stopping tolerance on <phi>
  int max_iterations = 200;
  int n_max = 1;            // high-order Gauss-Seidel cycles per iteration
  int rho_window = 5;       // trailing ratios averaged for the rate estimate
};

void validate(const IterationOptions& options);

struct IterationRecord {
  int s = 0;
  double delta_phi = 0.0;                 // ||<phi>^(s) - <phi>^(s-1)||_inf
  std::array<double, 2> delta_phi_mat{};  // same for phi_l
  double rho = 0.0;                       // delta_phi(s) / delta_phi(s-1)
  bool rho_defined = false;               // false for s = 1
};

struct IterationHistory {
  std::vector<IterationRecord> records;
  bool converged = false;
  int iterations = 0;
  double rho_estimate = 0.0;
  int rho_samples = 0;  // ratios that entered rho_estimate
};

/// Geometric mean of the last `window` convergence ratios recorded before the
/// stopping iteration. Throws InvalidArgument when fewer than window + 1
/// ratios exist.
double estimate_spectral_radius(const IterationHistory& history, int window);

/// Same estimate, shrinking the window to what the history provides. Returns
/// {rho, samples}; samples = 0 means no ratio was recorded.
std::pair<double, int> estimate_spectral_radius_available(
    const IterationHistory& history, int window);

/// <phi+-> = <<beta+->> (<J> - <<C~-+>> <phi>),
/// <J+-> = <<gamma+->> (<J> - <<C~-+>> <phi>), node by node.
EnsemblePartialMoments map_ensemble_to_partial(
    const EnsembleMoments& ensemble,
    const std::vector<ProlongationFactors>& factors);

struct ProlongationResult {
  std::array<NodalField, 2> scalar_flux;  // phi_l^(s+1)
  AngularFluxField psi;                   // rescaled psi_l^(s+1)
  std::size_t skipped_rescales = 0;       // half-range nodes left unscaled
};

/// Maps the ensemble solution back onto the materials: scalar fluxes are
/// rescaled so that sum_l p_l phi_l = <phi>, partial fluxes so that
/// sum_l p_l phi+-_l = <phi+->, and each half-range of psi is scaled to
/// the corrected partial flux.
ProlongationResult prolong_fluxes(const PartialFluxField& low_order,
                                  const EnsembleMoments& ensemble,
                                  const EnsemblePartialMoments& partial,
                                  const AngularFluxField& psi,
                                  const ProblemSpec& problem);

struct MultilevelResult {
  AngularFluxField psi;
  PartialFluxField partial;            // phi+-_l^(s+1) from the modified LOYM
  EnsembleMoments ensemble;            // <phi>, <J> from the LOQD
  std::array<NodalField, 2> scalar_flux;
  IterationHistory history;
  std::size_t skipped_rescales = 0;
};

/// The V-cycle iteration: high-order Gauss-Seidel sweeps, one LOYM pass,
/// LOQD solve, modified LOYM solve and prolongation, repeated until
/// ||<phi>^(s) - <phi>^(s-1)|| <= epsilon ||<phi>^(s)||. Non-convergence is
/// reported in the history, not thrown.
MultilevelResult run_multilevel(const ProblemSpec& problem,
                                const IterationOptions& options);

// Helpers shared with the source-iteration baseline.
double max_abs_cell_average_diff(const NodalField& a, const NodalField& b);
double max_abs_cell_average(const NodalField& a);
void finish_history(IterationHistory& history, const IterationOptions& options);

}  // namespace bsm
