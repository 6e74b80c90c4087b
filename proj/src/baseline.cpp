#include "baseline.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace bsm {

SourceIterationResult run_source_iteration(const ProblemSpec& problem,
                                           const IterationOptions& options) {
  validate(problem);
  validate(options);
  const std::size_t nc = problem.n_cells;
  const std::size_t nn = 2 * nc;
  const AngularQuadrature& quad = problem.quadrature;

  SourceIterationResult result;
  result.psi = AngularFluxField(nc, quad.n_directions());
  result.scalar_flux = {NodalField(nn, 0.0), NodalField(nn, 0.0)};
  result.ensemble_phi.assign(nn, 0.0);
  result.ensemble_current.assign(nn, 0.0);
  IterationHistory& history = result.history;

  for (int s = 1; s <= options.max_iterations; ++s) {
    gauss_seidel_highorder(problem, result.scalar_flux, result.psi, options.n_max);
    std::array<NodalField, 2> phi;
    NodalField ens(nn, 0.0), cur(nn, 0.0);
    for (std::size_t l = 0; l < 2; ++l) {
      const NodalMoments m = angular_moments(result.psi.psi[l], quad, nc);
      phi[l] = m.phi;
      for (std::size_t n = 0; n < nn; ++n) {
        ens[n] += problem.p[l] * m.phi[n];
        cur[n] += problem.p[l] * (m.j_p[n] + m.j_m[n]);
      }
    }
    for (std::size_t n = 0; n < nn; ++n) {
      if (!std::isfinite(ens[n])) {
        throw NumericalError("non-finite scalar flux at cell " +
                             std::to_string(n / 2) + ", iteration " +
                             std::to_string(s));
      }
    }

    IterationRecord rec;
    rec.s = s;
    rec.delta_phi = max_abs_cell_average_diff(ens, result.ensemble_phi);
    for (std::size_t l = 0; l < 2; ++l) {
      rec.delta_phi_mat[l] = max_abs_cell_average_diff(phi[l], result.scalar_flux[l]);
    }
    if (!history.records.empty()) {
      const double prev = history.records.back().delta_phi;
      rec.rho = prev > 0.0 ? rec.delta_phi / prev : 0.0;
      rec.rho_defined = true;
    }
    history.records.push_back(rec);
    result.scalar_flux = std::move(phi);
    result.ensemble_phi = std::move(ens);
    result.ensemble_current = std::move(cur);
    if (rec.delta_phi <= options.epsilon * max_abs_cell_average(result.ensemble_phi)) {
      history.converged = true;
      break;
    }
  }
  finish_history(history, options);
  return result;
}

}  // namespace bsm
