#include "driver.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace bsm {

void validate(const IterationOptions& options) {
  if (!(options.epsilon > 0.0) || !std::isfinite(options.epsilon)) {
    throw InvalidArgument("epsilon must be positive");
  }
  if (options.max_iterations < 1) {
    throw InvalidArgument("max_iterations must be >= 1");
  }
  if (options.n_max < 1) {
    throw InvalidArgument("n_max must be >= 1");
  }
  if (options.rho_window < 1) {
    throw InvalidArgument("rho_window must be >= 1");
  }
}

namespace {

std::vector<double> defined_ratios(const IterationHistory& history) {
  std::vector<double> r;
  for (const auto& rec : history.records) {
    if (rec.rho_defined) r.push_back(rec.rho);
  }
  return r;
}

double geometric_mean(const std::vector<double>& v, std::size_t first,
                      std::size_t count) {
  double log_sum = 0.0;
  for (std::size_t i = first; i < first + count; ++i) {
    if (!(v[i] > 0.0)) return 0.0;
    log_sum += std::log(v[i]);
  }
  return std::exp(log_sum / static_cast<double>(count));
}

bool degenerate(double den, double scale) {
  return !(std::abs(den) > kDegenerateRatio * scale) || scale == 0.0;
}

void check_finite(const NodalField& f, const char* what, int s) {
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (!std::isfinite(f[n])) {
      throw NumericalError(std::string("non-finite ") + what + " at cell " +
                           std::to_string(n / 2) + ", iteration " +
                           std::to_string(s));
    }
  }
}

}  // namespace

double estimate_spectral_radius(const IterationHistory& history, int window) {
  if (window < 1) throw InvalidArgument("rho window must be >= 1");
  const auto r = defined_ratios(history);
  const std::size_t w = static_cast<std::size_t>(window);
  if (r.size() < w + 1) {
    throw InvalidArgument("not enough iterations to estimate the spectral radius");
  }
  return geometric_mean(r, r.size() - 1 - w, w);
}

std::pair<double, int> estimate_spectral_radius_available(
    const IterationHistory& history, int window) {
  const auto r = defined_ratios(history);
  if (r.empty()) return {0.0, 0};
  if (r.size() == 1) return {r[0], 1};
  const std::size_t w =
      std::min(static_cast<std::size_t>(std::max(window, 1)), r.size() - 1);
  return {geometric_mean(r, r.size() - 1 - w, w), static_cast<int>(w)};
}

EnsemblePartialMoments map_ensemble_to_partial(
    const EnsembleMoments& ensemble,
    const std::vector<ProlongationFactors>& factors) {
  const std::size_t nn = ensemble.phi.size();
  if (factors.size() != nn || ensemble.current.size() != nn) {
    throw InvalidArgument("prolongation factors do not match mesh");
  }
  EnsemblePartialMoments out{NodalField(nn), NodalField(nn), NodalField(nn),
                             NodalField(nn)};
  for (std::size_t n = 0; n < nn; ++n) {
    const ProlongationFactors& f = factors[n];
    const double base_p = ensemble.current[n] - f.ct_m * ensemble.phi[n];
    const double base_m = ensemble.current[n] - f.ct_p * ensemble.phi[n];
    out.phi_p[n] = f.beta_p * base_p;
    out.phi_m[n] = f.beta_m * base_m;
    out.j_p[n] = f.gamma_p * base_p;
    out.j_m[n] = f.gamma_m * base_m;
  }
  return out;
}

ProlongationResult prolong_fluxes(const PartialFluxField& low_order,
                                  const EnsembleMoments& ensemble,
                                  const EnsemblePartialMoments& partial,
                                  const AngularFluxField& psi,
                                  const ProblemSpec& problem) {
  const std::size_t nc = problem.n_cells;
  const std::size_t nn = 2 * nc;
  const AngularQuadrature& quad = problem.quadrature;
  const std::size_t nh = quad.n_per_half();
  const std::size_t nd = quad.n_directions();
  const auto& p = problem.p;

  ProlongationResult out;
  out.psi = psi;
  out.scalar_flux = {NodalField(nn), NodalField(nn)};
  const auto w = quad.weights();

  for (std::size_t n = 0; n < nn; ++n) {
    double sum_tot = 0, sum_tot_abs = 0, sum_p = 0, sum_p_abs = 0, sum_m = 0,
           sum_m_abs = 0;
    for (std::size_t l = 0; l < 2; ++l) {
      const double fp = low_order.phi_p[l][n], fm = low_order.phi_m[l][n];
      sum_tot += p[l] * (fp + fm);
      sum_tot_abs += p[l] * (std::abs(fp) + std::abs(fm));
      sum_p += p[l] * fp;
      sum_p_abs += p[l] * std::abs(fp);
      sum_m += p[l] * fm;
      sum_m_abs += p[l] * std::abs(fm);
    }
    const double scale_tot =
        degenerate(sum_tot, sum_tot_abs) ? 1.0 : ensemble.phi[n] / sum_tot;
    const double scale_p =
        degenerate(sum_p, sum_p_abs) ? 1.0 : partial.phi_p[n] / sum_p;
    const double scale_m =
        degenerate(sum_m, sum_m_abs) ? 1.0 : partial.phi_m[n] / sum_m;

    for (std::size_t l = 0; l < 2; ++l) {
      out.scalar_flux[l][n] =
          (low_order.phi_p[l][n] + low_order.phi_m[l][n]) * scale_tot;
      const double target_p = low_order.phi_p[l][n] * scale_p;
      const double target_m = low_order.phi_m[l][n] * scale_m;

      double old_p = 0, old_p_abs = 0, old_m = 0, old_m_abs = 0;
      const double* v = psi.psi[l].data() + n * nd;
      for (std::size_t m = 0; m < nh; ++m) {
        old_p += w[m] * v[m];
        old_p_abs += w[m] * std::abs(v[m]);
        old_m += w[m] * v[nh + m];
        old_m_abs += w[m] * std::abs(v[nh + m]);
      }
      double* out_v = out.psi.psi[l].data() + n * nd;
      if (degenerate(old_p, old_p_abs)) {
        ++out.skipped_rescales;
      } else {
        const double f = target_p / old_p;
        for (std::size_t m = 0; m < nh; ++m) out_v[m] *= f;
      }
      if (degenerate(old_m, old_m_abs)) {
        ++out.skipped_rescales;
      } else {
        const double f = target_m / old_m;
        for (std::size_t m = 0; m < nh; ++m) out_v[nh + m] *= f;
      }
    }
  }
  return out;
}

double max_abs_cell_average_diff(const NodalField& a, const NodalField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() / 2; ++i) {
    worst = std::max(worst, std::abs(cell_average(a, i) - cell_average(b, i)));
  }
  return worst;
}

double max_abs_cell_average(const NodalField& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() / 2; ++i) {
    worst = std::max(worst, std::abs(cell_average(a, i)));
  }
  return worst;
}

void finish_history(IterationHistory& history, const IterationOptions& options) {
  history.iterations = static_cast<int>(history.records.size());
  const auto [rho, samples] =
      estimate_spectral_radius_available(history, options.rho_window);
  history.rho_estimate = rho;
  history.rho_samples = samples;
}

MultilevelResult run_multilevel(const ProblemSpec& problem,
                                const IterationOptions& options) {
  validate(problem);
  validate(options);
  const std::size_t nc = problem.n_cells;
  const std::size_t nn = 2 * nc;
  const AngularQuadrature& quad = problem.quadrature;
  const double h = problem.cell_width();
  const EnsembleInflow inflow = ensemble_inflow(problem);
  const NodalField ensemble_source(
      nn, problem.p[0] * problem.materials[0].q + problem.p[1] * problem.materials[1].q);

  MultilevelResult result;
  result.psi = AngularFluxField(nc, quad.n_directions());
  result.scalar_flux = {NodalField(nn, 0.0), NodalField(nn, 0.0)};
  result.ensemble = {NodalField(nn, 0.0), NodalField(nn, 0.0)};
  IterationHistory& history = result.history;

  for (int s = 1; s <= options.max_iterations; ++s) {
    // Level 1: high-order transport sweeps, scattering from phi^(s).
    AngularFluxField psi_third = result.psi;
    gauss_seidel_highorder(problem, result.scalar_flux, psi_third, options.n_max);

    std::array<MaterialFactors, 2> factors;
    PartialFluxField partial;
    for (std::size_t l = 0; l < 2; ++l) {
      factors[l] = material_factors(psi_third.psi[l], quad, nc);
      const NodalMoments mom = angular_moments(psi_third.psi[l], quad, nc);
      partial.phi_p[l] = mom.phi_p;
      partial.phi_m[l] = mom.phi_m;
    }

    // Level 2: one Gauss-Seidel pass over the material LOYM equations.
    partial = loym_gs_pass(factors, partial, problem);
    const EnsembleCoefficients coeffs =
        ensemble_coefficient_field(partial, factors, problem);

    // Level 3: ensemble quasidiffusion.
    EnsembleMoments ensemble = solve_loqd(coeffs, ensemble_source, inflow, h, nc);
    const EnsemblePartialMoments down =
        map_ensemble_to_partial(ensemble, coeffs.prolongation);

    // Level 2 again: decoupled modified LOYM.
    PartialFluxField corrected =
        modified_loym_solve(factors, coeffs.eddington, down, problem);
    std::vector<ProlongationFactors> prolongation(nn);
    for (std::size_t n = 0; n < nn; ++n) {
      prolongation[n] = prolongation_factors(material_point(corrected, factors, n), problem.p);
    }
    const EnsemblePartialMoments up = map_ensemble_to_partial(ensemble, prolongation);

    ProlongationResult prolonged =
        prolong_fluxes(corrected, ensemble, up, psi_third, problem);

    check_finite(ensemble.phi, "ensemble scalar flux", s);
    for (std::size_t l = 0; l < 2; ++l) {
      check_finite(prolonged.scalar_flux[l], "material scalar flux", s);
    }

    IterationRecord rec;
    rec.s = s;
    rec.delta_phi = max_abs_cell_average_diff(ensemble.phi, result.ensemble.phi);
    for (std::size_t l = 0; l < 2; ++l) {
      rec.delta_phi_mat[l] =
          max_abs_cell_average_diff(prolonged.scalar_flux[l], result.scalar_flux[l]);
    }
    if (!history.records.empty()) {
      const double prev = history.records.back().delta_phi;
      rec.rho = prev > 0.0 ? rec.delta_phi / prev : 0.0;
      rec.rho_defined = true;
    }
    history.records.push_back(rec);

    result.psi = std::move(prolonged.psi);
    result.scalar_flux = std::move(prolonged.scalar_flux);
    result.ensemble = std::move(ensemble);
    result.partial = std::move(corrected);
    result.skipped_rescales += prolonged.skipped_rescales;

    if (rec.delta_phi <= options.epsilon * max_abs_cell_average(result.ensemble.phi)) {
      history.converged = true;
      break;
    }
  }
  finish_history(history, options);
  return result;
}

}  // namespace bsm
