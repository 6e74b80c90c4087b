// Acceptance checks for the solver. Prints one PASS/FAIL line per criterion
// and exits nonzero if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "baseline.hpp"
#include "driver.hpp"
#include "loqd.hpp"
#include "loym.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace bsm;

namespace {

constexpr std::size_t kCells = 100;
constexpr std::size_t kPerHalf = 4;
constexpr double kEpsilon = 1e-10;

// Reference spectral radii for n_max = 1 and 2, in catalog order A1..D3.
constexpr std::array<std::array<double, 12>, 2> kReferenceRho{{
    {0.40, 0.41, 0.41, 0.23, 0.12, 0.12, 0.11, 0.06, 0.10, 0.46, 0.43, 0.46},
    {0.16, 0.17, 0.16, 0.25, 0.12, 0.10, 0.14, 0.03, 0.11, 0.19, 0.20, 0.21},
}};

struct Run {
  TestId id;
  int n_max;
  ProblemSpec problem;
  MultilevelResult ml;
  double ml_seconds = 0.0;
  SourceIterationResult si;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void report(int criterion, const std::string& title, const Outcome& o) {
  std::printf("%s criterion %d: %s%s%s\n", o.pass ? "PASS" : "FAIL", criterion,
              title.c_str(), o.detail.empty() ? "" : " | ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double max_abs(const NodalField& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Run run_one(TestId id, int n_max) {
  Run r{id, n_max, build_test(id, kCells, kPerHalf), {}, 0.0, {}};
  IterationOptions o;
  o.epsilon = kEpsilon;
  o.n_max = n_max;
  const auto t0 = std::chrono::steady_clock::now();
  r.ml = run_multilevel(r.problem, o);
  r.ml_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.max_iterations = 100000;
  r.si = run_source_iteration(r.problem, o);
  return r;
}

std::string label(const Run& r) {
  return std::string(to_string(r.id)) + "/n_max=" + std::to_string(r.n_max);
}

Outcome reference_rho(const std::vector<Run>& runs) {
  Outcome o;
  double worst = 0.0, slowest = 0.0;
  for (const Run& r : runs) {
    const double ref = kReferenceRho[r.n_max - 1][static_cast<std::size_t>(r.id)];
    const double dev = std::abs(r.ml.history.rho_estimate - ref);
    worst = std::max(worst, dev);
    slowest = std::max(slowest, r.ml_seconds);
    if (!r.ml.history.converged || dev > 0.1 || r.ml_seconds >= 10.0) {
      if (o.pass) o.detail = label(r) + fmt(" rho=%.4f ref=%.2f t=%.2fs; ",
                                            r.ml.history.rho_estimate, ref, r.ml_seconds);
      o.pass = false;
    }
  }
  o.detail += fmt("max |rho-ref|=%.4f slowest run %.3fs", worst, slowest);
  return o;
}

Outcome acceleration(const std::vector<Run>& runs) {
  Outcome o;
  double worst_ml2 = 0.0;
  for (const Run& r : runs) {
    const double ml = r.ml.history.rho_estimate, si = r.si.history.rho_estimate;
    if (r.n_max == 2) worst_ml2 = std::max(worst_ml2, ml);
    if (!r.si.history.converged || ml > si || (r.n_max == 2 && ml > 0.35)) {
      if (o.pass) o.detail = label(r) + fmt(" ml=%.4f si=%.4f; ", ml, si);
      o.pass = false;
    }
  }
  o.detail += fmt("max rho(ML, n_max=2)=%.4f", worst_ml2);
  return o;
}

Outcome cross_solver(const std::vector<Run>& runs) {
  Outcome o;
  double worst = 0.0;
  for (const Run& r : runs) {
    const double rel = max_abs_cell_average_diff(r.ml.ensemble.phi, r.si.ensemble_phi) /
                       max_abs_cell_average(r.si.ensemble_phi);
    worst = std::max(worst, rel);
    if (!(rel <= 1e-6)) {
      if (o.pass) o.detail = label(r) + fmt(" rel=%.3e; ", rel);
      o.pass = false;
    }
  }
  o.detail += fmt("max relative difference %.3e", worst);
  return o;
}

Outcome fixed_point(const std::vector<Run>& runs) {
  Outcome o;
  double worst = 0.0;
  const double tol = 100.0 * kEpsilon;
  for (const Run& r : runs) {
    const ProblemSpec& p = r.problem;
    const double scale = max_abs(r.ml.ensemble.phi);
    double dev = 0.0;
    for (std::size_t l = 0; l < 2; ++l) {
      const NodalMoments m = angular_moments(r.ml.psi.psi[l], p.quadrature, p.n_cells);
      for (std::size_t n = 0; n < m.phi_p.size(); ++n) {
        dev = std::max(dev, std::abs(m.phi_p[n] - r.ml.partial.phi_p[l][n]));
        dev = std::max(dev, std::abs(m.phi_m[n] - r.ml.partial.phi_m[l][n]));
      }
    }
    for (std::size_t n = 0; n < r.ml.ensemble.phi.size(); ++n) {
      double sum = 0.0;
      for (std::size_t l = 0; l < 2; ++l) {
        sum += p.p[l] * (r.ml.partial.phi_p[l][n] + r.ml.partial.phi_m[l][n]);
      }
      dev = std::max(dev, std::abs(sum - r.ml.ensemble.phi[n]));
    }
    dev /= scale;
    worst = std::max(worst, dev);
    if (!(dev <= tol)) {
      if (o.pass) o.detail = label(r) + fmt(" deviation=%.3e; ", dev);
      o.pass = false;
    }
  }
  o.detail += fmt("max relative deviation %.3e (limit %.1e)", worst, tol);
  return o;
}

Outcome properties() {
  Outcome o;
  const int n = 5000;
  const std::array<std::pair<const char*, props::Report>, 4> suites{{
      {"quadrature", props::quadrature_exactness(n, 1001)},
      {"closure bounds", props::closure_bounds(n, 1002)},
      {"reconstruction", props::reconstruction_identity(n, 1003)},
      {"rescale invariance", props::rescale_invariance(n, 1004)},
  }};
  for (const auto& [name, rep] : suites) {
    if (rep.cases < 1000 || rep.failures != 0) {
      o.pass = false;
      o.detail += std::string(name) + ": " + rep.first_failure + "; ";
    }
    o.detail += std::string(name) + fmt(" %.0f cases worst %.2e; ", rep.cases, rep.worst);
  }
  return o;
}

double rel_diff(const NodalField& a, const NodalField& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d / max_abs(b);
}

Outcome reduction_limits() {
  Outcome o;
  // Identical materials: the mixture is one material regardless of chord lengths.
  const MaterialSpec m{1.0, 0.9, 1.0, 1.0};
  MaterialSpec m2 = m;
  m2.lambda = 3.0;
  const ProblemSpec p = make_problem("identical", {m, m2}, 20.0, kCells, kPerHalf, {});
  IterationOptions opts;
  opts.epsilon = kEpsilon;
  const MultilevelResult ml = run_multilevel(p, opts);
  const NodalField ref = oracle::one_material(m.sigma_t, m.sigma_s, m.q, 20.0, kCells,
                                              p.quadrature);
  const double one = rel_diff(ml.ensemble.phi, ref);
  if (!ml.history.converged || !(one <= 10.0 * kEpsilon)) o.pass = false;

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  double dp1 = 0.0, diff = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t nc = 1 + static_cast<std::size_t>(trial) * 5;
    const double h = 0.05 + 0.1 * u(rng);
    NodalField s0(2 * nc), s1(2 * nc), q(2 * nc);
    for (std::size_t n = 0; n < 2 * nc; ++n) {
      s0[n] = u(rng);
      s1[n] = 0.2 * (u(rng) - 1.0);
      q[n] = u(rng);
    }
    const double st = 0.5 + u(rng), sa = st * 0.4 * u(rng) / 2.0, rem = u(rng);
    InflowMoments in;
    in.phi_p_left = u(rng);
    in.j_p_left = 0.5 * in.phi_p_left;
    in.k_p_left = in.phi_p_left / 3.0;
    in.phi_m_right = u(rng);
    in.j_m_right = -0.5 * in.phi_m_right;
    in.k_m_right = in.phi_m_right / 3.0;
    const auto got = solve_material_loym(isotropic_factors(nc), sa, st, rem, {s0, s1}, in,
                                         h, nc);
    const auto want = oracle::dp1(sa, st, rem, s0, s1, in, h, nc);
    dp1 = std::max({dp1, rel_diff(got.phi_p, want.phi_p), rel_diff(got.phi_m, want.phi_m)});

    EnsembleCoefficients c;
    LoqdCoefficients lc;
    lc.sigma_a = sa;
    lc.sigma_t = st;
    lc.eta = 0.0;
    lc.e = 1.0 / 3.0;
    c.loqd.assign(2 * nc, lc);
    c.prolongation.assign(2 * nc, ProlongationFactors{});
    c.eddington.assign(2 * nc, HalfEddington{});
    EnsembleInflow ein;
    ein.phi_p_left = in.phi_p_left;
    ein.j_p_left = in.j_p_left;
    ein.k_p_left = in.k_p_left;
    ein.phi_m_right = in.phi_m_right;
    ein.j_m_right = in.j_m_right;
    ein.k_m_right = in.k_m_right;
    const EnsembleMoments lq = solve_loqd(c, q, ein, h, nc);
    const EnsembleMoments dq = oracle::diffusion(sa, st, q, ein, h, nc);
    diff = std::max({diff, rel_diff(lq.phi, dq.phi), rel_diff(lq.current, dq.current)});
  }
  if (!(dp1 <= 1e-12) || !(diff <= 1e-12)) o.pass = false;
  o.detail = fmt("identical materials %.3e, DP1 %.3e, diffusion %.3e", one, dp1, diff);
  return o;
}

Outcome symmetry(const std::vector<Run>& runs) {
  Outcome o;
  double worst = 0.0;
  for (const Run& r : runs) {
    const NodalField& phi = r.ml.ensemble.phi;
    const std::size_t nc = r.problem.n_cells;
    double dev = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
      for (std::size_t k = 0; k < 2; ++k) {
        dev = std::max(dev, std::abs(phi[2 * i + k] - phi[2 * (nc - 1 - i) + 1 - k]));
      }
    }
    dev /= max_abs(phi);
    worst = std::max(worst, dev);
    if (!r.ml.history.converged || !(dev <= 1e-8)) {
      if (o.pass) o.detail = label(r) + fmt(" asymmetry=%.3e; ", dev);
      o.pass = false;
    }
  }
  o.detail += fmt("max relative asymmetry %.3e", worst);
  return o;
}

}  // namespace

int main() {
  std::vector<std::future<Run>> pending;
  for (TestId id : kAllTests) {
    for (int n_max : {1, 2}) {
      pending.push_back(std::async(std::launch::async, run_one, id, n_max));
    }
  }
  std::vector<Run> runs;
  for (auto& f : pending) runs.push_back(f.get());

  report(1, "spectral radii within 0.1 of the reference table, each run under 10 s",
         reference_rho(runs));
  report(2, "multilevel rate no worse than source iteration, n_max=2 rate <= 0.35",
         acceleration(runs));
  report(3, "multilevel and source iteration agree within 1e-6", cross_solver(runs));
  report(4, "low-order and transport moments agree at convergence", fixed_point(runs));
  report(5, "randomized property suites", properties());
  report(6, "reduction limits", reduction_limits());
  report(7, "mirror symmetry of the ensemble scalar flux", symmetry(runs));
  return g_failures == 0 ? 0 : 1;
}
