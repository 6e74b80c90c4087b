#include "closures.hpp"

#include <cmath>

#include "errors.hpp"

namespace bsm {

namespace {

bool degenerate(double den, double scale) {
  return !(std::abs(den) > kDegenerateRatio * scale) || scale == 0.0;
}

}  // namespace

HalfRangeFactors factors_from_values(std::span<const double> values,
                                     const AngularQuadrature& quad) {
  const std::size_t nh = quad.n_per_half();
  if (values.size() != 2 * nh) {
    throw InvalidArgument("direction values do not match quadrature");
  }
  const auto w = quad.weights();
  const auto mu = quad.nodes();
  double pp = 0, jp = 0, kp = 0, sp = 0, pm = 0, jm = 0, km = 0, sm = 0;
  for (std::size_t m = 0; m < nh; ++m) {
    const double vp = values[m];
    const double vm = values[nh + m];
    pp += w[m] * vp;
    jp += w[m] * mu[m] * vp;
    kp += w[m] * mu[m] * mu[m] * vp;
    sp += w[m] * std::abs(vp);
    pm += w[m] * vm;
    jm -= w[m] * mu[m] * vm;
    km += w[m] * mu[m] * mu[m] * vm;
    sm += w[m] * std::abs(vm);
  }
  HalfRangeFactors f;
  if (!degenerate(pp, sp)) {
    f.c_p = jp / pp;
    f.e_p = kp / pp;
  }
  if (!degenerate(pm, sm)) {
    f.c_m = jm / pm;
    f.e_m = km / pm;
  }
  return f;
}

MaterialFactors material_factors(std::span<const double> psi_l,
                                 const AngularQuadrature& quad,
                                 std::size_t n_cells) {
  const std::size_t nd = quad.n_directions();
  if (psi_l.size() != 2 * n_cells * nd) {
    throw InvalidArgument("angular flux does not match mesh/quadrature");
  }
  MaterialFactors out = isotropic_factors(n_cells);
  for (std::size_t n = 0; n < 2 * n_cells; ++n) {
    const HalfRangeFactors f = factors_from_values(psi_l.subspan(n * nd, nd), quad);
    out.c_p[n] = f.c_p;
    out.c_m[n] = f.c_m;
    out.e_p[n] = f.e_p;
    out.e_m[n] = f.e_m;
  }
  return out;
}

MaterialFactors isotropic_factors(std::size_t n_cells) {
  const std::size_t nn = 2 * n_cells;
  return {NodalField(nn, 0.5), NodalField(nn, -0.5), NodalField(nn, 1.0 / 3.0),
          NodalField(nn, 1.0 / 3.0)};
}

LoqdCoefficients ensemble_coefficients(const std::array<MaterialPoint, 2>& m,
                                       const std::array<double, 2>& p,
                                       const std::array<MaterialSpec, 2>& mats) {
  double phi = 0, phi_abs = 0, absorb = 0, cur_abs = 0, removal = 0, second = 0;
  double phi_p = 0, phi_p_abs = 0, cur_p = 0;
  double phi_m = 0, phi_m_abs = 0, cur_m = 0;
  double plain_sigma_a = 0, plain_sigma_t = 0;
  for (std::size_t l = 0; l < 2; ++l) {
    const MaterialPoint& x = m[l];
    const double phi_l = x.phi_p + x.phi_m;
    const double cur_l = x.f.c_p * x.phi_p + x.f.c_m * x.phi_m;
    phi += p[l] * phi_l;
    phi_abs += p[l] * (std::abs(x.phi_p) + std::abs(x.phi_m));
    absorb += mats[l].sigma_a() * p[l] * phi_l;
    cur_abs += p[l] * std::abs(cur_l);
    removal += mats[l].sigma_t * p[l] * std::abs(cur_l);
    second += p[l] * (x.f.e_p * x.phi_p + x.f.e_m * x.phi_m);
    phi_p += p[l] * x.phi_p;
    phi_p_abs += p[l] * std::abs(x.phi_p);
    cur_p += p[l] * x.f.c_p * x.phi_p;
    phi_m += p[l] * x.phi_m;
    phi_m_abs += p[l] * std::abs(x.phi_m);
    cur_m += p[l] * x.f.c_m * x.phi_m;
    plain_sigma_a += p[l] * mats[l].sigma_a();
    plain_sigma_t += p[l] * mats[l].sigma_t;
  }

  LoqdCoefficients c;
  const bool phi_degenerate = degenerate(phi, phi_abs);
  c.sigma_a = phi_degenerate ? plain_sigma_a : absorb / phi;
  c.sigma_t = degenerate(cur_abs, phi_abs) ? plain_sigma_t : removal / cur_abs;
  if (!phi_degenerate) {
    double excess = 0.0;
    for (std::size_t l = 0; l < 2; ++l) {
      const MaterialPoint& x = m[l];
      const double cur_l = x.f.c_p * x.phi_p + x.f.c_m * x.phi_m;
      excess += (mats[l].sigma_t - c.sigma_t) * p[l] * cur_l;
    }
    c.eta = excess / phi;
    c.e = second / phi;
  }
  if (!degenerate(phi_p, phi_p_abs)) c.c_p = cur_p / phi_p;
  if (!degenerate(phi_m, phi_m_abs)) c.c_m = cur_m / phi_m;
  return c;
}

HalfEddington ensemble_epm(const std::array<MaterialPoint, 2>& m,
                           const std::array<double, 2>& p) {
  double num_p = 0, den_p = 0, abs_p = 0, num_m = 0, den_m = 0, abs_m = 0;
  for (std::size_t l = 0; l < 2; ++l) {
    num_p += m[l].f.e_p * p[l] * m[l].phi_p;
    den_p += p[l] * m[l].phi_p;
    abs_p += p[l] * std::abs(m[l].phi_p);
    num_m += m[l].f.e_m * p[l] * m[l].phi_m;
    den_m += p[l] * m[l].phi_m;
    abs_m += p[l] * std::abs(m[l].phi_m);
  }
  HalfEddington e;
  if (!degenerate(den_p, abs_p)) e.e_p = num_p / den_p;
  if (!degenerate(den_m, abs_m)) e.e_m = num_m / den_m;
  return e;
}

ProlongationFactors prolongation_factors(const std::array<MaterialPoint, 2>& m,
                                         const std::array<double, 2>& p) {
  double phi_p = 0, gap_p = 0, cur_p = 0, abs_p = 0;
  double phi_m = 0, gap_m = 0, cur_m = 0, abs_m = 0;
  double tot = 0, tot_abs = 0, ct_p = 0, ct_m = 0;
  for (std::size_t l = 0; l < 2; ++l) {
    const MaterialPoint& x = m[l];
    const double width = x.f.c_p - x.f.c_m;
    phi_p += p[l] * x.phi_p;
    gap_p += width * p[l] * x.phi_p;
    cur_p += x.f.c_p * p[l] * x.phi_p;
    abs_p += width * p[l] * std::abs(x.phi_p);
    phi_m += p[l] * x.phi_m;
    gap_m -= width * p[l] * x.phi_m;
    cur_m += x.f.c_m * p[l] * x.phi_m;
    abs_m += width * p[l] * std::abs(x.phi_m);
    const double phi_l = x.phi_p + x.phi_m;
    tot += p[l] * phi_l;
    tot_abs += p[l] * (std::abs(x.phi_p) + std::abs(x.phi_m));
    ct_p += x.f.c_p * p[l] * phi_l;
    ct_m += x.f.c_m * p[l] * phi_l;
  }
  ProlongationFactors f;
  if (!degenerate(gap_p, abs_p)) {
    f.beta_p = phi_p / gap_p;
    f.gamma_p = cur_p / gap_p;
  }
  if (!degenerate(gap_m, abs_m)) {
    f.beta_m = phi_m / gap_m;
    f.gamma_m = cur_m / gap_m;
  }
  if (!degenerate(tot, tot_abs)) {
    f.ct_p = ct_p / tot;
    f.ct_m = ct_m / tot;
  }
  return f;
}

std::array<MaterialPoint, 2> material_point(
    const PartialFluxField& flux, const std::array<MaterialFactors, 2>& factors,
    std::size_t node) {
  std::array<MaterialPoint, 2> m;
  for (std::size_t l = 0; l < 2; ++l) {
    m[l].phi_p = flux.phi_p[l][node];
    m[l].phi_m = flux.phi_m[l][node];
    m[l].f = {factors[l].c_p[node], factors[l].c_m[node], factors[l].e_p[node],
              factors[l].e_m[node]};
  }
  return m;
}

EnsembleCoefficients ensemble_coefficient_field(
    const PartialFluxField& flux, const std::array<MaterialFactors, 2>& factors,
    const ProblemSpec& problem) {
  const std::size_t nn = 2 * problem.n_cells;
  EnsembleCoefficients out;
  out.loqd.resize(nn);
  out.prolongation.resize(nn);
  out.eddington.resize(nn);
  for (std::size_t n = 0; n < nn; ++n) {
    const auto m = material_point(flux, factors, n);
    out.loqd[n] = ensemble_coefficients(m, problem.p, problem.materials);
    out.prolongation[n] = prolongation_factors(m, problem.p);
    out.eddington[n] = ensemble_epm(m, problem.p);
  }
  return out;
}

}  // namespace bsm
