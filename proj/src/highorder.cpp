#include "highorder.hpp"

#include <cmath>

#include "errors.hpp"

namespace bsm {

std::vector<double> sweep_material(std::size_t l, const NodalField& scalar_flux,
                                   std::span<const double> other,
                                   const ProblemSpec& problem) {
  const std::size_t nc = problem.n_cells;
  const AngularQuadrature& quad = problem.quadrature;
  const std::size_t nd = quad.n_directions();
  const std::size_t n_half = quad.n_per_half();
  if (l > 1 || scalar_flux.size() != 2 * nc || other.size() != 2 * nc * nd) {
    throw InvalidArgument("sweep inputs do not match mesh/quadrature");
  }
  const MaterialSpec& mat = problem.materials[l];
  const MaterialSpec& mat_other = problem.materials[1 - l];
  const double p_ratio = problem.p[1 - l] / problem.p[l];
  const double h = problem.cell_width();

  std::vector<double> psi(2 * nc * nd, 0.0);
  auto at = [nd](std::size_t cell, std::size_t node, std::size_t d) {
    return (2 * cell + node) * nd + d;
  };

  for (std::size_t d = 0; d < nd; ++d) {
    const double mu = quad.mu(d);
    const double amu = std::abs(mu);
    const double total = mat.sigma_t + amu / mat.lambda;
    const double couple = amu / mat_other.lambda * p_ratio;
    const double a = amu / h;
    const double half_total = 0.5 * total;

    auto node_source = [&](std::size_t cell, std::size_t node) {
      return 0.5 * mat.sigma_s * scalar_flux[node_index(cell, node)] +
             couple * other[at(cell, node, d)] + 0.5 * mat.q;
    };

    if (mu > 0.0) {
      double inflow = problem.inflow[l].left[d];
      for (std::size_t i = 0; i < nc; ++i) {
        const double sl = node_source(i, 0);
        const double sr = node_source(i, 1);
        const double s_avg = 0.5 * (sl + sr);
        const double s_slope = 0.5 * (sr - sl);
        // [ T/2       a + T/2 ] [L]   [ s_avg + a in   ]
        // [ -3a - T/2 T/2     ] [R] = [ s_slope - 3a in ]
        const double m00 = half_total, m01 = a + half_total;
        const double m10 = -3.0 * a - half_total, m11 = half_total;
        const double b0 = s_avg + a * inflow;
        const double b1 = s_slope - 3.0 * a * inflow;
        const double det = m00 * m11 - m01 * m10;
        const double left = (b0 * m11 - m01 * b1) / det;
        const double right = (m00 * b1 - m10 * b0) / det;
        psi[at(i, 0, d)] = left;
        psi[at(i, 1, d)] = right;
        inflow = right;
      }
    } else {
      double inflow = problem.inflow[l].right[d - n_half];
      for (std::size_t i = nc; i-- > 0;) {
        const double sl = node_source(i, 0);
        const double sr = node_source(i, 1);
        const double s_avg = 0.5 * (sl + sr);
        const double s_slope = 0.5 * (sr - sl);
        // [ a + T/2  T/2      ] [L]   [ s_avg + a in    ]
        // [ -T/2     3a + T/2 ] [R] = [ s_slope + 3a in ]
        const double m00 = a + half_total, m01 = half_total;
        const double m10 = -half_total, m11 = 3.0 * a + half_total;
        const double b0 = s_avg + a * inflow;
        const double b1 = s_slope + 3.0 * a * inflow;
        const double det = m00 * m11 - m01 * m10;
        const double left = (b0 * m11 - m01 * b1) / det;
        const double right = (m00 * b1 - m10 * b0) / det;
        psi[at(i, 0, d)] = left;
        psi[at(i, 1, d)] = right;
        inflow = left;
      }
    }
  }
  return psi;
}

void gauss_seidel_highorder(const ProblemSpec& problem,
                            const std::array<NodalField, 2>& scalar_flux,
                            AngularFluxField& psi, int n_max) {
  if (n_max < 1) {
    throw InvalidArgument("n_max must be >= 1");
  }
  for (int n = 0; n < n_max; ++n) {
    psi.psi[0] = sweep_material(0, scalar_flux[0], psi.psi[1], problem);
    psi.psi[1] = sweep_material(1, scalar_flux[1], psi.psi[0], problem);
  }
}

NodalMoments angular_moments(std::span<const double> psi_l,
                             const AngularQuadrature& quad,
                             std::size_t n_cells) {
  const std::size_t nd = quad.n_directions();
  const std::size_t nh = quad.n_per_half();
  if (psi_l.size() != 2 * n_cells * nd) {
    throw InvalidArgument("angular flux does not match mesh/quadrature");
  }
  const std::size_t nn = 2 * n_cells;
  NodalMoments m;
  for (NodalField* f : {&m.phi, &m.phi_p, &m.phi_m, &m.j_p, &m.j_m, &m.k_p, &m.k_m}) {
    f->assign(nn, 0.0);
  }
  const auto w = quad.weights();
  const auto mu = quad.nodes();
  for (std::size_t n = 0; n < nn; ++n) {
    const double* v = psi_l.data() + n * nd;
    double pp = 0, jp = 0, kp = 0, pm = 0, jm = 0, km = 0;
    for (std::size_t m_ = 0; m_ < nh; ++m_) {
      const double vp = v[m_];
      const double vm = v[nh + m_];
      pp += w[m_] * vp;
      jp += w[m_] * mu[m_] * vp;
      kp += w[m_] * mu[m_] * mu[m_] * vp;
      pm += w[m_] * vm;
      jm -= w[m_] * mu[m_] * vm;
      km += w[m_] * mu[m_] * mu[m_] * vm;
    }
    m.phi_p[n] = pp;
    m.phi_m[n] = pm;
    m.j_p[n] = jp;
    m.j_m[n] = jm;
    m.k_p[n] = kp;
    m.k_m[n] = km;
    m.phi[n] = pp + pm;
  }
  return m;
}

InflowMoments inflow_moments(const ProblemSpec& problem, std::size_t l) {
  const AngularQuadrature& quad = problem.quadrature;
  const auto& left = problem.inflow[l].left;
  const auto& right = problem.inflow[l].right;
  InflowMoments out;
  out.phi_p_left = quad.half_moment(left, 0, Half::Positive, MomentConvention::Prefixed);
  out.j_p_left = quad.half_moment(left, 1, Half::Positive, MomentConvention::Prefixed);
  out.k_p_left = quad.half_moment(left, 2, Half::Positive, MomentConvention::Prefixed);
  out.phi_m_right = quad.half_moment(right, 0, Half::Negative, MomentConvention::Prefixed);
  out.j_m_right = quad.half_moment(right, 1, Half::Negative, MomentConvention::Prefixed);
  out.k_m_right = quad.half_moment(right, 2, Half::Negative, MomentConvention::Prefixed);
  return out;
}

}  // namespace bsm
