#include "loqd.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "low_order_stencil.hpp"

namespace bsm {

namespace {

using detail::LinearForm;
using detail::Moment;

// Unknowns per cell: <phi>_L, <phi>_R, <J>_L, <J>_R.
constexpr std::size_t phi_var(std::size_t node) { return node; }
constexpr std::size_t cur_var(std::size_t node) { return 2 + node; }

struct EnsembleClosure {
  const EnsembleCoefficients& c;

  // <phi+-> = <<beta+->> b, <J+-> = <<gamma+->> b, <K+-> = <<E+->> <phi+->
  // with b = <J> - <<C~-+>> <phi> at the node.
  LinearForm half(std::size_t cell, std::size_t node, Half h, Moment kind) const {
    const std::size_t n = node_index(cell, node);
    const ProlongationFactors& pf = c.prolongation[n];
    const bool pos = h == Half::Positive;
    double scale = 0.0;
    if (kind == Moment::J) {
      scale = pos ? pf.gamma_p : pf.gamma_m;
    } else {
      scale = (pos ? pf.beta_p : pf.beta_m) *
              (pos ? c.eddington[n].e_p : c.eddington[n].e_m);
    }
    LinearForm form{};
    form[phi_var(node)] = -scale * (pos ? pf.ct_m : pf.ct_p);
    form[cur_var(node)] = scale;
    return form;
  }

  LinearForm total(std::size_t cell, std::size_t node, Moment kind) const {
    LinearForm form{};
    if (kind == Moment::J) {
      form[cur_var(node)] = 1.0;
    } else {
      form[phi_var(node)] = c.loqd[node_index(cell, node)].e;
    }
    return form;
  }
};

}  // namespace

EnsembleInflow ensemble_inflow(const ProblemSpec& problem) {
  EnsembleInflow e;
  for (std::size_t l = 0; l < 2; ++l) {
    const InflowMoments m = inflow_moments(problem, l);
    const double p = problem.p[l];
    e.phi_p_left += p * m.phi_p_left;
    e.j_p_left += p * m.j_p_left;
    e.k_p_left += p * m.k_p_left;
    e.phi_m_right += p * m.phi_m_right;
    e.j_m_right += p * m.j_m_right;
    e.k_m_right += p * m.k_m_right;
  }
  return e;
}

EnsembleMoments solve_loqd(const EnsembleCoefficients& coeffs,
                           const NodalField& source, const EnsembleInflow& inflow,
                           double h, std::size_t n_cells) {
  const std::size_t nn = 2 * n_cells;
  if (coeffs.loqd.size() != nn || coeffs.prolongation.size() != nn ||
      coeffs.eddington.size() != nn || source.size() != nn) {
    throw InvalidArgument("quasidiffusion inputs do not match mesh");
  }
  BlockTridiagonal sys(n_cells);
  const EnsembleClosure closure{coeffs};
  detail::add_streaming(sys, n_cells, h, closure,
                        {inflow.j_p_left, inflow.k_p_left, inflow.j_m_right,
                         inflow.k_m_right});
  for (std::size_t i = 0; i < n_cells; ++i) {
    std::array<LinearForm, 2> balance{}, first{};
    for (std::size_t k = 0; k < 2; ++k) {
      const LoqdCoefficients& c = coeffs.loqd[node_index(i, k)];
      balance[k][phi_var(k)] = c.sigma_a;
      first[k][cur_var(k)] = c.sigma_t;
      first[k][phi_var(k)] = c.eta;
    }
    detail::add_nodal_reaction(sys, i, 0, 2, balance[0], balance[1]);
    detail::add_nodal_reaction(sys, i, 1, 3, first[0], first[1]);
    detail::add_nodal_source(sys, i, 0, 2, source[node_index(i, 0)],
                             source[node_index(i, 1)]);
  }
  const auto x = sys.solve();
  EnsembleMoments out{NodalField(nn), NodalField(nn)};
  for (std::size_t i = 0; i < n_cells; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      out.phi[node_index(i, k)] = x[i][phi_var(k)];
      out.current[node_index(i, k)] = x[i][cur_var(k)];
    }
  }
  for (std::size_t n = 0; n < nn; ++n) {
    if (!std::isfinite(out.phi[n]) || !std::isfinite(out.current[n])) {
      throw NumericalError("non-finite ensemble flux at cell " +
                           std::to_string(n / 2));
    }
  }
  return out;
}

std::vector<double> loqd_edge_currents(const EnsembleMoments& m,
                                       const EnsembleCoefficients& coeffs,
                                       const EnsembleInflow& inflow,
                                       std::size_t n_cells) {
  const EnsembleClosure closure{coeffs};
  auto eval = [&](std::size_t cell, std::size_t node, Half h) {
    const LinearForm f = closure.half(cell, node, h, Moment::J);
    const std::size_t l = node_index(cell, 0), r = node_index(cell, 1);
    return f[0] * m.phi[l] + f[1] * m.phi[r] + f[2] * m.current[l] +
           f[3] * m.current[r];
  };
  std::vector<double> edges(n_cells + 1);
  for (std::size_t e = 0; e <= n_cells; ++e) {
    const double from_left = e == 0 ? inflow.j_p_left : eval(e - 1, 1, Half::Positive);
    const double from_right = e == n_cells ? inflow.j_m_right : eval(e, 0, Half::Negative);
    edges[e] = from_left + from_right;
  }
  return edges;
}

}  // namespace bsm
