#include "loym.hpp"

#include <cmath>

#include "errors.hpp"
#include "low_order_stencil.hpp"

namespace bsm {

namespace {

using detail::LinearForm;
using detail::Moment;

// Unknowns per cell: phi+_L, phi+_R, phi-_L, phi-_R.
constexpr std::size_t var(Half half, std::size_t node) {
  return (half == Half::Positive ? 0 : 2) + node;
}

struct MaterialClosure {
  const MaterialFactors& f;

  LinearForm half(std::size_t cell, std::size_t node, Half h, Moment kind) const {
    const std::size_t n = node_index(cell, node);
    LinearForm form{};
    if (h == Half::Positive) {
      form[var(h, node)] = kind == Moment::J ? f.c_p[n] : f.e_p[n];
    } else {
      form[var(h, node)] = kind == Moment::J ? f.c_m[n] : f.e_m[n];
    }
    return form;
  }

  LinearForm total(std::size_t cell, std::size_t node, Moment kind) const {
    const LinearForm a = half(cell, node, Half::Positive, kind);
    const LinearForm b = half(cell, node, Half::Negative, kind);
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  }
};

MaterialLowOrderSource coupling_source(const MaterialFactors& f_other,
                                       const NodalField& phi_p_other,
                                       const NodalField& phi_m_other,
                                       double scale, double q) {
  const std::size_t nn = phi_p_other.size();
  MaterialLowOrderSource s{NodalField(nn), NodalField(nn)};
  for (std::size_t n = 0; n < nn; ++n) {
    s.zeroth[n] = q + scale * (f_other.c_p[n] * phi_p_other[n] -
                               f_other.c_m[n] * phi_m_other[n]);
    s.first[n] = scale * (f_other.e_p[n] * phi_p_other[n] -
                          f_other.e_m[n] * phi_m_other[n]);
  }
  return s;
}

void check_finite(const NodalField& v, const char* what) {
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (!std::isfinite(v[n])) {
      throw NumericalError(std::string("non-finite ") + what + " at cell " +
                           std::to_string(n / 2));
    }
  }
}

}  // namespace

MaterialLowOrderResult solve_material_loym(const MaterialFactors& factors,
                                           double sigma_a, double sigma_t,
                                           double removal,
                                           const MaterialLowOrderSource& source,
                                           const InflowMoments& inflow,
                                           double h, std::size_t n_cells) {
  const std::size_t nn = 2 * n_cells;
  if (factors.c_p.size() != nn || source.zeroth.size() != nn ||
      source.first.size() != nn) {
    throw InvalidArgument("low-order inputs do not match mesh");
  }
  BlockTridiagonal sys(n_cells);
  const MaterialClosure closure{factors};
  detail::add_streaming(sys, n_cells, h, closure,
                        {inflow.j_p_left, inflow.k_p_left, inflow.j_m_right,
                         inflow.k_m_right});
  for (std::size_t i = 0; i < n_cells; ++i) {
    std::array<LinearForm, 2> zeroth{}, first{};
    for (std::size_t k = 0; k < 2; ++k) {
      const std::size_t n = node_index(i, k);
      zeroth[k][var(Half::Positive, k)] = sigma_a + removal * factors.c_p[n];
      zeroth[k][var(Half::Negative, k)] = sigma_a - removal * factors.c_m[n];
      first[k][var(Half::Positive, k)] =
          sigma_t * factors.c_p[n] + removal * factors.e_p[n];
      first[k][var(Half::Negative, k)] =
          sigma_t * factors.c_m[n] - removal * factors.e_m[n];
    }
    detail::add_nodal_reaction(sys, i, 0, 2, zeroth[0], zeroth[1]);
    detail::add_nodal_reaction(sys, i, 1, 3, first[0], first[1]);
    detail::add_nodal_source(sys, i, 0, 2, source.zeroth[node_index(i, 0)],
                             source.zeroth[node_index(i, 1)]);
    detail::add_nodal_source(sys, i, 1, 3, source.first[node_index(i, 0)],
                             source.first[node_index(i, 1)]);
  }
  const auto x = sys.solve();
  MaterialLowOrderResult out{NodalField(nn), NodalField(nn), 0.0};
  for (std::size_t i = 0; i < n_cells; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      out.phi_p[node_index(i, k)] = x[i][var(Half::Positive, k)];
      out.phi_m[node_index(i, k)] = x[i][var(Half::Negative, k)];
    }
  }
  out.residual = sys.residual_norm(x);
  check_finite(out.phi_p, "partial flux");
  check_finite(out.phi_m, "partial flux");
  return out;
}

PartialFluxField loym_gs_pass(const std::array<MaterialFactors, 2>& factors,
                              const PartialFluxField& initial,
                              const ProblemSpec& problem) {
  PartialFluxField out = initial;
  const double h = problem.cell_width();
  for (std::size_t l = 0; l < 2; ++l) {
    const std::size_t o = 1 - l;
    const MaterialSpec& mat = problem.materials[l];
    const double scale =
        problem.p[o] / (problem.p[l] * problem.materials[o].lambda);
    const auto src = coupling_source(factors[o], out.phi_p[o], out.phi_m[o],
                                     scale, mat.q);
    auto res = solve_material_loym(factors[l], mat.sigma_a(), mat.sigma_t,
                                   1.0 / mat.lambda, src,
                                   inflow_moments(problem, l), h, problem.n_cells);
    out.phi_p[l] = std::move(res.phi_p);
    out.phi_m[l] = std::move(res.phi_m);
  }
  return out;
}

PartialFluxField modified_loym_solve(const std::array<MaterialFactors, 2>& factors,
                                     const std::vector<HalfEddington>& eddington,
                                     const EnsemblePartialMoments& ensemble,
                                     const ProblemSpec& problem) {
  const std::size_t nn = 2 * problem.n_cells;
  if (eddington.size() != nn || ensemble.phi_p.size() != nn) {
    throw InvalidArgument("ensemble data do not match mesh");
  }
  PartialFluxField out;
  const double h = problem.cell_width();
  for (std::size_t l = 0; l < 2; ++l) {
    const std::size_t o = 1 - l;
    const MaterialSpec& mat = problem.materials[l];
    const double inv_other = 1.0 / problem.materials[o].lambda;
    const double scale = inv_other / problem.p[l];
    MaterialLowOrderSource src{NodalField(nn), NodalField(nn)};
    for (std::size_t n = 0; n < nn; ++n) {
      src.zeroth[n] = mat.q + scale * (ensemble.j_p[n] - ensemble.j_m[n]);
      src.first[n] = scale * (eddington[n].e_p * ensemble.phi_p[n] -
                              eddington[n].e_m * ensemble.phi_m[n]);
    }
    auto res = solve_material_loym(factors[l], mat.sigma_a(), mat.sigma_t,
                                   1.0 / mat.lambda + inv_other, src,
                                   inflow_moments(problem, l), h, problem.n_cells);
    out.phi_p[l] = std::move(res.phi_p);
    out.phi_m[l] = std::move(res.phi_m);
  }
  return out;
}

}  // namespace bsm
