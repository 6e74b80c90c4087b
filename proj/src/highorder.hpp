#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "problem.hpp"

namespace bsm {

// Linear-discontinuous values are stored in nodal form: each cell carries the
// values at its left (node 0) and right (node 1) ends. The cell average is
// (L + R) / 2 and the LD slope moment is (R - L) / 2. On an upwind sweep the
// outflow edge value of a cell is its downstream node, so nodal values double
// as upwinded edge values.
inline constexpr std::size_t node_index(std::size_t cell, std::size_t node) {
  return 2 * cell + node;
}

// One value per LD node: 2 * n_cells entries.
using NodalField = std::vector<double>;

inline double cell_average(const NodalField& f, std::size_t cell) {
  return 0.5 * (f[2 * cell] + f[2 * cell + 1]);
}
inline double cell_slope(const NodalField& f, std::size_t cell) {
  return 0.5 * (f[2 * cell + 1] - f[2 * cell]);
}

/// Per-material angular flux. psi[l][(2 * cell + node) * n_dirs + d] with the
/// direction ordering of AngularQuadrature::mu.
struct AngularFluxField {
  std::size_t n_cells = 0;
  std::size_t n_dirs = 0;
  std::array<std::vector<double>, 2> psi;

  AngularFluxField() = default;
  AngularFluxField(std::size_t cells, std::size_t dirs)
      : n_cells(cells), n_dirs(dirs) {
    psi[0].assign(2 * cells * dirs, 0.0);
    psi[1].assign(2 * cells * dirs, 0.0);
  }

  double& at(std::size_t l, std::size_t cell, std::size_t node, std::size_t d) {
    return psi[l][(2 * cell + node) * n_dirs + d];
  }
  double at(std::size_t l, std::size_t cell, std::size_t node,
            std::size_t d) const {
    return psi[l][(2 * cell + node) * n_dirs + d];
  }
  // All directions at one node.
  std::span<const double> node_values(std::size_t l, std::size_t n) const {
    return std::span<const double>(psi[l]).subspan(n * n_dirs, n_dirs);
  }
};

// Half-range angular moments at every node, prefixed convention:
// phi+- >= 0, j+ >= 0 >= j-, k+- = half-range mu^2 moments (>= 0).
struct NodalMoments {
  NodalField phi, phi_p, phi_m, j_p, j_m, k_p, k_m;
};

/// One transport sweep of material `l` (0 or 1). Solves
///   mu dpsi/dx + (sigma_t + |mu|/lambda_l) psi
///       = sigma_s phi_l / 2 + (|mu| / lambda_l') (p_l' / p_l) psi_l' + q_l / 2
/// with the LD scheme, marching left to right for mu > 0 and right to left
/// for mu < 0. `scalar_flux` is the nodal phi_l used in the scattering source,
/// `other` the coupling flux of material l' in the psi layout.
std::vector<double> sweep_material(std::size_t l, const NodalField& scalar_flux,
                                   std::span<const double> other,
                                   const ProblemSpec& problem);

/// n_max Gauss-Seidel cycles over the materials (1 with lagged psi_2, then 2
/// with the fresh psi_1). Scattering sources stay fixed.
void gauss_seidel_highorder(const ProblemSpec& problem,
                            const std::array<NodalField, 2>& scalar_flux,
                            AngularFluxField& psi, int n_max);

NodalMoments angular_moments(std::span<const double> psi_l,
                             const AngularQuadrature& quad,
                             std::size_t n_cells);

/// Half-range moments of the boundary inflow of material l (natural signs).
struct InflowMoments {
  double phi_p_left = 0.0, j_p_left = 0.0, k_p_left = 0.0;
  double phi_m_right = 0.0, j_m_right = 0.0, k_m_right = 0.0;
};
InflowMoments inflow_moments(const ProblemSpec& problem, std::size_t l);

}  // namespace bsm
