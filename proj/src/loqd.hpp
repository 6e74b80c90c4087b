#pragma once

#include <vector>

#include "closures.hpp"

namespace bsm {

/// Ensemble scalar flux and current, nodal.
struct EnsembleMoments {
  NodalField phi;
  NodalField current;
};

/// Ensemble boundary inflow moments <phi^in+->, <J^in+->, <K^in+-> (natural
/// signs, so j_m_right <= 0).
struct EnsembleInflow {
  double phi_p_left = 0.0, j_p_left = 0.0, k_p_left = 0.0;
  double phi_m_right = 0.0, j_m_right = 0.0, k_m_right = 0.0;
};

EnsembleInflow ensemble_inflow(const ProblemSpec& problem);

/// Direct solve of the quasidiffusion system
///   d<J>/dx + <<sigma_a>> <phi> = <q>
///   d(<<E>> <phi>)/dx + <<sigma_t>> <J> + <<eta>> <phi> = 0
/// in LD form. Cell-interior terms use the nodal <phi>, <J>; edge fluxes are
/// upwinded by splitting each node into half-range parts with the
/// prolongation factors, <phi+-> = <<beta+->> (<J> - <<C~-+>> <phi>). At the
/// slab ends this gives
///   <J>(0) = <<C->> (<phi>(0) - <phi^in+>) + <J^in+>
///   <J>(X) = <<C+>> (<phi>(X) - <phi^in->) + <J^in->.
/// `source` is the nodal ensemble source <q>.
EnsembleMoments solve_loqd(const EnsembleCoefficients& coeffs,
                           const NodalField& source, const EnsembleInflow& inflow,
                           double h, std::size_t n_cells);

/// Upwinded edge currents J_{i+1/2}, i = -1..n_cells-1 (n_cells + 1 values).
std::vector<double> loqd_edge_currents(const EnsembleMoments& m,
                                       const EnsembleCoefficients& coeffs,
                                       const EnsembleInflow& inflow,
                                       std::size_t n_cells);

}  // namespace bsm
