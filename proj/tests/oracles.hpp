#pragma once

// Dense reference solvers for the test suites. Each assembles its discrete
// system directly from the Galerkin weak form with node test functions
// (one row per LD node), which is a different arrangement from the
// average/slope rows used by the library, and solves it with Eigen.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "closures.hpp"
#include "highorder.hpp"
#include "loqd.hpp"

namespace oracle {

struct DenseSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

/// Both materials' LD transport equations with the given scattering fluxes,
/// coupling kept in the matrix. Unknown ordering: material 0 then 1, each in
/// the AngularFluxField layout.
DenseSystem coupled_highorder(const bsm::ProblemSpec& problem,
                              const std::array<bsm::NodalField, 2>& phi);

/// Material l's sweep solved densely with the other material's psi fixed.
std::vector<double> dense_sweep(std::size_t l, const bsm::NodalField& phi,
                                const std::vector<double>& other,
                                const bsm::ProblemSpec& problem);

/// Max-norm residual of the coupled system for the given angular fluxes.
double coupled_residual(const DenseSystem& sys, const bsm::AngularFluxField& psi);

struct PartialFlux {
  bsm::NodalField phi_p, phi_m;
};

/// Isotropic-closure half-range (DP1) system of one material.
PartialFlux dp1(double sigma_a, double sigma_t, double removal,
                const bsm::NodalField& s0, const bsm::NodalField& s1,
                const bsm::InflowMoments& inflow, double h, std::size_t n_cells);

/// LD P1 diffusion with Marshak-split upwind edges and constant coefficients.
bsm::EnsembleMoments diffusion(double sigma_a, double sigma_t,
                               const bsm::NodalField& q,
                               const bsm::EnsembleInflow& inflow, double h,
                               std::size_t n_cells);

/// One-material LD S_N problem with vacuum boundaries, scattering inside the
/// matrix. Returns nodal scalar flux.
bsm::NodalField one_material(double sigma_t, double sigma_s, double q,
                             double length, std::size_t n_cells,
                             const bsm::AngularQuadrature& quad);

}  // namespace oracle
