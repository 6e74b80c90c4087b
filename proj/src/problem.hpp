#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadrature.hpp"

namespace bsm {

struct MaterialSpec {
  double sigma_t = 1.0;  // [1/cm]
  double sigma_s = 0.0;  // [1/cm]
  double lambda = 1.0;   // mean chord length [cm]
  double q = 0.0;        // isotropic source density

  double sigma_a() const { return sigma_t - sigma_s; }
};

// Incoming angular flux on one boundary, one value per positive quadrature
// node. `left` enters at x = 0 travelling with +mu_m, `right` enters at x = X
// travelling with -mu_m. Empty vectors mean vacuum.
struct BoundaryInflow {
  std::vector<double> left;
  std::vector<double> right;
};

struct ProblemSpec {
  std::string name;
  std::array<MaterialSpec, 2> materials;
  double slab_length = 1.0;
  std::size_t n_cells = 1;
  AngularQuadrature quadrature{2};
  std::array<BoundaryInflow, 2> inflow;  // expanded to full node vectors
  std::array<double, 2> p{0.5, 0.5};     // mixing probabilities

  double cell_width() const {
    return slab_length / static_cast<double>(n_cells);
  }
};

/// p_l = lambda_l / (lambda_1 + lambda_2).
std::pair<double, double> mixing_probabilities(double lambda_1, double lambda_2);

/// Validates the data, fills mixing probabilities and expands vacuum inflow
/// to zero vectors of the quadrature size.
ProblemSpec make_problem(std::string name, std::array<MaterialSpec, 2> materials,
                         double slab_length, std::size_t n_cells,
                         std::size_t n_per_half,
                         std::array<BoundaryInflow, 2> inflow = {});

void validate(const ProblemSpec& problem);

// ---------------------------------------------------------------------------
// Benchmark catalog: four families (A-D) of three problems each. All have
// X = 100, vacuum boundaries and unit sources in both materials.

enum class TestId { A1, A2, A3, B1, B2, B3, C1, C2, C3, D1, D2, D3 };

inline constexpr std::array<TestId, 12> kAllTests{
    TestId::A1, TestId::A2, TestId::A3, TestId::B1, TestId::B2, TestId::B3,
    TestId::C1, TestId::C2, TestId::C3, TestId::D1, TestId::D2, TestId::D3};

std::string_view to_string(TestId id);
TestId parse_test_id(std::string_view text);

struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(Rational a, Rational b);
};

Rational reduced(Rational r);

struct CatalogMaterial {
  Rational sigma_t;
  Rational scattering_ratio;
  Rational lambda;
  Rational q;
};

struct CatalogEntry {
  TestId id;
  std::array<CatalogMaterial, 2> materials;
  // Tabulated lambda_l * sigma_t,l, kept for the exactness check.
  std::array<Rational, 2> lambda_sigma_t;
};

const CatalogEntry& catalog_entry(TestId id);

ProblemSpec build_test(TestId id, std::size_t n_cells = 100,
                       std::size_t n_per_half = 4);

}  // namespace bsm
