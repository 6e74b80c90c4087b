#include "problem.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace bsm {

Rational reduced(Rational r) {
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  const long long g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

Rational operator*(Rational a, Rational b) {
  return reduced({a.num * b.num, a.den * b.den});
}

bool operator==(Rational a, Rational b) {
  const Rational x = reduced(a);
  const Rational y = reduced(b);
  return x.num == y.num && x.den == y.den;
}

std::pair<double, double> mixing_probabilities(double lambda_1,
                                               double lambda_2) {
  if (!(lambda_1 > 0.0) || !(lambda_2 > 0.0)) {
    throw InvalidArgument("mean chord lengths must be positive");
  }
  const double total = lambda_1 + lambda_2;
  const double p1 = lambda_1 / total;
  return {p1, 1.0 - p1};
}

void validate(const ProblemSpec& problem) {
  for (std::size_t l = 0; l < 2; ++l) {
    const MaterialSpec& m = problem.materials[l];
    const std::string tag = "material " + std::to_string(l + 1) + ": ";
    if (!std::isfinite(m.sigma_t) || !(m.sigma_t > 0.0)) {
      throw InvalidArgument(tag + "sigma_t must be positive");
    }
    if (!std::isfinite(m.sigma_s) || m.sigma_s < 0.0 ||
        m.sigma_s > m.sigma_t) {
      throw InvalidArgument(tag + "sigma_s must lie in [0, sigma_t]");
    }
    if (!std::isfinite(m.lambda) || !(m.lambda > 0.0)) {
      throw InvalidArgument(tag + "lambda must be positive");
    }
    if (!std::isfinite(m.q) || m.q < 0.0) {
      throw InvalidArgument(tag + "q must be nonnegative");
    }
    const std::size_t n = problem.quadrature.n_per_half();
    for (const auto* side : {&problem.inflow[l].left, &problem.inflow[l].right}) {
      if (side->size() != n) {
        throw InvalidArgument(tag + "inflow size does not match quadrature");
      }
      for (double v : *side) {
        if (!std::isfinite(v) || v < 0.0) {
          throw InvalidArgument(tag + "inflow values must be nonnegative");
        }
      }
    }
  }
  if (!std::isfinite(problem.slab_length) || !(problem.slab_length > 0.0)) {
    throw InvalidArgument("slab length must be positive");
  }
  if (problem.n_cells == 0) {
    throw InvalidArgument("number of cells must be >= 1");
  }
}

ProblemSpec make_problem(std::string name, std::array<MaterialSpec, 2> materials,
                         double slab_length, std::size_t n_cells,
                         std::size_t n_per_half,
                         std::array<BoundaryInflow, 2> inflow) {
  ProblemSpec problem;
  problem.name = std::move(name);
  problem.materials = materials;
  problem.slab_length = slab_length;
  problem.n_cells = n_cells;
  problem.quadrature = build_double_gauss_legendre(n_per_half);
  for (auto& side : inflow) {
    if (side.left.empty()) side.left.assign(n_per_half, 0.0);
    if (side.right.empty()) side.right.assign(n_per_half, 0.0);
  }
  problem.inflow = std::move(inflow);
  const auto [p1, p2] =
      mixing_probabilities(materials[0].lambda, materials[1].lambda);
  problem.p = {p1, p2};
  validate(problem);
  return problem;
}

namespace {

constexpr std::array<std::string_view, 12> kTestNames{
    "A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D2", "D3"};

CatalogEntry entry(TestId id, Rational st1, Rational c1, Rational l1,
                   Rational st2, Rational c2, Rational l2, Rational ls1,
                   Rational ls2) {
  return {id,
          {CatalogMaterial{st1, c1, l1, {1, 1}},
           CatalogMaterial{st2, c2, l2, {1, 1}}},
          {ls1, ls2}};
}

const std::array<CatalogEntry, 12>& catalog() {
  static const std::array<CatalogEntry, 12> table = [] {
    const Rational zero{0, 1}, one{1, 1}, c9{9, 10};
    // family: (sigma_t1, lambda_1, sigma_t2, lambda_2, lambda*sigma_t)
    struct Family {
      Rational st1, l1, st2, l2, ls1, ls2;
    };
    const std::array<Family, 4> families{{
        {{10, 99}, {99, 100}, {100, 11}, {11, 100}, {1, 10}, {1, 1}},
        {{10, 99}, {99, 10}, {100, 11}, {11, 10}, {1, 1}, {10, 1}},
        {{2, 101}, {101, 20}, {200, 101}, {101, 20}, {1, 10}, {10, 1}},
        {{1, 99}, {99, 100}, {10, 11}, {11, 10}, {1, 100}, {1, 1}},
    }};
    // scattering ratios per problem within a family: (c1, c2)
    const std::array<std::pair<Rational, Rational>, 3> ratios{
        {{zero, one}, {one, zero}, {c9, c9}}};
    std::array<CatalogEntry, 12> out{};
    for (std::size_t f = 0; f < 4; ++f) {
      for (std::size_t k = 0; k < 3; ++k) {
        const Family& fam = families[f];
        out[3 * f + k] =
            entry(kAllTests[3 * f + k], fam.st1, ratios[k].first, fam.l1,
                  fam.st2, ratios[k].second, fam.l2, fam.ls1, fam.ls2);
      }
    }
    return out;
  }();
  return table;
}

}  // namespace

std::string_view to_string(TestId id) {
  return kTestNames[static_cast<std::size_t>(id)];
}

TestId parse_test_id(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (std::size_t i = 0; i < kTestNames.size(); ++i) {
    if (kTestNames[i] == upper) return kAllTests[i];
  }
  throw InvalidArgument("unknown test id '" + std::string(text) +
                        "' (expected A1..D3)");
}

const CatalogEntry& catalog_entry(TestId id) {
  return catalog()[static_cast<std::size_t>(id)];
}

ProblemSpec build_test(TestId id, std::size_t n_cells, std::size_t n_per_half) {
  const CatalogEntry& e = catalog_entry(id);
  std::array<MaterialSpec, 2> mats{};
  for (std::size_t l = 0; l < 2; ++l) {
    const CatalogMaterial& m = e.materials[l];
    mats[l].sigma_t = m.sigma_t.value();
    mats[l].sigma_s = (m.sigma_t * m.scattering_ratio).value();
    mats[l].lambda = m.lambda.value();
    mats[l].q = m.q.value();
  }
  return make_problem(std::string(to_string(id)), mats, 100.0, n_cells,
                      n_per_half);
}

}  // namespace bsm
