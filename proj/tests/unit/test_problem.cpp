#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "problem.hpp"
#include "problem_file.hpp"

using namespace bsm;

TEST_CASE("mixing probabilities") {
  auto [a, b] = mixing_probabilities(0.99, 0.11);
  CHECK(a == doctest::Approx(0.9));
  CHECK(b == doctest::Approx(0.1));
  auto [c, d] = mixing_probabilities(9.9, 1.1);
  CHECK(c == doctest::Approx(0.9));
  CHECK(d == doctest::Approx(0.1));
  auto [e, f] = mixing_probabilities(2.0, 2.0);
  CHECK(e == 0.5);
  CHECK(f == 0.5);
  CHECK_THROWS_AS(mixing_probabilities(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(mixing_probabilities(1.0, -1.0), InvalidArgument);
}

TEST_CASE("catalog products reproduce the tabulated lambda sigma_t") {
  for (TestId id : kAllTests) {
    const CatalogEntry& e = catalog_entry(id);
    for (std::size_t l = 0; l < 2; ++l) {
      const Rational prod = e.materials[l].sigma_t * e.materials[l].lambda;
      CHECK_MESSAGE(prod == e.lambda_sigma_t[l], to_string(id) << " material " << l + 1);
    }
  }
  CHECK(catalog_entry(TestId::D1).lambda_sigma_t[0] == Rational{1, 100});
  CHECK(catalog_entry(TestId::D1).lambda_sigma_t[1] == Rational{1, 1});
}

TEST_CASE("catalog test data") {
  const ProblemSpec a1 = build_test(TestId::A1);
  CHECK(a1.n_cells == 100);
  CHECK(a1.slab_length == 100.0);
  CHECK(a1.quadrature.n_per_half() == 4);
  CHECK(a1.materials[0].sigma_t == doctest::Approx(10.0 / 99.0));
  CHECK(a1.materials[0].sigma_s == 0.0);
  CHECK(a1.materials[0].lambda == doctest::Approx(0.99));
  CHECK(a1.materials[1].sigma_t == doctest::Approx(100.0 / 11.0));
  CHECK(a1.materials[1].sigma_s == doctest::Approx(100.0 / 11.0));
  CHECK(a1.materials[1].lambda == doctest::Approx(0.11));
  CHECK(a1.materials[0].q == 1.0);
  CHECK(a1.materials[1].q == 1.0);
  for (double v : a1.inflow[0].left) CHECK(v == 0.0);

  const ProblemSpec c3 = build_test(TestId::C3);
  CHECK(c3.materials[0].lambda == doctest::Approx(101.0 / 20.0));
  CHECK(c3.materials[1].lambda == doctest::Approx(101.0 / 20.0));
  CHECK(c3.materials[0].sigma_s / c3.materials[0].sigma_t == doctest::Approx(0.9));
  CHECK(c3.materials[1].sigma_s / c3.materials[1].sigma_t == doctest::Approx(0.9));

  const ProblemSpec small = build_test(TestId::B2, 10, 2);
  CHECK(small.n_cells == 10);
  CHECK(small.quadrature.n_per_half() == 2);
}

TEST_CASE("test ids") {
  CHECK(parse_test_id("A1") == TestId::A1);
  CHECK(parse_test_id("d3") == TestId::D3);
  CHECK(to_string(TestId::C2) == "C2");
  CHECK_THROWS_AS(parse_test_id("Z9"), InvalidArgument);
  CHECK_THROWS_AS(parse_test_id(""), InvalidArgument);
}

TEST_CASE("validation rejects bad data") {
  MaterialSpec good{1.0, 0.5, 1.0, 1.0};
  MaterialSpec bad_s{1.0, 1.5, 1.0, 1.0};
  MaterialSpec bad_l{1.0, 0.5, 0.0, 1.0};
  CHECK_NOTHROW(make_problem("ok", {good, good}, 10.0, 5, 2));
  CHECK_THROWS_AS(make_problem("s", {good, bad_s}, 10.0, 5, 2), InvalidArgument);
  CHECK_THROWS_AS(make_problem("l", {bad_l, good}, 10.0, 5, 2), InvalidArgument);
  CHECK_THROWS_AS(make_problem("x", {good, good}, 0.0, 5, 2), InvalidArgument);
  CHECK_THROWS_AS(make_problem("n", {good, good}, 1.0, 0, 2), InvalidArgument);
  std::array<BoundaryInflow, 2> wrong;
  wrong[0].left = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(make_problem("i", {good, good}, 1.0, 2, 2, wrong), InvalidArgument);
}

static const char* kFile = R"(
# two-material test
[material.1]
sigma_t = 10/99
sigma_s = 0
lambda  = 99/100
q = 1

[material.2]
sigma_t = 100/11   # pure scatterer
sigma_s = 100/11
lambda  = 0.11
q = 1

[slab]
length = 100
cells = 20

[boundary]
inflow.1.left = 0.5
inflow.2.right = 0.1, 0.2
)";

TEST_CASE("problem file parsing") {
  const ProblemDescription d = parse_problem_text(kFile);
  CHECK(d.materials[0].sigma_t == doctest::Approx(10.0 / 99.0));
  CHECK(d.materials[1].lambda == doctest::Approx(0.11));
  CHECK(d.slab_length == 100.0);
  CHECK(d.n_cells == 20);
  const ProblemSpec p = to_problem(d, 2);
  CHECK(p.n_cells == 20);
  CHECK(p.inflow[0].left == std::vector<double>{0.5, 0.5});
  CHECK(p.inflow[0].right == std::vector<double>{0.0, 0.0});
  CHECK(p.inflow[1].right == std::vector<double>{0.1, 0.2});
  CHECK(to_problem(d, 2, 7).n_cells == 7);
  // A two-value list cannot be used with four nodes per half.
  CHECK_THROWS_AS(to_problem(d, 4), InvalidArgument);
}

TEST_CASE("problem file grammar is fail-closed") {
  const std::string base =
      "[material.1]\nsigma_t=1\nsigma_s=0\nlambda=1\nq=1\n"
      "[material.2]\nsigma_t=1\nsigma_s=0\nlambda=1\nq=1\n"
      "[slab]\nlength=10\n";
  CHECK_NOTHROW(parse_problem_text(base));
  CHECK(parse_problem_text(base).n_cells == 100);
  CHECK_THROWS_AS(parse_problem_text(base + "colour = red\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text(base + "[extras]\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text(base + "length = 3\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text(base + "[boundary]\ninflow.3.left = 1\n"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text(base + "[boundary]\ninflow.1.left = x\n"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text(base + "[boundary]\ninflow.1.left = 1/0\n"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text("[slab]\nlength=1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_problem_text("sigma_t = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(load_problem_file("/nonexistent/problem.ini"), IoError);
}
