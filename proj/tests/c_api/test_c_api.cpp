#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "bsm/bsm.h"

namespace {

const char* kText = R"(
[material.1]
sigma_t = 1
sigma_s = 0.9
lambda = 1
q = 1
[material.2]
sigma_t = 1
sigma_s = 0.9
lambda = 1
q = 1
[slab]
length = 5
cells = 10
)";

}  // namespace

TEST_CASE("library metadata") {
  CHECK(std::string(bsm_version()).size() > 0);
  CHECK(bsm_test_count() == 12);
  CHECK(std::string(bsm_test_name(0)) == "A1");
  CHECK(std::string(bsm_test_name(11)) == "D3");
  CHECK(bsm_test_name(12) == nullptr);
  CHECK(bsm_test_name(-1) == nullptr);
  CHECK(std::string(bsm_status_string(BSM_ERR_IO)) == "i/o error");
  bsm_options o;
  bsm_options_default(&o);
  CHECK(o.epsilon == 1e-10);
  CHECK(o.n_max == 1);
}

TEST_CASE("invalid input is reported with a message") {
  bsm_problem* p = reinterpret_cast<bsm_problem*>(1);
  CHECK(bsm_problem_from_test("Z9", 0, 0, &p) == BSM_ERR_INVALID);
  CHECK(p == nullptr);
  CHECK(std::string(bsm_last_error()).find("Z9") != std::string::npos);
  CHECK(bsm_problem_from_test(nullptr, 0, 0, &p) == BSM_ERR_INVALID);
  CHECK(bsm_problem_from_test("A1", 0, 0, nullptr) == BSM_ERR_INVALID);
  CHECK(bsm_problem_from_file("/nonexistent/problem.txt", 0, 0, &p) == BSM_ERR_IO);
  CHECK(bsm_problem_from_text("[slab]\nlength = 1\n", 0, 0, &p) == BSM_ERR_INVALID);
  CHECK(bsm_solve(nullptr, BSM_ALGORITHM_MULTILEVEL, nullptr, nullptr) == BSM_ERR_INVALID);
  CHECK(bsm_result_history_length(nullptr) == 0);
  CHECK(bsm_problem_name(nullptr) == nullptr);
}

TEST_CASE("solve through the handles") {
  bsm_problem* p = nullptr;
  REQUIRE(bsm_problem_from_test("b2", 20, 2, &p) == BSM_OK);
  CHECK(bsm_problem_cells(p) == 20);
  CHECK(std::string(bsm_problem_name(p)) == "B2");

  bsm_options o;
  bsm_options_default(&o);
  o.n_max = 2;
  bsm_result* r = nullptr;
  REQUIRE(bsm_solve(p, BSM_ALGORITHM_MULTILEVEL, &o, &r) == BSM_OK);
  bsm_summary s;
  REQUIRE(bsm_result_summary(r, &s) == BSM_OK);
  CHECK(s.converged == 1);
  CHECK(s.n_max == 2);
  CHECK(s.n_cells == 20);
  CHECK(s.iterations == bsm_result_history_length(r));
  CHECK(s.rho_estimate > 0.0);

  bsm_history_row h;
  REQUIRE(bsm_result_history_row(r, 0, &h) == BSM_OK);
  CHECK(h.s == 1);
  CHECK(h.rho_defined == 0);
  CHECK(bsm_result_history_row(r, s.iterations, &h) == BSM_ERR_INVALID);

  REQUIRE(bsm_result_cell_count(r) == 20);
  bsm_flux_row f;
  REQUIRE(bsm_result_flux_row(r, 19, &f) == BSM_OK);
  CHECK(f.x_center > 0.0);
  CHECK(f.phi_ens > 0.0);
  CHECK(bsm_result_flux_row(r, 20, &f) == BSM_ERR_INVALID);

  o.epsilon = -1.0;
  bsm_result* bad = nullptr;
  CHECK(bsm_solve(p, BSM_ALGORITHM_MULTILEVEL, &o, &bad) == BSM_ERR_INVALID);
  CHECK(bad == nullptr);
  CHECK(bsm_solve(p, static_cast<bsm_algorithm>(7), nullptr, &bad) == BSM_ERR_INVALID);

  bsm_result_destroy(r);
  bsm_problem_destroy(p);
}

TEST_CASE("problem text and file input") {
  bsm_problem* p = nullptr;
  REQUIRE(bsm_problem_from_text(kText, 0, 2, &p) == BSM_OK);
  CHECK(bsm_problem_cells(p) == 10);
  bsm_result* r = nullptr;
  REQUIRE(bsm_solve(p, BSM_ALGORITHM_SOURCE_ITERATION, nullptr, &r) == BSM_OK);
  bsm_summary s;
  bsm_result_summary(r, &s);
  CHECK(s.algorithm == BSM_ALGORITHM_SOURCE_ITERATION);
  bsm_result_destroy(r);
  bsm_problem_destroy(p);

  const std::string path = "c_api_problem.txt";
  std::FILE* fp = std::fopen(path.c_str(), "w");
  REQUIRE(fp != nullptr);
  std::fputs(kText, fp);
  std::fclose(fp);
  REQUIRE(bsm_problem_from_file(path.c_str(), 6, 0, &p) == BSM_OK);
  CHECK(bsm_problem_cells(p) == 6);
  bsm_problem_destroy(p);
  std::remove(path.c_str());
}
