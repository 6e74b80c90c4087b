// Command-line driver: `solve` runs one problem, `bench` runs the catalog
// matrix of tests and Gauss-Seidel cycle counts.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bsm/bsm.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitNotConverged = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitIo = 5;
constexpr int kExitInternal = 6;

int exit_code(bsm_status s) {
  switch (s) {
    case BSM_OK: return kExitConverged;
    case BSM_ERR_INVALID: return kExitInvalid;
    case BSM_ERR_NUMERICAL: return kExitNumerical;
    case BSM_ERR_IO: return kExitIo;
    default: return kExitInternal;
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Handle {
  bsm_problem* problem = nullptr;
  bsm_result* result = nullptr;
  ~Handle() {
    bsm_result_destroy(result);
    bsm_problem_destroy(problem);
  }
};

std::string default_out_dir() {
  const char* env = std::getenv("BSM_OUT_DIR");
  return env && *env ? env : ".";
}

bool ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory '%s': %s\n",
                 dir.c_str(), ec.message().c_str());
    return false;
  }
  return true;
}

FILE* open_out(const fs::path& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
  return f;
}

bool write_history(const fs::path& path, const bsm_result* r) {
  FILE* f = open_out(path);
  if (!f) return false;
  std::fprintf(f, "s,delta_phi_inf,delta_phi_mat1_inf,delta_phi_mat2_inf,rho_s\n");
  for (int i = 0; i < bsm_result_history_length(r); ++i) {
    bsm_history_row row;
    bsm_result_history_row(r, i, &row);
    std::fprintf(f, "%d,%s,%s,%s,%s\n", row.s, fmt(row.delta_phi).c_str(),
                 fmt(row.delta_phi_mat[0]).c_str(),
                 fmt(row.delta_phi_mat[1]).c_str(),
                 row.rho_defined ? fmt(row.rho).c_str() : "");
  }
  return std::fclose(f) == 0;
}

bool write_flux(const fs::path& path, const bsm_result* r) {
  FILE* f = open_out(path);
  if (!f) return false;
  std::fprintf(f, "x_center,phi_ens,phi_mat1,phi_mat2,J_ens\n");
  for (int i = 0; i < bsm_result_cell_count(r); ++i) {
    bsm_flux_row row;
    bsm_result_flux_row(r, i, &row);
    std::fprintf(f, "%s,%s,%s,%s,%s\n", fmt(row.x_center).c_str(),
                 fmt(row.phi_ens).c_str(), fmt(row.phi_mat[0]).c_str(),
                 fmt(row.phi_mat[1]).c_str(), fmt(row.current_ens).c_str());
  }
  return std::fclose(f) == 0;
}

const char* algorithm_name(bsm_algorithm a) {
  return a == BSM_ALGORITHM_MULTILEVEL ? "multilevel" : "si";
}

struct SolveConfig {
  std::string test;
  std::string problem_file;
  std::string algorithm = "multilevel";
  int n_max = 1;
  double epsilon = 1e-10;
  int max_iterations = 200;
  int cells = 0;
  int quad_order = 4;
  std::string out;
  std::vector<std::string> emit{"history", "flux", "summary"};
};

int cmd_solve(const SolveConfig& cfg) {
  Handle h;
  bsm_status st = cfg.test.empty()
                      ? bsm_problem_from_file(cfg.problem_file.c_str(),
                                              cfg.cells, cfg.quad_order,
                                              &h.problem)
                      : bsm_problem_from_test(cfg.test.c_str(), cfg.cells,
                                              cfg.quad_order, &h.problem);
  if (st != BSM_OK) {
    std::fprintf(stderr, "error: %s\n", bsm_last_error());
    return exit_code(st);
  }

  bsm_options opts;
  bsm_options_default(&opts);
  opts.epsilon = cfg.epsilon;
  opts.max_iterations = cfg.max_iterations;
  opts.n_max = cfg.n_max;
  const bsm_algorithm alg = cfg.algorithm == "si"
                                ? BSM_ALGORITHM_SOURCE_ITERATION
                                : BSM_ALGORITHM_MULTILEVEL;
  st = bsm_solve(h.problem, alg, &opts, &h.result);
  if (st != BSM_OK) {
    std::fprintf(stderr, "error: %s\n", bsm_last_error());
    return exit_code(st);
  }
  bsm_summary sum;
  bsm_result_summary(h.result, &sum);

  const auto wants = [&](const char* what) {
    for (const auto& e : cfg.emit) {
      if (e == what) return true;
    }
    return false;
  };
  const std::string dir = cfg.out.empty() ? default_out_dir() : cfg.out;
  if (wants("history") || wants("flux")) {
    if (!ensure_dir(dir)) return kExitIo;
  }
  if (wants("history") && !write_history(fs::path(dir) / "history.csv", h.result))
    return kExitIo;
  if (wants("flux") && !write_flux(fs::path(dir) / "flux.csv", h.result))
    return kExitIo;
  if (wants("summary")) {
    std::printf("test=%s algorithm=%s n_max=%d iterations=%d rho_estimate=%.6f converged=%s\n",
                bsm_problem_name(h.problem), algorithm_name(alg), sum.n_max,
                sum.iterations, sum.rho_estimate,
                sum.converged ? "true" : "false");
  }
  if (!sum.converged) {
    std::fprintf(stderr, "warning: not converged after %d iterations\n",
                 sum.iterations);
    return kExitNotConverged;
  }
  return kExitConverged;
}

struct BenchConfig {
  std::string out;
  int workers = 0;
  int cells = 100;
  int quad_order = 4;
  double epsilon = 1e-10;
  int max_iterations = 200;
  std::string algorithm = "multilevel";
};

struct BenchRun {
  std::string test;
  int n_max = 0;
  int status = 0;  // process-style exit code for this run
  bsm_summary summary{};
  double seconds = 0.0;
  std::string error;
};

int cmd_bench(const BenchConfig& cfg) {
  std::vector<BenchRun> runs;
  for (int n_max : {1, 2}) {
    for (int i = 0; i < bsm_test_count(); ++i) {
      BenchRun r;
      r.test = bsm_test_name(i);
      r.n_max = n_max;
      runs.push_back(r);
    }
  }
  const bsm_algorithm alg = cfg.algorithm == "si"
                                ? BSM_ALGORITHM_SOURCE_ITERATION
                                : BSM_ALGORITHM_MULTILEVEL;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < runs.size(); k = next++) {
      BenchRun& r = runs[k];
      Handle h;
      const auto t0 = std::chrono::steady_clock::now();
      bsm_status st = bsm_problem_from_test(r.test.c_str(), cfg.cells,
                                            cfg.quad_order, &h.problem);
      if (st == BSM_OK) {
        bsm_options opts;
        bsm_options_default(&opts);
        opts.n_max = r.n_max;
        opts.epsilon = cfg.epsilon;
        opts.max_iterations = cfg.max_iterations;
        st = bsm_solve(h.problem, alg, &opts, &h.result);
      }
      r.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      if (st != BSM_OK) {
        r.status = exit_code(st);
        r.error = bsm_last_error();
        continue;
      }
      bsm_result_summary(h.result, &r.summary);
      r.status = r.summary.converged ? kExitConverged : kExitNotConverged;
    }
  };
  unsigned n_workers = cfg.workers > 0
                           ? static_cast<unsigned>(cfg.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  const std::string dir = cfg.out.empty() ? default_out_dir() : cfg.out;
  if (!ensure_dir(dir)) return kExitIo;

  FILE* table = open_out(fs::path(dir) / "rho_table.csv");
  if (!table) return kExitIo;
  std::fprintf(table, "n_max");
  for (int i = 0; i < bsm_test_count(); ++i) {
    std::fprintf(table, ",%s", bsm_test_name(i));
  }
  std::fprintf(table, "\n");
  const std::size_t per_row = static_cast<std::size_t>(bsm_test_count());
  for (std::size_t row = 0; row < 2; ++row) {
    std::fprintf(table, "%d", runs[row * per_row].n_max);
    for (std::size_t i = 0; i < per_row; ++i) {
      const BenchRun& r = runs[row * per_row + i];
      std::fprintf(table, ",%s",
                   r.status == kExitConverged ? fmt(r.summary.rho_estimate).c_str()
                                              : "");
    }
    std::fprintf(table, "\n");
  }
  if (std::fclose(table) != 0) return kExitIo;

  FILE* detail = open_out(fs::path(dir) / "bench_runs.csv");
  if (!detail) return kExitIo;
  std::fprintf(detail, "test,n_max,status,converged,iterations,rho_estimate,wall_seconds\n");
  int failures = 0;
  for (const BenchRun& r : runs) {
    std::fprintf(detail, "%s,%d,%d,%d,%d,%s,%s\n", r.test.c_str(), r.n_max,
                 r.status, r.summary.converged, r.summary.iterations,
                 fmt(r.summary.rho_estimate).c_str(), fmt(r.seconds).c_str());
    if (r.status != kExitConverged) {
      ++failures;
      std::fprintf(stderr, "run %s n_max=%d failed (exit %d) %s\n",
                   r.test.c_str(), r.n_max, r.status, r.error.c_str());
    }
  }
  if (std::fclose(detail) != 0) return kExitIo;

  std::printf("%-6s", "n_max");
  for (int i = 0; i < bsm_test_count(); ++i) std::printf(" %6s", bsm_test_name(i));
  std::printf("\n");
  for (std::size_t row = 0; row < 2; ++row) {
    std::printf("%-6d", runs[row * per_row].n_max);
    for (std::size_t i = 0; i < per_row; ++i) {
      std::printf(" %6.3f", runs[row * per_row + i].summary.rho_estimate);
    }
    std::printf("\n");
  }
  return failures == 0 ? kExitConverged : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel iteration solver for binary stochastic mixture slabs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bsm_version());

  SolveConfig solve;
  auto* s = app.add_subcommand("solve", "Solve one problem");
  auto* test_opt = s->add_option("--test", solve.test, "Catalog test id (A1..D3)");
  auto* file_opt = s->add_option("--problem-file", solve.problem_file,
                                 "Problem description file");
  test_opt->excludes(file_opt);
  file_opt->excludes(test_opt);
  s->add_option("--algorithm", solve.algorithm, "multilevel or si")
      ->check(CLI::IsMember({"multilevel", "si"}));
  s->add_option("--nmax", solve.n_max, "High-order Gauss-Seidel cycles per iteration")
      ->check(CLI::PositiveNumber);
  s->add_option("--epsilon", solve.epsilon, "Relative stopping tolerance")
      ->check(CLI::PositiveNumber);
  s->add_option("--max-iterations", solve.max_iterations)->check(CLI::PositiveNumber);
  s->add_option("--cells", solve.cells, "Number of uniform cells")
      ->check(CLI::PositiveNumber);
  s->add_option("--quad-order", solve.quad_order, "Gauss points per half-range")
      ->check(CLI::PositiveNumber);
  s->add_option("--out", solve.out, "Output directory (default $BSM_OUT_DIR or .)");
  s->add_option("--emit", solve.emit, "Any of history, flux, summary")
      ->delimiter(',')
      ->check(CLI::IsMember({"history", "flux", "summary"}));

  BenchConfig bench;
  auto* b = app.add_subcommand("bench", "Run every catalog test for n_max = 1, 2");
  b->add_option("--out", bench.out, "Output directory (default $BSM_OUT_DIR or .)");
  b->add_option("--workers", bench.workers, "Concurrent runs (default: hardware threads)")
      ->check(CLI::NonNegativeNumber);
  b->add_option("--cells", bench.cells)->check(CLI::PositiveNumber);
  b->add_option("--quad-order", bench.quad_order)->check(CLI::PositiveNumber);
  b->add_option("--epsilon", bench.epsilon)->check(CLI::PositiveNumber);
  b->add_option("--max-iterations", bench.max_iterations)->check(CLI::PositiveNumber);
  b->add_option("--algorithm", bench.algorithm)
      ->check(CLI::IsMember({"multilevel", "si"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  if (s->parsed()) {
    if (solve.test.empty() && solve.problem_file.empty()) {
      std::fprintf(stderr, "error: one of --test or --problem-file is required\n");
      return kExitInvalid;
    }
    return cmd_solve(solve);
  }
  return cmd_bench(bench);
}
