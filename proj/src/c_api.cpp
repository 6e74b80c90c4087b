#include "bsm/bsm.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "baseline.hpp"
#include "driver.hpp"
#include "errors.hpp"
#include "problem_file.hpp"

struct bsm_problem {
  bsm::ProblemSpec spec;
};

struct bsm_result {
  bsm_summary summary;
  std::vector<bsm_history_row> history;
  std::vector<bsm_flux_row> flux;
};

namespace {

thread_local std::string g_last_error;

bsm_status fail(bsm_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
bsm_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return BSM_OK;
  } catch (const bsm::InvalidArgument& e) {
    return fail(BSM_ERR_INVALID, e.what());
  } catch (const bsm::NumericalError& e) {
    return fail(BSM_ERR_NUMERICAL, e.what());
  } catch (const bsm::IoError& e) {
    return fail(BSM_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BSM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BSM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BSM_ERR_INTERNAL, "unknown error");
  }
}

std::size_t pick(int value, std::size_t fallback) {
  return value > 0 ? static_cast<std::size_t>(value) : fallback;
}

void make_from_description(const bsm::ProblemDescription& desc, int n_cells,
                           int n_per_half, bsm_problem** out) {
  const std::optional<std::size_t> cells =
      n_cells > 0 ? std::optional<std::size_t>(n_cells) : std::nullopt;
  *out = new bsm_problem{bsm::to_problem(desc, pick(n_per_half, 4), cells)};
}

void fill_history(bsm_result& r, const bsm::IterationHistory& h) {
  r.summary.converged = h.converged ? 1 : 0;
  r.summary.iterations = h.iterations;
  r.summary.rho_estimate = h.rho_estimate;
  r.summary.rho_samples = h.rho_samples;
  for (const auto& rec : h.records) {
    r.history.push_back({rec.s, rec.delta_phi,
                         {rec.delta_phi_mat[0], rec.delta_phi_mat[1]},
                         rec.rho, rec.rho_defined ? 1 : 0});
  }
}

void fill_flux(bsm_result& r, const bsm::ProblemSpec& p,
               const bsm::NodalField& phi, const bsm::NodalField& current,
               const std::array<bsm::NodalField, 2>& mat) {
  const double h = p.cell_width();
  for (std::size_t i = 0; i < p.n_cells; ++i) {
    r.flux.push_back({(static_cast<double>(i) + 0.5) * h,
                      bsm::cell_average(phi, i),
                      {bsm::cell_average(mat[0], i),
                       bsm::cell_average(mat[1], i)},
                      bsm::cell_average(current, i)});
  }
}

}  // namespace

extern "C" {

const char* bsm_version(void) { return "1.0.0"; }

const char* bsm_last_error(void) { return g_last_error.c_str(); }

const char* bsm_status_string(bsm_status status) {
  switch (status) {
    case BSM_OK: return "ok";
    case BSM_ERR_INVALID: return "invalid input";
    case BSM_ERR_NUMERICAL: return "numerical failure";
    case BSM_ERR_IO: return "i/o error";
    case BSM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int bsm_test_count(void) { return static_cast<int>(bsm::kAllTests.size()); }

const char* bsm_test_name(int index) {
  if (index < 0 || index >= bsm_test_count()) return nullptr;
  return bsm::to_string(bsm::kAllTests[index]).data();
}

void bsm_options_default(bsm_options* options) {
  if (!options) return;
  const bsm::IterationOptions d;
  options->epsilon = d.epsilon;
  options->max_iterations = d.max_iterations;
  options->n_max = d.n_max;
  options->rho_window = d.rho_window;
}

bsm_status bsm_problem_from_test(const char* test_id, int n_cells,
                                 int n_per_half, bsm_problem** out) {
  if (!test_id || !out) return fail(BSM_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    const bsm::TestId id = bsm::parse_test_id(test_id);
    *out = new bsm_problem{
        bsm::build_test(id, pick(n_cells, 100), pick(n_per_half, 4))};
  });
}

bsm_status bsm_problem_from_file(const char* path, int n_cells,
                                 int n_per_half, bsm_problem** out) {
  if (!path || !out) return fail(BSM_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    make_from_description(bsm::load_problem_file(path), n_cells, n_per_half,
                          out);
  });
}

bsm_status bsm_problem_from_text(const char* text, int n_cells,
                                 int n_per_half, bsm_problem** out) {
  if (!text || !out) return fail(BSM_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    make_from_description(bsm::parse_problem_text(text, "text"), n_cells,
                          n_per_half, out);
  });
}

void bsm_problem_destroy(bsm_problem* problem) { delete problem; }

const char* bsm_problem_name(const bsm_problem* problem) {
  return problem ? problem->spec.name.c_str() : nullptr;
}

int bsm_problem_cells(const bsm_problem* problem) {
  return problem ? static_cast<int>(problem->spec.n_cells) : 0;
}

bsm_status bsm_solve(const bsm_problem* problem, bsm_algorithm algorithm,
                     const bsm_options* options, bsm_result** out) {
  if (!problem || !out) return fail(BSM_ERR_INVALID, "null argument");
  *out = nullptr;
  if (algorithm != BSM_ALGORITHM_MULTILEVEL &&
      algorithm != BSM_ALGORITHM_SOURCE_ITERATION) {
    return fail(BSM_ERR_INVALID, "unknown algorithm");
  }
  return guarded([&] {
    bsm::IterationOptions opts;
    if (options) {
      opts.epsilon = options->epsilon;
      opts.max_iterations = options->max_iterations;
      opts.n_max = options->n_max;
      opts.rho_window = options->rho_window;
    }
    auto r = std::make_unique<bsm_result>();
    r->summary = {};
    r->summary.n_cells = static_cast<int>(problem->spec.n_cells);
    r->summary.n_max = opts.n_max;
    r->summary.algorithm = algorithm;
    if (algorithm == BSM_ALGORITHM_MULTILEVEL) {
      const auto res = bsm::run_multilevel(problem->spec, opts);
      fill_history(*r, res.history);
      fill_flux(*r, problem->spec, res.ensemble.phi, res.ensemble.current,
                res.scalar_flux);
    } else {
      const auto res = bsm::run_source_iteration(problem->spec, opts);
      fill_history(*r, res.history);
      fill_flux(*r, problem->spec, res.ensemble_phi, res.ensemble_current,
                res.scalar_flux);
    }
    *out = r.release();
  });
}

void bsm_result_destroy(bsm_result* result) { delete result; }

bsm_status bsm_result_summary(const bsm_result* result, bsm_summary* out) {
  if (!result || !out) return fail(BSM_ERR_INVALID, "null argument");
  *out = result->summary;
  return BSM_OK;
}

int bsm_result_history_length(const bsm_result* result) {
  return result ? static_cast<int>(result->history.size()) : 0;
}

bsm_status bsm_result_history_row(const bsm_result* result, int index,
                                  bsm_history_row* out) {
  if (!result || !out) return fail(BSM_ERR_INVALID, "null argument");
  if (index < 0 || index >= static_cast<int>(result->history.size())) {
    return fail(BSM_ERR_INVALID, "history index out of range");
  }
  *out = result->history[index];
  return BSM_OK;
}

int bsm_result_cell_count(const bsm_result* result) {
  return result ? static_cast<int>(result->flux.size()) : 0;
}

bsm_status bsm_result_flux_row(const bsm_result* result, int cell,
                               bsm_flux_row* out) {
  if (!result || !out) return fail(BSM_ERR_INVALID, "null argument");
  if (cell < 0 || cell >= static_cast<int>(result->flux.size())) {
    return fail(BSM_ERR_INVALID, "cell index out of range");
  }
  *out = result->flux[cell];
  return BSM_OK;
}

}  // extern "C"
