#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "problem.hpp"

namespace bsm {

// Problem file grammar (line oriented, '#' starts a comment):
//
//   [material.1]            sigma_t, sigma_s, lambda, q
//   [material.2]            same keys
//   [slab]                  length, cells (cells optional, default 100)
//   [boundary]              inflow.<1|2>.<left|right> = v  or  v1, v2, ...
//
// Values are decimal numbers or a/b fractions. A single inflow value is an
// isotropic inflow; a list gives one value per positive quadrature node.
// Unknown sections or keys, duplicates and missing required keys are errors.

struct ProblemFileInflow {
  // Empty means vacuum.
  std::vector<double> values;
};

struct ProblemDescription {
  std::string name;
  std::array<MaterialSpec, 2> materials;
  double slab_length = 0.0;
  std::size_t n_cells = 100;
  // [material][0 = left, 1 = right]
  std::array<std::array<ProblemFileInflow, 2>, 2> inflow;
};

ProblemDescription parse_problem_text(std::string_view text,
                                      std::string name = "file");
ProblemDescription load_problem_file(const std::string& path);

ProblemSpec to_problem(const ProblemDescription& desc, std::size_t n_per_half,
                       std::optional<std::size_t> n_cells = std::nullopt);

}  // namespace bsm
