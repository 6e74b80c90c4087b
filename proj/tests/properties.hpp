#pragma once

// Randomized property suites. Each returns how many cases ran, how many
// violated the property, and the worst observed deviation.

#include <cstdint>
#include <string>

namespace props {

struct Report {
  int cases = 0;
  int failures = 0;
  double worst = 0.0;
  std::string first_failure;
};

Report quadrature_exactness(int cases, std::uint64_t seed);
Report closure_bounds(int cases, std::uint64_t seed);
Report reconstruction_identity(int cases, std::uint64_t seed);
Report rescale_invariance(int cases, std::uint64_t seed);

}  // namespace props
