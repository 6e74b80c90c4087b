#include "quadrature.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace bsm {

namespace {

// Newton iteration on P_n over [-1,1]; returns the roots in (0,1) mapped
// from the full interval together with the half-normalized weights.
void gauss_legendre_unit(std::size_t n, std::vector<double>& x,
                         std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) {
        // one more derivative evaluation at the converged root
        p1 = 1.0;
        p2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    // z is the i-th largest root on [-1,1]
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    x[i] = 0.5 * (1.0 - z);
    w[n - 1 - i] = 0.5 * wi;
    w[i] = 0.5 * wi;
  }
}

}  // namespace

AngularQuadrature::AngularQuadrature(std::size_t n_per_half) {
  if (n_per_half == 0) {
    throw InvalidArgument("quadrature order per half-range must be >= 1");
  }
  gauss_legendre_unit(n_per_half, nodes_, weights_);
}

double AngularQuadrature::half_moment(std::span<const double> values_on_half,
                                      int k, Half half,
                                      MomentConvention convention) const {
  if (values_on_half.size() != nodes_.size()) {
    throw InvalidArgument("half-range values do not match quadrature size");
  }
  if (k < 0) {
    throw InvalidArgument("moment power must be nonnegative");
  }
  const double sign = half == Half::Positive ? 1.0 : -1.0;
  double sum = 0.0;
  for (std::size_t m = 0; m < nodes_.size(); ++m) {
    sum += weights_[m] * std::pow(sign * nodes_[m], k) * values_on_half[m];
  }
  if (half == Half::Negative && convention == MomentConvention::Raw) {
    return -sum;
  }
  return sum;
}

AngularQuadrature build_double_gauss_legendre(std::size_t n_per_half) {
  return AngularQuadrature(n_per_half);
}

}  // namespace bsm
