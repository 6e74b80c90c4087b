#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bsm {

enum class Half { Positive, Negative };

// Raw: int_0^{+/-1} mu^k psi dmu taken literally, so on the negative half the
// integral runs from 0 down to -1 and picks up a minus sign.
// Prefixed: +/- int_0^{+/-1} mu^k psi dmu, the form used for partial fluxes and
// partial currents (phi^- >= 0, J^- <= 0).
enum class MomentConvention { Raw, Prefixed };

/// Double (half-range) Gauss-Legendre rule. Each half uses the same positive
/// nodes mirrored, weights normalized to one per half.
class AngularQuadrature {
 public:
  explicit AngularQuadrature(std::size_t n_per_half);

  std::size_t n_per_half() const { return nodes_.size(); }
  std::size_t n_directions() const { return 2 * nodes_.size(); }

  // Positive nodes, ascending.
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  // Direction index d < n is +mu_d, d >= n is -mu_{d-n}.
  double mu(std::size_t d) const {
    return d < nodes_.size() ? nodes_[d] : -nodes_[d - nodes_.size()];
  }
  double weight(std::size_t d) const { return weights_[d % nodes_.size()]; }

  /// Half-range moment of node values given on `half` (ordered like nodes()).
  double half_moment(std::span<const double> values_on_half, int k, Half half,
                     MomentConvention convention) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

AngularQuadrature build_double_gauss_legendre(std::size_t n_per_half);

}  // namespace bsm
