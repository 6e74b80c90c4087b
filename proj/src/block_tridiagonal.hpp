#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace bsm {

// Block-tridiagonal system with 4x4 blocks, one block row per spatial cell:
//   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]
// lower[0] and upper[n-1] are ignored.
class BlockTridiagonal {
 public:
  static constexpr std::size_t kBlock = 4;
  using Block = std::array<double, kBlock * kBlock>;  // row-major
  using Vec = std::array<double, kBlock>;

  explicit BlockTridiagonal(std::size_t n_rows)
      : lower_(n_rows, Block{}),
        diag_(n_rows, Block{}),
        upper_(n_rows, Block{}),
        rhs_(n_rows, Vec{}) {}

  std::size_t size() const { return diag_.size(); }

  // offset -1, 0, +1 selects lower, diag, upper.
  double& coef(std::size_t row, int offset, std::size_t r, std::size_t c);
  double& rhs(std::size_t row, std::size_t r) { return rhs_[row][r]; }

  /// Block Thomas elimination with partially pivoted LU on each pivot block.
  /// Throws NumericalError naming the cell when a pivot block is singular.
  std::vector<Vec> solve() const;

  /// max-norm of A x - b, for residual checks.
  double residual_norm(const std::vector<Vec>& x) const;

 private:
  std::vector<Block> lower_;
  std::vector<Block> diag_;
  std::vector<Block> upper_;
  std::vector<Vec> rhs_;
};

}  // namespace bsm
