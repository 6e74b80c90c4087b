#include "block_tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace bsm {

namespace {

constexpr std::size_t N = BlockTridiagonal::kBlock;
using Block = BlockTridiagonal::Block;
using Vec = BlockTridiagonal::Vec;

struct LU {
  Block a{};
  std::array<std::size_t, N> perm{};
};

LU factor(Block a, std::size_t cell) {
  LU lu;
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < N; ++i) lu.perm[i] = i;
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < N; ++i) {
      if (std::abs(a[i * N + k]) > std::abs(a[piv * N + k])) piv = i;
    }
    if (!(std::abs(a[piv * N + k]) > 1e-14 * scale)) {
      throw NumericalError("singular low-order block at cell " +
                           std::to_string(cell));
    }
    if (piv != k) {
      for (std::size_t j = 0; j < N; ++j) std::swap(a[k * N + j], a[piv * N + j]);
      std::swap(lu.perm[k], lu.perm[piv]);
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      const double f = a[i * N + k] / a[k * N + k];
      a[i * N + k] = f;
      for (std::size_t j = k + 1; j < N; ++j) a[i * N + j] -= f * a[k * N + j];
    }
  }
  lu.a = a;
  return lu;
}

Vec lu_solve(const LU& lu, const Vec& b) {
  Vec x{};
  for (std::size_t i = 0; i < N; ++i) {
    double s = b[lu.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu.a[i * N + j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = N; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < N; ++j) s -= lu.a[i * N + j] * x[j];
    x[i] = s / lu.a[i * N + i];
  }
  return x;
}

Vec mat_vec(const Block& m, const Vec& v) {
  Vec out{};
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += m[i * N + j] * v[j];
    out[i] = s;
  }
  return out;
}

}  // namespace

double& BlockTridiagonal::coef(std::size_t row, int offset, std::size_t r,
                               std::size_t c) {
  Block& b = offset < 0 ? lower_[row] : (offset > 0 ? upper_[row] : diag_[row]);
  return b[r * N + c];
}

std::vector<Vec> BlockTridiagonal::solve() const {
  const std::size_t n = diag_.size();
  std::vector<LU> pivots;
  pivots.reserve(n);
  // X[i] = pivot_i^{-1} upper_i, y[i] = pivot_i^{-1} rhs'_i
  std::vector<Block> x_upper(n);
  std::vector<Vec> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Block d = diag_[i];
    Vec r = rhs_[i];
    if (i > 0) {
      const Block& l = lower_[i];
      for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = 0; b < N; ++b) {
          double s = 0.0;
          for (std::size_t k = 0; k < N; ++k) s += l[a * N + k] * x_upper[i - 1][k * N + b];
          d[a * N + b] -= s;
        }
      }
      const Vec ly = mat_vec(l, y[i - 1]);
      for (std::size_t a = 0; a < N; ++a) r[a] -= ly[a];
    }
    pivots.push_back(factor(d, i));
    y[i] = lu_solve(pivots[i], r);
    if (i + 1 < n) {
      for (std::size_t b = 0; b < N; ++b) {
        Vec col{};
        for (std::size_t a = 0; a < N; ++a) col[a] = upper_[i][a * N + b];
        const Vec z = lu_solve(pivots[i], col);
        for (std::size_t a = 0; a < N; ++a) x_upper[i][a * N + b] = z[a];
      }
    }
  }
  std::vector<Vec> x(n);
  for (std::size_t i = n; i-- > 0;) {
    x[i] = y[i];
    if (i + 1 < n) {
      const Vec ux = mat_vec(x_upper[i], x[i + 1]);
      for (std::size_t a = 0; a < N; ++a) x[i][a] -= ux[a];
    }
  }
  return x;
}

double BlockTridiagonal::residual_norm(const std::vector<Vec>& x) const {
  double worst = 0.0;
  const std::size_t n = diag_.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec r = mat_vec(diag_[i], x[i]);
    if (i > 0) {
      const Vec a = mat_vec(lower_[i], x[i - 1]);
      for (std::size_t k = 0; k < N; ++k) r[k] += a[k];
    }
    if (i + 1 < n) {
      const Vec a = mat_vec(upper_[i], x[i + 1]);
      for (std::size_t k = 0; k < N; ++k) r[k] += a[k];
    }
    for (std::size_t k = 0; k < N; ++k) {
      worst = std::max(worst, std::abs(r[k] - rhs_[i][k]));
    }
  }
  return worst;
}

}  // namespace bsm
