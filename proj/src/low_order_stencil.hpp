#pragma once

// Upwind-edge streaming terms shared by the material (LOYM) and ensemble
// (LOQD) low-order systems. Both are the weight-1 and weight-mu angular
// moments of the two LD equations (balance and first spatial moment), so per
// cell there are four rows:
//   row 0: (X_{i+1/2} - X_{i-1/2}) / h                  + ... , X = J
//   row 1: same with X = K (second angular moment)
//   row 2: 3 (X_{i+1/2} + X_{i-1/2} - X_L - X_R) / h       + ... , X = J
//   row 3: same with X = K
// Edge values are upwinded by half-range: X_{i+1/2} = X+(cell i, right node)
// + X-(cell i+1, left node). At the slab ends the incoming half is the
// boundary inflow moment.

#include <array>
#include <cstddef>

#include "block_tridiagonal.hpp"
#include "quadrature.hpp"

namespace bsm::detail {

using LinearForm = std::array<double, 4>;

enum class Moment { J, K };

struct StreamingBoundary {
  double j_p_left = 0.0, k_p_left = 0.0;    // entering at x = 0
  double j_m_right = 0.0, k_m_right = 0.0;  // entering at x = X (j <= 0)
};

inline void add_form(BlockTridiagonal& sys, std::size_t cell, std::size_t row,
                     int offset, const LinearForm& form, double coef) {
  for (std::size_t c = 0; c < 4; ++c) sys.coef(cell, offset, row, c) += coef * form[c];
}

// Closure must provide
//   LinearForm half(std::size_t cell, std::size_t node, Half, Moment) const
//   LinearForm total(std::size_t cell, std::size_t node, Moment) const
template <class Closure>
void add_streaming(BlockTridiagonal& sys, std::size_t n_cells, double h,
                   const Closure& closure, const StreamingBoundary& bc) {
  for (std::size_t i = 0; i < n_cells; ++i) {
    for (Moment kind : {Moment::J, Moment::K}) {
      const std::size_t row_b = kind == Moment::J ? 0 : 1;
      const std::size_t row_f = kind == Moment::J ? 2 : 3;
      const double in_left = kind == Moment::J ? bc.j_p_left : bc.k_p_left;
      const double in_right = kind == Moment::J ? bc.j_m_right : bc.k_m_right;

      // right edge, own outgoing half
      const LinearForm out_r = closure.half(i, 1, Half::Positive, kind);
      add_form(sys, i, row_b, 0, out_r, 1.0 / h);
      add_form(sys, i, row_f, 0, out_r, 3.0 / h);
      // right edge, incoming negative half
      if (i + 1 < n_cells) {
        const LinearForm in_r = closure.half(i + 1, 0, Half::Negative, kind);
        add_form(sys, i, row_b, +1, in_r, 1.0 / h);
        add_form(sys, i, row_f, +1, in_r, 3.0 / h);
      } else {
        sys.rhs(i, row_b) -= in_right / h;
        sys.rhs(i, row_f) -= 3.0 * in_right / h;
      }
      // left edge, own outgoing half
      const LinearForm out_l = closure.half(i, 0, Half::Negative, kind);
      add_form(sys, i, row_b, 0, out_l, -1.0 / h);
      add_form(sys, i, row_f, 0, out_l, 3.0 / h);
      // left edge, incoming positive half
      if (i > 0) {
        const LinearForm in_l = closure.half(i - 1, 1, Half::Positive, kind);
        add_form(sys, i, row_b, -1, in_l, -1.0 / h);
        add_form(sys, i, row_f, -1, in_l, 3.0 / h);
      } else {
        sys.rhs(i, row_b) += in_left / h;
        sys.rhs(i, row_f) -= 3.0 * in_left / h;
      }
      // interior nodal totals
      add_form(sys, i, row_f, 0, closure.total(i, 0, kind), -3.0 / h);
      add_form(sys, i, row_f, 0, closure.total(i, 1, kind), -3.0 / h);
    }
  }
}

// Splits nodal sources into the balance (cell average) and first-moment
// (slope) rows: row_b += (L + R)/2, row_f += (R - L)/2.
inline void add_nodal_source(BlockTridiagonal& sys, std::size_t cell,
                             std::size_t row_b, std::size_t row_f, double left,
                             double right) {
  sys.rhs(cell, row_b) += 0.5 * (left + right);
  sys.rhs(cell, row_f) += 0.5 * (right - left);
}

// Same split for a nodal reaction term given as linear forms.
inline void add_nodal_reaction(BlockTridiagonal& sys, std::size_t cell,
                               std::size_t row_b, std::size_t row_f,
                               const LinearForm& left, const LinearForm& right) {
  add_form(sys, cell, row_b, 0, left, 0.5);
  add_form(sys, cell, row_b, 0, right, 0.5);
  add_form(sys, cell, row_f, 0, left, -0.5);
  add_form(sys, cell, row_f, 0, right, 0.5);
}

}  // namespace bsm::detail
