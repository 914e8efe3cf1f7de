#pragma once

#include <cstdlib>
#include <stdexcept>

namespace spintomo {

// Half-integer angular momenta are stored as doubled integers: j = twice/2,
// m = twice/2. This removes all floating-point parity ambiguity from the
// index arithmetic.
//
// Basis ordering convention (global, used by every matrix in the library):
// row/column 0 is |j, j>, row 1 is |j, j-1>, ..., row 2j is |j, -j>.
// Descending m.

class SpinQuantum {
public:
  explicit SpinQuantum(int twice_j) : twice_j_(twice_j) {
    if (twice_j < 0)
      throw std::invalid_argument("SpinQuantum: 2j must be non-negative");
  }

  int twice() const { return twice_j_; }
  int dimension() const { return twice_j_ + 1; }
  double value() const { return 0.5 * twice_j_; }

  bool operator==(const SpinQuantum &other) const = default;

private:
  int twice_j_;
};

class SpinProjection {
public:
  explicit SpinProjection(int twice_m) : twice_m_(twice_m) {}

  int twice() const { return twice_m_; }
  double value() const { return 0.5 * twice_m_; }

  // m and j must be both integer or both half-integer.
  bool same_parity(SpinQuantum j) const {
    return ((twice_m_ - j.twice()) % 2) == 0;
  }
  bool in_range(SpinQuantum j) const {
    return std::abs(twice_m_) <= j.twice();
  }

  SpinProjection shifted(int twice_delta) const {
    return SpinProjection(twice_m_ + twice_delta);
  }

  bool operator==(const SpinProjection &other) const = default;

private:
  int twice_m_;
};

// Row index of |j, m> under the descending-m convention.
inline int basis_index(SpinQuantum j, SpinProjection m) {
  if (!m.same_parity(j))
    throw std::invalid_argument("basis_index: projection parity does not match spin");
  if (!m.in_range(j))
    throw std::out_of_range("basis_index: |m| > j");
  return (j.twice() - m.twice()) / 2;
}

// Projection stored at a given row.
inline SpinProjection projection_at(SpinQuantum j, int row) {
  return SpinProjection(j.twice() - 2 * row);
}

} // namespace spintomo
