#pragma once

#include <cstddef>
#include <vector>

#include "nscap/errors.hpp"
#include "nscap/rational.hpp"

namespace nscap {

using VecQ = std::vector<Rational>;
using MatQ = std::vector<VecQ>;

// Reduced row echelon form in place; returns the pivot column of each
// eliminated row (row-major order).
inline std::vector<size_t> rref(MatQ& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size(), row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    Rational inv = m[row][col];
    for (size_t j = col; j < cols; ++j) m[row][j] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline size_t rank(MatQ m) { return rref(m).size(); }

// Basis of the right null space of m (columns as VecQ).
inline std::vector<VecQ> nullspace(MatQ m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<VecQ> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    VecQ v(cols, Rational(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves the consistent system [A | b] given as an augmented matrix; returns
// one particular solution with free variables set to zero. Throws if the
// system is inconsistent.
inline VecQ solve_particular(MatQ aug) {
  if (aug.empty()) throw DomainError("solve_particular: empty system");
  size_t cols = aug[0].size() - 1;
  std::vector<size_t> pivots = rref(aug);
  for (size_t r = 0; r < aug.size(); ++r) {
    bool all_zero = true;
    for (size_t c = 0; c < cols; ++c)
      if (aug[r][c] != 0) {
        all_zero = false;
        break;
      }
    if (all_zero && aug[r][cols] != 0)
      throw GeometryError("solve_particular: inconsistent system");
  }
  VecQ x(cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] < cols) x[pivots[r]] = aug[r][cols];
  return x;
}

// Integer vector utilities for ray arithmetic.
using VecZ = std::vector<Integer>;

inline void make_primitive(VecZ& v) {
  Integer g = 0;
  for (const Integer& e : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (Integer& e : v) e /= g;
}

// Clears denominators of a rational vector into a primitive integer vector.
inline VecZ clear_denominators(const VecQ& v) {
  Integer l = 1;
  for (const Rational& e : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), mpq_denref(e.get_mpq_t()));
  VecZ out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(l);
    out[i] = Integer(scaled.get_num());
  }
  make_primitive(out);
  return out;
}

}  // namespace nscap
