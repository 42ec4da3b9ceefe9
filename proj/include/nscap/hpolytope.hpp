#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nscap/behavior.hpp"
#include "nscap/bell.hpp"
#include "nscap/errors.hpp"
#include "nscap/linalg_exact.hpp"
#include "nscap/rational.hpp"

namespace nscap {

// One affine condition on a behavior: coeffs . P  (= | <=)  rhs.
struct LinearRow {
  std::array<Rational, 64> coeffs{};
  Rational rhs{0};
};

// Halfspace description of a polytope in the 64-dimensional behavior space.
// Inequality rows use the convention  coeffs . P <= rhs.
struct HPolytope {
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;
};

inline Rational row_value(const LinearRow& row, const Behavior& beh) {
  Rational acc = 0;
  for (int i = 0; i < 64; ++i)
    if (row.coeffs[i] != 0) acc += row.coeffs[i] * beh.p[i];
  return acc;
}

inline bool satisfies(const HPolytope& hp, const Behavior& beh) {
  for (const LinearRow& row : hp.equalities)
    if (row_value(row, beh) != row.rhs) return false;
  for (const LinearRow& row : hp.inequalities)
    if (row_value(row, beh) > row.rhs) return false;
  return true;
}

inline MatQ equality_matrix(const HPolytope& hp) {
  MatQ m;
  m.reserve(hp.equalities.size());
  for (const LinearRow& row : hp.equalities)
    m.emplace_back(row.coeffs.begin(), row.coeffs.end());
  return m;
}

// Dimension of the affine flat carved out by the equality rows.  The
// polytopes handled here are full-dimensional inside that flat.
inline size_t affine_dimension(const HPolytope& hp) {
  return static_cast<size_t>(64) - rank(equality_matrix(hp));
}

// Halfspace description of the no-signaling set: per-context normalization,
// input-independence of both marginals, and pointwise nonnegativity.  The
// marginal rows overlap with normalization (total rank is 16, not 20).
inline HPolytope ns_h_representation() {
  HPolytope hp;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      LinearRow row;
      row.rhs = 1;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) row.coeffs[index_of(x, y, a, b)] = 1;
      hp.equalities.push_back(std::move(row));
    }
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 4; ++a) {
      LinearRow row;  // sum_b P(ab|x0) - sum_b P(ab|x1) = 0
      for (int b = 0; b < 4; ++b) {
        row.coeffs[index_of(x, 0, a, b)] += 1;
        row.coeffs[index_of(x, 1, a, b)] -= 1;
      }
      hp.equalities.push_back(std::move(row));
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 4; ++b) {
      LinearRow row;  // sum_a P(ab|0y) - sum_a P(ab|1y) = 0
      for (int a = 0; a < 4; ++a) {
        row.coeffs[index_of(0, y, a, b)] += 1;
        row.coeffs[index_of(1, y, a, b)] -= 1;
      }
      hp.equalities.push_back(std::move(row));
    }
  for (int i = 0; i < 64; ++i) {
    LinearRow row;  // -P(i) <= 0
    row.coeffs[i] = -1;
    hp.inequalities.push_back(std::move(row));
  }
  return hp;
}

// Doubled pair functional 2*(v_i + v_j) for a 1-based index pair drawn from
// (1,2), (3,4), (5,6), (7,8).  Any other combination is rejected.
inline BellFunctional special_functional(int i, int j) {
  if (j != i + 1 || i < 1 || i > 7 || i % 2 == 0)
    throw DomainError("special_functional: pair must be (1,2), (3,4), (5,6) or (7,8)");
  return pair_sum_functional((i - 1) / 2);
}

// No-signaling set sliced by the hyperplane  functional = level.
inline HPolytope sliced_ns_h_representation(const BellFunctional& functional,
                                            const Rational& level) {
  HPolytope hp = ns_h_representation();
  LinearRow row;
  row.coeffs = functional.coefficients;
  row.rhs = level - functional.offset;
  hp.equalities.push_back(std::move(row));
  return hp;
}

// A behavior is a vertex iff it satisfies the system and its tight rows span
// the whole coordinate space (so the tight set pins a unique point).
inline bool is_vertex_of(const HPolytope& hp, const Behavior& beh) {
  if (!satisfies(hp, beh)) return false;
  MatQ tight = equality_matrix(hp);
  for (const LinearRow& row : hp.inequalities)
    if (row_value(row, beh) == row.rhs)
      tight.emplace_back(row.coeffs.begin(), row.coeffs.end());
  return rank(std::move(tight)) == static_cast<size_t>(64);
}

}  // namespace nscap
