#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

#include "nscap/errors.hpp"
#include "nscap/rational.hpp"

namespace nscap {

// Two parties, two inputs per party, four outcomes per party. A behavior is
// the table P(a,b|x,y) stored flat; the canonical position of a cell is
// 32x + 16y + 4a + b.
inline int index_of(int x, int y, int a, int b) {
  if (x < 0 || x > 1 || y < 0 || y > 1 || a < 0 || a > 3 || b < 0 || b > 3)
    throw DomainError("index_of: argument out of range");
  return 32 * x + 16 * y + 4 * a + b;
}

struct Cell {
  int x, y, a, b;
};

inline Cell cell_of(int index) {
  if (index < 0 || index > 63) throw DomainError("cell_of: index out of range");
  return Cell{(index >> 5) & 1, (index >> 4) & 1, (index >> 2) & 3, index & 3};
}

// Outcome -> pair of channel input bits. The first bit steers which output
// pair the interference channel favors; the second feeds the parity
// condition.
inline std::pair<int, int> outcome_to_bits(int a) {
  if (a < 0 || a > 3) throw DomainError("outcome_to_bits: outcome out of range");
  return {(a >> 1) & 1, a & 1};
}

inline int bits_to_outcome(int first, int second) {
  if (first < 0 || first > 1 || second < 0 || second > 1)
    throw DomainError("bits_to_outcome: bit out of range");
  return 2 * first + second;
}

struct Behavior {
  std::array<Rational, 64> p{};

  Rational& at(int x, int y, int a, int b) {
    return p[static_cast<size_t>(index_of(x, y, a, b))];
  }
  const Rational& at(int x, int y, int a, int b) const {
    return p[static_cast<size_t>(index_of(x, y, a, b))];
  }
  bool operator==(const Behavior& o) const { return p == o.p; }
};

struct NumericBehavior {
  std::array<double, 64> p{};

  double& at(int x, int y, int a, int b) {
    return p[static_cast<size_t>(index_of(x, y, a, b))];
  }
  double at(int x, int y, int a, int b) const {
    return p[static_cast<size_t>(index_of(x, y, a, b))];
  }
};

inline NumericBehavior to_numeric(const Behavior& beh) {
  NumericBehavior n;
  for (int i = 0; i < 64; ++i) n.p[i] = to_double(beh.p[i]);
  return n;
}

inline bool is_normalized(const Behavior& beh) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Rational s = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += beh.at(x, y, a, b);
      if (s != 1) return false;
    }
  return true;
}

inline bool is_probability_table(const Behavior& beh) {
  for (const Rational& v : beh.p)
    if (v < 0 || v > 1) return false;
  return is_normalized(beh);
}

inline bool is_no_signaling(const Behavior& beh) {
  if (!is_normalized(beh))
    throw DomainError("is_no_signaling: behavior not normalized");
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 4; ++a) {
      Rational m0 = 0, m1 = 0;
      for (int b = 0; b < 4; ++b) {
        m0 += beh.at(x, 0, a, b);
        m1 += beh.at(x, 1, a, b);
      }
      if (m0 != m1) return false;
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 4; ++b) {
      Rational m0 = 0, m1 = 0;
      for (int a = 0; a < 4; ++a) {
        m0 += beh.at(0, y, a, b);
        m1 += beh.at(1, y, a, b);
      }
      if (m0 != m1) return false;
    }
  return true;
}

// Tolerance-based variant for floating-point behaviors.
inline bool is_no_signaling(const NumericBehavior& beh, double tol) {
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 4; ++a) {
      double m0 = 0, m1 = 0;
      for (int b = 0; b < 4; ++b) {
        m0 += beh.at(x, 0, a, b);
        m1 += beh.at(x, 1, a, b);
      }
      if (std::abs(m0 - m1) > tol) return false;
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 4; ++b) {
      double m0 = 0, m1 = 0;
      for (int a = 0; a < 4; ++a) {
        m0 += beh.at(0, y, a, b);
        m1 += beh.at(1, y, a, b);
      }
      if (std::abs(m0 - m1) > tol) return false;
    }
  return true;
}

enum class Party { A, B };

// Outcome distribution of one party given its input; well defined because the
// behavior must be non-signaling.
inline std::array<Rational, 4> marginal(const Behavior& beh, Party party,
                                        int input) {
  if (input < 0 || input > 1) throw DomainError("marginal: input out of range");
  if (!is_no_signaling(beh)) throw DomainError("marginal: behavior signals");
  std::array<Rational, 4> dist{};
  for (int o = 0; o < 4; ++o)
    for (int other = 0; other < 4; ++other)
      dist[o] += (party == Party::A) ? beh.at(input, 0, o, other)
                                     : beh.at(0, input, other, o);
  return dist;
}

inline bool is_local_deterministic(const Behavior& beh) {
  for (const Rational& v : beh.p)
    if (v != 0 && v != 1) return false;
  if (!is_normalized(beh)) return false;
  int ax[2] = {-1, -1}, by[2] = {-1, -1};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (beh.at(x, y, a, b) != 1) continue;
          if (ax[x] == -1) ax[x] = a;
          if (by[y] == -1) by[y] = b;
          if (ax[x] != a || by[y] != b) return false;
        }
  return true;
}

inline Behavior uniform_behavior() {
  Behavior beh;
  for (Rational& v : beh.p) v = rat(1, 16);
  return beh;
}

// All listed cells receive `value`, everything else 0.
template <typename Indices>
Behavior behavior_from_support(const Indices& support, const Rational& value) {
  Behavior beh;
  for (int i : support) {
    if (i < 0 || i > 63)
      throw DomainError("behavior_from_support: index out of range");
    if (beh.p[static_cast<size_t>(i)] != 0)
      throw DomainError("behavior_from_support: repeated index");
    beh.p[static_cast<size_t>(i)] = value;
  }
  return beh;
}

// Representative vertex of each extremal class of the no-signaling polytope,
// used as the seed of its relabeling orbit. Class k has all nonzero entries
// equal to 1/k.
//  k=1: both parties always output 0.
//  k=2,3,4: outcomes below k, uniformly correlated so that (b-a) mod k = x*y.
inline Behavior class_seed(int k) {
  if (k < 1 || k > 4) throw DomainError("class_seed: class out of range");
  Behavior beh;
  if (k == 1) {
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) beh.at(x, y, 0, 0) = 1;
    return beh;
  }
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if ((b - a + k) % k == x * y) beh.at(x, y, a, b) = rat(1, k);
  return beh;
}

// Support cells of the eight half-valued no-signaling vertices that achieve
// sum rate 2 over the noiseless interference channel. Their supports
// partition the 64 cells; consecutive pairs (0,1), (2,3), (4,5), (6,7) are
// the pairs summed in the quantum-bound cut functionals.
inline const std::array<std::array<int, 8>, 8>& rate_two_supports() {
  static const std::array<std::array<int, 8>, 8> supports = {{
      {1, 4, 19, 22, 41, 44, 58, 63},
      {3, 6, 17, 20, 42, 47, 57, 60},
      {9, 12, 26, 31, 33, 36, 51, 54},
      {10, 15, 25, 28, 35, 38, 49, 52},
      {0, 5, 18, 23, 40, 45, 59, 62},
      {2, 7, 16, 21, 43, 46, 56, 61},
      {8, 13, 27, 30, 32, 37, 50, 55},
      {11, 14, 24, 29, 34, 39, 48, 53},
  }};
  return supports;
}

// The eight vertices themselves, half on each support cell.
inline std::array<Behavior, 8> rate_two_vertices() {
  std::array<Behavior, 8> vs;
  for (int i = 0; i < 8; ++i)
    vs[static_cast<size_t>(i)] =
        behavior_from_support(rate_two_supports()[static_cast<size_t>(i)],
                              rat(1, 2));
  return vs;
}

}  // namespace nscap
