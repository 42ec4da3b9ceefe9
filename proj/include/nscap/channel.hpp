#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "nscap/behavior.hpp"
#include "nscap/errors.hpp"
#include "nscap/rational.hpp"

namespace nscap {

// Two-sender two-receiver interference channel. Each sender i feeds two bits
// (x_i1, x_i2); if x_12 xor x_22 = x_11 * x_21 the receivers get (x_11, x_21)
// with probability p and the complementary pair otherwise, and with q in
// place of p when the condition fails.
struct ChannelParams {
  double p, q;

  ChannelParams(double p_, double q_) : p(p_), q(q_) {
    if (!(p >= 0 && p <= 1) || !(q >= 0 && q <= 1))
      throw DomainError("ChannelParams: p and q must lie in [0,1]");
  }
};

// True iff a receiver's marginal depends on the other sender's input; within
// this family that is exactly p != q. Operations that rely on channel
// incompatibility check this flag instead of silently proceeding.
inline bool is_incompatible(const ChannelParams& params) {
  return params.p != params.q;
}

// Distribution over (Y1,Y2), flattened as 2*y1 + y2.
inline std::array<double, 4> channel_conditional(const ChannelParams& params,
                                                 int x11, int x12, int x21,
                                                 int x22) {
  for (int bit : {x11, x12, x21, x22})
    if (bit != 0 && bit != 1)
      throw DomainError("channel_conditional: inputs must be bits");
  bool cond = (x12 ^ x22) == (x11 & x21);
  double pr = cond ? params.p : params.q;
  std::array<double, 4> dist{};
  dist[static_cast<size_t>(2 * x11 + x21)] += pr;
  dist[static_cast<size_t>(2 * (1 - x11) + (1 - x21))] += 1 - pr;
  return dist;
}

// Channel composed with an encoding behavior: message pair in, output pair
// distribution out.
struct ComposedConditional {
  std::array<std::array<double, 4>, 4> table{};  // [2*m1+m2][2*y1+y2]

  const std::array<double, 4>& row(int m1, int m2) const {
    return table[static_cast<size_t>(2 * m1 + m2)];
  }
};

inline ComposedConditional compose(const NumericBehavior& encoding,
                                   const ChannelParams& params) {
  ComposedConditional out;
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2) {
      auto& row = out.table[static_cast<size_t>(2 * m1 + m2)];
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double pe = encoding.at(m1, m2, a, b);
          if (pe == 0) continue;
          auto [x11, x12] = outcome_to_bits(a);
          auto [x21, x22] = outcome_to_bits(b);
          auto dist = channel_conditional(params, x11, x12, x21, x22);
          for (size_t o = 0; o < 4; ++o) row[o] += pe * dist[o];
        }
    }
  return out;
}

inline ComposedConditional compose(const Behavior& encoding,
                                   const ChannelParams& params) {
  return compose(to_numeric(encoding), params);
}

inline double binary_entropy(double t) {
  if (!(t >= 0 && t <= 1))
    throw DomainError("binary_entropy: argument outside [0,1]");
  if (t <= 0 || t >= 1) return 0.0;
  return -t * std::log2(t) - (1 - t) * std::log2(1 - t);
}

namespace detail {
inline double clamp01(double t) { return std::min(1.0, std::max(0.0, t)); }

// I(M;Y) for a binary symmetric-prior pair given P(Y=0|M=m).
inline double one_receiver_rate(double u0, double u1) {
  u0 = clamp01(u0);
  u1 = clamp01(u1);
  return binary_entropy(0.5 * (u0 + u1)) -
         0.5 * (binary_entropy(u0) + binary_entropy(u1));
}
}  // namespace detail

// Sum of the two per-receiver mutual informations at uniform message priors
// with identity decoding.
inline double sum_rate(const NumericBehavior& encoding,
                       const ChannelParams& params) {
  ComposedConditional cc = compose(encoding, params);
  double total = 0;
  for (int r = 0; r < 2; ++r) {
    double u[2] = {0, 0};
    for (int m1 = 0; m1 < 2; ++m1)
      for (int m2 = 0; m2 < 2; ++m2) {
        const auto& row = cc.row(m1, m2);
        double zero = (r == 0) ? row[0] + row[1] : row[0] + row[2];
        u[r == 0 ? m1 : m2] += 0.5 * zero;
      }
    total += detail::one_receiver_rate(u[0], u[1]);
  }
  return total;
}

inline double sum_rate(const Behavior& encoding, const ChannelParams& params) {
  return sum_rate(to_numeric(encoding), params);
}

// Affine form {constant, p coefficient, q coefficient} of P(Y_r=0 | a, b).
inline std::array<int, 3> receiver_zero_form(int r, int a, int b) {
  auto [x11, x12] = outcome_to_bits(a);
  auto [x21, x22] = outcome_to_bits(b);
  bool cond = (x12 ^ x22) == (x11 & x21);
  int lead = (r == 0) ? x11 : x21;
  if (lead == 0) return cond ? std::array<int, 3>{0, 1, 0} : std::array<int, 3>{0, 0, 1};
  return cond ? std::array<int, 3>{1, -1, 0} : std::array<int, 3>{1, 0, -1};
}

// The receiver marginals P(Y_r=0|m1,m2) of a composed encoding, symbolically
// in (p,q): one affine coefficient triple per receiver and message pair.
// Equal signatures imply identical sum-rate functions of (p,q).
struct MarginalSignature {
  // Flattened (((r*2 + m1)*2 + m2)*3 + component), component order
  // constant, p, q.
  std::array<Rational, 24> coeffs{};

  bool operator==(const MarginalSignature& o) const { return coeffs == o.coeffs; }
  bool operator<(const MarginalSignature& o) const { return coeffs < o.coeffs; }
};

inline MarginalSignature marginal_signature(const Behavior& encoding) {
  MarginalSignature sig;
  for (int i = 0; i < 64; ++i) {
    const Rational& pe = encoding.p[static_cast<size_t>(i)];
    if (pe == 0) continue;
    Cell c = cell_of(i);
    for (int r = 0; r < 2; ++r) {
      auto form = receiver_zero_form(r, c.a, c.b);
      size_t base = static_cast<size_t>((((r * 2 + c.x) * 2 + c.y)) * 3);
      for (size_t comp = 0; comp < 3; ++comp)
        if (form[comp] != 0) sig.coeffs[base + comp] += form[comp] * pe;
    }
  }
  return sig;
}

// Fast path for orbit elements: integer accumulation, one division by k.
inline MarginalSignature marginal_signature_of_mask(uint64_t mask, int k) {
  std::array<int, 24> acc{};
  uint64_t m = mask;
  while (m) {
    int i = std::countr_zero(m);
    m &= m - 1;
    Cell c = cell_of(i);
    for (int r = 0; r < 2; ++r) {
      auto form = receiver_zero_form(r, c.a, c.b);
      size_t base = static_cast<size_t>((((r * 2 + c.x) * 2 + c.y)) * 3);
      for (size_t comp = 0; comp < 3; ++comp) acc[base + comp] += form[comp];
    }
  }
  MarginalSignature sig;
  for (size_t j = 0; j < 24; ++j)
    if (acc[j] != 0) sig.coeffs[j] = rat(acc[j], k);
  return sig;
}

struct NumericSignature {
  std::array<double, 24> c{};
};

inline NumericSignature to_numeric(const MarginalSignature& sig) {
  NumericSignature n;
  for (size_t j = 0; j < 24; ++j) n.c[j] = to_double(sig.coeffs[j]);
  return n;
}

// P(Y_r=0|m1,m2) reconstructed at concrete parameters.
inline double signature_marginal(const NumericSignature& sig, int r, int m1,
                                 int m2, const ChannelParams& params) {
  size_t base = static_cast<size_t>((((r * 2 + m1) * 2 + m2)) * 3);
  return sig.c[base] + sig.c[base + 1] * params.p + sig.c[base + 2] * params.q;
}

inline double rate_from_signature(const NumericSignature& sig,
                                  const ChannelParams& params) {
  double total = 0;
  for (int r = 0; r < 2; ++r) {
    double u[2];
    for (int m = 0; m < 2; ++m)
      u[m] = (r == 0) ? 0.5 * (signature_marginal(sig, 0, m, 0, params) +
                               signature_marginal(sig, 0, m, 1, params))
                      : 0.5 * (signature_marginal(sig, 1, 0, m, params) +
                               signature_marginal(sig, 1, 1, m, params));
    total += detail::one_receiver_rate(u[0], u[1]);
  }
  return total;
}

// Number of distinct sum-rate functions of (p,q) among the given signatures,
// compared by fingerprints on a fixed 7x7 parameter grid.
inline size_t count_distinct_rate_functions(
    const std::vector<MarginalSignature>& sigs, double tol = 1e-9) {
  std::vector<std::array<double, 49>> prints;
  prints.reserve(sigs.size());
  for (const MarginalSignature& sig : sigs) {
    NumericSignature n = to_numeric(sig);
    std::array<double, 49> fp{};
    size_t at = 0;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        fp[at++] = rate_from_signature(n, ChannelParams(i / 6.0, j / 6.0));
    prints.push_back(fp);
  }
  std::vector<size_t> parent(prints.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < prints.size(); ++i)
    for (size_t j = i + 1; j < prints.size(); ++j) {
      double diff = 0;
      for (size_t t = 0; t < 49; ++t)
        diff = std::max(diff, std::abs(prints[i][t] - prints[j][t]));
      if (diff < tol) parent[find(i)] = find(j);
    }
  size_t roots = 0;
  for (size_t i = 0; i < prints.size(); ++i)
    if (find(i) == i) ++roots;
  return roots;
}

}  // namespace nscap
