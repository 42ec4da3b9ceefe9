#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "nscap/behavior.hpp"
#include "nscap/channel.hpp"
#include "nscap/errors.hpp"

namespace nscap {

// Two-input two-outcome correlation P(a1,a2|m1,m2); row (m1,m2) is stored as
// table[2*m1+m2] with outcome pair index 2*a1+a2.
struct TwoOutcomeCorrelation {
  std::array<std::array<double, 4>, 4> table{};

  double at(int m1, int m2, int a1, int a2) const {
    return table[static_cast<size_t>(2 * m1 + m2)][static_cast<size_t>(2 * a1 + a2)];
  }
  double& at(int m1, int m2, int a1, int a2) {
    return table[static_cast<size_t>(2 * m1 + m2)][static_cast<size_t>(2 * a1 + a2)];
  }
};

// Singlet-state correlation with measurement angles at Tsirelson's CHSH
// point: the equal-outcome probability is (2+sqrt 2)/4 except on input pair
// (1,1) where it is (2-sqrt 2)/4; outcome marginals are uniform.
inline TwoOutcomeCorrelation tsirelson_correlation() {
  TwoOutcomeCorrelation corr;
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2) {
      double same = (m1 == 1 && m2 == 1) ? (2 - std::sqrt(2.0)) / 4 : (2 + std::sqrt(2.0)) / 4;
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          corr.at(m1, m2, a1, a2) = (a1 == a2) ? same / 2 : (1 - same) / 2;
    }
  return corr;
}

inline double chsh_value(const TwoOutcomeCorrelation& corr) {
  std::array<std::array<double, 2>, 2> e{};
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2)
      e[static_cast<size_t>(m1)][static_cast<size_t>(m2)] =
          corr.at(m1, m2, 0, 0) + corr.at(m1, m2, 1, 1) - corr.at(m1, m2, 0, 1) -
          corr.at(m1, m2, 1, 0);
  return e[0][0] + e[0][1] + e[1][0] - e[1][1];
}

// Deterministic post-processing per party: (message, local outcome) -> one of
// the four channel-input pairs, encoded as an outcome label 0..3. A party's
// map is packed into a base-4 code over domain order (0,0),(0,1),(1,0),(1,1).
struct PostProcessing {
  std::array<int, 4> df1{};  // index 2*m + a
  std::array<int, 4> df2{};
};

inline std::array<int, 4> post_map_from_code(int code) {
  if (code < 0 || code > 255) throw DomainError("post_map_from_code: code out of range");
  std::array<int, 4> df{};
  for (int slot = 0; slot < 4; ++slot) df[static_cast<size_t>(slot)] = code >> (2 * slot) & 3;
  return df;
}

inline PostProcessing post_processing_from_codes(int code1, int code2) {
  return {post_map_from_code(code1), post_map_from_code(code2)};
}

// Four-outcome behavior obtained by pushing the correlation outcomes through
// the per-party deterministic maps.
inline NumericBehavior lift_with_postprocessing(const TwoOutcomeCorrelation& corr,
                                                const PostProcessing& pp) {
  NumericBehavior beh;
  beh.p.fill(0.0);
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          beh.at(m1, m2, pp.df1[static_cast<size_t>(2 * m1 + a1)],
                 pp.df2[static_cast<size_t>(2 * m2 + a2)]) += corr.at(m1, m2, a1, a2);
  return beh;
}

// Best sum rate over all 65,536 deterministic post-processing pairs of the
// Tsirelson correlation.
inline double quantum_lb_search(const ChannelParams& params) {
  const TwoOutcomeCorrelation corr = tsirelson_correlation();
  static const std::array<std::array<int, 4>, 256> maps = [] {
    std::array<std::array<int, 4>, 256> m{};
    for (int code = 0; code < 256; ++code) m[static_cast<size_t>(code)] = post_map_from_code(code);
    return m;
  }();
  double best = 0.0;
  for (int c1 = 0; c1 < 256; ++c1)
    for (int c2 = 0; c2 < 256; ++c2) {
      PostProcessing pp{maps[static_cast<size_t>(c1)], maps[static_cast<size_t>(c2)]};
      best = std::max(best, sum_rate(lift_with_postprocessing(corr, pp), params));
    }
  return best;
}

}  // namespace nscap
