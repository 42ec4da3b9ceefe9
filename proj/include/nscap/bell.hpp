#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "nscap/behavior.hpp"
#include "nscap/channel.hpp"
#include "nscap/errors.hpp"
#include "nscap/rational.hpp"
#include "nscap/relabeling.hpp"

namespace nscap {

// Linear functional on behaviors: value = coefficients . p + offset. The CGLMP
// forms have 0/1 coefficients and satisfy value <= local_bound on every local
// deterministic vertex.
struct BellFunctional {
  std::array<Rational, 64> coefficients{};
  Rational offset{0};
  Rational local_bound{0};

  Rational evaluate(const Behavior& beh) const {
    Rational acc = offset;
    for (int i = 0; i < 64; ++i) acc += coefficients[static_cast<size_t>(i)] * beh.p[static_cast<size_t>(i)];
    return acc;
  }

  double evaluate(const NumericBehavior& beh) const {
    double acc = offset.get_d();
    for (int i = 0; i < 64; ++i)
      acc += coefficients[static_cast<size_t>(i)].get_d() * beh.p[static_cast<size_t>(i)];
    return acc;
  }

  bool operator==(const BellFunctional& other) const {
    return coefficients == other.coefficients && offset == other.offset &&
           local_bound == other.local_bound;
  }
};

// Cell mask of a functional whose coefficients are all 0 or 1.
inline uint64_t functional_mask(const BellFunctional& f) {
  uint64_t mask = 0;
  for (int i = 0; i < 64; ++i) {
    const Rational& c = f.coefficients[static_cast<size_t>(i)];
    if (c == 1)
      mask |= uint64_t{1} << i;
    else if (c != 0)
      throw DomainError("functional_mask: coefficients must be 0 or 1");
  }
  return mask;
}

inline BellFunctional functional_from_mask(uint64_t mask, const Rational& offset,
                                           const Rational& local_bound) {
  BellFunctional f;
  f.offset = offset;
  f.local_bound = local_bound;
  for (int i = 0; i < 64; ++i)
    if (mask >> i & 1) f.coefficients[static_cast<size_t>(i)] = 1;
  return f;
}

namespace detail {

// Mask of cells (x,y,a,b) selected by a per-block outcome predicate.
template <typename Pred>
uint64_t event_mask(Pred&& pred) {
  uint64_t mask = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          if (pred(x, y, a, b)) mask |= uint64_t{1} << index_of(x, y, a, b);
  return mask;
}

inline int add4(int r, int s) { return (r + s) % 4; }

}  // namespace detail

// Two-input four-outcome CGLMP functional,
// P(a<=b|00) + P(a>=b|01) + P(a>=b|10) + P(a<b|11) - 3 <= 0 on local points.
inline uint64_t cglmp_mask() {
  static const uint64_t mask = detail::event_mask([](int x, int y, int a, int b) {
    if (x == 0 && y == 0) return a <= b;
    if (x == 1 && y == 1) return a < b;
    return a >= b;
  });
  return mask;
}

// Relabeled CGLMP form: on input 1 both parties shift outcomes by 2 mod 4,
// P(a<=b|00) + P(a>=b+2|01) + P(a+2>=b|10) + P(a+2<b+2|11) - 3 <= 0.
inline uint64_t cglmp_tilde_mask() {
  static const uint64_t mask = detail::event_mask([](int x, int y, int a, int b) {
    if (x == 0 && y == 0) return a <= b;
    if (x == 0 && y == 1) return a >= detail::add4(b, 2);
    if (x == 1 && y == 0) return detail::add4(a, 2) >= b;
    return detail::add4(a, 2) < detail::add4(b, 2);
  });
  return mask;
}

inline const BellFunctional& cglmp_functional() {
  static const BellFunctional f = functional_from_mask(cglmp_mask(), Rational(-3), Rational(0));
  return f;
}

inline const BellFunctional& cglmp_tilde_functional() {
  static const BellFunctional f =
      functional_from_mask(cglmp_tilde_mask(), Rational(-3), Rational(0));
  return f;
}

namespace detail {

inline Rational mask_value(uint64_t mask, const Behavior& beh, const Rational& offset) {
  Rational acc = offset;
  uint64_t rest = mask;
  while (rest) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    acc += beh.p[static_cast<size_t>(i)];
  }
  return acc;
}

inline double mask_value(uint64_t mask, const NumericBehavior& beh, double offset) {
  double acc = offset;
  uint64_t rest = mask;
  while (rest) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    acc += beh.p[static_cast<size_t>(i)];
  }
  return acc;
}

}  // namespace detail

inline Rational cglmp_b4(const Behavior& beh) {
  return detail::mask_value(cglmp_mask(), beh, Rational(-3));
}

inline double cglmp_b4(const NumericBehavior& beh) {
  return detail::mask_value(cglmp_mask(), beh, -3.0);
}

inline Rational cglmp_b4_tilde(const Behavior& beh) {
  return detail::mask_value(cglmp_tilde_mask(), beh, Rational(-3));
}

inline double cglmp_b4_tilde(const NumericBehavior& beh) {
  return detail::mask_value(cglmp_tilde_mask(), beh, -3.0);
}

// Distance-from-local nonlocality measure, max{0, B}.
inline Rational nonlocality_measure(const Behavior& beh) {
  Rational v = cglmp_b4(beh);
  return v > 0 ? v : Rational(0);
}

inline Rational nonlocality_measure(const BellFunctional& f, const Behavior& beh) {
  Rational v = f.evaluate(beh);
  return v > 0 ? v : Rational(0);
}

// Functional F' with F'(beh) = F(apply_relabeling(rel, beh)).
inline BellFunctional dual_functional(const Relabeling& rel, const BellFunctional& f) {
  const CellMap m = cell_map(rel);
  BellFunctional out;
  out.offset = f.offset;
  out.local_bound = f.local_bound;
  for (int i = 0; i < 64; ++i)
    out.coefficients[static_cast<size_t>(i)] = f.coefficients[m[static_cast<size_t>(i)]];
  return out;
}

namespace detail {

// Cell masks of the 256 local deterministic vertices.
inline const std::vector<uint64_t>& local_vertex_masks() {
  static const std::vector<uint64_t> masks = [] {
    std::vector<uint64_t> out;
    out.reserve(256);
    for (int a0 = 0; a0 < 4; ++a0)
      for (int a1 = 0; a1 < 4; ++a1)
        for (int b0 = 0; b0 < 4; ++b0)
          for (int b1 = 0; b1 < 4; ++b1) {
            const std::array<int, 2> alpha{a0, a1};
            const std::array<int, 2> beta{b0, b1};
            uint64_t m = 0;
            for (int x = 0; x < 2; ++x)
              for (int y = 0; y < 2; ++y)
                m |= uint64_t{1} << index_of(x, y, alpha[static_cast<size_t>(x)],
                                             beta[static_cast<size_t>(y)]);
            out.push_back(m);
          }
    return out;
  }();
  return masks;
}

}  // namespace detail

// Orbit of a 0/1-coefficient functional under all 1,327,104 relabelings. The
// members share the base offset and local bound and are stored as sorted cell
// masks; construction verifies the local bound exactly on all 256 local
// deterministic vertices.
class CglmpOrbit {
 public:
  explicit CglmpOrbit(const BellFunctional& base)
      : offset_(base.offset), local_bound_(base.local_bound) {
    masks_ = orbit_support_masks(functional_mask(base));
    verify_local_bound();
  }

  size_t size() const { return masks_.size(); }
  const std::vector<uint64_t>& masks() const { return masks_; }
  const Rational& offset() const { return offset_; }
  const Rational& local_bound() const { return local_bound_; }

  bool contains_mask(uint64_t mask) const {
    return std::binary_search(masks_.begin(), masks_.end(), mask);
  }

  bool contains(const BellFunctional& f) const {
    return f.offset == offset_ && f.local_bound == local_bound_ &&
           contains_mask(functional_mask(f));
  }

  BellFunctional functional_at(size_t i) const {
    return functional_from_mask(masks_.at(i), offset_, local_bound_);
  }

  // Exact maximum of the orbit members at a behavior. A floating-point sweep
  // narrows the candidates; every mask within 1e-9 of the numeric maximum is
  // then re-evaluated exactly (the numeric sum of at most 64 cell values is
  // accurate to far better than 1e-9).
  Rational max_value(const Behavior& beh) const {
    std::array<double, 64> vals{};
    for (int i = 0; i < 64; ++i) vals[static_cast<size_t>(i)] = beh.p[static_cast<size_t>(i)].get_d();
    std::vector<double> sums(masks_.size());
    double best = -1e300;
    for (size_t j = 0; j < masks_.size(); ++j) {
      double s = 0;
      uint64_t rest = masks_[j];
      while (rest) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        s += vals[static_cast<size_t>(i)];
      }
      sums[j] = s;
      if (s > best) best = s;
    }
    bool have = false;
    Rational best_exact;
    for (size_t j = 0; j < masks_.size(); ++j) {
      if (sums[j] < best - 1e-9) continue;
      Rational v = detail::mask_value(masks_[j], beh, Rational(0));
      if (!have || v > best_exact) {
        best_exact = v;
        have = true;
      }
    }
    return best_exact + offset_;
  }

 private:
  void verify_local_bound() const {
    // With 0/1 coefficients the value at a local vertex is hits + offset, so
    // the bound reduces to an integer cap on popcount(mask & vertex).
    Rational slack = local_bound_ - offset_;
    Integer cap_z;
    mpz_fdiv_q(cap_z.get_mpz_t(), mpq_numref(slack.get_mpq_t()), mpq_denref(slack.get_mpq_t()));
    long cap = cap_z.fits_slong_p() ? cap_z.get_si() : (cap_z < 0 ? -1 : 64);
    for (uint64_t cm : masks_)
      for (uint64_t lm : detail::local_vertex_masks())
        if (std::popcount(cm & lm) > cap)
          throw ConsistencyError("CglmpOrbit: member exceeds local bound");
  }

  std::vector<uint64_t> masks_;
  Rational offset_;
  Rational local_bound_;
};

inline CglmpOrbit generate_equivalent_inequalities(const BellFunctional& base) {
  return CglmpOrbit(base);
}

// Union support mask of the rate-two vertex pair {v_{2p+1}, v_{2p+2}}.
inline uint64_t pair_support_mask(int pair) {
  if (pair < 0 || pair > 3) throw DomainError("pair_support_mask: pair out of range");
  uint64_t mask = 0;
  for (int j = 0; j < 2; ++j)
    for (int cell : rate_two_supports()[static_cast<size_t>(2 * pair + j)])
      mask |= uint64_t{1} << cell;
  return mask;
}

// Linear form with coefficient 1 on the 16 union-support cells of a rate-two
// vertex pair. Each block holds four of the cells, so the value never exceeds
// 4; it equals 4 exactly at the two matching vertices.
inline const BellFunctional& pair_sum_functional(int pair) {
  static const std::array<BellFunctional, 4> fs = [] {
    std::array<BellFunctional, 4> out;
    for (int p = 0; p < 4; ++p)
      out[static_cast<size_t>(p)] =
          functional_from_mask(pair_support_mask(p), Rational(0), Rational(4));
    return out;
  }();
  if (pair < 0 || pair > 3) throw DomainError("pair_sum_functional: pair out of range");
  return fs[static_cast<size_t>(pair)];
}

// Sample vertex of the class with uniform value 1/k, used in the nonlocality
// versus rate comparison. k = 2 is the fifth rate-two vertex; k = 3 and 4 are
// fixed representatives of the third and quarter classes.
inline Behavior class_sample_vertex(int k) {
  switch (k) {
    case 2:
      return rate_two_vertices()[4];
    case 3: {
      static const std::array<int, 12> sup{0, 5, 15, 18, 23, 28, 35, 40, 45, 50, 59, 60};
      return behavior_from_support(sup, rat(1, 3));
    }
    case 4: {
      static const std::array<int, 16> sup{0,  5,  10, 15, 18, 23, 25, 28,
                                           35, 38, 40, 45, 49, 54, 59, 60};
      return behavior_from_support(sup, rat(1, 4));
    }
    default:
      throw DomainError("class_sample_vertex: k must be 2, 3 or 4");
  }
}

namespace detail {

inline std::string format_sig(double v, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace detail

// Nonlocality versus sum rate for the three sample vertices: orbit-maximal
// CGLMP violation in row one, sum rate of the induced channel at
// (p,q) = (1,0) in row two. The two orders run in opposite directions.
struct NonlocalityRateReport {
  std::array<Rational, 3> nonlocality{};
  std::array<double, 3> sum_rates{};
  bool anti_monotone = false;

  std::string text() const {
    static const std::array<const char*, 3> labels{"v1/2", "v1/3", "v1/4"};
    std::ostringstream os;
    os << std::left << std::setw(22) << "vertex";
    for (const char* l : labels) os << std::setw(16) << l;
    os << '\n' << std::setw(22) << "nonlocality";
    for (const Rational& v : nonlocality) os << std::setw(16) << to_string(v);
    os << '\n' << std::setw(22) << "sum rate at (1,0)";
    for (double r : sum_rates) os << std::setw(16) << detail::format_sig(r);
    os << '\n'
       << "anti-monotone (nonlocality up, rate down): " << (anti_monotone ? "yes" : "no")
       << '\n';
    return os.str();
  }

  std::string csv() const {
    static const std::array<const char*, 3> labels{"v1/2", "v1/3", "v1/4"};
    std::ostringstream os;
    os << "vertex,nonlocality,sum_rate\n";
    for (size_t i = 0; i < 3; ++i)
      os << labels[i] << ',' << to_string(nonlocality[i]) << ','
         << detail::format_sig(sum_rates[i]) << '\n';
    return os.str();
  }
};

inline NonlocalityRateReport nonlocality_rate_report(const CglmpOrbit& orbit) {
  NonlocalityRateReport rep;
  const ChannelParams params(1.0, 0.0);
  for (int k = 2; k <= 4; ++k) {
    Behavior v = class_sample_vertex(k);
    Rational violation = orbit.max_value(v);
    rep.nonlocality[static_cast<size_t>(k - 2)] = violation > 0 ? violation : Rational(0);
    rep.sum_rates[static_cast<size_t>(k - 2)] = sum_rate(to_numeric(v), params);
  }
  rep.anti_monotone = rep.nonlocality[0] < rep.nonlocality[1] &&
                      rep.nonlocality[1] < rep.nonlocality[2] &&
                      rep.sum_rates[0] > rep.sum_rates[1] && rep.sum_rates[1] > rep.sum_rates[2];
  return rep;
}

inline NonlocalityRateReport nonlocality_rate_report() {
  return nonlocality_rate_report(CglmpOrbit(cglmp_functional()));
}

}  // namespace nscap
