#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "nscap/behavior.hpp"
#include "nscap/errors.hpp"
#include "nscap/rational.hpp"
#include "nscap/sdp.hpp"

namespace nscap {

// Level-1 moment matrix over {identity} + {A projectors a<=2, x<2} +
// {B projectors b<=2, y<2}. Outcome 3 of each measurement is eliminated by
// normalization, giving dimension 1 + 6 + 6.
inline constexpr int npa_dim = 13;

inline constexpr int npa_a_index(int x, int a) { return 1 + 3 * x + a; }
inline constexpr int npa_b_index(int y, int b) { return 7 + 3 * y + b; }

// Affine function of the moment matrix: value = sum(c .* G) + constant, with
// c stored as a full symmetric matrix.
struct MomentExpr {
  std::array<double, npa_dim * npa_dim> c{};
  double constant = 0;

  void add_entry(int i, int j, double w) {
    c[static_cast<size_t>(i * npa_dim + j)] += w / 2;
    c[static_cast<size_t>(j * npa_dim + i)] += w / 2;
  }

  double value(const std::vector<double>& g) const {
    double acc = constant;
    for (size_t k = 0; k < c.size(); ++k) acc += c[k] * g[k];
    return acc;
  }

  double norm2() const {
    double acc = 0;
    for (double w : c) acc += w * w;
    return acc;
  }
};

// P(a,b|x,y) as an affine function of the moment matrix; outcome 3 entries
// are reconstructed through normalization.
inline MomentExpr npa_prob_expr(int x, int y, int a, int b) {
  MomentExpr e;
  if (a <= 2 && b <= 2) {
    e.add_entry(npa_a_index(x, a), npa_b_index(y, b), 1.0);
  } else if (a == 3 && b <= 2) {
    e.add_entry(0, npa_b_index(y, b), 1.0);
    for (int aa = 0; aa < 3; ++aa) e.add_entry(npa_a_index(x, aa), npa_b_index(y, b), -1.0);
  } else if (a <= 2 && b == 3) {
    e.add_entry(0, npa_a_index(x, a), 1.0);
    for (int bb = 0; bb < 3; ++bb) e.add_entry(npa_a_index(x, a), npa_b_index(y, bb), -1.0);
  } else {
    e.constant = 1.0;
    for (int aa = 0; aa < 3; ++aa) e.add_entry(0, npa_a_index(x, aa), -1.0);
    for (int bb = 0; bb < 3; ++bb) e.add_entry(0, npa_b_index(y, bb), -1.0);
    for (int aa = 0; aa < 3; ++aa)
      for (int bb = 0; bb < 3; ++bb) e.add_entry(npa_a_index(x, aa), npa_b_index(y, bb), 1.0);
  }
  return e;
}

namespace detail {

inline const std::array<MomentExpr, 64>& npa_prob_exprs() {
  static const std::array<MomentExpr, 64> exprs = [] {
    std::array<MomentExpr, 64> out;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            out[static_cast<size_t>(index_of(x, y, a, b))] = npa_prob_expr(x, y, a, b);
    return out;
  }();
  return exprs;
}

}  // namespace detail

inline MomentExpr npa_functional_expr(const std::array<double, 64>& coeffs) {
  MomentExpr e;
  for (int i = 0; i < 64; ++i) {
    double w = coeffs[static_cast<size_t>(i)];
    if (w == 0) continue;
    const MomentExpr& pe = detail::npa_prob_exprs()[static_cast<size_t>(i)];
    for (size_t k = 0; k < e.c.size(); ++k) e.c[k] += w * pe.c[k];
    e.constant += w * pe.constant;
  }
  return e;
}

// Orthogonal projection onto the equality constraints: unit corner, diagonal
// equal to the first row (projector idempotence), and zero products between
// distinct outcomes of the same measurement.
inline void npa_project_equalities(std::vector<double>& g) {
  constexpr int n = npa_dim;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double avg = 0.5 * (g[static_cast<size_t>(i * n + j)] + g[static_cast<size_t>(j * n + i)]);
      g[static_cast<size_t>(i * n + j)] = avg;
      g[static_cast<size_t>(j * n + i)] = avg;
    }
  g[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    // In the symmetric-matrix inner product the off-diagonal entry carries
    // weight 2, so projecting onto {G_ii = G_0i} moves the diagonal by 2r/3
    // and the off-diagonal by r/3.
    double d = g[static_cast<size_t>(i * n + i)];
    double o = g[static_cast<size_t>(i)];
    double r = d - o;
    d -= r * (2.0 / 3.0);
    o += r / 3.0;
    g[static_cast<size_t>(i * n + i)] = d;
    g[static_cast<size_t>(i)] = o;
    g[static_cast<size_t>(i * n)] = o;
  }
  auto zero = [&](int i, int j) {
    g[static_cast<size_t>(i * n + j)] = 0.0;
    g[static_cast<size_t>(j * n + i)] = 0.0;
  };
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 3; ++a)
      for (int a2 = a + 1; a2 < 3; ++a2) zero(npa_a_index(x, a), npa_a_index(x, a2));
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 3; ++b)
      for (int b2 = b + 1; b2 < 3; ++b2) zero(npa_b_index(y, b), npa_b_index(y, b2));
}

inline double npa_equality_residual(const std::vector<double>& g) {
  constexpr int n = npa_dim;
  double r = std::abs(g[0] - 1.0);
  for (int i = 1; i < n; ++i)
    r = std::max(r, std::abs(g[static_cast<size_t>(i * n + i)] - g[static_cast<size_t>(i)]));
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 3; ++a)
      for (int a2 = a + 1; a2 < 3; ++a2)
        r = std::max(r, std::abs(g[static_cast<size_t>(npa_a_index(x, a) * n + npa_a_index(x, a2))]));
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 3; ++b)
      for (int b2 = b + 1; b2 < 3; ++b2)
        r = std::max(r, std::abs(g[static_cast<size_t>(npa_b_index(y, b) * n + npa_b_index(y, b2))]));
  return r;
}

struct NpaOptions {
  double tol = 1e-6;        // feasibility tolerance on every constraint family
  int iteration_cap = 50000;
  double bracket_tol = 1e-6;
  // residual decay demanded over each 200-iteration window; stalling below
  // this factor is reported as infeasible
  double plateau_factor = 0.995;
};

struct NpaFeasibility {
  bool feasible = false;
  std::vector<double> moment;  // final iterate, npa_dim x npa_dim row-major
  int iterations = 0;
  double residual = 0;
};

namespace detail {

struct NpaHalfspace {
  const MomentExpr* expr;
  double bound;   // expr >= bound
  double norm2;
};

inline const std::vector<NpaHalfspace>& npa_positivity() {
  static const std::vector<NpaHalfspace> hs = [] {
    std::vector<NpaHalfspace> out;
    out.reserve(64);
    for (const MomentExpr& e : npa_prob_exprs()) out.push_back({&e, 0.0, e.norm2()});
    return out;
  }();
  return hs;
}

}  // namespace detail

// Alternating-projection feasibility for the level-1 constraint set, with an
// optional extra halfspace expr >= bound (the bisection cut). Residual decay
// is sampled every 200 iterations; stalling is reported as infeasible.
inline NpaFeasibility npa_feasible(const std::vector<double>& start, const MomentExpr* extra,
                                   double extra_bound, const NpaOptions& opt = {}) {
  const auto& hs = detail::npa_positivity();
  std::vector<double> g = start;
  std::array<double, 64> vals{};
  std::array<int, 64> order{};
  double last = 1e300;
  auto residual = [&](const std::vector<double>& cur) {
    double r = npa_equality_residual(cur);
    for (const auto& h : hs) r = std::max(r, h.bound - h.expr->value(cur));
    if (extra) r = std::max(r, extra_bound - extra->value(cur));
    return std::max(r, 0.0);
  };
  for (int it = 1; it <= opt.iteration_cap; ++it) {
    npa_project_equalities(g);
    for (int i = 0; i < 64; ++i) {
      vals[static_cast<size_t>(i)] = hs[static_cast<size_t>(i)].expr->value(g);
      order[static_cast<size_t>(i)] = i;
    }
    std::partial_sort(order.begin(), order.begin() + 12, order.end(), [&](int lhs, int rhs) {
      return vals[static_cast<size_t>(lhs)] < vals[static_cast<size_t>(rhs)];
    });
    for (int k = 0; k < 12; ++k) {
      const auto& h = hs[static_cast<size_t>(order[static_cast<size_t>(k)])];
      double v = h.expr->value(g);
      if (v < h.bound && h.norm2 > 1e-14) {
        double step = (h.bound - v) / h.norm2;
        for (size_t m = 0; m < h.expr->c.size(); ++m) g[m] += step * h.expr->c[m];
      }
    }
    if (extra && extra->norm2() > 1e-14) {
      double v = extra->value(g);
      if (v < extra_bound) {
        double step = (extra_bound - v) / extra->norm2();
        for (size_t m = 0; m < extra->c.size(); ++m) g[m] += step * extra->c[m];
      }
    }
    g = project_psd(g, npa_dim);
    if (it % 20 == 0 || it <= 3) {
      double r = residual(g);
      if (r < opt.tol) return {true, std::move(g), it, r};
      if (it % 200 == 0) {
        if (r > last * opt.plateau_factor) return {false, std::move(g), it, r};
        last = r;
      }
    }
  }
  double r = residual(g);
  return {r < opt.tol, std::move(g), opt.iteration_cap, r};
}

inline std::vector<double> npa_initial_point() {
  std::vector<double> g(npa_dim * npa_dim, 0.0);
  for (int i = 0; i < npa_dim; ++i) g[static_cast<size_t>(i * npa_dim + i)] = 0.5;
  g[0] = 1.0;
  return g;
}

struct NpaExtremum {
  double value = 0;
  int total_iterations = 0;
};

// Bisection on the objective level combined with the alternating-projection
// feasibility oracle.
inline NpaExtremum npa1_extremize(const std::array<double, 64>& coeffs, bool maximize,
                                  const NpaOptions& opt = {}) {
  MomentExpr obj = npa_functional_expr(coeffs);
  double n2 = obj.norm2();
  NpaFeasibility base = npa_feasible(npa_initial_point(), nullptr, 0.0, opt);
  if (!base.feasible)
    throw ConsistencyError("npa1_extremize: base constraint set not reached, residual " +
                           std::to_string(base.residual) + " after " +
                           std::to_string(base.iterations) + " iterations");
  if (n2 < 1e-14) return {obj.constant, base.iterations};
  double cur = obj.value(base.moment);
  std::vector<double> warm = base.moment;
  int total = base.iterations;
  double lo = maximize ? cur : -0.5;
  double hi = maximize ? 4.5 : cur;
  while (hi - lo > opt.bracket_tol) {
    double t = 0.5 * (lo + hi);
    MomentExpr cut = obj;
    double bound = t;
    if (!maximize) {
      for (double& w : cut.c) w = -w;
      cut.constant = -cut.constant;
      bound = -t;
    }
    NpaFeasibility fr = npa_feasible(warm, &cut, bound, opt);
    total += fr.iterations;
    if (fr.feasible) {
      double v = obj.value(fr.moment);
      warm = std::move(fr.moment);
      if (maximize)
        lo = std::max(t, v - opt.tol);
      else
        hi = std::min(t, v + opt.tol);
    } else {
      if (maximize)
        hi = t;
      else
        lo = t;
    }
  }
  return {maximize ? lo : hi, total};
}

inline double npa1_max_functional(const std::array<Rational, 64>& coeffs,
                                  const NpaOptions& opt = {}) {
  std::array<double, 64> c{};
  for (size_t i = 0; i < 64; ++i) c[i] = coeffs[i].get_d();
  return npa1_extremize(c, true, opt).value;
}

inline double npa1_min_functional(const std::array<Rational, 64>& coeffs,
                                  const NpaOptions& opt = {}) {
  std::array<double, 64> c{};
  for (size_t i = 0; i < 64; ++i) c[i] = coeffs[i].get_d();
  return npa1_extremize(c, false, opt).value;
}

// Rank-1 moment matrix of a local deterministic strategy; exactly feasible.
inline std::vector<double> npa_deterministic_moment(int a0, int a1, int b0, int b1) {
  for (int v : {a0, a1, b0, b1})
    if (v < 0 || v > 3) throw DomainError("npa_deterministic_moment: outcome out of range");
  std::vector<double> u(npa_dim, 0.0);
  u[0] = 1.0;
  const std::array<int, 2> alpha{a0, a1};
  const std::array<int, 2> beta{b0, b1};
  for (int x = 0; x < 2; ++x)
    if (alpha[static_cast<size_t>(x)] <= 2) u[static_cast<size_t>(npa_a_index(x, alpha[static_cast<size_t>(x)]))] = 1.0;
  for (int y = 0; y < 2; ++y)
    if (beta[static_cast<size_t>(y)] <= 2) u[static_cast<size_t>(npa_b_index(y, beta[static_cast<size_t>(y)]))] = 1.0;
  std::vector<double> g(npa_dim * npa_dim, 0.0);
  for (int i = 0; i < npa_dim; ++i)
    for (int j = 0; j < npa_dim; ++j)
      g[static_cast<size_t>(i * npa_dim + j)] = u[static_cast<size_t>(i)] * u[static_cast<size_t>(j)];
  return g;
}

// Feasibility of a fixed behavior: the 64 probability reconstructions are
// pinned to the behavior's entries on top of the level-1 constraints.
inline NpaFeasibility npa_behavior_feasible(const NumericBehavior& beh,
                                            const NpaOptions& opt = {},
                                            std::vector<double> start = {}) {
  const auto& exprs = detail::npa_prob_exprs();
  std::vector<double> g = start.empty() ? npa_initial_point() : std::move(start);
  double last = 1e300;
  auto residual = [&](const std::vector<double>& cur) {
    double r = npa_equality_residual(cur);
    for (int i = 0; i < 64; ++i)
      r = std::max(r, std::abs(exprs[static_cast<size_t>(i)].value(cur) - beh.p[static_cast<size_t>(i)]));
    return r;
  };
  for (int it = 1; it <= opt.iteration_cap; ++it) {
    npa_project_equalities(g);
    for (int i = 0; i < 64; ++i) {
      const MomentExpr& e = exprs[static_cast<size_t>(i)];
      double n2 = e.norm2();
      if (n2 < 1e-14) continue;
      double step = (beh.p[static_cast<size_t>(i)] - e.value(g)) / n2;
      if (step == 0) continue;
      for (size_t m = 0; m < e.c.size(); ++m) g[m] += step * e.c[m];
    }
    g = project_psd(g, npa_dim);
    if (it % 20 == 0 || it <= 3) {
      double r = residual(g);
      if (r < opt.tol) return {true, std::move(g), it, r};
      if (it % 200 == 0) {
        if (r > last * opt.plateau_factor) return {false, std::move(g), it, r};
        last = r;
      }
    }
  }
  double r = residual(g);
  return {r < opt.tol, std::move(g), opt.iteration_cap, r};
}

}  // namespace nscap
