#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "nscap/bell.hpp"
#include "nscap/npa.hpp"
#include "nscap/quantum.hpp"

using namespace nscap;
using Catch::Matchers::WithinAbs;

namespace {

std::array<Rational, 64> normalization_coeffs() {
  std::array<Rational, 64> c{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) c[static_cast<size_t>(index_of(0, 0, a, b))] = 1;
  return c;
}

}  // namespace

TEST_CASE("jacobi eigendecomposition", "[npa]") {
  std::mt19937 rng(409);
  std::uniform_real_distribution<double> u(-1, 1);
  const int n = 13;
  std::vector<double> a(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a[static_cast<size_t>(i * n + j)] = a[static_cast<size_t>(j * n + i)] = u(rng);
  SymmetricEigen eig = jacobi_eigen(a, n);
  REQUIRE(std::is_sorted(eig.values.begin(), eig.values.end()));
  double trace = 0;
  for (int i = 0; i < n; ++i) trace += a[static_cast<size_t>(i * n + i)];
  double sum = 0;
  for (double w : eig.values) sum += w;
  REQUIRE_THAT(sum, WithinAbs(trace, 1e-9));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double av = 0;
      for (int j = 0; j < n; ++j)
        av += a[static_cast<size_t>(i * n + j)] * eig.vectors[static_cast<size_t>(j * n + k)];
      REQUIRE_THAT(av, WithinAbs(eig.values[static_cast<size_t>(k)] *
                                     eig.vectors[static_cast<size_t>(i * n + k)],
                                 1e-8));
    }
}

TEST_CASE("psd projection", "[npa]") {
  const int n = 13;
  std::vector<double> a(n * n, 0.0);
  for (int i = 0; i < n; ++i) a[static_cast<size_t>(i * n + i)] = (i == 0) ? -1.0 : 1.0;
  std::vector<double> proj = project_psd(a, n);
  REQUIRE_THAT(proj[0], WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(proj[static_cast<size_t>(n + 1)], WithinAbs(1.0, 1e-12));
  REQUIRE(min_eigenvalue(proj, n) >= -1e-12);
  // already-psd input passes through
  std::vector<double> b(n * n, 0.1);
  for (int i = 0; i < n; ++i) b[static_cast<size_t>(i * n + i)] = 2.0;
  std::vector<double> pb = project_psd(b, n);
  for (size_t k = 0; k < pb.size(); ++k) REQUIRE_THAT(pb[k], WithinAbs(b[k], 1e-9));
}

TEST_CASE("deterministic moment matrices are exactly feasible", "[npa]") {
  for (auto [a0, a1, b0, b1] : {std::array<int, 4>{0, 3, 1, 3}, std::array<int, 4>{2, 2, 0, 0},
                                std::array<int, 4>{3, 3, 3, 3}}) {
    std::vector<double> g = npa_deterministic_moment(a0, a1, b0, b1);
    REQUIRE(npa_equality_residual(g) == 0.0);
    REQUIRE(min_eigenvalue(g, npa_dim) >= -1e-12);
    const std::array<int, 2> alpha{a0, a1};
    const std::array<int, 2> beta{b0, b1};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            double expect = (a == alpha[static_cast<size_t>(x)] &&
                             b == beta[static_cast<size_t>(y)])
                                ? 1.0
                                : 0.0;
            REQUIRE_THAT(npa_prob_expr(x, y, a, b).value(g), WithinAbs(expect, 1e-12));
          }
  }
}

TEST_CASE("normalization functional is pinned to one", "[npa]") {
  std::array<Rational, 64> norm = normalization_coeffs();
  REQUIRE_THAT(npa1_max_functional(norm), WithinAbs(1.0, 1e-6));
  REQUIRE_THAT(npa1_min_functional(norm), WithinAbs(1.0, 1e-6));
}

TEST_CASE("pair functional level-1 extrema", "[npa]") {
  // Local deterministic points reach 4 inside each union support (for pair 0,
  // outputs A: 0/2 by input, B: 1 always give cells {1,17,41,57}), and each
  // block contributes at most 1, so the true optimum over the relaxation is
  // exactly 4; bisection stops just under it.
  for (int pair = 0; pair < 4; ++pair) {
    double mx = npa1_max_functional(pair_sum_functional(pair).coefficients);
    REQUIRE(mx >= 3.99);
    REQUIRE(mx <= 4.0 + 1e-3);
  }
  double mn = npa1_min_functional(pair_sum_functional(0).coefficients);
  REQUIRE_THAT(mn, WithinAbs(0.0, 1e-4));
}

TEST_CASE("pair functional at the eight vertices", "[npa]") {
  std::array<Behavior, 8> vs = rate_two_vertices();
  for (int pair = 0; pair < 4; ++pair) {
    const BellFunctional& L = pair_sum_functional(pair);
    for (int j = 0; j < 8; ++j) {
      Rational v = L.evaluate(vs[static_cast<size_t>(j)]);
      if (j / 2 == pair) {
        REQUIRE(v == 4);
      } else {
        REQUIRE(v <= rat(7, 2));
        REQUIRE(v == 0);  // supports of distinct pairs are disjoint
      }
    }
  }
}

TEST_CASE("level-1 value dominates lifted quantum behaviors", "[npa]") {
  double npa_max = npa1_max_functional(pair_sum_functional(0).coefficients);
  TwoOutcomeCorrelation corr = tsirelson_correlation();
  std::mt19937 rng(410);
  std::uniform_int_distribution<int> code(0, 255);
  // the deterministic witness reaching 4 sits within solver tolerance of the
  // level-1 value
  NumericBehavior witness = lift_with_postprocessing(corr, post_processing_from_codes(160, 85));
  REQUIRE(pair_sum_functional(0).evaluate(witness) <= npa_max + 2e-3);
  for (int t = 0; t < 300; ++t) {
    NumericBehavior beh =
        lift_with_postprocessing(corr, post_processing_from_codes(code(rng), code(rng)));
    REQUIRE(pair_sum_functional(0).evaluate(beh) <= npa_max + 2e-3);
  }
}

TEST_CASE("behavior feasibility oracle", "[npa]") {
  NpaFeasibility v1 = npa_behavior_feasible(to_numeric(rate_two_vertices()[0]));
  REQUIRE_FALSE(v1.feasible);
  REQUIRE(v1.residual > 0.05);

  Behavior loc = behavior_from_support(
      std::array<int, 4>{index_of(0, 0, 0, 1), index_of(0, 1, 0, 3), index_of(1, 0, 3, 1),
                         index_of(1, 1, 3, 3)},
      Rational(1));
  REQUIRE(npa_behavior_feasible(to_numeric(loc)).feasible);

  TwoOutcomeCorrelation corr = tsirelson_correlation();
  NumericBehavior lift = lift_with_postprocessing(corr, post_processing_from_codes(228, 228));
  REQUIRE(npa_behavior_feasible(lift).feasible);
}
