#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "nscap/bell.hpp"
#include "nscap/capacity.hpp"
#include "nscap/quantum.hpp"

using namespace nscap;
using Catch::Matchers::WithinAbs;

TEST_CASE("tsirelson correlation structure", "[quantum]") {
  TwoOutcomeCorrelation corr = tsirelson_correlation();
  double same = (2 + std::sqrt(2.0)) / 4;
  REQUIRE_THAT(corr.at(0, 0, 0, 0) + corr.at(0, 0, 1, 1), WithinAbs(same, 1e-12));
  REQUIRE_THAT(corr.at(1, 1, 0, 0) + corr.at(1, 1, 1, 1), WithinAbs(1 - same, 1e-12));
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2) {
      double row = 0, first0 = 0, second0 = 0;
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          row += corr.at(m1, m2, a1, a2);
          if (a1 == 0) first0 += corr.at(m1, m2, a1, a2);
          if (a2 == 0) second0 += corr.at(m1, m2, a1, a2);
        }
      REQUIRE_THAT(row, WithinAbs(1.0, 1e-12));
      REQUIRE_THAT(first0, WithinAbs(0.5, 1e-12));
      REQUIRE_THAT(second0, WithinAbs(0.5, 1e-12));
    }
  REQUIRE_THAT(chsh_value(corr), WithinAbs(2 * std::sqrt(2.0), 1e-9));
}

TEST_CASE("post processing codes", "[quantum]") {
  std::array<int, 4> df = post_map_from_code(0b11100100);  // slot k -> k
  REQUIRE(df == std::array<int, 4>{0, 1, 2, 3});
  REQUIRE(post_map_from_code(0) == std::array<int, 4>{0, 0, 0, 0});
  REQUIRE_THROWS_AS(post_map_from_code(-1), DomainError);
  REQUIRE_THROWS_AS(post_map_from_code(256), DomainError);
}

TEST_CASE("lift with constant and identity post processing", "[quantum]") {
  TwoOutcomeCorrelation corr = tsirelson_correlation();

  NumericBehavior point = lift_with_postprocessing(corr, post_processing_from_codes(0, 0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      REQUIRE_THAT(point.at(x, y, 0, 0), WithinAbs(1.0, 1e-12));
      REQUIRE_THAT(point.at(x, y, 1, 2), WithinAbs(0.0, 1e-12));
    }

  // first output bit copies the message, second carries the correlation
  // outcome: slot 2m+a holds outcome 2m+a, code 228
  NumericBehavior embed = lift_with_postprocessing(corr, post_processing_from_codes(228, 228));
  for (int m1 = 0; m1 < 2; ++m1)
    for (int m2 = 0; m2 < 2; ++m2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          REQUIRE_THAT(embed.at(m1, m2, 2 * m1 + a1, 2 * m2 + a2),
                       WithinAbs(corr.at(m1, m2, a1, a2), 1e-12));
}

TEST_CASE("lifted behaviors normalized and non-signaling", "[quantum]") {
  TwoOutcomeCorrelation corr = tsirelson_correlation();
  std::mt19937 rng(407);
  std::uniform_int_distribution<int> code(0, 255);
  for (int t = 0; t < 200; ++t) {
    NumericBehavior beh =
        lift_with_postprocessing(corr, post_processing_from_codes(code(rng), code(rng)));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        double row = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) row += beh.at(x, y, a, b);
        REQUIRE_THAT(row, WithinAbs(1.0, 1e-12));
      }
    REQUIRE(is_no_signaling(beh, 1e-12));
  }
}

TEST_CASE("quantum lower bound search anchors", "[quantum]") {
  REQUIRE_THAT(quantum_lb_search(ChannelParams(1, 0)), WithinAbs(1.0, 1e-9));
  REQUIRE_THAT(quantum_lb_search(ChannelParams(0.95, 0.05)), WithinAbs(0.713603043, 1e-9));
  REQUIRE_THAT(quantum_lb_search(ChannelParams(0.5, 0.5)), WithinAbs(0.0, 1e-9));
}

TEST_CASE("search matches the lower bound formula at random points", "[quantum]") {
  std::mt19937 rng(408);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 20; ++t) {
    double p = u(rng), q = u(rng);
    double searched = quantum_lb_search(ChannelParams(p, q));
    REQUIRE_THAT(searched, WithinAbs(qlb_formula(p, q), 1e-9));
  }
}

TEST_CASE("pair functional over lifted behaviors", "[quantum]") {
  TwoOutcomeCorrelation corr = tsirelson_correlation();
  // constant maps onto a local point inside the first pair's union support:
  // A outputs 0 on message 0 and 2 on message 1, B outputs 1 always
  NumericBehavior witness = lift_with_postprocessing(corr, post_processing_from_codes(160, 85));
  REQUIRE_THAT(pair_sum_functional(0).evaluate(witness), WithinAbs(4.0, 1e-12));

  double worst = 0;
  for (int c1 = 0; c1 < 256; ++c1)
    for (int c2 = 0; c2 < 256; ++c2) {
      NumericBehavior beh =
          lift_with_postprocessing(corr, post_processing_from_codes(c1, c2));
      worst = std::max(worst, pair_sum_functional(0).evaluate(beh));
    }
  REQUIRE_THAT(worst, WithinAbs(4.0, 1e-9));
}
