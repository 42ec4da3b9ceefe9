#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <random>

#include "nscap/bell.hpp"

using namespace nscap;
using Catch::Matchers::WithinAbs;

namespace {

const CglmpOrbit& shared_orbit() {
  static const CglmpOrbit orbit(cglmp_functional());
  return orbit;
}

Behavior local_vertex(int a0, int a1, int b0, int b1) {
  const std::array<int, 2> alpha{a0, a1};
  const std::array<int, 2> beta{b0, b1};
  std::array<int, 4> cells{};
  int n = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      cells[static_cast<size_t>(n++)] =
          index_of(x, y, alpha[static_cast<size_t>(x)], beta[static_cast<size_t>(y)]);
  return behavior_from_support(cells, Rational(1));
}

Behavior random_exact_behavior(std::mt19937& rng) {
  std::uniform_int_distribution<int> w(0, 8);
  Behavior beh;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      std::array<int, 16> weights{};
      int total = 0;
      for (int& v : weights) total += (v = w(rng));
      if (total == 0) total = weights[0] = 1;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          beh.at(x, y, a, b) = rat(weights[static_cast<size_t>(4 * a + b)], total);
    }
  return beh;
}

Relabeling random_relabeling(std::mt19937& rng) {
  Relabeling rel;
  auto shuffle2 = [&](Perm2& p) {
    p = {0, 1};
    std::shuffle(p.begin(), p.end(), rng);
  };
  auto shuffle4 = [&](Perm4& p) {
    p = {0, 1, 2, 3};
    std::shuffle(p.begin(), p.end(), rng);
  };
  shuffle2(rel.a_input_perm);
  shuffle2(rel.b_input_perm);
  for (int x = 0; x < 2; ++x) {
    shuffle4(rel.a_output_perms[static_cast<size_t>(x)]);
    shuffle4(rel.b_output_perms[static_cast<size_t>(x)]);
  }
  return rel;
}

}  // namespace

TEST_CASE("cglmp event masks", "[bell]") {
  REQUIRE(std::popcount(cglmp_mask()) == 36);
  REQUIRE(std::popcount(cglmp_tilde_mask()) == 36);
  // block (0,0) selects a <= b in both forms
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      bool in_base = cglmp_mask() >> index_of(0, 0, a, b) & 1;
      bool in_tilde = cglmp_tilde_mask() >> index_of(0, 0, a, b) & 1;
      REQUIRE(in_base == (a <= b));
      REQUIRE(in_tilde == (a <= b));
    }
  // block (1,1): a < b in the base form, (a+2)%4 < (b+2)%4 in the tilde form
  REQUIRE((cglmp_mask() >> index_of(1, 1, 0, 1) & 1) == 1);
  REQUIRE((cglmp_tilde_mask() >> index_of(1, 1, 2, 3) & 1) == 1);
  REQUIRE((cglmp_tilde_mask() >> index_of(1, 1, 0, 1) & 1) == 1);
  // (1,1,1,3): member of the base form (1 < 3) but not the tilde form (3 < 1 fails)
  REQUIRE((cglmp_mask() >> index_of(1, 1, 1, 3) & 1) == 1);
  REQUIRE((cglmp_tilde_mask() >> index_of(1, 1, 1, 3) & 1) == 0);
}

TEST_CASE("cglmp b4 fixed values", "[bell]") {
  REQUIRE(cglmp_b4(class_seed(1)) == 0);
  REQUIRE(cglmp_b4(uniform_behavior()) == rat(-3, 4));
  REQUIRE(cglmp_b4_tilde(uniform_behavior()) == rat(-3, 4));
  // every local deterministic vertex satisfies the bound exactly
  for (int a0 = 0; a0 < 4; ++a0)
    for (int a1 = 0; a1 < 4; ++a1)
      for (int b0 = 0; b0 < 4; ++b0)
        for (int b1 = 0; b1 < 4; ++b1) {
          Behavior v = local_vertex(a0, a1, b0, b1);
          REQUIRE(cglmp_b4(v) <= 0);
          REQUIRE(cglmp_b4_tilde(v) <= 0);
        }
}

TEST_CASE("tilde form literal values at sample vertices", "[bell]") {
  REQUIRE(cglmp_b4_tilde(class_sample_vertex(2)) == rat(1, 2));
  REQUIRE(cglmp_b4_tilde(class_sample_vertex(3)) == rat(1, 3));
  REQUIRE(cglmp_b4_tilde(class_sample_vertex(4)) == rat(1, 4));
  REQUIRE_THROWS_AS(class_sample_vertex(1), DomainError);
  REQUIRE_THROWS_AS(class_sample_vertex(5), DomainError);
}

TEST_CASE("tilde form is the shift-by-two dual of the base form", "[bell]") {
  Relabeling rel;  // identity inputs, outcome shift by 2 on input 1 for both parties
  rel.a_output_perms[1] = {2, 3, 0, 1};
  rel.b_output_perms[1] = {2, 3, 0, 1};
  REQUIRE(dual_functional(rel, cglmp_functional()) == cglmp_tilde_functional());
}

TEST_CASE("functional mask round trip", "[bell]") {
  BellFunctional f = functional_from_mask(cglmp_mask(), Rational(-3), Rational(0));
  REQUIRE(functional_mask(f) == cglmp_mask());
  REQUIRE(f == cglmp_functional());
  f.coefficients[7] = rat(1, 2);
  REQUIRE_THROWS_AS(functional_mask(f), DomainError);
}

TEST_CASE("numeric evaluation agrees with exact", "[bell]") {
  std::mt19937 rng(404);
  for (int t = 0; t < 20; ++t) {
    Behavior beh = random_exact_behavior(rng);
    NumericBehavior num = to_numeric(beh);
    REQUIRE_THAT(cglmp_b4(num), WithinAbs(cglmp_b4(beh).get_d(), 1e-12));
    REQUIRE_THAT(cglmp_tilde_functional().evaluate(num),
                 WithinAbs(cglmp_b4_tilde(beh).get_d(), 1e-12));
  }
}

TEST_CASE("nonlocality measure vanishes on the local polytope", "[bell]") {
  REQUIRE(nonlocality_measure(uniform_behavior()) == 0);
  for (int a0 = 0; a0 < 4; ++a0)
    for (int a1 = 0; a1 < 4; ++a1)
      for (int b0 = 0; b0 < 4; ++b0)
        for (int b1 = 0; b1 < 4; ++b1)
          REQUIRE(nonlocality_measure(local_vertex(a0, a1, b0, b1)) == 0);

  std::mt19937 rng(405);
  std::uniform_int_distribution<int> out(0, 3);
  std::uniform_int_distribution<int> wt(1, 20);
  for (int t = 0; t < 100; ++t) {
    Behavior mix;
    for (Rational& c : mix.p) c = 0;
    Rational total = 0;
    for (int j = 0; j < 5; ++j) {
      Behavior v = local_vertex(out(rng), out(rng), out(rng), out(rng));
      Rational w(wt(rng));
      total += w;
      for (int i = 0; i < 64; ++i) mix.p[static_cast<size_t>(i)] += w * v.p[static_cast<size_t>(i)];
    }
    for (Rational& c : mix.p) c /= total;
    REQUIRE(is_normalized(mix));
    REQUIRE(nonlocality_measure(mix) == 0);
    REQUIRE(nonlocality_measure(cglmp_tilde_functional(), mix) == 0);
  }
}

TEST_CASE("nonlocality measure positive at nonlocal vertices", "[bell]") {
  REQUIRE(nonlocality_measure(cglmp_tilde_functional(), class_sample_vertex(2)) == rat(1, 2));
  REQUIRE(nonlocality_measure(cglmp_tilde_functional(), class_sample_vertex(4)) == rat(1, 4));
}

TEST_CASE("dual functional covariance", "[bell]") {
  std::mt19937 rng(406);
  for (int t = 0; t < 20; ++t) {
    Relabeling rel = random_relabeling(rng);
    Behavior beh = random_exact_behavior(rng);
    BellFunctional dual = dual_functional(rel, cglmp_functional());
    REQUIRE(dual.evaluate(beh) == cglmp_b4(apply_relabeling(rel, beh)));
  }
}

TEST_CASE("equivalent inequality orbit", "[bell]") {
  const CglmpOrbit& orbit = shared_orbit();
  REQUIRE(orbit.size() == 1327104);
  REQUIRE(std::is_sorted(orbit.masks().begin(), orbit.masks().end()));
  REQUIRE(std::adjacent_find(orbit.masks().begin(), orbit.masks().end()) == orbit.masks().end());
  for (uint64_t m : orbit.masks()) REQUIRE(std::popcount(m) == 36);
  REQUIRE(orbit.contains(cglmp_functional()));
  REQUIRE(orbit.contains(cglmp_tilde_functional()));
  REQUIRE(orbit.functional_at(0).local_bound == 0);

  CglmpOrbit same = generate_equivalent_inequalities(cglmp_tilde_functional());
  REQUIRE(same.size() == orbit.size());
  REQUIRE(same.masks() == orbit.masks());
}

TEST_CASE("orbit maxima at reference behaviors", "[bell]") {
  const CglmpOrbit& orbit = shared_orbit();
  REQUIRE(orbit.max_value(class_sample_vertex(2)) == rat(1, 2));
  REQUIRE(orbit.max_value(class_sample_vertex(3)) == rat(2, 3));
  REQUIRE(orbit.max_value(class_sample_vertex(4)) == rat(3, 4));
  REQUIRE(orbit.max_value(class_seed(1)) == 0);
  // every member evaluates to -3/4 at the uniform behavior
  REQUIRE(orbit.max_value(uniform_behavior()) == rat(-3, 4));
}

TEST_CASE("nonlocality versus rate report", "[bell]") {
  NonlocalityRateReport rep = nonlocality_rate_report(shared_orbit());
  REQUIRE(rep.nonlocality[0] == rat(1, 2));
  REQUIRE(rep.nonlocality[1] == rat(2, 3));
  REQUIRE(rep.nonlocality[2] == rat(3, 4));
  REQUIRE_THAT(rep.sum_rates[0], WithinAbs(2.0, 1e-12));
  REQUIRE_THAT(rep.sum_rates[1], WithinAbs(1.4591479170272448, 1e-12));
  REQUIRE_THAT(rep.sum_rates[2], WithinAbs(1.4338343733773984, 1e-12));
  REQUIRE(rep.anti_monotone);

  std::string text = rep.text();
  REQUIRE(text.find("2/3") != std::string::npos);
  REQUIRE(text.find("yes") != std::string::npos);

  std::string csv = rep.csv();
  REQUIRE(csv.rfind("vertex,nonlocality,sum_rate\n", 0) == 0);
  REQUIRE(csv.find("v1/4,3/4,") != std::string::npos);
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 4);
}
