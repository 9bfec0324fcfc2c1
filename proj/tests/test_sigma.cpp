#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "qbounds/sigma.hpp"

using namespace qbounds;

namespace {

Distribution random_distribution(int n, std::mt19937_64& rng) {
  Distribution d(n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (uint32_t x = 0; x < d.contexts(); ++x) {
    double sum = 0.0;
    for (uint32_t b = 0; b < d.contexts(); ++b) sum += (d.at(x, b) = unif(rng));
    for (uint32_t b = 0; b < d.contexts(); ++b) d.at(x, b) /= sum;
  }
  return d;
}

int sign_of(const std::vector<CorrelatorTerm>& terms, uint32_t context) {
  for (const auto& t : terms)
    if (t.context == context) return t.sign;
  return 0;
}

}  // namespace

TEST_CASE("n=2 terms are the CHSH terms") {
  const auto terms = build_sn(2);
  REQUIRE(terms.size() == 4);
  CHECK(sign_of(terms, 0b00) == +1);
  CHECK(sign_of(terms, 0b01) == +1);
  CHECK(sign_of(terms, 0b10) == +1);
  CHECK(sign_of(terms, 0b11) == -1);
}

TEST_CASE("n=3 signs are negative exactly on the all-equal contexts") {
  const auto terms = build_sn(3);
  REQUIRE(terms.size() == 8);
  for (uint32_t x = 0; x < 8; ++x) {
    const bool all_equal = (x == 0b000 || x == 0b111);
    CHECK(sign_of(terms, x) == (all_equal ? -1 : +1));
  }
}

TEST_CASE("n=4 signs: hand-unrolled recursion over the n=3 terms") {
  // one recursion step by hand: append setting 1 to every n=3 term, and
  // setting 0 to every n=3 term with all setting bits flipped
  const auto t3 = build_sn(3);
  std::vector<CorrelatorTerm> expected;
  for (const auto& t : t3) expected.push_back({t.context | 0b1000u, t.sign});
  for (const auto& t : t3) expected.push_back({t.context ^ 0b0111u, t.sign});
  const auto t4 = build_sn(4);
  REQUIRE(t4.size() == 16);
  for (const auto& e : expected) CHECK(sign_of(t4, e.context) == e.sign);
  // cross-check against the closed-form condition x1 = x2 = x3
  for (uint32_t x = 0; x < 16; ++x) {
    const uint32_t first3 = x & 0b111u;
    const bool neg = (first3 == 0b000u || first3 == 0b111u);
    CHECK(sign_of(t4, x) == (neg ? -1 : +1));
  }
}

TEST_CASE("sign structure for n up to 8 matches the closed form") {
  for (int n = 3; n <= 8; ++n) {
    const auto expr = build_sigma(n);
    for (uint32_t x = 0; x < (1u << n); ++x) {
      const uint32_t first3 = x & 0b111u;
      const bool neg = (first3 == 0b000u || first3 == 0b111u);
      CHECK(expr.context_negative(x) == neg);
    }
  }
  const auto expr2 = build_sigma(2);
  for (uint32_t x = 0; x < 4; ++x) CHECK(expr2.context_negative(x) == (x == 0b11u));
}

TEST_CASE("support sizes") {
  for (int n = 2; n <= 8; ++n) {
    const auto expr = build_sigma(n);
    CHECK(expr.support().size() == (size_t(1) << (2 * n - 1)));
    std::vector<int> per_context(size_t(1) << n, 0);
    for (const auto& e : expr.support()) ++per_context[e.settings_bits()];
    for (int count : per_context) CHECK(count == (1 << (n - 1)));
  }
}

TEST_CASE("n=2 support contents") {
  const auto expr = build_sigma(2);
  const Scenario sc = single_scenario(2);
  CHECK(expr.support().size() == 8);
  // context (1,1) carries the odd-parity pair
  CHECK(expr.in_support(0b11, 0b01));
  CHECK(expr.in_support(0b11, 0b10));
  CHECK_FALSE(expr.in_support(0b11, 0b00));
  // context (0,0) the even-parity pair
  CHECK(expr.in_support(0b00, 0b00));
  CHECK(expr.in_support(0b00, 0b11));
  CHECK_FALSE(expr.in_support(0b00, 0b01));
  CHECK(std::count(expr.support().begin(), expr.support().end(),
                   Event::parse(sc, "0,1|1,1")) == 1);
}

TEST_CASE("uniform distribution: Sigma_2 = 2, S_2 = 0") {
  const auto expr = build_sigma(2);
  const auto p = Distribution::uniform(2);
  CHECK(evaluate_sigma(expr, p) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(evaluate_sn(expr, p) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("deterministic strategies: maximum Sigma_2 is 3") {
  const auto expr = build_sigma(2);
  double best = 0.0;
  for (uint32_t code = 0; code < 16; ++code) {
    Distribution d(2);
    for (uint32_t x = 0; x < 4; ++x) {
      uint32_t b = 0;
      for (int i = 0; i < 2; ++i)
        b |= ((code >> (2 * i + ((x >> i) & 1u))) & 1u) << i;
      d.at(x, b) = 1.0;
    }
    best = std::max(best, evaluate_sigma(expr, d));
  }
  CHECK(best == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("identity Sigma_n = S_n/2 + 2^{n-1} on random distributions") {
  std::mt19937_64 rng(42);
  for (int n = 2; n <= 5; ++n) {
    const auto expr = build_sigma(n);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto p = random_distribution(n, rng);
      const double sigma = evaluate_sigma(expr, p);
      const double s = evaluate_sn(expr, p);
      CHECK(std::abs(sigma - (s / 2.0 + std::ldexp(1.0, n - 1))) <= 1e-10);
      CHECK(sigma >= -1e-12);
      CHECK(sigma <= std::ldexp(1.0, n) + 1e-12);
    }
  }
}

TEST_CASE("evaluate rejects bad distributions") {
  const auto expr = build_sigma(2);
  Distribution d = Distribution::uniform(2);
  d.at(0, 0) += 0.5;
  CHECK_THROWS_AS(evaluate_sigma(expr, d), std::invalid_argument);
  Distribution neg = Distribution::uniform(2);
  neg.at(0, 0) = -0.25;
  neg.at(0, 1) = 0.75;
  CHECK_THROWS_AS(evaluate_sigma(expr, neg), std::invalid_argument);
  CHECK_THROWS_AS(build_sn(1), std::invalid_argument);
  CHECK_THROWS_AS(build_sigma(1), std::invalid_argument);
}
