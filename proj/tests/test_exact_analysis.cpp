#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gerrycircle/common.hpp"
#include "gerrycircle/exact_analysis.hpp"
#include "gerrycircle/rng.hpp"
#include "oracles.hpp"

using namespace gerrycircle;

namespace {

VoteSequence seq(int n, std::vector<int> v) { return VoteSequence(2, n, std::vector<std::int8_t>(v.begin(), v.end())); }

// Pr(P >= 2t) where P ~ Bin(2n, 1/2) and t = floor(n/2) + 1, summed term by term.
Rational tail_sum(int n) {
  const int t = n / 2 + 1;
  BigInt hits = 0;
  for (int p = 2 * t; p <= 2 * n; ++p) hits += binomial(2 * n, p);
  return Rational(hits) / Rational(BigInt(1) << (2 * n));
}

}  // namespace

TEST_CASE("prob_d2_exact hand values") {
  CHECK(prob_d2_exact(1) == Rational(1, 4));
  CHECK(prob_d2_exact(2) == Rational(1, 16));
  CHECK_THROWS_AS(prob_d2_exact(0), ValidationError);
}

TEST_CASE("prob_d2_exact equals brute force for n <= 8") {
  for (int n = 1; n <= 8; ++n) CHECK(prob_d2_exact(n) == oracle::prob_d2_brute(n));
}

TEST_CASE("prob_d2_exact equals the binomial tail") {
  for (int n = 1; n <= 200; ++n) REQUIRE(prob_d2_exact(n) == tail_sum(n));
}

TEST_CASE("square-root bracket") {
  const double lo = 1 / (2 * std::sqrt(2 * std::numbers::pi));
  const double hi = 2 / std::sqrt(std::numbers::pi);
  for (int n : {100, 101, 999, 1000, 5000, 10000}) {
    const double scaled = std::sqrt(double(n)) * (0.5 - to_double(prob_d2_exact(n)));
    CHECK(scaled >= lo);
    CHECK(scaled <= hi);
  }
}

TEST_CASE("majority threshold") {
  CHECK(majority_threshold(1) == 1);
  CHECK(majority_threshold(2) == 2);
  CHECK(majority_threshold(5) == 3);
}

TEST_CASE("IVT characterization hand examples") {
  auto c = verify_ivt_characterization(seq(2, {1, 1, 1, -1}));
  CHECK_FALSE(c.predicted_d2);
  CHECK_FALSE(c.actual_d2);
  CHECK(c.holds());

  c = verify_ivt_characterization(seq(2, {1, 1, 1, 1}));
  CHECK(c.predicted_d2);
  CHECK(c.actual_d2);
  REQUIRE(c.witness);
  CHECK(*c.witness == 0);
  CHECK_THROWS_AS(verify_ivt_characterization(VoteSequence(3, 1, {1, 1, 1})), ValidationError);
}

TEST_CASE("IVT characterization on random sequences") {
  for (std::uint64_t s = 0; s < 3000; ++s) {
    const int n = 1 + static_cast<int>(s % 25);
    const auto v = generate_votes(2, n, mix64(s + 11));
    const auto c = verify_ivt_characterization(v);
    REQUIRE(c.holds());
    if (c.predicted_d2) {
      REQUIRE(c.witness);
      const auto w = walk_arrays(v);
      REQUIRE(std::abs(w.imbalance[static_cast<std::size_t>(*c.witness)]) <= 1);
    }
  }
}

TEST_CASE("walk_arrays hand example") {
  const auto w = walk_arrays(seq(2, {1, -1, -1, 1}));
  CHECK(w.walk_a == std::vector<int>{0, 1, 0});
  CHECK(w.walk_b == std::vector<int>{0, -1, 0});
  CHECK(w.total_positive == 2);
  // The window at start 3 wraps onto (+1, +1).
  CHECK(w.window_positive == std::vector<int>{1, 0, 1, 2});
  CHECK_FALSE(w.all_windows_nonpositive);
  CHECK_FALSE(w.walk_event);
  CHECK(w.identity_holds());

  const auto neg = walk_arrays(seq(3, {-1, -1, -1, -1, -1, -1}));
  CHECK(neg.all_windows_nonpositive);
  CHECK(neg.walk_event);
}

TEST_CASE("walk identity matches the direct window scan") {
  for (std::uint64_t s = 0; s < 3000; ++s) {
    const int n = 1 + static_cast<int>(s % 30);
    const auto v = generate_votes(2, n, mix64(s) ^ 0xABCDEF);
    const auto w = walk_arrays(v);
    std::vector<int> x(v.votes().begin(), v.votes().end());
    bool direct = true;
    for (int i = 0; i < 2 * n; ++i) direct = direct && oracle::district_sum(x, i, n) <= 0;
    REQUIRE(w.all_windows_nonpositive == direct);
    REQUIRE(w.identity_holds());
  }
}
