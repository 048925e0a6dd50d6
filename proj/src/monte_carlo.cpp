#include "gerrycircle/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gerrycircle/common.hpp"
#include "gerrycircle/detail/parallel.hpp"
#include "gerrycircle/exact_analysis.hpp"
#include "gerrycircle/limit_constants.hpp"
#include "gerrycircle/rational.hpp"
#include "gerrycircle/rng.hpp"

namespace gerrycircle {

namespace {

using Counts = std::vector<std::uint64_t>;

void add_counts(Counts& into, const Counts& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

void guard_work(std::uint64_t trials, std::uint64_t votes_per_trial) {
  require(trials >= 1, "trials must be at least 1");
  require(votes_per_trial == 0 || trials <= kMaxSimulatedVotes / votes_per_trial,
          "trials * k * n exceeds the simulation limit of " + std::to_string(kMaxSimulatedVotes));
}

double binomial_se(double p, std::uint64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace

double DistributionEstimate::frequency(int d) const {
  require(d >= 0 && d <= k, "d out of range");
  return static_cast<double>(counts[static_cast<std::size_t>(d)]) / static_cast<double>(trials);
}

double DistributionEstimate::std_error(int d) const { return binomial_se(frequency(d), trials); }

std::vector<double> DistributionEstimate::frequencies() const {
  std::vector<double> out;
  for (int d = 0; d <= k; ++d) out.push_back(frequency(d));
  return out;
}

std::vector<double> DistributionEstimate::std_errors() const {
  std::vector<double> out;
  for (int d = 0; d <= k; ++d) out.push_back(std_error(d));
  return out;
}

double DistributionEstimate::mean_d() const {
  double total = 0.0;
  for (int d = 0; d <= k; ++d) total += d * static_cast<double>(counts[static_cast<std::size_t>(d)]);
  return total / static_cast<double>(trials);
}

DistributionEstimate estimate_distribution(int k, int n, std::uint64_t trials, std::uint64_t seed,
                                           unsigned threads) {
  require(k >= 1 && n >= 1, "k and n must be positive");
  const std::size_t len = static_cast<std::size_t>(k) * static_cast<std::size_t>(n);
  require(len <= kDefaultMaxVoters, "k*n exceeds the voter limit");
  guard_work(trials, len);

  Counts counts = detail::parallel_reduce(
      trials, threads, Counts(static_cast<std::size_t>(k) + 1, 0),
      [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
        std::vector<std::int8_t> votes(len);
        std::vector<long> scratch;
        for (std::uint64_t t = begin; t < end; ++t) {
          fill_votes(votes, trial_seed(seed, t));
          ++acc[static_cast<std::size_t>(max_majority_count(votes, k, n, scratch))];
        }
      },
      add_counts);
  return DistributionEstimate{k, n, trials, seed, std::move(counts)};
}

double WalkPath::w1(int i) const {
  return a.at(static_cast<std::size_t>(i)) / std::sqrt(static_cast<double>(steps));
}

double WalkPath::w2(int i) const {
  return -b.at(static_cast<std::size_t>(i)) / std::sqrt(static_cast<double>(steps));
}

bool WalkPath::event() const {
  // Every quantity shares the 1/sqrt(n) scale, so compare the integer walks:
  // W1 + W2 at step i is (A_i - B_i) / sqrt(n).
  const int lo = a.back();
  const int hi = -b.back();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int sum = a[i] - b[i];
    if (sum < lo || sum > hi) return false;
  }
  return true;
}

WalkPath make_walk_path(const VoteSequence& votes) {
  require(votes.k() == 2, "walk paths need a two-district sequence");
  const int n = votes.n();
  WalkPath path;
  path.steps = n;
  path.a.assign(static_cast<std::size_t>(n) + 1, 0);
  path.b.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    path.a[ui + 1] = path.a[ui] + votes[ui];
    path.b[ui + 1] = path.b[ui] + votes[ui + static_cast<std::size_t>(n)];
  }
  return path;
}

bool walk_event(std::span<const std::int8_t> votes, int steps) {
  const auto n = static_cast<std::size_t>(steps);
  require(votes.size() == 2 * n, "walk_event needs 2 * steps votes");
  int a_end = 0;
  int b_end = 0;
  for (std::size_t i = 0; i < n; ++i) {
    a_end += votes[i];
    b_end += votes[i + n];
  }
  int a = 0;
  int b = 0;
  for (std::size_t i = 0;; ++i) {
    const int sum = a - b;
    if (sum < a_end || sum > -b_end) return false;
    if (i == n) return true;
    a += votes[i];
    b += votes[i + n];
  }
}

double EventEstimate::frequency() const {
  return static_cast<double>(successes) / static_cast<double>(trials);
}

double EventEstimate::std_error() const { return binomial_se(frequency(), trials); }

EventEstimate brownian_event_estimate(int steps, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  require(steps >= 1, "steps must be at least 1");
  const std::size_t len = 2 * static_cast<std::size_t>(steps);
  require(len <= kDefaultMaxVoters, "steps exceeds the voter limit");
  guard_work(trials, len);
  const std::uint64_t hits = detail::parallel_reduce(
      trials, threads, std::uint64_t{0},
      [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& acc) {
        std::vector<std::int8_t> votes(len);
        for (std::uint64_t t = begin; t < end; ++t) {
          fill_votes(votes, trial_seed(seed, t));
          acc += walk_event(votes, steps);
        }
      },
      [](std::uint64_t& into, std::uint64_t from) { into += from; });
  return {trials, hits};
}

EventEstimate bounded_walk_estimate(double lower, double upper, int steps, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads) {
  require(lower < 0.0 && upper > 0.0, "bounds must satisfy lower < 0 < upper");
  require(steps >= 1, "steps must be at least 1");
  guard_work(trials, static_cast<std::uint64_t>(steps));
  const double scale = std::sqrt(static_cast<double>(steps));
  const long hi = std::lround(upper * scale) - 1;
  const long lo = -(std::lround(-lower * scale) - 1);
  require(hi >= 0 && lo <= 0, "bounds are narrower than one lattice step");

  const std::uint64_t hits = detail::parallel_reduce(
      trials, threads, std::uint64_t{0},
      [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& acc) {
        for (std::uint64_t t = begin; t < end; ++t) {
          Xoshiro256 rng(trial_seed(seed, t));
          long position = 0;
          bool inside = true;
          std::uint64_t bits = 0;
          for (int i = 0; i < steps && inside; ++i) {
            if (i % 64 == 0) bits = rng();
            position += (bits & 1u) ? 1 : -1;
            bits >>= 1;
            inside = position >= lo && position <= hi;
          }
          acc += inside;
        }
      },
      [](std::uint64_t& into, std::uint64_t from) { into += from; });
  return {trials, hits};
}

std::vector<ConvergenceRow> convergence_table(std::span<const int> n_values, std::uint64_t trials,
                                              std::uint64_t seed, unsigned threads) {
  require(!n_values.empty(), "n_values must not be empty");
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    const int n = n_values[i];
    const DistributionEstimate est = estimate_distribution(2, n, trials, trial_seed(seed, i), threads);
    rows.push_back({n, est.frequency(0), est.frequency(1), est.frequency(2), to_double(prob_d2_exact(n)),
                    closed_form_limit()});
  }
  return rows;
}

}  // namespace gerrycircle
