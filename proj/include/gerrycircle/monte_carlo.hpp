#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gerrycircle/voter_model.hpp"

namespace gerrycircle {

/// Ceiling on trials * k * n for a single simulation call.
inline constexpr std::uint64_t kMaxSimulatedVotes = std::uint64_t{1} << 40;

/// Empirical law of D. Trial t draws generate_votes(k, n, trial_seed(seed, t)).
struct DistributionEstimate {
  int k = 0;
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // indexed by d = 0..k

  double frequency(int d) const;
  /// sqrt(p (1 - p) / trials) at the empirical frequency.
  double std_error(int d) const;
  std::vector<double> frequencies() const;
  std::vector<double> std_errors() const;
  double mean_d() const;
};

DistributionEstimate estimate_distribution(int k, int n, std::uint64_t trials, std::uint64_t seed,
                                           unsigned threads = 1);

/// Two walks built from a two-district vote sequence: A from the first n
/// votes, B from the second n, with W1(t) = A_{floor(nt)}/sqrt(n) and
/// W2(t) = -B_{floor(nt)}/sqrt(n). Integer sums are kept so that the
/// event is evaluated without rounding.
struct WalkPath {
  int steps = 0;
  std::vector<int> a;  // A_0..A_n
  std::vector<int> b;  // B_0..B_n

  double w1(int i) const;
  double w2(int i) const;
  /// W1(1) <= min(W1 + W2) <= max(W1 + W2) <= W2(1).
  bool event() const;
};

WalkPath make_walk_path(const VoteSequence& votes);

/// Allocation-free evaluation of WalkPath::event for k == 2 sequences.
/// Equivalent to "every length-n window has vote sum <= 0", i.e. D = 0.
bool walk_event(std::span<const std::int8_t> votes, int steps);

struct EventEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double frequency() const;
  double std_error() const;
};

/// Frequency of the walk event over independent trials; trial t uses the
/// same vote stream as estimate_distribution(2, steps, trials, seed).
EventEstimate brownian_event_estimate(int steps, std::uint64_t trials, std::uint64_t seed,
                                      unsigned threads = 1);

/// Pr(lower <= min W <= max W <= upper) for Brownian motion on [0, 1],
/// estimated with simple random walks of `steps` steps. A +-1 walk kept
/// inside [-m, m] corresponds to absorbing barriers at -(m+1), m+1, so the
/// lattice barriers are placed one step inside round(bound * sqrt(steps)).
EventEstimate bounded_walk_estimate(double lower, double upper, int steps, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads = 1);

struct ConvergenceRow {
  int n = 0;
  double freq_d0 = 0.0;
  double freq_d1 = 0.0;
  double freq_d2 = 0.0;
  double exact_d2 = 0.0;
  double limit_d0 = 0.0;
};

/// One k = 2 simulation per n. Row i uses seed trial_seed(seed, i).
std::vector<ConvergenceRow> convergence_table(std::span<const int> n_values, std::uint64_t trials,
                                              std::uint64_t seed, unsigned threads = 1);

}  // namespace gerrycircle
