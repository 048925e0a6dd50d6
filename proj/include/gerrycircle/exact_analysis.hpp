#pragma once

#include <optional>
#include <vector>

#include "gerrycircle/rational.hpp"
#include "gerrycircle/voter_model.hpp"

namespace gerrycircle {

/// Positive votes needed to carry a district of n voters: floor(n/2) + 1.
constexpr int majority_threshold(int n) noexcept { return n / 2 + 1; }

/// Pr(D_n = 2) for two districts of n voters, exactly:
///   n odd:  1/2 - C(2n,n)/2^(2n+1)
///   n even: 1/2 - C(2n,n)/2^(2n+1) - C(2n,n+1)/2^(2n)
Rational prob_d2_exact(int n);

/// Window bookkeeping for a two-district circle of 2n voters.
struct WindowStatistics {
  int n = 0;
  int total_positive = 0;               // P
  std::vector<int> window_positive;     // P_i, positives in [i, i+n), i in Z/2nZ
  std::vector<int> imbalance;           // s_i = P_i - P_{i+n}, i = 0..n
  std::vector<int> walk_a;              // A_i = x_0 + ... + x_{i-1}, i = 0..n
  std::vector<int> walk_b;              // B_i = x_n + ... + x_{n+i-1}, i = 0..n
  bool all_windows_nonpositive = false; // direct scan of all 2n window sums
  bool walk_event = false;              // A_n <= A_i - B_i <= -B_n for all i

  bool identity_holds() const noexcept { return all_windows_nonpositive == walk_event; }
};

/// Requires k == 2.
WindowStatistics walk_arrays(const VoteSequence& votes);

struct IvtCheck {
  bool predicted_d2 = false;  // P >= 2 * majority_threshold(n)
  bool actual_d2 = false;     // optimal_gerrymander(votes).d == 2
  std::optional<int> witness; // index j with |s_j| <= 1, present when predicted_d2
  bool holds() const noexcept { return predicted_d2 == actual_d2; }
};

/// Checks D = 2 <=> P >= 2*floor(n/2 + 1) on one sequence and, when the
/// threshold is met, locates the balanced split by the discrete
/// intermediate-value walk over s_0 .. s_n. Requires k == 2.
IvtCheck verify_ivt_characterization(const VoteSequence& votes);

}  // namespace gerrycircle
