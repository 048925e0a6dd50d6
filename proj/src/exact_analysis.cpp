#include "gerrycircle/exact_analysis.hpp"

#include <algorithm>
#include <cstdlib>

#include "gerrycircle/common.hpp"

namespace gerrycircle {

Rational prob_d2_exact(int n) {
  require(n >= 1, "n must be positive");
  const unsigned two_n = 2u * static_cast<unsigned>(n);
  const BigInt pow2 = BigInt(1) << two_n;  // 2^(2n)
  // Pr(P >= n+1) = 1/2 - C(2n, n) / 2^(2n+1)
  Rational p = Rational(1, 2) - Rational(binomial(two_n, static_cast<unsigned>(n)), 2 * pow2);
  // For even n, P = n + 1 cannot give both districts n/2 + 1 positives.
  if (n % 2 == 0) p -= Rational(binomial(two_n, static_cast<unsigned>(n) + 1), pow2);
  return p;
}

WindowStatistics walk_arrays(const VoteSequence& votes) {
  require(votes.k() == 2, "walk_arrays requires k = 2");
  const int n = votes.n();
  const auto x = votes.votes();
  const std::size_t len = x.size();

  WindowStatistics w;
  w.n = n;
  w.total_positive = static_cast<int>(std::count(x.begin(), x.end(), std::int8_t{1}));

  w.window_positive.assign(len, 0);
  int running = 0;
  for (int j = 0; j < n; ++j) running += x[static_cast<std::size_t>(j)] > 0;
  for (std::size_t i = 0; i < len; ++i) {
    w.window_positive[i] = running;
    running += (x[(i + static_cast<std::size_t>(n)) % len] > 0) - (x[i] > 0);
  }

  w.imbalance.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    w.imbalance[ui] = w.window_positive[ui % len] - w.window_positive[(ui + static_cast<std::size_t>(n)) % len];
  }

  w.walk_a.assign(static_cast<std::size_t>(n) + 1, 0);
  w.walk_b.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    w.walk_a[ui + 1] = w.walk_a[ui] + x[ui];
    w.walk_b[ui + 1] = w.walk_b[ui] + x[ui + static_cast<std::size_t>(n)];
  }

  // Window vote sum = 2 * positives - n.
  w.all_windows_nonpositive =
      std::all_of(w.window_positive.begin(), w.window_positive.end(), [n](int p) { return 2 * p - n <= 0; });

  const int a_end = w.walk_a.back();
  const int neg_b_end = -w.walk_b.back();
  w.walk_event = true;
  for (int i = 0; i <= n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int diff = w.walk_a[ui] - w.walk_b[ui];
    if (diff < a_end || diff > neg_b_end) {
      w.walk_event = false;
      break;
    }
  }
  return w;
}

IvtCheck verify_ivt_characterization(const VoteSequence& votes) {
  require(votes.k() == 2, "verify_ivt_characterization requires k = 2");
  const int n = votes.n();
  const WindowStatistics w = walk_arrays(votes);

  IvtCheck check;
  check.predicted_d2 = w.total_positive >= 2 * majority_threshold(n);
  check.actual_d2 = optimal_gerrymander(votes).d == 2;
  if (!check.predicted_d2) return check;

  const auto& s = w.imbalance;
  if (std::abs(s[0]) <= 1) {
    check.witness = 0;
    return check;
  }
  // s_0 and s_n = -s_0 have opposite signs and consecutive values differ by
  // 0 or 2, so the first index leaving the starting side lands in {-1, 0, 1}.
  const bool starts_high = s[0] >= 2;
  for (int j = 1; j <= n; ++j) {
    const int sj = s[static_cast<std::size_t>(j)];
    if (starts_high ? sj < 2 : sj > -2) {
      check.witness = j;
      break;
    }
  }
  return check;
}

}  // namespace gerrycircle
