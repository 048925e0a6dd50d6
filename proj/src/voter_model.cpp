#include "gerrycircle/voter_model.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "gerrycircle/common.hpp"
#include "gerrycircle/detail/parallel.hpp"
#include "gerrycircle/rng.hpp"

namespace gerrycircle {

VoteSequence::VoteSequence(int k, int n, std::vector<std::int8_t> votes)
    : k_(k), n_(n), votes_(std::move(votes)) {
  require(k >= 1, "k must be positive");
  require(n >= 1, "n must be positive");
  require(votes_.size() == static_cast<std::size_t>(k) * static_cast<std::size_t>(n),
          "vote sequence length must equal k*n");
  for (auto v : votes_) require(v == 1 || v == -1, "votes must be +1 or -1");
}

VoteSequence VoteSequence::rotated(std::size_t shift) const {
  std::vector<std::int8_t> out(votes_.size());
  const std::size_t len = votes_.size();
  shift %= len;
  for (std::size_t i = 0; i < len; ++i) out[i] = votes_[(i + shift) % len];
  return VoteSequence(k_, n_, std::move(out));
}

VoteSequence VoteSequence::reversed() const {
  std::vector<std::int8_t> out(votes_.rbegin(), votes_.rend());
  return VoteSequence(k_, n_, std::move(out));
}

VoteSequence generate_votes(int k, int n, std::uint64_t seed, std::size_t max_voters) {
  require(k >= 1, "k must be positive");
  require(n >= 1, "n must be positive");
  const std::size_t total = static_cast<std::size_t>(k) * static_cast<std::size_t>(n);
  require(total <= max_voters,
          "k*n = " + std::to_string(total) + " exceeds the voter limit " + std::to_string(max_voters));
  std::vector<std::int8_t> votes(total);
  fill_votes(votes, seed);
  return VoteSequence(k, n, std::move(votes));
}

void fill_votes(std::span<std::int8_t> out, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % 64 == 0) bits = rng();
    out[i] = (bits & 1u) ? 1 : -1;
    bits >>= 1;
  }
}

CircularPrefixSums::CircularPrefixSums(std::span<const std::int8_t> votes) : prefix_(votes.size() + 1, 0) {
  for (std::size_t i = 0; i < votes.size(); ++i) prefix_[i + 1] = prefix_[i] + votes[i];
}

long CircularPrefixSums::arc_sum(std::size_t start, std::size_t length) const {
  const std::size_t len = size();
  require(start < len, "arc start out of range");
  require(length >= 1 && length <= len, "arc length out of range");
  const std::size_t end = start + length;
  if (end <= len) return prefix_[end] - prefix_[start];
  return (prefix_[len] - prefix_[start]) + prefix_[end - len];
}

long district_sum(const VoteSequence& votes, std::size_t start, std::size_t length) {
  return CircularPrefixSums(votes.votes()).arc_sum(start, length);
}

int majority_positive_count(const CircularPrefixSums& sums, const CircularPartition& partition) {
  const std::size_t len = sums.size();
  int count = 0;
  for (int j = 0; j < partition.k; ++j) {
    const long s = sums.arc_sum(partition.district_start(j) % len, static_cast<std::size_t>(partition.n));
    if (majority_positive(s)) ++count;
  }
  return count;
}

GerrymanderResult optimal_gerrymander(const VoteSequence& votes) {
  const CircularPrefixSums sums(votes.votes());
  GerrymanderResult result;
  result.per_offset_counts.resize(static_cast<std::size_t>(votes.n()));
  result.d = -1;
  for (int r = 0; r < votes.n(); ++r) {
    const int count = majority_positive_count(sums, {votes.k(), votes.n(), r});
    result.per_offset_counts[static_cast<std::size_t>(r)] = count;
    if (count > result.d) {
      result.d = count;
      result.best_offset = r;
    }
  }
  return result;
}

int max_majority_count(std::span<const std::int8_t> votes, int k, int n, std::vector<long>& scratch) {
  const std::size_t len = votes.size();
  scratch.resize(len + 1);
  scratch[0] = 0;
  for (std::size_t i = 0; i < len; ++i) scratch[i + 1] = scratch[i] + votes[i];
  const auto un = static_cast<std::size_t>(n);
  int best = 0;
  for (std::size_t r = 0; r < un && best < k; ++r) {
    int count = 0;
    // District j starts at r + j n; only the last one can wrap.
    for (int j = 0; j + 1 < k; ++j) {
      const std::size_t s = r + static_cast<std::size_t>(j) * un;
      count += majority_positive(scratch[s + un] - scratch[s]);
    }
    const std::size_t s = r + static_cast<std::size_t>(k - 1) * un;
    count += majority_positive((scratch[len] - scratch[s]) + scratch[r]);
    best = std::max(best, count);
  }
  return best;
}

Rational DDistribution::probability(int d) const {
  require(d >= 0 && d <= k, "d out of range");
  return Rational(counts[static_cast<std::size_t>(d)], patterns());
}

std::vector<Rational> DDistribution::probabilities() const {
  std::vector<Rational> out;
  out.reserve(counts.size());
  for (int d = 0; d <= k; ++d) out.push_back(probability(d));
  return out;
}

namespace {

// Positive votes in the length-n arc starting at `start` of a kn-bit circle
// stored in the low bits of `pattern` (bit set = positive vote).
int arc_positives(std::uint32_t pattern, int start, int n, int total) {
  const std::uint64_t doubled = (static_cast<std::uint64_t>(pattern) << total) | pattern;
  const std::uint64_t window = (doubled >> start) & ((std::uint64_t{1} << n) - 1);
  return std::popcount(window);
}

}  // namespace

DDistribution enumerate_d_distribution(int k, int n, unsigned threads) {
  require(k >= 1 && n >= 1, "k and n must be positive");
  require(k * n <= kMaxEnumeratedVoters,
          "enumeration is limited to k*n <= " + std::to_string(kMaxEnumeratedVoters));
  const int total = k * n;
  const int needed = n / 2 + 1;  // positives needed to carry a district
  using Counts = std::vector<std::uint64_t>;
  Counts counts = detail::parallel_reduce(
      std::uint64_t{1} << total, threads, Counts(static_cast<std::size_t>(k) + 1, 0),
      [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
        for (std::uint64_t p = begin; p < end; ++p) {
          const auto pattern = static_cast<std::uint32_t>(p);
          int best = 0;
          for (int r = 0; r < n && best < k; ++r) {
            int carried = 0;
            for (int j = 0; j < k; ++j)
              if (arc_positives(pattern, r + j * n, n, total) >= needed) ++carried;
            best = std::max(best, carried);
          }
          ++acc[static_cast<std::size_t>(best)];
        }
      },
      [](Counts& into, const Counts& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });
  return DDistribution{k, n, std::move(counts)};
}

}  // namespace gerrycircle
