#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gerrycircle/rational.hpp"

namespace gerrycircle {

inline constexpr std::size_t kDefaultMaxVoters = std::size_t{1} << 26;
inline constexpr int kMaxEnumeratedVoters = 24;

/// k*n votes in {+1, -1} placed around a circle; index i and i + k*n coincide.
class VoteSequence {
 public:
  VoteSequence(int k, int n, std::vector<std::int8_t> votes);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return votes_.size(); }
  std::span<const std::int8_t> votes() const noexcept { return votes_; }
  std::int8_t operator[](std::size_t i) const noexcept { return votes_[i]; }

  /// Sequence whose entry i is this sequence's entry i + shift (mod kn).
  VoteSequence rotated(std::size_t shift) const;
  /// Circular order reversed.
  VoteSequence reversed() const;

  friend bool operator==(const VoteSequence&, const VoteSequence&) = default;

 private:
  int k_;
  int n_;
  std::vector<std::int8_t> votes_;
};

/// Independent uniform votes; entry i is bit i of the xoshiro256** stream
/// seeded with `seed` (bit set -> +1). Same seed, same sequence.
VoteSequence generate_votes(int k, int n, std::uint64_t seed,
                            std::size_t max_voters = kDefaultMaxVoters);

/// Writes the vote stream of `seed` into `out` (the buffer form of generate_votes).
void fill_votes(std::span<std::int8_t> out, std::uint64_t seed);

/// Prefix sums over one turn of the circle; O(1) sums over any circular arc.
class CircularPrefixSums {
 public:
  explicit CircularPrefixSums(std::span<const std::int8_t> votes);

  std::size_t size() const noexcept { return prefix_.size() - 1; }
  long total() const noexcept { return prefix_.back(); }
  /// Sum of entries start, ..., start + length - 1 (mod size).
  long arc_sum(std::size_t start, std::size_t length) const;

 private:
  std::vector<long> prefix_;
};

long district_sum(const VoteSequence& votes, std::size_t start, std::size_t length);

/// A district with vote sum exactly 0 is not carried.
constexpr bool majority_positive(long district_vote_sum) noexcept { return district_vote_sum > 0; }

/// Rotation offset r in [0, n); district j covers r + j*n, ..., r + (j+1)*n - 1 (mod kn).
struct CircularPartition {
  int k;
  int n;
  int offset;

  std::size_t district_start(int j) const noexcept {
    return static_cast<std::size_t>(offset) + static_cast<std::size_t>(j) * static_cast<std::size_t>(n);
  }
};

struct GerrymanderResult {
  int d = 0;            // majority-positive districts under the best partition
  int best_offset = 0;  // smallest offset attaining d
  std::vector<int> per_offset_counts;
};

int majority_positive_count(const CircularPrefixSums& sums, const CircularPartition& partition);

/// Exhaustive scan over all n admissible offsets in O(kn).
GerrymanderResult optimal_gerrymander(const VoteSequence& votes);

/// optimal_gerrymander(...).d on a raw buffer, reusing `scratch` for the
/// prefix sums. Intended for simulation inner loops.
int max_majority_count(std::span<const std::int8_t> votes, int k, int n, std::vector<long>& scratch);

/// Exact law of D over all 2^(kn) equally likely vote patterns.
struct DDistribution {
  int k = 0;
  int n = 0;
  std::vector<std::uint64_t> counts;  // counts[d], d = 0..k

  std::uint64_t patterns() const noexcept { return std::uint64_t{1} << (k * n); }
  Rational probability(int d) const;
  std::vector<Rational> probabilities() const;
};

/// Brute force over every vote pattern; refuses k*n > kMaxEnumeratedVoters.
DDistribution enumerate_d_distribution(int k, int n, unsigned threads = 1);

}  // namespace gerrycircle
