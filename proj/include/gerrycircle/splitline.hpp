#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gerrycircle/compactness.hpp"

namespace gerrycircle {

struct WeightedPoint {
  double x = 0.0;
  double y = 0.0;
  double pos = 0.0;
  double neg = 0.0;

  double population() const noexcept { return pos + neg; }
};

enum class Party { kPositive, kNegative };
enum class Objective { kMaximize, kMinimize };

/// The line {p : cos(angle) p.x + sin(angle) p.y = offset}. The "left" side
/// is the closed half-plane where the projection is <= offset.
struct SplitLine {
  double angle = 0.0;
  double offset = 0.0;

  Point normal() const;
};

struct BisectCandidate {
  int direction = 0;       // index into the direction fan
  SplitLine line;
  std::vector<int> left;   // point indices
  std::vector<int> right;
  double left_population = 0.0;
  double right_population = 0.0;
};

struct BisectOptions {
  int angles = 180;
  /// Largest relative deviation of either side from share * ideal.
  double tolerance = 0.005;
  /// Population of one district. Zero means "this node's population
  /// divided by left_share + right_share".
  double ideal_district_population = 0.0;
};

/// Splits `members` (indices into `points`) in population ratio
/// left_share : right_share. For each of `angles` evenly spaced directions
/// the members are ordered by projection (ties by index) and cut at the
/// prefix whose population is closest to the proportional target; the line
/// sits midway between the last left and first right projection. A cut is
/// kept when each side is within tolerance of share * ideal. Throws
/// ValidationError if no direction yields such a cut.
std::vector<BisectCandidate> bisect(std::span<const WeightedPoint> points,
                                    std::span<const int> members, int left_share, int right_share,
                                    const BisectOptions& options = {});

struct SplitRecord {
  int node = 0;          // heap-style id: root 1, children 2i and 2i+1
  int depth = 0;
  int left_share = 0;
  int right_share = 0;
  SplitLine line;
};

struct DistrictSummary {
  double population = 0.0;
  double pos = 0.0;
  double neg = 0.0;
  std::vector<SplitRecord> path;  // splits from the root; side encoded by `on_left`
  std::vector<bool> on_left;
  std::optional<Polygon> region;  // state polygon clipped by the path half-planes
  std::optional<CompactnessReport> compactness;

  bool majority_for(Party party) const noexcept {
    return party == Party::kPositive ? pos > neg : neg > pos;
  }
};

struct DistrictingPlan {
  int district_count = 0;
  Party party = Party::kPositive;
  Objective objective = Objective::kMaximize;
  std::uint64_t seed = 0;
  std::vector<int> assignments;  // point index -> district id
  std::vector<SplitRecord> lines;
  std::vector<DistrictSummary> districts;
  double tolerance = 0.0;

  int majority_count() const noexcept;
  /// Worst |population / (total / k) - 1| over districts.
  double max_imbalance() const noexcept;
};

struct SplitlineOptions {
  int k = 8;
  Objective objective = Objective::kMaximize;
  Party party = Party::kPositive;
  int angles = 180;
  int beam = 8;
  int rollout_angles = 24;
  double tolerance = 0.005;  // leaf population within this fraction of total / k
  std::uint64_t seed = 0;
};

/// Recursive bisection (k -> ceil(k/2) + floor(k/2)) choosing lines for the
/// party objective by beam search: every feasible line at a node is scored
/// by a greedy rollout to the leaves, the best `beam` are expanded
/// exhaustively, and ties are ordered by a seeded hash. A heuristic: the
/// result is a lower bound on what split-lines can achieve.
DistrictingPlan partisan_splitline(std::span<const WeightedPoint> points, const Polygon& state,
                                   const SplitlineOptions& options);

/// Same recursion with each node's line drawn uniformly at random from the
/// feasible candidates.
DistrictingPlan random_splitline(std::span<const WeightedPoint> points, const Polygon& state,
                                 const SplitlineOptions& options);

}  // namespace gerrycircle
