#include "gerrycircle/splitline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "gerrycircle/common.hpp"
#include "gerrycircle/rng.hpp"

namespace gerrycircle {

Point SplitLine::normal() const { return {std::cos(angle), std::sin(angle)}; }

int DistrictingPlan::majority_count() const noexcept {
  return static_cast<int>(
      std::count_if(districts.begin(), districts.end(), [this](const DistrictSummary& d) { return d.majority_for(party); }));
}

double DistrictingPlan::max_imbalance() const noexcept {
  double total = 0.0;
  for (const auto& d : districts) total += d.population;
  const double ideal = total / district_count;
  double worst = 0.0;
  for (const auto& d : districts) worst = std::max(worst, std::abs(d.population / ideal - 1.0));
  return worst;
}

namespace {

double population_of(std::span<const WeightedPoint> points, std::span<const int> members) {
  double total = 0.0;
  for (int i : members) total += points[static_cast<std::size_t>(i)].population();
  return total;
}

std::vector<BisectCandidate> try_bisect(std::span<const WeightedPoint> points, std::span<const int> members,
                                        int left_share, int right_share, const BisectOptions& options) {
  const double total = population_of(points, members);
  const int shares = left_share + right_share;
  const double ideal = options.ideal_district_population > 0 ? options.ideal_district_population : total / shares;
  const double target = total * left_share / shares;
  const double left_goal = left_share * ideal;
  const double right_goal = right_share * ideal;

  std::vector<BisectCandidate> out;
  std::vector<std::pair<double, int>> order(members.size());
  for (int dir = 0; dir < options.angles; ++dir) {
    const double angle = std::numbers::pi * dir / options.angles;
    const double c = std::cos(angle), s = std::sin(angle);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto& p = points[static_cast<std::size_t>(members[i])];
      order[i] = {c * p.x + s * p.y, members[i]};
    }
    std::sort(order.begin(), order.end());

    // Cut after position `cut` (1 <= cut < size), closest to the target.
    double prefix = 0.0, best_gap = std::numeric_limits<double>::infinity(), best_left = 0.0;
    std::size_t best_cut = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      prefix += points[static_cast<std::size_t>(order[i].second)].population();
      const double gap = std::abs(prefix - target);
      if (gap < best_gap) {
        best_gap = gap;
        best_cut = i + 1;
        best_left = prefix;
      }
    }
    if (best_cut == 0) continue;
    const double best_right = total - best_left;
    if (std::abs(best_left - left_goal) > options.tolerance * left_goal) continue;
    if (std::abs(best_right - right_goal) > options.tolerance * right_goal) continue;

    BisectCandidate cand;
    cand.direction = dir;
    cand.line = {angle, 0.5 * (order[best_cut - 1].first + order[best_cut].first)};
    cand.left_population = best_left;
    cand.right_population = best_right;
    for (std::size_t i = 0; i < order.size(); ++i) (i < best_cut ? cand.left : cand.right).push_back(order[i].second);
    std::sort(cand.left.begin(), cand.left.end());
    std::sort(cand.right.begin(), cand.right.end());
    out.push_back(std::move(cand));
  }
  return out;
}

void validate_inputs(std::span<const WeightedPoint> points, const SplitlineOptions& options) {
  require(options.k >= 1, "k must be at least 1");
  require(options.angles >= 1, "angles must be at least 1");
  require(options.beam >= 1, "beam must be at least 1");
  require(options.rollout_angles >= 1, "rollout angles must be at least 1");
  require(options.tolerance > 0.0, "tolerance must be positive");
  require(points.size() >= static_cast<std::size_t>(options.k), "need at least k points");
  double total = 0.0;
  for (const auto& p : points) {
    require(p.pos >= 0.0 && p.neg >= 0.0, "weights must be nonnegative");
    require(p.population() > 0.0, "every point needs positive population");
    total += p.population();
  }
  require(total > 0.0, "total population must be positive");
}

// A leaf-level district under construction.
struct Leaf {
  std::vector<int> members;
  std::vector<SplitRecord> path;
  std::vector<bool> on_left;
};

struct Subtree {
  int score = 0;  // objective units: districts that count toward the objective
  std::vector<Leaf> leaves;
};

class Planner {
 public:
  Planner(std::span<const WeightedPoint> points, const SplitlineOptions& options, double ideal)
      : points_(points), options_(options), ideal_(ideal) {}

  // Full beam search.
  Subtree solve(const std::vector<int>& members, int count, int node, int depth) {
    if (count == 1) return {leaf_units(members), {Leaf{members, {}, {}}}};
    const int ls = (count + 1) / 2, rs = count / 2;
    std::vector<BisectCandidate> cands = candidates(members, ls, rs, options_.angles);
    if (cands.empty()) throw ValidationError(infeasible_message(members));

    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const double score = count == 2 ? leaf_units(cands[i].left) + leaf_units(cands[i].right)
                                      : rollout(cands[i].left, ls) + rollout(cands[i].right, rs);
      ranked.push_back({score, i});
    }
    order_by_score(ranked, node, cands);

    const std::size_t width = count == 2 ? 1 : std::min<std::size_t>(ranked.size(), options_.beam);
    std::optional<Subtree> best;
    for (std::size_t r = 0; r < width; ++r) {
      const BisectCandidate& cand = cands[ranked[r].second];
      try {
        Subtree left = solve(cand.left, ls, 2 * node, depth + 1);
        Subtree right = solve(cand.right, rs, 2 * node + 1, depth + 1);
        const int total = left.score + right.score;
        if (!best || total > best->score) best = join(std::move(left), std::move(right), cand, node, depth, ls, rs);
      } catch (const ValidationError&) {
        // Deeper nodes infeasible along this line; try the next one.
      }
    }
    if (!best) throw ValidationError(infeasible_message(members));
    return std::move(*best);
  }

  // Random feasible line at each node.
  Subtree random(const std::vector<int>& members, int count, int node, int depth, Xoshiro256& rng) {
    if (count == 1) return {leaf_units(members), {Leaf{members, {}, {}}}};
    const int ls = (count + 1) / 2, rs = count / 2;
    std::vector<BisectCandidate> cands = candidates(members, ls, rs, options_.angles);
    if (cands.empty()) throw ValidationError(infeasible_message(members));
    const BisectCandidate& cand = cands[rng() % cands.size()];
    Subtree left = random(cand.left, ls, 2 * node, depth + 1, rng);
    Subtree right = random(cand.right, rs, 2 * node + 1, depth + 1, rng);
    return join(std::move(left), std::move(right), cand, node, depth, ls, rs);
  }

 private:
  std::vector<BisectCandidate> candidates(const std::vector<int>& members, int ls, int rs, int angles) const {
    if (members.size() < 2) return {};
    BisectOptions bo{angles, options_.tolerance, ideal_};
    return try_bisect(points_, members, ls, rs, bo);
  }

  bool counts_toward_objective(double pos, double neg) const {
    const bool party_wins = options_.party == Party::kPositive ? pos > neg : neg > pos;
    return options_.objective == Objective::kMaximize ? party_wins : !party_wins;
  }

  int leaf_units(const std::vector<int>& members) const {
    double pos = 0.0, neg = 0.0;
    for (int i : members) {
      pos += points_[static_cast<std::size_t>(i)].pos;
      neg += points_[static_cast<std::size_t>(i)].neg;
    }
    return counts_toward_objective(pos, neg) ? 1 : 0;
  }

  // Optimistic count of objective districts for `count` districts drawn from
  // `members`: the favoured side's vote mass can carry at most
  // ceil(2 * share * count) - 1 strict majorities.
  double potential(const std::vector<int>& members, int count) const {
    double pos = 0.0, neg = 0.0;
    for (int i : members) {
      pos += points_[static_cast<std::size_t>(i)].pos;
      neg += points_[static_cast<std::size_t>(i)].neg;
    }
    const double party = options_.party == Party::kPositive ? pos : neg;
    const double share_party = party / (pos + neg);
    const double share = options_.objective == Objective::kMaximize ? share_party : 1.0 - share_party;
    const double wins = std::clamp(std::ceil(2.0 * share * count) - 1.0, 0.0, static_cast<double>(count));
    // Fractional part rewards lopsided sides (packing the opponent).
    return wins + 1e-3 * std::abs(share - 0.5);
  }

  // Greedy completion on the coarse direction fan; exact at two-district nodes.
  int rollout(const std::vector<int>& members, int count) {
    if (count == 1) return leaf_units(members);
    const int ls = (count + 1) / 2, rs = count / 2;
    std::vector<BisectCandidate> cands = candidates(members, ls, rs, options_.rollout_angles);
    if (cands.empty()) cands = candidates(members, ls, rs, options_.angles);
    if (cands.empty()) return -1000;  // infeasible: rank last
    double best_value = -std::numeric_limits<double>::infinity();
    const BisectCandidate* best = nullptr;
    for (const auto& c : cands) {
      const double value = count == 2 ? leaf_units(c.left) + leaf_units(c.right)
                                      : potential(c.left, ls) + potential(c.right, rs);
      if (value > best_value) {
        best_value = value;
        best = &c;
      }
    }
    if (count == 2) return static_cast<int>(best_value);
    return rollout(best->left, ls) + rollout(best->right, rs);
  }

  void order_by_score(std::vector<std::pair<double, std::size_t>>& ranked, int node,
                      const std::vector<BisectCandidate>& cands) const {
    auto tiebreak = [&](std::size_t i) {
      return mix64(options_.seed ^ mix64(static_cast<std::uint64_t>(node) * 1000003ULL +
                                         static_cast<std::uint64_t>(cands[i].direction)));
    };
    std::sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return tiebreak(x.second) < tiebreak(y.second);
    });
  }

  static Subtree join(Subtree left, Subtree right, const BisectCandidate& cand, int node, int depth, int ls,
                      int rs) {
    const SplitRecord record{node, depth, ls, rs, cand.line};
    Subtree out;
    out.score = left.score + right.score;
    for (auto* side : {&left, &right}) {
      const bool is_left = side == &left;
      for (Leaf& leaf : side->leaves) {
        leaf.path.insert(leaf.path.begin(), record);
        leaf.on_left.insert(leaf.on_left.begin(), is_left);
        out.leaves.push_back(std::move(leaf));
      }
    }
    return out;
  }

  std::string infeasible_message(const std::vector<int>& members) const {
    return "no split-line keeps both sides within " + std::to_string(options_.tolerance * 100) +
           "% of their population target for a region of " + std::to_string(members.size()) + " points";
  }

  std::span<const WeightedPoint> points_;
  const SplitlineOptions& options_;
  double ideal_;
};

DistrictingPlan assemble(std::span<const WeightedPoint> points, const Polygon& state, const SplitlineOptions& options,
                         Subtree tree) {
  DistrictingPlan plan;
  plan.district_count = options.k;
  plan.party = options.party;
  plan.objective = options.objective;
  plan.seed = options.seed;
  plan.tolerance = options.tolerance;
  plan.assignments.assign(points.size(), -1);

  for (std::size_t d = 0; d < tree.leaves.size(); ++d) {
    Leaf& leaf = tree.leaves[d];
    DistrictSummary summary;
    for (int i : leaf.members) {
      plan.assignments[static_cast<std::size_t>(i)] = static_cast<int>(d);
      summary.pos += points[static_cast<std::size_t>(i)].pos;
      summary.neg += points[static_cast<std::size_t>(i)].neg;
    }
    summary.population = summary.pos + summary.neg;

    std::optional<Polygon> region = state;
    for (std::size_t s = 0; s < leaf.path.size() && region; ++s) {
      const Point nrm = leaf.path[s].line.normal();
      const double off = leaf.path[s].line.offset;
      region = leaf.on_left[s] ? clip_halfplane(*region, nrm, off) : clip_halfplane(*region, -1.0 * nrm, -off);
    }
    summary.region = region;
    if (region && region->is_simple()) summary.compactness = compactness_report(*region);
    summary.path = std::move(leaf.path);
    summary.on_left = std::move(leaf.on_left);
    plan.districts.push_back(std::move(summary));
  }

  for (const auto& d : plan.districts)
    for (const auto& rec : d.path)
      if (std::none_of(plan.lines.begin(), plan.lines.end(), [&](const SplitRecord& r) { return r.node == rec.node; }))
        plan.lines.push_back(rec);
  std::sort(plan.lines.begin(), plan.lines.end(), [](const SplitRecord& a, const SplitRecord& b) { return a.node < b.node; });
  return plan;
}

}  // namespace

std::vector<BisectCandidate> bisect(std::span<const WeightedPoint> points, std::span<const int> members,
                                    int left_share, int right_share, const BisectOptions& options) {
  require(left_share >= 1 && right_share >= 1, "shares must be positive");
  require(options.angles >= 1, "angles must be at least 1");
  require(options.tolerance >= 0.0, "tolerance must be nonnegative");
  require(members.size() >= 2, "need at least two points to split");
  for (int i : members) require(i >= 0 && static_cast<std::size_t>(i) < points.size(), "member index out of range");
  require(population_of(points, members) > 0.0, "total population must be positive");
  auto out = try_bisect(points, members, left_share, right_share, options);
  if (out.empty())
    throw ValidationError("no direction yields a cut within the balance tolerance (a single point may carry "
                          "too large a share of the population)");
  return out;
}

DistrictingPlan partisan_splitline(std::span<const WeightedPoint> points, const Polygon& state,
                                   const SplitlineOptions& options) {
  validate_inputs(points, options);
  std::vector<int> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  const double ideal = population_of(points, all) / options.k;
  Planner planner(points, options, ideal);
  return assemble(points, state, options, planner.solve(all, options.k, 1, 0));
}

DistrictingPlan random_splitline(std::span<const WeightedPoint> points, const Polygon& state,
                                 const SplitlineOptions& options) {
  validate_inputs(points, options);
  std::vector<int> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  const double ideal = population_of(points, all) / options.k;
  Planner planner(points, options, ideal);
  Xoshiro256 rng(options.seed);
  return assemble(points, state, options, planner.random(all, options.k, 1, 0, rng));
}

}  // namespace gerrycircle
