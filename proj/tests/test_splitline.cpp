#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gerrycircle/common.hpp"
#include "gerrycircle/io.hpp"
#include "gerrycircle/splitline.hpp"

using namespace gerrycircle;

namespace {

std::vector<int> all_members(std::size_t n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

std::vector<WeightedPoint> grid(int side, double pos_share) {
  std::vector<WeightedPoint> pts;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      pts.push_back({(i + 0.5) / side, (j + 0.5) / side + 0.001 * i / side, 100 * pos_share, 100 * (1 - pos_share)});
  return pts;
}

double side_population(const std::vector<WeightedPoint>& pts, const std::vector<int>& ids) {
  double s = 0;
  for (int i : ids) s += pts[static_cast<std::size_t>(i)].population();
  return s;
}

}  // namespace

TEST_CASE("bisect square corners") {
  const std::vector<WeightedPoint> pts{{0, 0, 1, 0}, {1, 0, 1, 0}, {1, 1, 1, 0}, {0, 1, 1, 0}};
  const auto members = all_members(4);
  BisectOptions o;
  o.angles = 4;
  const auto cands = bisect(pts, members, 1, 1, o);
  REQUIRE_FALSE(cands.empty());
  for (const auto& c : cands) {
    CHECK(c.left.size() == 2);
    CHECK(c.right.size() == 2);
  }
}

TEST_CASE("bisect weighted collinear points") {
  std::vector<WeightedPoint> pts;
  for (double w : {3.0, 1.0, 1.0, 3.0}) pts.push_back({static_cast<double>(pts.size()), 0, w, 0});
  const auto cands = bisect(pts, all_members(4), 1, 1);
  REQUIRE_FALSE(cands.empty());
  for (const auto& c : cands) {
    CHECK(c.left_population == 4);
    CHECK(c.right_population == 4);
    auto left = c.left;
    std::sort(left.begin(), left.end());
    CHECK((left == std::vector<int>{0, 1} || left == std::vector<int>{2, 3}));
  }
}

TEST_CASE("bisect 2:1 ratio") {
  std::vector<WeightedPoint> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({static_cast<double>(i), 0.0, 1.0, 0.0});
  BisectOptions o;
  o.angles = 2;
  const auto cands = bisect(pts, all_members(6), 2, 1, o);
  REQUIRE_FALSE(cands.empty());
  for (const auto& c : cands) CHECK(c.left.size() == 4);
}

TEST_CASE("bisect reports infeasible balance") {
  const std::vector<WeightedPoint> pts{{0, 0, 10, 0}, {1, 0, 1, 0}, {2, 0, 1, 0}};
  CHECK_THROWS_AS(bisect(pts, all_members(3), 1, 1), ValidationError);
}

TEST_CASE("cut line separates the two sides") {
  const auto pts = grid(12, 0.5);
  const auto cands = bisect(pts, all_members(pts.size()), 3, 5);
  REQUIRE_FALSE(cands.empty());
  for (const auto& c : cands) {
    const Point nrm = c.line.normal();
    for (int i : c.left) CHECK(dot(nrm, {pts[i].x, pts[i].y}) <= c.line.offset + 1e-12);
    for (int i : c.right) CHECK(dot(nrm, {pts[i].x, pts[i].y}) >= c.line.offset - 1e-12);
    CHECK(std::abs(c.left_population - 3.0 / 8 * 14400) <= 0.005 * 14400 / 8 * 3);
  }
}

TEST_CASE("uniform preference gives every district to that party") {
  const auto pts = grid(20, 0.6);
  SplitlineOptions o;
  o.k = 8;
  o.angles = 36;
  o.beam = 2;
  const auto plan = partisan_splitline(pts, unit_square(), o);
  CHECK(plan.majority_count() == 8);
  CHECK(plan.districts.size() == 8);
  CHECK(plan.lines.size() == 7);
  CHECK(plan.max_imbalance() <= 0.005);
  for (const auto& d : plan.districts) {
    REQUIRE(d.compactness);
    CHECK(d.compactness->area > 0);
  }
}

TEST_CASE("assignments cover every point and match the district totals") {
  const auto pts = grid(16, 0.5);
  SplitlineOptions o;
  o.k = 4;
  o.angles = 24;
  o.beam = 2;
  const auto plan = partisan_splitline(pts, unit_square(), o);
  REQUIRE(plan.assignments.size() == pts.size());
  std::vector<double> pop(4);
  for (std::size_t i = 0; i < pts.size(); ++i) pop[static_cast<std::size_t>(plan.assignments[i])] += pts[i].population();
  for (int d = 0; d < 4; ++d) CHECK(pop[d] == doctest::Approx(plan.districts[d].population));
  CHECK(plan.max_imbalance() <= 0.005);
}

TEST_CASE("equal points that cannot be balanced are rejected") {
  // 256 equal points into 5 districts: some district holds 52 > 51.2 * 1.005.
  SplitlineOptions o;
  o.k = 5;
  o.angles = 24;
  o.beam = 2;
  CHECK_THROWS_AS(partisan_splitline(grid(16, 0.5), unit_square(), o), ValidationError);
}

TEST_CASE("competitive fixture: determinism, balance, objective ordering") {
  const auto pts = read_points_csv(std::string(GERRYCIRCLE_FIXTURES) + "/competitive_stripes.csv");
  SplitlineOptions o;
  o.k = 8;
  o.angles = 90;
  o.beam = 4;
  o.seed = 5;
  const auto max1 = partisan_splitline(pts, unit_square(), o);
  const auto max2 = partisan_splitline(pts, unit_square(), o);
  CHECK(max1.assignments == max2.assignments);
  CHECK(max1.max_imbalance() <= 0.005);
  o.objective = Objective::kMinimize;
  const auto min = partisan_splitline(pts, unit_square(), o);
  CHECK(min.max_imbalance() <= 0.005);
  CHECK(max1.majority_count() > min.majority_count());
  CHECK(max1.majority_count() >= 5);
}

TEST_CASE("random baseline is seeded") {
  const auto pts = grid(12, 0.5);
  SplitlineOptions o;
  o.k = 4;
  o.angles = 30;
  o.seed = 1;
  const auto a = random_splitline(pts, unit_square(), o);
  CHECK(a.assignments == random_splitline(pts, unit_square(), o).assignments);
  CHECK(a.max_imbalance() <= 0.005);
  CHECK(side_population(pts, all_members(pts.size())) == doctest::Approx(14400));
}

TEST_CASE("option validation") {
  const auto pts = grid(4, 0.5);
  SplitlineOptions o;
  o.k = 0;
  CHECK_THROWS_AS(partisan_splitline(pts, unit_square(), o), ValidationError);
  o.k = 100;
  CHECK_THROWS_AS(partisan_splitline(pts, unit_square(), o), ValidationError);
}
