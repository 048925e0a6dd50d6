// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "gerrycircle/compactness.hpp"
#include "gerrycircle/exact_analysis.hpp"
#include "gerrycircle/io.hpp"
#include "gerrycircle/limit_constants.hpp"
#include "gerrycircle/monte_carlo.hpp"
#include "gerrycircle/rng.hpp"
#include "gerrycircle/splitline.hpp"
#include "gerrycircle/voter_model.hpp"

using namespace gerrycircle;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    o.pass = false;
    o.detail += " [over time budget " + format_number(budget_seconds) + " s]";
  }
  failures += !o.pass;
  std::printf("%s  criterion %d: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(double v) { return format_number(v); }

Outcome exact_vs_enumeration() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    const Rational brute = enumerate_d_distribution(2, n).probability(2);
    if (brute != prob_d2_exact(n)) {
      o.pass = false;
      o.detail += "n=" + std::to_string(n) + " mismatch; ";
    }
  }
  o.detail += "n=10: " + to_fraction_string(prob_d2_exact(10));
  return o;
}

Outcome sqrt_bracket() {
  const double lo = 1 / (2 * std::sqrt(2 * pi)), hi = 2 / std::sqrt(pi);
  Outcome o;
  double mn = 1e9, mx = -1e9;
  for (int i = 0; i < 20; ++i) {
    // 20 points spread geometrically over [100, 10000], hitting both parities.
    const int n = static_cast<int>(std::lround(100 * std::pow(100.0, i / 19.0)));
    const double s = std::sqrt(double(n)) * (0.5 - to_double(prob_d2_exact(n)));
    mn = std::min(mn, s);
    mx = std::max(mx, s);
    if (s < lo || s > hi) o.pass = false;
  }
  o.detail = "scaled deviation in [" + fmt(mn) + ", " + fmt(mx) + "], bracket [" + fmt(lo) + ", " + fmt(hi) + "]";
  return o;
}

Outcome series_constants() {
  Outcome o;
  const auto I = series_I(50);
  const double i_err = std::abs(I.value + I.tail_bound - pi / 2);
  const bool i_ok = std::abs(I.value - pi / 2) <= I.tail_bound + 1e-12 && i_err <= 1e-8;
  const auto J = series_J(1'000'000);
  const double j_target = pi / 2 * std::tanh(pi / 2);
  const double j_err = std::abs(J.value - j_target);
  const bool j_ok = j_err <= 1e-6;
  double worst = 0;
  for (const auto& t : check_I_terms(10)) worst = std::max(worst, std::abs(t.closed - t.quadrature));
  for (const auto& t : check_J_terms(10)) worst = std::max(worst, std::abs(t.closed - t.quadrature));
  o.pass = i_ok && j_ok && worst <= 1e-8;
  o.detail = "|sum I + tail - pi/2|=" + fmt(i_err) + ", |sum J - (pi/2)tanh(pi/2)|=" + fmt(j_err) +
             ", worst term vs quadrature=" + fmt(worst);
  return o;
}

Outcome limit_routes() {
  const auto r = limit_d0();
  Outcome o;
  o.pass = r.agree(1e-4);
  o.detail = "closed=" + fmt(r.closed) + " series=" + fmt(r.series) + " quadrature=" + fmt(r.quadrature.value) +
             " max diff=" + fmt(r.max_pairwise_difference) + " prefactor=1/pi (measured " +
             fmt(r.prefactor_measured) + ", 1/pi=" + fmt(1 / pi) + ")";
  return o;
}

const DistributionEstimate& big_run() {
  static const DistributionEstimate est = estimate_distribution(2, 5000, 200'000, 20240611, 0);
  return est;
}

Outcome monte_carlo_limit() {
  const auto& e = big_run();
  const double d0 = e.frequency(0), d2 = e.frequency(2);
  const double exact = to_double(prob_d2_exact(5000));
  const double se = std::sqrt(exact * (1 - exact) / static_cast<double>(e.trials));
  Outcome o;
  o.pass = std::abs(d0 - closed_form_limit()) <= 0.01 && std::abs(d2 - exact) <= 10 * se;
  o.detail = "Pr(D=0)~" + fmt(d0) + " vs " + fmt(closed_form_limit()) + "; Pr(D=2)~" + fmt(d2) + " vs exact " +
             fmt(exact) + " (" + fmt((d2 - exact) / se) + " se)";
  return o;
}

Outcome district_share() {
  const double share = big_run().mean_d() / 2;
  Outcome o;
  o.pass = std::abs(share - expected_district_share()) <= 0.01;
  o.detail = "E[D]/2~" + fmt(share) + " vs " + fmt(expected_district_share());
  return o;
}

Outcome geometry() {
  Outcome o;
  int failed = 0;
  for (const auto& c : run_geometry_verification(4096))
    if (!c.passed) {
      ++failed;
      o.detail += c.name + " failed; ";
    }
  std::vector<double> grid;
  for (int i = 0; i < 99; ++i) grid.push_back(-0.98 + 0.02 * i);
  const auto lemma = verify_inertia_lemma(grid);
  int bound = 0, deriv = 0;
  for (const auto& r : lemma.rows) {
    bound += r.inertia_sum < 2 * lemma.inertia_at_zero - 1e-10;
    deriv += !r.derivative_ok;
  }
  o.pass = failed == 0 && bound == 0 && deriv == 0;
  o.detail += std::to_string(failed) + " suite failures, " + std::to_string(bound) + " lower-bound and " +
              std::to_string(deriv) + " derivative failures on 99 z values";
  return o;
}

Outcome splitline_fixture() {
  const auto pts = read_points_csv(std::string(GERRYCIRCLE_FIXTURES) + "/competitive_stripes.csv");
  const Polygon state = read_polygon_json(std::string(GERRYCIRCLE_FIXTURES) + "/unit_square.json");
  double pos = 0, neg = 0;
  for (const auto& p : pts) pos += p.pos, neg += p.neg;
  SplitlineOptions opt;
  opt.k = 8;
  opt.party = pos >= neg ? Party::kPositive : Party::kNegative;
  opt.seed = 1;
  const auto max_a = partisan_splitline(pts, state, opt);
  const auto max_b = partisan_splitline(pts, state, opt);
  opt.objective = Objective::kMinimize;
  const auto min_a = partisan_splitline(pts, state, opt);
  const auto min_b = partisan_splitline(pts, state, opt);
  const bool deterministic = max_a.assignments == max_b.assignments && min_a.assignments == min_b.assignments;
  const double imbalance = std::max(max_a.max_imbalance(), min_a.max_imbalance());
  Outcome o;
  o.pass = deterministic && imbalance <= 0.005 && max_a.majority_count() > min_a.majority_count();
  o.detail = std::string("favored ") + (opt.party == Party::kPositive ? "pos" : "neg") + " share " +
             fmt(std::max(pos, neg) / (pos + neg)) + ": maximize " + std::to_string(max_a.majority_count()) +
             "/8, minimize " + std::to_string(min_a.majority_count()) + "/8, max imbalance " + fmt(imbalance) +
             (deterministic ? ", deterministic" : ", NOT deterministic");
  return o;
}

Outcome properties() {
  int rot = 0, ivt = 0, walk = 0, sim = 0;
  for (std::uint64_t s = 0; s < 10'000; ++s) {
    const int k = 2 + static_cast<int>(s % 4);
    const int n = 1 + static_cast<int>(mix64(s) % 40);
    const auto v = generate_votes(k, n, trial_seed(1, s));
    const int d = optimal_gerrymander(v).d;
    const auto shift = static_cast<std::size_t>(mix64(s ^ 0x55) % v.size());
    rot += optimal_gerrymander(v.rotated(shift)).d != d || optimal_gerrymander(v.reversed()).d != d;

    const auto v2 = generate_votes(2, n, trial_seed(2, s));
    const auto c = verify_ivt_characterization(v2);
    if (!c.holds()) ++ivt;
    else if (c.predicted_d2 && (!c.witness || std::abs(walk_arrays(v2).imbalance[*c.witness]) > 1)) ++ivt;

    walk += !walk_arrays(generate_votes(2, n, trial_seed(3, s))).identity_holds();
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 1000; ++t) {
    std::vector<Point> ring;
    const int sides = 3 + t % 9;
    for (int i = 0; i < sides; ++i) {
      const double a = 2 * pi * (i + 0.8 * u(rng)) / sides;
      const double r = 0.3 + u(rng);
      ring.push_back({r * std::cos(a), r * std::sin(a)});
    }
    const Polygon base(ring);
    const auto ref = compactness_report(base);
    const double scale = 0.01 + 50 * u(rng), angle = 2 * pi * u(rng), cs = std::cos(angle), sn = std::sin(angle);
    const Point shift{1000 * u(rng) - 500, 1000 * u(rng) - 500};
    const bool mirror = t % 2;
    std::vector<Point> moved;
    for (auto p : ring) {
      if (mirror) p.y = -p.y;
      moved.push_back(Point{scale * (cs * p.x - sn * p.y), scale * (sn * p.x + cs * p.y)} + shift);
    }
    const auto r = compactness_report(Polygon(moved));
    auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
    sim += !(rel(r.polsby_popper, ref.polsby_popper) && rel(r.hull_ratio, ref.hull_ratio) && rel(r.reock, ref.reock) &&
             rel(r.inertia / std::pow(scale, 4), ref.inertia));
  }
  Outcome o;
  o.pass = rot == 0 && ivt == 0 && walk == 0 && sim == 0;
  o.detail = "failures: rotation/reflection " + std::to_string(rot) + "/10000, IVT " + std::to_string(ivt) +
             "/10000, walk identity " + std::to_string(walk) + "/10000, similarity " + std::to_string(sim) + "/1000";
  return o;
}

}  // namespace

int main() {
  criterion(1, "exact Pr(D=2) equals enumeration for n <= 10", 60, exact_vs_enumeration);
  criterion(2, "sqrt(n)(1/2 - Pr(D=2)) bracket on 20 n in [100, 10000]", 0, sqrt_bracket);
  criterion(3, "series constants and per-term quadrature", 60, series_constants);
  criterion(4, "limit of Pr(D=0): closed form, series and quadrature agree", 300, limit_routes);
  criterion(5, "Monte Carlo at n=5000, 2e5 trials", 600, monte_carlo_limit);
  criterion(6, "average district share", 0, district_share);
  criterion(7, "geometry constants and inertia lemma", 0, geometry);
  criterion(8, "split-line competitive fixture, k=8", 0, splitline_fixture);
  criterion(9, "property suites", 0, properties);
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
