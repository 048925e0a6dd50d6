#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gerrycircle/common.hpp"
#include "gerrycircle/compactness.hpp"
#include "gerrycircle/exact_analysis.hpp"
#include "gerrycircle/limit_constants.hpp"
#include "gerrycircle/monte_carlo.hpp"
#include "gerrycircle/splitline.hpp"
#include "gerrycircle/voter_model.hpp"

namespace py = pybind11;
namespace gc = gerrycircle;

namespace {

py::object fraction(const gc::Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(gc::to_fraction_string(r));
}

gc::VoteSequence to_votes(int k, int n, const std::vector<int>& votes) {
  std::vector<std::int8_t> v;
  v.reserve(votes.size());
  for (int x : votes) {
    if (x != 1 && x != -1) throw gc::ValidationError("votes must be +1 or -1");
    v.push_back(static_cast<std::int8_t>(x));
  }
  return gc::VoteSequence(k, n, std::move(v));
}

gc::Polygon to_polygon(const std::vector<std::pair<double, double>>& ring) {
  std::vector<gc::Point> pts;
  for (auto [x, y] : ring) pts.push_back({x, y});
  return gc::Polygon(std::move(pts));
}

py::dict report_dict(const gc::CompactnessReport& r) {
  py::dict d;
  d["area"] = r.area;
  d["perimeter"] = r.perimeter;
  d["polsby_popper"] = r.polsby_popper;
  d["hull_ratio"] = r.hull_ratio;
  d["reock"] = r.reock;
  d["centroid"] = py::make_tuple(r.centroid.x, r.centroid.y);
  d["inertia"] = r.inertia;
  d["enclosing_radius"] = r.enclosing_circle.radius;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Voter circle gerrymandering analysis, compactness metrics and split-line districting.";

  py::register_exception<gc::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<gc::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("generate_votes", [](int k, int n, std::uint64_t seed) {
    const auto seq = gc::generate_votes(k, n, seed);
    return std::vector<int>(seq.votes().begin(), seq.votes().end());
  }, py::arg("k"), py::arg("n"), py::arg("seed"));

  m.def("optimal_gerrymander", [](int k, int n, const std::vector<int>& votes) {
    const auto r = gc::optimal_gerrymander(to_votes(k, n, votes));
    return py::make_tuple(r.d, r.best_offset, r.per_offset_counts);
  }, py::arg("k"), py::arg("n"), py::arg("votes"),
     "Returns (d, best_offset, per_offset_counts).");

  m.def("enumerate_d_distribution", [](int k, int n, unsigned threads) {
    const auto dist = gc::enumerate_d_distribution(k, n, threads);
    py::list out;
    for (const auto& p : dist.probabilities()) out.append(fraction(p));
    return out;
  }, py::arg("k"), py::arg("n"), py::arg("threads") = 1);

  m.def("prob_d2_exact", [](int n) { return fraction(gc::prob_d2_exact(n)); }, py::arg("n"));

  m.def("verify_ivt", [](int n, const std::vector<int>& votes) {
    const auto c = gc::verify_ivt_characterization(to_votes(2, n, votes));
    return py::make_tuple(c.predicted_d2, c.actual_d2, c.witness);
  }, py::arg("n"), py::arg("votes"));

  m.def("walk_identity_holds", [](int n, const std::vector<int>& votes) {
    return gc::walk_arrays(to_votes(2, n, votes)).identity_holds();
  }, py::arg("n"), py::arg("votes"));

  m.def("trivariate_density", &gc::trivariate_density, py::arg("a"), py::arg("b"), py::arg("x"), py::arg("K") = 50);
  m.def("I_term", &gc::I_term, py::arg("k"));
  m.def("J_term", &gc::J_term, py::arg("k"));
  m.def("series_I", [](long K) { const auto s = gc::series_I(K); return py::make_tuple(s.value, s.tail_bound); },
        py::arg("K") = 50);
  m.def("series_J", [](long K) { const auto s = gc::series_J(K); return py::make_tuple(s.value, s.tail_bound); },
        py::arg("K") = 1'000'000);
  m.def("closed_form_limit", &gc::closed_form_limit);
  m.def("expected_district_share", &gc::expected_district_share);

  m.def("limit_d0", [](long series_K, double tol) {
    gc::LimitOptions o;
    o.series_K = series_K;
    o.quadrature.tol = tol;
    const auto r = gc::limit_d0(o);
    py::dict d;
    d["closed"] = r.closed;
    d["series"] = r.series;
    d["quadrature"] = r.quadrature.value;
    d["prefactor"] = r.prefactor;
    d["max_pairwise_difference"] = r.max_pairwise_difference;
    return d;
  }, py::arg("series_K") = 1'000'000, py::arg("tol") = 1e-11);

  m.def("estimate_distribution", [](int k, int n, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    const auto e = gc::estimate_distribution(k, n, trials, seed, threads);
    return e.counts;
  }, py::arg("k"), py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1,
     "Counts of D = 0..k over the trials.");

  m.def("brownian_event_estimate", [](int steps, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    const auto e = gc::brownian_event_estimate(steps, trials, seed, threads);
    return py::make_tuple(e.frequency(), e.std_error());
  }, py::arg("steps"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1);

  m.def("compactness", [](const std::vector<std::pair<double, double>>& ring) {
    return report_dict(gc::compactness_report(to_polygon(ring)));
  }, py::arg("ring"));

  m.def("chord_objective", &gc::chord_objective, py::arg("theta"));
  m.def("split_inertia", &gc::split_inertia_closed, py::arg("z"));

  m.def("verify_geometry", [](int sides) {
    py::list out;
    for (const auto& c : gc::run_geometry_verification(sides))
      out.append(py::make_tuple(c.name, c.passed, c.value, c.expected));
    return out;
  }, py::arg("sides") = 4096);

  m.def("splitline", [](const std::vector<std::tuple<double, double, double, double>>& points,
                        const std::vector<std::pair<double, double>>& state, int k, const std::string& objective,
                        const std::string& party, std::uint64_t seed, double tolerance) {
    std::vector<gc::WeightedPoint> pts;
    for (auto [x, y, pos, neg] : points) pts.push_back({x, y, pos, neg});
    gc::SplitlineOptions o;
    o.k = k;
    if (objective != "maximize" && objective != "minimize") throw gc::ValidationError("objective must be maximize or minimize");
    if (party != "pos" && party != "neg") throw gc::ValidationError("party must be pos or neg");
    o.objective = objective == "maximize" ? gc::Objective::kMaximize : gc::Objective::kMinimize;
    o.party = party == "pos" ? gc::Party::kPositive : gc::Party::kNegative;
    o.seed = seed;
    o.tolerance = tolerance;
    const auto plan = gc::partisan_splitline(pts, to_polygon(state), o);
    py::dict d;
    d["assignments"] = plan.assignments;
    d["majority_count"] = plan.majority_count();
    d["max_imbalance"] = plan.max_imbalance();
    return d;
  }, py::arg("points"), py::arg("state"), py::arg("k") = 8, py::arg("objective") = "maximize",
     py::arg("party") = "pos", py::arg("seed") = 0, py::arg("tolerance") = 0.005);
}
