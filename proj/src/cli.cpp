#include "gerrycircle/cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gerrycircle/common.hpp"
#include "gerrycircle/compactness.hpp"
#include "gerrycircle/exact_analysis.hpp"
#include "gerrycircle/io.hpp"
#include "gerrycircle/limit_constants.hpp"
#include "gerrycircle/monte_carlo.hpp"
#include "gerrycircle/splitline.hpp"
#include "gerrycircle/svg.hpp"
#include "gerrycircle/voter_model.hpp"

namespace gerrycircle {

namespace {

using nlohmann::json;

double num(double v) { return round_sig12(v); }

json point_json(Point p) { return json::array({num(p.x), num(p.y)}); }

json report_json(const CompactnessReport& r) {
  return {{"area", num(r.area)},
          {"perimeter", num(r.perimeter)},
          {"polsby_popper", num(r.polsby_popper)},
          {"hull_ratio", num(r.hull_ratio)},
          {"reock", num(r.reock)},
          {"centroid", point_json(r.centroid)},
          {"inertia", num(r.inertia)},
          {"enclosing_circle", {{"center", point_json(r.enclosing_circle.center)}, {"radius", num(r.enclosing_circle.radius)}}}};
}

// Everything a subcommand produced: the text for stdout and any files.
struct RunOutput {
  std::string stdout_text;
  std::map<std::string, std::string> files;
  int exit_code = 0;

  // Primary output goes to `path` when set, otherwise to stdout.
  void emit(const std::string& text, const std::string& path) {
    if (path.empty())
      stdout_text += text;
    else
      files[path] = text;
  }
};

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError(flag + ": '" + item + "' is not an integer");
    }
  }
  require(!out.empty(), flag + ": empty list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, "--n-range: expected FIRST:LAST");
  const auto bounds = parse_int_list(text.substr(0, colon) + "," + text.substr(colon + 1), "--n-range");
  require(bounds.size() == 2 && bounds[0] >= 1 && bounds[0] <= bounds[1], "--n-range: need 1 <= FIRST <= LAST");
  return {bounds[0], bounds[1]};
}

struct Options {
  unsigned threads = 1;
  std::string manifest_out;
  // shared
  int k = 2, n = 1;
  std::uint64_t trials = 0, seed = 0;
  std::string out, svg;
  // exact
  std::optional<int> exact_n;
  std::string n_range;
  // constants
  std::string route = "all";
  long K = 1'000'000;
  double tol = 1e-11;
  // walk / converge
  int steps = 1;
  std::string n_list;
  // geometry
  std::string polygon, points, assignments;
  int sides = 4096;
  // splitline
  int splitline_k = 8;
  std::string objective = "maximize", party = "pos";
  int angles = 180, beam = 8;
  double tolerance = 0.005;
};

RunOutput run_simulate(const Options& o) {
  const DistributionEstimate est = estimate_distribution(o.k, o.n, o.trials, o.seed, o.threads);
  std::string csv = "d,count,frequency\n";
  for (int d = 0; d <= o.k; ++d)
    csv += std::to_string(d) + "," + std::to_string(est.counts[static_cast<std::size_t>(d)]) + "," +
           format_number(est.frequency(d)) + "\n";
  RunOutput r;
  r.emit(csv, o.out);
  return r;
}

RunOutput run_enumerate(const Options& o) {
  const DDistribution dist = enumerate_d_distribution(o.k, o.n, o.threads);
  json probs = json::array();
  for (const auto& p : dist.probabilities()) probs.push_back(to_fraction_string(p));
  const json doc{{"k", o.k}, {"n", o.n}, {"patterns", dist.patterns()}, {"probabilities", probs}};
  RunOutput r;
  r.emit(doc.dump() + "\n", o.out);
  return r;
}

RunOutput run_exact(const Options& o) {
  RunOutput r;
  if (o.exact_n) {
    const Rational p = prob_d2_exact(*o.exact_n);
    const json doc{{"n", *o.exact_n}, {"p", to_fraction_string(p)}, {"p_decimal", num(to_double(p))}};
    r.emit(doc.dump() + "\n", o.out);
    return r;
  }
  const auto [first, last] = parse_range(o.n_range);
  std::string csv = "n,p_decimal,p_fraction\n";
  for (int n = first; n <= last; ++n) {
    const Rational p = prob_d2_exact(n);
    csv += std::to_string(n) + "," + to_decimal_string(p) + "," + to_fraction_string(p) + "\n";
  }
  r.emit(csv, o.out);
  return r;
}

RunOutput run_constants(const Options& o) {
  require(o.K >= 1, "--K must be at least 1");
  require(o.tol > 0, "--tol must be positive");
  auto closed = [] { return json{{"route", "closed"}, {"value", num(closed_form_limit())}, {"tail_bound", 0.0}, {"nodes", 0}}; };
  QuadratureOptions qo;
  qo.tol = o.tol;
  auto quadrature = [&] {
    const QuadratureResult q = limit_quadrature(qo);
    return json{{"route", "quadrature"}, {"value", num(q.value)}, {"tail_bound", num(q.error_estimate)}, {"nodes", q.nodes}};
  };
  RunOutput r;
  json doc;
  if (o.route == "closed") {
    doc = closed();
  } else if (o.route == "quadrature") {
    doc = quadrature();
  } else {
    LimitOptions lo;
    lo.series_K = o.K;
    lo.quadrature = qo;
    const LimitRoutes routes = limit_d0(lo);
    const json series{{"route", "series"},
                      {"value", num(routes.series)},
                      {"tail_bound", num(routes.series_error_bound)},
                      {"nodes", 2 * (2 * o.K + 1)},
                      {"prefactor", num(routes.prefactor)},
                      {"prefactor_measured", num(routes.prefactor_measured)}};
    if (o.route == "series") {
      doc = series;
    } else {
      doc = {{"route", "all"},
             {"routes",
              json::array({closed(), series,
                           json{{"route", "quadrature"}, {"value", num(routes.quadrature.value)},
                                {"tail_bound", num(routes.quadrature.error_estimate)}, {"nodes", routes.quadrature.nodes}}})},
             {"max_pairwise_difference", num(routes.max_pairwise_difference)},
             {"expected_district_share", num(expected_district_share())}};
    }
  }
  r.emit(doc.dump() + "\n", o.out);
  return r;
}

RunOutput run_walk(const Options& o) {
  const EventEstimate est = brownian_event_estimate(o.steps, o.trials, o.seed, o.threads);
  std::string csv = "steps,trials,successes,frequency,std_error,limit\n";
  csv += std::to_string(o.steps) + "," + std::to_string(est.trials) + "," + std::to_string(est.successes) + "," +
         format_number(est.frequency()) + "," + format_number(est.std_error()) + "," +
         format_number(closed_form_limit()) + "\n";
  RunOutput r;
  r.emit(csv, o.out);
  return r;
}

RunOutput run_converge(const Options& o) {
  const std::vector<int> ns = parse_int_list(o.n_list, "--n-list");
  for (int n : ns) require(n >= 1, "--n-list: entries must be positive");
  const auto rows = convergence_table(ns, o.trials, o.seed, o.threads);
  std::string csv = "n,freq_D0,freq_D1,freq_D2,exact_D2,limit_D0\n";
  for (const auto& row : rows)
    csv += std::to_string(row.n) + "," + format_number(row.freq_d0) + "," + format_number(row.freq_d1) + "," +
           format_number(row.freq_d2) + "," + format_number(row.exact_d2) + "," + format_number(row.limit_d0) + "\n";
  RunOutput r;
  r.emit(csv, o.out);
  if (!o.svg.empty()) r.files[o.svg] = convergence_svg(rows);
  return r;
}

RunOutput run_compactness(const Options& o) {
  const Polygon polygon = read_polygon_json(o.polygon);
  RunOutput r;
  r.emit(report_json(compactness_report(polygon)).dump() + "\n", o.out);
  return r;
}

RunOutput run_verify_geometry(const Options& o) {
  const auto checks = run_geometry_verification(o.sides);
  std::string table;
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    table += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + "  value=" + format_number(c.value) +
             " expected=" + format_number(c.expected) + " tol=" + format_number(c.tolerance) + "\n";
  }
  RunOutput r;
  r.emit(table, o.out);
  r.exit_code = all ? 0 : 1;
  return r;
}

RunOutput run_splitline(const Options& o) {
  const auto points = read_points_csv(o.points);
  const Polygon state = read_polygon_json(o.polygon);
  SplitlineOptions so;
  so.k = o.splitline_k;
  so.objective = o.objective == "maximize" ? Objective::kMaximize : Objective::kMinimize;
  so.party = o.party == "pos" ? Party::kPositive : Party::kNegative;
  so.angles = o.angles;
  so.beam = o.beam;
  so.tolerance = o.tolerance;
  so.seed = o.seed;
  const DistrictingPlan plan = partisan_splitline(points, state, so);

  json lines = json::array();
  for (const auto& l : plan.lines)
    lines.push_back({{"node", l.node}, {"depth", l.depth}, {"left_share", l.left_share}, {"right_share", l.right_share},
                     {"angle", num(l.line.angle)}, {"offset", num(l.line.offset)}});
  json districts = json::array();
  for (std::size_t d = 0; d < plan.districts.size(); ++d) {
    const auto& s = plan.districts[d];
    json entry{{"id", d},
               {"population", num(s.population)},
               {"pos", num(s.pos)},
               {"neg", num(s.neg)},
               {"majority", s.pos > s.neg ? "pos" : s.neg > s.pos ? "neg" : "tie"}};
    entry["compactness"] = s.compactness ? report_json(*s.compactness) : json(nullptr);
    districts.push_back(entry);
  }
  const json doc{{"k", plan.district_count},
                 {"party", o.party},
                 {"objective", o.objective},
                 {"seed", plan.seed},
                 {"majority_count", plan.majority_count()},
                 {"max_imbalance", num(plan.max_imbalance())},
                 {"lines", lines},
                 {"districts", districts},
                 {"assignments", plan.assignments}};
  RunOutput r;
  r.emit(doc.dump(2) + "\n", o.out);
  if (!o.assignments.empty()) {
    std::string csv = "point,district\n";
    for (std::size_t i = 0; i < plan.assignments.size(); ++i)
      csv += std::to_string(i) + "," + std::to_string(plan.assignments[i]) + "\n";
    r.files[o.assignments] = csv;
  }
  if (!o.svg.empty()) r.files[o.svg] = plan_svg(plan, state, points);
  return r;
}

// Drops the replay/manifest flags so a manifest never records itself.
std::vector<std::string> replayable(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--manifest" || a == "--manifest-out") {
      ++i;
      continue;
    }
    if (a.rfind("--manifest=", 0) == 0 || a.rfind("--manifest-out=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::string manifest_in;

  CLI::App app{"Stochastic voter circle gerrymandering: exact, asymptotic and Monte Carlo analysis, "
               "compactness metrics and split-line districting.",
               kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
  app.add_option("--manifest", manifest_in, "Replay the run recorded in a manifest file");
  app.add_option("--manifest-out", o.manifest_out, "Write the run manifest here instead of stderr");
  app.require_subcommand(0, 1);
  app.fallthrough();  // global flags may follow the subcommand

  auto* simulate = app.add_subcommand("simulate", "Empirical distribution of D by Monte Carlo");
  simulate->add_option("--k", o.k, "Districts")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--n", o.n, "Voters per district")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--trials", o.trials, "Trials")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed, "Master seed")->required();
  simulate->add_option("--out", o.out, "CSV output (d,count,frequency)");

  auto* enumerate = app.add_subcommand("enumerate", "Exact distribution of D by enumerating all vote patterns");
  enumerate->add_option("--k", o.k, "Districts")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--n", o.n, "Voters per district")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--out", o.out, "JSON output");

  auto* exact = app.add_subcommand("exact", "Exact Pr(D_n = 2) for two districts");
  auto* exact_n = exact->add_option("--n", o.exact_n, "Voters per district")->check(CLI::PositiveNumber);
  auto* exact_range = exact->add_option("--n-range", o.n_range, "FIRST:LAST, emits CSV");
  exact_n->excludes(exact_range);
  exact->require_option(1);
  exact->add_option("--out", o.out, "Output file");

  auto* constants = app.add_subcommand("constants", "Limit of Pr(D_n = 0) by closed form, series and quadrature");
  constants->add_option("--route", o.route, "closed, series, quadrature or all")
      ->check(CLI::IsMember({"closed", "series", "quadrature", "all"}));
  constants->add_option("--K", o.K, "Series truncation |k| <= K");
  constants->add_option("--tol", o.tol, "Relative tolerance of the nested quadrature");
  constants->add_option("--out", o.out, "JSON output");

  auto* walk = app.add_subcommand("walk", "Random-walk estimate of the limiting Brownian event");
  walk->add_option("--steps", o.steps, "Steps per walk (n)")->required()->check(CLI::PositiveNumber);
  walk->add_option("--trials", o.trials, "Trials")->required()->check(CLI::PositiveNumber);
  walk->add_option("--seed", o.seed, "Master seed")->required();
  walk->add_option("--out", o.out, "CSV output");

  auto* converge = app.add_subcommand("converge", "Empirical D frequencies over a list of n");
  converge->add_option("--n-list", o.n_list, "Comma-separated n values")->required();
  converge->add_option("--trials", o.trials, "Trials per n")->required()->check(CLI::PositiveNumber);
  converge->add_option("--seed", o.seed, "Master seed")->required();
  converge->add_option("--out", o.out, "CSV output");
  converge->add_option("--svg", o.svg, "Convergence plot");

  auto* compactness = app.add_subcommand("compactness", "Compactness scores of a polygon");
  compactness->add_option("--polygon", o.polygon, "JSON ring of [x, y] pairs")->required();
  compactness->add_option("--out", o.out, "JSON output");

  auto* verify = app.add_subcommand("verify-geometry", "Numeric checks of the disk-partition bounds");
  verify->add_option("--sides", o.sides, "Vertices of the polygonal disk");
  verify->add_option("--out", o.out, "Output file");

  auto* split = app.add_subcommand("splitline", "Partisan split-line districting");
  split->add_option("--points", o.points, "CSV with header x,y,pos,neg")->required();
  split->add_option("--polygon", o.polygon, "State boundary as a JSON ring")->required();
  split->add_option("--k", o.splitline_k, "Districts")->check(CLI::PositiveNumber);
  split->add_option("--objective", o.objective, "maximize or minimize")->check(CLI::IsMember({"maximize", "minimize"}));
  split->add_option("--party", o.party, "pos or neg")->check(CLI::IsMember({"pos", "neg"}));
  split->add_option("--angles", o.angles, "Directions per split")->check(CLI::PositiveNumber);
  split->add_option("--beam", o.beam, "Beam width")->check(CLI::PositiveNumber);
  split->add_option("--tolerance", o.tolerance, "District population tolerance (fraction of ideal)");
  split->add_option("--seed", o.seed, "Tie-break seed")->required();
  split->add_option("--out", o.out, "Plan JSON");
  split->add_option("--assignments", o.assignments, "Point assignment CSV");
  split->add_option("--svg", o.svg, "District map");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (!manifest_in.empty()) {
    std::vector<std::string> replay;
    try {
      const json doc = json::parse(read_file(manifest_in));
      replay = doc.at("args").get<std::vector<std::string>>();
    } catch (const std::exception& e) {
      err << "error: --manifest: cannot read " << manifest_in << ": " << e.what() << "\n";
      return 2;
    }
    if (!o.manifest_out.empty()) {
      replay.push_back("--manifest-out");
      replay.push_back(o.manifest_out);
    }
    return dispatch(replay, out, err);
  }

  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    err << "error: a subcommand is required\n\n" << app.help();
    return 2;
  }
  const CLI::App* sub = subs.front();
  const std::string name = sub->get_name();

  RunOutput result;
  try {
    if (name == "simulate") result = run_simulate(o);
    else if (name == "enumerate") result = run_enumerate(o);
    else if (name == "exact") result = run_exact(o);
    else if (name == "constants") result = run_constants(o);
    else if (name == "walk") result = run_walk(o);
    else if (name == "converge") result = run_converge(o);
    else if (name == "compactness") result = run_compactness(o);
    else if (name == "verify-geometry") result = run_verify_geometry(o);
    else if (name == "splitline") result = run_splitline(o);
    for (const auto& [path, text] : result.files) write_file(path, text);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  out << result.stdout_text;

  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto& values = opt->results();
    params[opt->get_name()] = values.size() == 1 ? json(values.front()) : json(values);
  }
  json outputs = json::object();
  for (const auto& [path, text] : result.files) outputs[path] = fnv1a64_hex(text);
  json manifest{{"tool", kToolName},
                {"version", kToolVersion},
                {"subcommand", name},
                {"args", replayable(args)},
                {"params", params},
                {"threads", o.threads},
                {"outputs", outputs},
                {"stdout_digest", fnv1a64_hex(result.stdout_text)}};
  if (const CLI::Option* s = sub->get_option_no_throw("--seed"); s && s->count() > 0) manifest["seed"] = o.seed;
  try {
    if (o.manifest_out.empty())
      err << "manifest: " << manifest.dump() << "\n";
    else
      write_file(o.manifest_out, manifest.dump(2) + "\n");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return result.exit_code;
}

}  // namespace gerrycircle
