#include "gerrycircle/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "gerrycircle/io.hpp"

namespace gerrycircle {

namespace {

constexpr double kWidth = 720, kHeight = 480, kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

}  // namespace

std::string line_chart_svg(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                           const std::string& y_label, bool log_x) {
  auto tx = [log_x](double x) { return log_x ? std::log10(x) : x; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  const double pad = 0.05 * std::max(y1 - y0, 1e-3);
  y0 -= pad;
  y1 += pad;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">" << escape(title) << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = y0 + (y1 - y0) * i / 5;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(y) + 4) << "\" text-anchor=\"end\">"
        << format_number(std::round(y * 1e4) / 1e4) << "</text>\n";
    const double xv = x0 + (x1 - x0) * i / 5;
    const double label = log_x ? std::pow(10.0, xv) : xv;
    svg << "<text x=\"" << fmt(kLeft + pw * i / 5) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << format_number(std::round(label * 100) / 100) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n"
      << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) svg << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    svg << "\"/>\n";
    const double ly = kTop + 14 + 20.0 * static_cast<double>(k);
    svg << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 36
        << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n"
        << "<text x=\"" << kWidth - kRight + 42 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string convergence_svg(const std::vector<ConvergenceRow>& rows) {
  Series d0{"Pr(D=0) empirical", "#2166ac", {}, {}}, d2{"Pr(D=2) empirical", "#b2182b", {}, {}};
  Series e2{"Pr(D=2) exact", "#ef8a62", {}, {}, true}, l0{"lim Pr(D=0)", "#67a9cf", {}, {}, true};
  for (const auto& r : rows) {
    for (auto* s : {&d0, &d2, &e2, &l0}) s->x.push_back(r.n);
    d0.y.push_back(r.freq_d0);
    d2.y.push_back(r.freq_d2);
    e2.y.push_back(r.exact_d2);
    l0.y.push_back(r.limit_d0);
  }
  return line_chart_svg({d0, d2, e2, l0}, "Optimal gerrymander on the voter circle (k = 2)", "n (voters per district)",
                        "probability", true);
}

std::string plan_svg(const DistrictingPlan& plan, const Polygon& state, const std::vector<WeightedPoint>& points) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Point& p : state.vertices()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  constexpr double size = 600, margin = 20;
  const double scale = (size - 2 * margin) / std::max(x1 - x0, y1 - y0);
  auto px = [&](double x) { return margin + (x - x0) * scale; };
  auto py = [&](double y) { return size - margin - (y - y0) * scale; };
  auto path_of = [&](const Polygon& poly) {
    std::ostringstream d;
    bool first = true;
    for (const Point& p : poly.vertices()) {
      d << (first ? "M" : "L") << fmt(px(p.x)) << ',' << fmt(py(p.y)) << ' ';
      first = false;
    }
    d << 'Z';
    return d.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::map<int, Polygon> node_regions;
  for (const auto& d : plan.districts) {
    const char* fill = d.pos > d.neg ? "#d6604d" : d.neg > d.pos ? "#4393c3" : "#bbbbbb";
    if (d.region) svg << "<path d=\"" << path_of(*d.region) << "\" fill=\"" << fill << "\" fill-opacity=\"0.55\"/>\n";
    std::optional<Polygon> region = state;
    for (std::size_t s = 0; s < d.path.size() && region; ++s) {
      node_regions.try_emplace(d.path[s].node, *region);
      const Point n = d.path[s].line.normal();
      const double off = d.path[s].line.offset;
      region = d.on_left[s] ? clip_halfplane(*region, n, off) : clip_halfplane(*region, -1.0 * n, -off);
    }
  }
  for (const auto& p : points)
    svg << "<circle cx=\"" << fmt(px(p.x)) << "\" cy=\"" << fmt(py(p.y)) << "\" r=\"1.2\" fill=\""
        << (p.pos > p.neg ? "#67001f" : "#053061") << "\"/>\n";
  for (const auto& rec : plan.lines) {
    auto it = node_regions.find(rec.node);
    if (it == node_regions.end()) continue;
    // Endpoints: where the line crosses the node region's boundary.
    const Point n = rec.line.normal();
    std::vector<Point> hits;
    const auto v = it->second.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point a = v[i], b = v[(i + 1) % v.size()];
      const double da = dot(n, a) - rec.line.offset, db = dot(n, b) - rec.line.offset;
      if ((da <= 0 && db > 0) || (da > 0 && db <= 0)) hits.push_back(a + (da / (da - db)) * (b - a));
    }
    if (hits.size() < 2) continue;
    const Point dir{-n.y, n.x};
    auto [lo, hi] = std::minmax_element(hits.begin(), hits.end(),
                                        [&](Point a, Point b) { return dot(dir, a) < dot(dir, b); });
    svg << "<line x1=\"" << fmt(px(lo->x)) << "\" y1=\"" << fmt(py(lo->y)) << "\" x2=\"" << fmt(px(hi->x))
        << "\" y2=\"" << fmt(py(hi->y)) << "\" stroke=\"black\" stroke-width=\"" << (rec.depth == 0 ? 3 : 2)
        << "\"/>\n";
  }
  svg << "<path d=\"" << path_of(state) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace gerrycircle
