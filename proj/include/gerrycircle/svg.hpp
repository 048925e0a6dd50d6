#pragma once

#include <string>
#include <vector>

#include "gerrycircle/compactness.hpp"
#include "gerrycircle/monte_carlo.hpp"
#include "gerrycircle/splitline.hpp"

namespace gerrycircle {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Line chart; x plotted on a log10 axis when `log_x` is set.
std::string line_chart_svg(const std::vector<Series>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label, bool log_x);

/// Empirical D frequencies against n with the exact Pr(D=2) and the limit
/// of Pr(D=0) as reference lines.
std::string convergence_svg(const std::vector<ConvergenceRow>& rows);

/// Districts filled by majority party (red positive, blue negative, grey
/// tied), split-lines drawn over the state outline, points as dots.
std::string plan_svg(const DistrictingPlan& plan, const Polygon& state,
                     const std::vector<WeightedPoint>& points);

}  // namespace gerrycircle
