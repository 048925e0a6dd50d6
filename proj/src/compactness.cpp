#include "gerrycircle/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gerrycircle/common.hpp"
#include "gerrycircle/rng.hpp"

namespace gerrycircle {

using std::numbers::pi;

double dot(Point p, Point q) { return p.x * q.x + p.y * q.y; }
double cross(Point p, Point q) { return p.x * q.y - p.y * q.x; }
double norm(Point p) { return std::hypot(p.x, p.y); }

namespace {

// Shoelace about the first vertex; about the origin it loses digits for
// small polygons far from (0, 0).
double signed_area(std::span<const Point> v) {
  if (v.empty()) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) twice += cross(v[i] - v[0], v[i + 1] - v[0]);
  return 0.5 * twice;
}

int orientation(Point a, Point b, Point c) {
  const double value = cross(b - a, c - a);
  const double scale = std::max({norm(b - a), norm(c - a), 1e-300});
  if (std::abs(value) <= 1e-14 * scale * scale) return 0;
  return value > 0 ? 1 : -1;
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + t * ab));
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  require(vertices_.size() >= 3, "polygon needs at least three vertices");
  for (const Point& p : vertices_)
    require(std::isfinite(p.x) && std::isfinite(p.y), "polygon vertices must be finite");
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    require(!(vertices_[i] == vertices_[(i + 1) % vertices_.size()]),
            "polygon has a repeated vertex at index " + std::to_string(i));
  const double area = signed_area(vertices_);
  require(area != 0.0 && std::isfinite(area), "polygon has zero area");
  if (area < 0) std::reverse(vertices_.begin(), vertices_.end());
}

double Polygon::area() const { return signed_area(vertices_); }

double Polygon::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) total += norm(vertices_[(i + 1) % size()] - vertices_[i]);
  return total;
}

Point Polygon::centroid() const {
  // Relative to the first vertex to limit cancellation.
  const Point origin = vertices_[0];
  double cx = 0.0, cy = 0.0, twice_area = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const Point p = vertices_[i] - origin;
    const Point q = vertices_[(i + 1) % size()] - origin;
    const double c = cross(p, q);
    twice_area += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  return {origin.x + cx / (3.0 * twice_area), origin.y + cy / (3.0 * twice_area)};
}

double Polygon::second_moment_about(Point q) const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const Point p0 = vertices_[i] - q;
    const Point p1 = vertices_[(i + 1) % size()] - q;
    const double c = cross(p0, p1);
    total += c * (p0.x * p0.x + p0.x * p1.x + p1.x * p1.x + p0.y * p0.y + p0.y * p1.y + p1.y * p1.y);
  }
  return total / 12.0;
}

double Polygon::inertia() const { return second_moment_about(centroid()); }

bool Polygon::is_convex() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (orientation(vertices_[i], vertices_[(i + 1) % size()], vertices_[(i + 2) % size()]) < 0) return false;
  }
  return true;
}

bool Polygon::is_simple() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a0 = vertices_[i];
    const Point a1 = vertices_[(i + 1) % n];
    // Adjacent edge folding back onto this one.
    const Point a2 = vertices_[(i + 2) % n];
    if (orientation(a0, a1, a2) == 0 && dot(a1 - a0, a2 - a1) < 0) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a0, a1, vertices_[j], vertices_[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool Polygon::contains(Point p, double slack) const {
  bool inside = false;
  const std::size_t n = size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = vertices_[i];
    const Point b = vertices_[j];
    if (point_segment_distance(p, a, b) <= slack) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

std::vector<Point> convex_hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

namespace {

Circle circle_from(Point a, Point b) { return {0.5 * (a + b), 0.5 * norm(a - b)}; }

Circle circle_from(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (std::abs(d) < 1e-300) {
    // Collinear: the widest pair spans the others.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + offset, norm(offset)};
}

bool covers(const Circle& c, Point p) { return norm(p - c.center) <= c.radius * (1.0 + 1e-12) + 1e-15; }

}  // namespace

Circle smallest_enclosing_circle(std::span<const Point> input) {
  require(!input.empty(), "enclosing circle of an empty point set");
  std::vector<Point> pts(input.begin(), input.end());
  Xoshiro256 rng(0x5EC0DEULL);
  for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng() % i]);

  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (covers(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!covers(c, pts[k])) c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

std::vector<Point> support_points(std::span<const Point> points, const Circle& circle, double slack) {
  std::vector<Point> out;
  for (const Point& p : points)
    if (std::abs(norm(p - circle.center) - circle.radius) <= slack) out.push_back(p);
  return out;
}

CompactnessReport compactness_report(const Polygon& polygon) {
  require(polygon.is_simple(), "polygon is not simple");
  CompactnessReport r;
  r.area = polygon.area();
  r.perimeter = polygon.perimeter();
  r.polsby_popper = 4.0 * pi * r.area / (r.perimeter * r.perimeter);
  const std::vector<Point> hull = convex_hull(polygon.vertices());
  r.hull_ratio = r.area / signed_area(hull);
  r.enclosing_circle = smallest_enclosing_circle(hull);
  r.reock = r.area / (pi * r.enclosing_circle.radius * r.enclosing_circle.radius);
  r.centroid = polygon.centroid();
  r.inertia = polygon.second_moment_about(r.centroid);
  return r;
}

Polygon regular_polygon(int sides, double radius, Point center, double phase) {
  require(sides >= 3, "a regular polygon needs at least three sides");
  require(radius > 0.0, "radius must be positive");
  std::vector<Point> v;
  v.reserve(static_cast<std::size_t>(sides));
  for (int j = 0; j < sides; ++j) {
    const double t = phase + 2.0 * pi * j / sides;
    v.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
  }
  return Polygon(std::move(v));
}

std::optional<Polygon> clip_halfplane(const Polygon& polygon, Point normal, double offset) {
  const auto v = polygon.vertices();
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point p = v[i];
    const Point q = v[(i + 1) % v.size()];
    const double dp = dot(normal, p) - offset;
    const double dq = dot(normal, q) - offset;
    if (dp <= 0) out.push_back(p);
    if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) {
      const double t = dp / (dp - dq);
      out.push_back(p + t * (q - p));
    }
  }
  std::vector<Point> cleaned;
  for (const Point& p : out)
    if (cleaned.empty() || norm(p - cleaned.back()) > 1e-15) cleaned.push_back(p);
  while (cleaned.size() > 1 && norm(cleaned.front() - cleaned.back()) <= 1e-15) cleaned.pop_back();
  if (cleaned.size() < 3) return std::nullopt;
  if (signed_area(cleaned) <= 1e-14 * std::abs(polygon.area())) return std::nullopt;
  return Polygon(std::move(cleaned));
}

double chord_objective(double theta) {
  require(theta > 0.0 && theta < pi, "theta must lie in (0, pi)");
  return std::max(2.0 * theta, 2.0 * pi - 2.0 * theta) + 2.0 * std::sin(theta);
}

double split_mass(double z) {
  require(z >= -1.0 && z <= 1.0, "z must lie in [-1, 1]");
  return z * std::sqrt(1.0 - z * z) + std::asin(z) + 0.5 * pi;
}

double split_centroid(double z) {
  require(z > -1.0 && z <= 1.0, "z must lie in (-1, 1]");
  return -(2.0 / 3.0) * std::pow(1.0 - z * z, 1.5) / split_mass(z);
}

double split_inertia(double z) {
  require(z > -1.0 && z <= 1.0, "z must lie in (-1, 1]");
  const double xbar = split_centroid(z);
  auto column = [xbar](double x) {
    const double h = std::sqrt(std::max(0.0, 1.0 - x * x));
    if (h == 0.0) return 0.0;
    const double dx = x - xbar;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [dx](double y) { return y * y + dx * dx; }, -h, h, 0, 1e-14);
  };
  boost::math::quadrature::tanh_sinh<double> outer;
  return outer.integrate(column, -1.0, z, 1e-14);
}

namespace {

// Antiderivatives of x^2 sqrt(1-x^2) and (1-x^2)^(3/2).
double moment_x2(double x) {
  const double h = std::sqrt(std::max(0.0, 1.0 - x * x));
  return (x * (2.0 * x * x - 1.0) * h + std::asin(x)) / 8.0;
}

double moment_h3(double x) {
  const double h = std::sqrt(std::max(0.0, 1.0 - x * x));
  return (x * (5.0 - 2.0 * x * x) * h + 3.0 * std::asin(x)) / 8.0;
}

}  // namespace

double split_inertia_closed(double z) {
  require(z > -1.0 && z <= 1.0, "z must lie in (-1, 1]");
  // Polar moment about the origin minus the parallel-axis correction.
  const double polar =
      2.0 * (moment_x2(z) - moment_x2(-1.0)) + (2.0 / 3.0) * (moment_h3(z) - moment_h3(-1.0));
  const double xbar = split_centroid(z);
  return polar - xbar * xbar * split_mass(z);
}

double split_inertia_sum_derivative(double z) {
  require(z > -1.0 && z < 1.0, "z must lie in (-1, 1)");
  const double xp = split_centroid(z);
  const double xm = split_centroid(-z);
  return 2.0 * std::sqrt(1.0 - z * z) * (xp + xm) * (xp - xm - 2.0 * z);
}

bool InertiaLemmaReport::ok() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const InertiaLemmaRow& r) { return r.ok(); });
}

InertiaLemmaReport verify_inertia_lemma(std::span<const double> grid) {
  constexpr double h = 1e-4;
  InertiaLemmaReport report;
  report.inertia_at_zero = split_inertia(0.0);
  auto sum_closed = [](double z) { return split_inertia_closed(z) + split_inertia_closed(-z); };
  auto shifted_centroid = [](double z) { return split_centroid(z) - z; };
  for (double z : grid) {
    require(z > -1.0 + h && z < 1.0 - h, "grid points must lie inside (-1, 1)");
    InertiaLemmaRow row;
    row.z = z;
    const double iz = split_inertia(z);
    const double imz = split_inertia(-z);
    row.inertia_sum = iz + imz;
    row.inertia_sum_closed = sum_closed(z);
    row.derivative = split_inertia_sum_derivative(z);
    row.finite_difference = (sum_closed(z + h) - sum_closed(z - h)) / (2.0 * h);
    row.centroid_slope = (shifted_centroid(z + h) - shifted_centroid(z - h)) / (2.0 * h);

    const double xbar = split_centroid(z);
    row.lower_bound_ok = row.inertia_sum >= 2.0 * report.inertia_at_zero - 1e-10;
    row.derivative_ok =
        std::abs(row.derivative - row.finite_difference) <= std::max(1e-6, 1e-4 * std::abs(row.derivative));
    row.bracket_ok = xbar - 0.5 * z >= -0.5 - 1e-12 && xbar - 0.5 * z <= 0.5 + 1e-12 &&
                     xbar >= 0.5 * (z - 1.0) - 1e-12;
    row.slope_ok = row.centroid_slope <= -0.25 + 1e-3;
    row.quadrature_ok = std::abs(iz - split_inertia_closed(z)) <= 1e-9 &&
                        std::abs(imz - split_inertia_closed(-z)) <= 1e-9;
    report.rows.push_back(row);
  }
  return report;
}

CenterOfMassReport center_of_mass_dominance(const std::function<double(double)>& density, double a,
                                            double b, int samples) {
  require(b > a, "interval must have positive length");
  require(samples >= 2, "need at least two samples");
  if (samples % 2) ++samples;
  const int half = samples / 2;
  const double mid = 0.5 * (a + b);
  const double step = (b - a) / samples;

  // Mirrored abscissae are generated from the midpoint so pairs are exact.
  std::vector<double> xs(static_cast<std::size_t>(samples) + 1);
  std::vector<double> rho(xs.size());
  double peak = 0.0;
  for (int j = -half; j <= half; ++j) {
    const auto idx = static_cast<std::size_t>(j + half);
    xs[idx] = j == -half ? a : j == half ? b : mid + j * step;
    rho[idx] = density(xs[idx]);
    require(rho[idx] >= 0.0 && std::isfinite(rho[idx]), "density must be finite and nonnegative");
    peak = std::max(peak, rho[idx]);
  }

  const double slack = 1e-12 * peak;
  bool upper = true, lower = true;
  for (int j = 1; j <= half; ++j) {
    const double up = rho[static_cast<std::size_t>(half + j)];
    const double down = rho[static_cast<std::size_t>(half - j)];
    if (up < down - slack) upper = false;
    if (up > down + slack) lower = false;
  }

  double mass = 0.0, first = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double w = (i == 0 || i + 1 == xs.size()) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    mass += w * rho[i];
    first += w * xs[i] * rho[i];
  }
  mass *= step / 3.0;
  first *= step / 3.0;
  require(mass > 0.0, "density has zero total mass");

  CenterOfMassReport report;
  report.mass = mass;
  report.centroid = first / mass;
  report.midpoint = mid;
  const double eps = 1e-9 * (b - a);
  if (upper && lower) {
    report.hypothesis = DominanceHypothesis::kSymmetric;
    report.holds = std::abs(report.centroid - mid) <= eps;
  } else if (upper) {
    report.hypothesis = DominanceHypothesis::kUpperHeavy;
    report.holds = report.centroid >= mid - eps;
  } else if (lower) {
    report.hypothesis = DominanceHypothesis::kLowerHeavy;
    report.holds = report.centroid <= mid + eps;
  }
  return report;
}

namespace {

struct DiskSplit {
  Polygon left;
  Polygon right;
};

DiskSplit split_disk(const Polygon& disk, double z) {
  auto left = clip_halfplane(disk, {1.0, 0.0}, z);
  auto right = clip_halfplane(disk, {-1.0, 0.0}, -z);
  if (!left || !right) throw NumericalError("disk split left an empty side");
  return {*left, *right};
}

GeometryCheck check(std::string name, double value, double expected, double tolerance) {
  return {std::move(name), value, expected, tolerance, std::abs(value - expected) <= tolerance};
}

}  // namespace

std::vector<GeometryCheck> run_geometry_verification(int sides) {
  require(sides >= 8 && sides % 4 == 0, "disk resolution must be a multiple of 4, at least 8");
  std::vector<GeometryCheck> out;
  const double mesh = 10.0 / sides;
  // Phase pi/2 puts vertices at (0, +-1) so the line x = 0 cuts through them.
  const Polygon disk = regular_polygon(sides, 1.0, {}, 0.5 * pi);

  const CompactnessReport full = compactness_report(disk);
  out.push_back(check("disk Polsby-Popper -> 1", full.polsby_popper, 1.0, 1e-5));
  out.push_back(check("disk moment of inertia -> pi/2", full.inertia, 0.5 * pi, 1e-3));

  const DiskSplit halves = split_disk(disk, 0.0);
  const CompactnessReport a = compactness_report(halves.left);
  const CompactnessReport b = compactness_report(halves.right);
  out.push_back(check("half-disk max perimeter -> pi + 2", std::max(a.perimeter, b.perimeter), pi + 2.0, 1e-3));
  out.push_back(check("half-disk I_A + I_B -> pi/2 - 16/(9 pi)", a.inertia + b.inertia,
                      0.5 * pi - 16.0 / (9.0 * pi), 1e-3));
  out.push_back(check("half-disk min hull ratio = 1", std::min(a.hull_ratio, b.hull_ratio), 1.0, 1e-12));
  out.push_back(check("split_inertia(0) * 2 = pi/2 - 16/(9 pi)", 2.0 * split_inertia(0.0),
                      0.5 * pi - 16.0 / (9.0 * pi), 1e-10));

  // Chord objective on a 1e-4 grid over (0, pi).
  double best_theta = 0.0, best_value = std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::ceil(pi / 1e-4));
  for (int i = 1; i < steps; ++i) {
    const double theta = pi * i / steps;
    const double value = chord_objective(theta);
    if (value < best_value) {
      best_value = value;
      best_theta = theta;
    }
  }
  out.push_back(check("chord objective argmin = pi/2", best_theta, 0.5 * pi, 1e-4));
  out.push_back(check("chord objective min = pi + 2", best_value, pi + 2.0, 1e-7));

  // Line-split family: the larger perimeter is smallest at z = 0.
  double worst_gap = std::numeric_limits<double>::infinity();
  double argmin_z = 0.0, min_perimeter = std::numeric_limits<double>::infinity();
  for (int i = -19; i <= 19; ++i) {
    const double z = 0.05 * i;
    const DiskSplit s = split_disk(disk, z);
    const double p = std::max(s.left.perimeter(), s.right.perimeter());
    worst_gap = std::min(worst_gap, p - (pi + 2.0));
    if (p < min_perimeter - 1e-12) {
      min_perimeter = p;
      argmin_z = z;
    }
  }
  out.push_back({"line splits: max perimeter >= pi + 2 - mesh", worst_gap, -mesh, 0.0, worst_gap >= -mesh});
  out.push_back(check("line splits: max perimeter minimized at z = 0", argmin_z, 0.0, 1e-12));

  std::vector<double> grid;
  for (int i = 0; i < 99; ++i) grid.push_back(-0.98 + 0.02 * i);
  const InertiaLemmaReport lemma = verify_inertia_lemma(grid);
  const auto failures = std::count_if(lemma.rows.begin(), lemma.rows.end(),
                                      [](const InertiaLemmaRow& r) { return !r.ok(); });
  out.push_back(check("inertia lemma failures on 99-point grid", static_cast<double>(failures), 0.0, 0.0));

  const CenterOfMassReport com = center_of_mass_dominance(
      [](double x) { return x <= 0.5 ? 2.0 * std::sqrt(std::max(0.0, 1.0 - x * x)) : 0.0; }, -1.0, 1.0);
  out.push_back({"truncated disk density: centroid <= midpoint", com.centroid, com.midpoint, 0.0,
                 com.hypothesis == DominanceHypothesis::kLowerHeavy && com.holds});
  return out;
}

}  // namespace gerrycircle
