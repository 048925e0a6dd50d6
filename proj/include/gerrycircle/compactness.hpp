#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gerrycircle {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
  friend Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point, Point) = default;
};

double dot(Point p, Point q);
double cross(Point p, Point q);
double norm(Point p);

/// Closed ring of vertices stored counterclockwise (clockwise input is
/// reversed). The closing edge is implicit.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  std::span<const Point> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  double area() const;
  double perimeter() const;
  Point centroid() const;
  /// Second moment of the region about q: integral of |x - q|^2 over the region.
  double second_moment_about(Point q) const;
  /// Moment of inertia about the centroid.
  double inertia() const;
  bool is_convex() const;
  /// No two non-adjacent edges meet and adjacent edges share only their vertex.
  bool is_simple() const;
  bool contains(Point p, double slack = 0.0) const;

 private:
  std::vector<Point> vertices_;
};

struct Circle {
  Point center;
  double radius = 0.0;
};

std::vector<Point> convex_hull(std::span<const Point> points);

/// Welzl's randomized incremental algorithm with a fixed shuffle seed.
Circle smallest_enclosing_circle(std::span<const Point> points);

/// Points of `points` lying on the circle boundary (within `slack`); at most
/// three of them determine the circle.
std::vector<Point> support_points(std::span<const Point> points, const Circle& circle,
                                  double slack = 1e-9);

struct CompactnessReport {
  double area = 0.0;
  double perimeter = 0.0;
  double polsby_popper = 0.0;  // 4 pi A / P^2
  double hull_ratio = 0.0;     // A / area(hull)
  double reock = 0.0;          // A / area(smallest enclosing disk)
  Point centroid;
  double inertia = 0.0;        // about the centroid
  Circle enclosing_circle;
};

/// Throws ValidationError for non-simple polygons.
CompactnessReport compactness_report(const Polygon& polygon);

/// Regular polygon inscribed in a circle, first vertex at angle `phase`.
Polygon regular_polygon(int sides, double radius = 1.0, Point center = {}, double phase = 0.0);

/// Part of `polygon` with dot(normal, p) <= offset; empty when the cut
/// leaves less than a sliver.
std::optional<Polygon> clip_halfplane(const Polygon& polygon, Point normal, double offset);

// Unit-disk chord splits.

/// max{2 theta, 2 pi - 2 theta} + 2 sin theta: lower bound on the larger
/// perimeter when the shared boundary joins two points at angles +-theta.
double chord_objective(double theta);

/// Area of {x <= z} within the unit disk.
double split_mass(double z);
/// Mean x over {x <= z} within the unit disk; z in (-1, 1].
double split_centroid(double z);
/// Moment of inertia of {x <= z} about its centroid, by nested quadrature.
double split_inertia(double z);
/// Same quantity from the antiderivative of the polar moment.
double split_inertia_closed(double z);
/// Analytic derivative of I(z) + I(-z):
///   2 sqrt(1-z^2) (xbar(z) + xbar(-z)) (xbar(z) - xbar(-z) - 2z).
double split_inertia_sum_derivative(double z);

struct InertiaLemmaRow {
  double z = 0.0;
  double inertia_sum = 0.0;          // I(z) + I(-z), quadrature
  double inertia_sum_closed = 0.0;   // I(z) + I(-z), closed form
  double derivative = 0.0;           // analytic
  double finite_difference = 0.0;    // centered, h = 1e-4, closed form
  double centroid_slope = 0.0;       // finite difference of xbar(z) - z
  bool lower_bound_ok = false;       // I(z)+I(-z) >= 2 I(0) - 1e-10
  bool derivative_ok = false;        // |analytic - fd| <= max(1e-6, 1e-4 |analytic|)
  bool bracket_ok = false;           // -1/2 <= xbar - z/2 <= 1/2 and xbar >= (z-1)/2
  bool slope_ok = false;             // centroid_slope <= -1/4 + 1e-3
  bool quadrature_ok = false;        // quadrature vs closed within 1e-9
  bool ok() const noexcept {
    return lower_bound_ok && derivative_ok && bracket_ok && slope_ok && quadrature_ok;
  }
};

struct InertiaLemmaReport {
  double inertia_at_zero = 0.0;
  std::vector<InertiaLemmaRow> rows;
  bool ok() const noexcept;
};

InertiaLemmaReport verify_inertia_lemma(std::span<const double> grid);

enum class DominanceHypothesis { kUpperHeavy, kLowerHeavy, kSymmetric, kNeither };

struct CenterOfMassReport {
  DominanceHypothesis hypothesis = DominanceHypothesis::kNeither;
  double mass = 0.0;
  double centroid = 0.0;
  double midpoint = 0.0;
  /// Centroid lies on the side of the midpoint the hypothesis predicts
  /// (within 1e-9 scaled by the interval length).
  bool holds = false;
};

/// Tabulates rho at `samples` + 1 points symmetric about the midpoint of
/// [a, b], classifies which mirrored-dominance hypothesis holds, and checks
/// the predicted centroid inequality with composite Simpson quadrature.
CenterOfMassReport center_of_mass_dominance(const std::function<double(double)>& density, double a,
                                            double b, int samples = 4000);

struct GeometryCheck {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// The disk-partition checks behind the `verify-geometry` command.
std::vector<GeometryCheck> run_geometry_verification(int sides = 4096);

}  // namespace gerrycircle
