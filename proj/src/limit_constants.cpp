#include "gerrycircle/limit_constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gerrycircle/common.hpp"

namespace gerrycircle {

namespace {

using std::numbers::pi;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684758586311649;
constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_pdf(double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }
double normal_upper_tail(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

bool in_band(double a, double b, double x) { return a <= 0.0 && 0.0 <= b && a < b && a <= x && x <= b; }

double image_series(double a, double b, double x, int K) {
  const double width = b - a;
  // Pair terms from the outside in so the small ones are added first.
  double sum = 0.0;
  for (int k = K; k >= 1; --k) {
    for (int sign : {1, -1}) {
      const double shift = 2.0 * sign * k * width;
      sum += normal_pdf(x - shift) - normal_pdf(x - 2.0 * b - shift);
    }
  }
  sum += normal_pdf(x) - normal_pdf(x - 2.0 * b);
  return sum;
}

// Transition density of Brownian motion from 0 to x at time 1 killed on
// leaving [a, b], expanded in the Dirichlet eigenfunctions of the band.
double sine_series(double a, double b, double x) {
  const double width = b - a;
  double sum = 0.0;
  for (int m = 1; m <= 64; ++m) {
    const double decay = std::exp(-0.5 * (m * pi / width) * (m * pi / width));
    if (decay == 0.0) break;
    sum += std::sin(m * pi * (-a) / width) * std::sin(m * pi * (x - a) / width) * decay;
  }
  return 2.0 / width * sum;
}

template <class F>
double integrate(F f, double lo, double hi, double tol, unsigned depth, double* error = nullptr) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, depth, tol, &err);
  if (error) *error = err;
  return value;
}

// Nested quadrature of exp(-q(a, b)) over a <= 0 <= b.
template <class Exponent>
double wedge_gaussian_integral(Exponent q, double tol) {
  auto inner = [&](double b) {
    return integrate([&](double a) { return std::exp(-q(a, b)); }, -kInf, 0.0, tol, 20);
  };
  return integrate(inner, 0.0, kInf, tol, 20);
}

}  // namespace

DensityValue trivariate_f(double a, double b, double x, int K) {
  require(K >= 1, "series truncation K must be at least 1");
  if (!in_band(a, b, x)) return {};
  const double width = b - a;
  const double reach = 2.0 * width * K;
  const double tail = 4.0 * (normal_pdf(reach) + normal_upper_tail(reach) / (2.0 * width));
  return {image_series(a, b, x, K), tail};
}

double trivariate_density(double a, double b, double x, int K) {
  if (!in_band(a, b, x)) return 0.0;
  const double width = b - a;
  if (width < 1.0) return sine_series(a, b, x);
  // Tail bound 4(phi(2wK) + Q(2wK)/(2w)) is below 1e-17 once 2wK >= 9.5.
  const int needed = static_cast<int>(std::ceil(4.75 / width));
  return image_series(a, b, x, std::max(K, needed));
}

double bounded_range_probability(double a, double b) {
  require(a <= 0.0 && 0.0 <= b, "bounds must satisfy a <= 0 <= b");
  if (a == b) return 0.0;
  return integrate([&](double x) { return trivariate_density(a, b, x); }, a, b, 1e-13, 20);
}

double cone_angle(long k) {
  // Rays u = (k-1, k), v = (k, k+1): cross(u, v) = -1 and dot(u, v) = 2k^2.
  const double kk = static_cast<double>(k);
  return std::atan2(1.0, 2.0 * kk * kk);
}

double I_term(long k) { return 0.5 * cone_angle(k); }

double I_term_quadrature(long k, double tol) {
  const double kk = static_cast<double>(k);
  return wedge_gaussian_integral(
      [kk](double a, double b) {
        const double u = a + b - 2.0 * kk * (b - a);
        const double v = a - b;
        return 0.5 * (u * u + v * v);
      },
      tol);
}

double J_term(long k) {
  const double kk = static_cast<double>(k);
  return 1.0 / (4.0 * kk * kk + 4.0 * kk + 2.0);
}

double J_term_quadrature(long k, double tol) {
  const double kk = static_cast<double>(k);
  return wedge_gaussian_integral(
      [kk](double a, double b) {
        const double u = a - b - 2.0 * kk * (b - a);
        const double v = a - b;
        return 0.5 * (u * u + v * v);
      },
      tol);
}

SeriesResult series_I(long K) {
  require(K >= 1, "K must be at least 1");
  double sum = 0.0;
  for (long k = K; k >= 1; --k) sum += I_term(k) + I_term(-k);
  sum += I_term(0);
  // The omitted cones fill the angles between (K, K+1) and (1, 1) and
  // between (-K-1, -K) and (-1, -1); each is atan(1 / (2K + 1)).
  const double tail = std::atan(1.0 / (2.0 * static_cast<double>(K) + 1.0));
  return {sum, K, tail};
}

SeriesResult series_J(long K) {
  require(K >= 1, "K must be at least 1");
  double sum = 0.0;
  for (long k = K; k >= 1; --k) sum += J_term(k) + J_term(-k);
  sum += J_term(0);
  // 4k^2 + 4k + 2 > 4k^2 for k > K and > 4|k|(|k| - 1) for k < -K; both
  // tails are at most 1/(4K).
  return {sum, K, 1.0 / (2.0 * static_cast<double>(K))};
}

std::vector<TermCheck> check_I_terms(long max_abs_k) {
  std::vector<TermCheck> out;
  for (long k = -max_abs_k; k <= max_abs_k; ++k) out.push_back({k, I_term(k), I_term_quadrature(k)});
  return out;
}

std::vector<TermCheck> check_J_terms(long max_abs_k) {
  std::vector<TermCheck> out;
  for (long k = -max_abs_k; k <= max_abs_k; ++k) out.push_back({k, J_term(k), J_term_quadrature(k)});
  return out;
}

double closed_form_limit() { return 1.0 / (1.0 + std::exp(pi)); }

double expected_district_share() { return 0.75 - 0.5 * closed_form_limit(); }

QuadratureResult limit_quadrature(const QuadratureOptions& options) {
  require(options.box > 0.0, "quadrature box must be positive");
  require(options.tol > 0.0, "quadrature tolerance must be positive");
  QuadratureResult result;
  double worst_inner = 0.0;
  auto integrand = [&](double a, double b) {
    ++result.nodes;
    return 2.0 * trivariate_density(a, b, a + b, options.K) * normal_pdf(a - b);
  };
  auto inner = [&](double b) {
    double err = 0.0;
    const double v = integrate([&](double a) { return integrand(a, b); }, -options.box, 0.0, options.tol,
                               options.max_depth, &err);
    worst_inner = std::max(worst_inner, err);
    return v;
  };
  double outer_err = 0.0;
  result.value = integrate(inner, 0.0, options.box, options.tol, options.max_depth, &outer_err);
  result.error_estimate = outer_err + worst_inner * options.box;
  return result;
}

LimitRoutes limit_d0(const LimitOptions& options) {
  LimitRoutes routes;
  routes.closed = closed_form_limit();
  routes.quadrature = limit_quadrature(options.quadrature);

  const SeriesResult si = series_I(options.series_K);
  const SeriesResult sj = series_J(options.series_K);
  routes.sum_I = si.value;
  routes.sum_J = sj.value;
  const double difference = si.value - sj.value;
  routes.prefactor_measured = routes.quadrature.value / difference;

  double best_gap = kInf;
  for (double candidate : {1.0 / (2.0 * pi), 1.0 / pi}) {
    const double gap = std::abs(candidate * difference - routes.quadrature.value);
    if (gap < best_gap) {
      best_gap = gap;
      routes.prefactor = candidate;
    }
  }
  if (best_gap > 1e-4)
    throw NumericalError("series route disagrees with the quadrature for every candidate prefactor");

  routes.series = routes.prefactor * difference;
  routes.series_error_bound = routes.prefactor * (si.tail_bound + sj.tail_bound);
  routes.max_pairwise_difference =
      std::max({std::abs(routes.closed - routes.series), std::abs(routes.closed - routes.quadrature.value),
                std::abs(routes.series - routes.quadrature.value)});
  return routes;
}

}  // namespace gerrycircle
