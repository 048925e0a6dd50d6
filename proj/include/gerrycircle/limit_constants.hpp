#pragma once

#include <cstdint>
#include <vector>

namespace gerrycircle {

struct SeriesResult {
  double value = 0.0;        // partial sum over |k| <= truncation_K
  long truncation_K = 0;
  double tail_bound = 0.0;   // rigorous upper bound on the omitted terms
};

struct DensityValue {
  double value = 0.0;
  double tail_bound = 0.0;   // bound on the omitted |k| > K image terms
};

/// Joint density of (min, max, endpoint) of standard Brownian motion on
/// [0, 1] at (a, b, x), evaluated from the image series truncated to
/// |k| <= K. Zero outside a <= 0 <= b, on the degenerate wedge a == b,
/// and for x outside [a, b].
DensityValue trivariate_f(double a, double b, double x, int K = 50);

/// Same density with the representation chosen for accuracy: the image
/// series for wide bands, the eigenfunction (sine) series for narrow ones.
double trivariate_density(double a, double b, double x, int K = 50);

/// Pr(a <= min W <= max W <= b) over t in [0, 1], by integrating the density over x.
double bounded_range_probability(double a, double b);

// Two-sided series for the limit of Pr(D_n = 0).

/// Angle between the rays through (k-1, k) and (k, k+1).
double cone_angle(long k);
/// I_k in closed form: cone_angle(k) / 2.
double I_term(long k);
/// I_k by nested adaptive quadrature of its defining double integral.
double I_term_quadrature(long k, double tol = 1e-13);
/// J_k in closed form: 1 / (4k^2 + 4k + 2).
double J_term(long k);
double J_term_quadrature(long k, double tol = 1e-13);

SeriesResult series_I(long K = 50);
SeriesResult series_J(long K = 1'000'000);

struct TermCheck {
  long k;
  double closed;
  double quadrature;
};
std::vector<TermCheck> check_I_terms(long max_abs_k);
std::vector<TermCheck> check_J_terms(long max_abs_k);

/// 1 / (1 + e^pi).
double closed_form_limit();
/// 3/4 - 1 / (2 (1 + e^pi)): limiting expected share of the two districts.
double expected_district_share();

struct QuadratureOptions {
  double box = 8.0;       // integrate a in [-box, 0], b in [0, box]
  double tol = 1e-11;     // relative tolerance of each nested Gauss-Kronrod pass
  unsigned max_depth = 15;
  int K = 50;             // image-series truncation for wide bands
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::uint64_t nodes = 0;  // density evaluations
};

/// Direct route: the double integral of f(a, b, a + b) * phi(a - b) * 2 over
/// a <= 0 <= b, phi the standard normal density.
QuadratureResult limit_quadrature(const QuadratureOptions& options = {});

struct LimitRoutes {
  double closed = 0.0;
  // Series route: prefactor * (sum I_k - sum J_k).
  double series = 0.0;
  double series_error_bound = 0.0;
  double sum_I = 0.0;
  double sum_J = 0.0;
  double prefactor = 0.0;           // the candidate constant selected by the quadrature
  double prefactor_measured = 0.0;  // quadrature / (sum I - sum J)
  QuadratureResult quadrature;
  double max_pairwise_difference = 0.0;

  bool agree(double tolerance) const noexcept { return max_pairwise_difference <= tolerance; }
};

struct LimitOptions {
  long series_K = 1'000'000;
  QuadratureOptions quadrature;
};

/// Evaluates all three routes and resolves the series prefactor from the
/// candidates 1/(2 pi) and 1/pi by agreement with the quadrature.
/// Throws NumericalError when neither candidate agrees to 1e-4.
LimitRoutes limit_d0(const LimitOptions& options = {});

}  // namespace gerrycircle
