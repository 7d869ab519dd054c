#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bvq/signal.hpp"

namespace bvq {

// ---------------------------------------------------------------------------
// One-sided variations of y -> osc(f, (x, y))

/// Which endpoint of (x, y) moves.
enum class Side { Right, Left };

/// Right side: d/dy osc(f,(x,y)) expressed through osc, the mean m and the level balance R:
///   -osc/(y-x) + |f(y)-m|/(y-x) + R (f(y)-m)/(y-x)^2.
/// Left side: the same with f(x) in place of f(y), which equals -d/dx osc(f,(x,y)).
/// Throws FlatAtMean when f equals m on a set of positive measure in (x, y).
double osc_derivative_rhs(const Signal& f, double x, double y, Side side = Side::Right);

struct LemmaProbe {
  double x = 0.0;
  double y = 0.0;
  double lhs = 0.0;            // |f'| / 4 at the moving endpoint
  double rhs = 0.0;            // osc_derivative_rhs
  double fd_derivative = 0.0;  // central difference of osc in the moving endpoint
  double fd_residual = 0.0;    // |fd_derivative - rhs|
  double identity_residual = 0.0;  // |lhs - rhs|
};

struct LemmaResidualReport {
  double fd_step = 0.0;
  Side side = Side::Right;
  std::vector<LemmaProbe> probes;
  double max_fd_residual = 0.0;
  double max_identity_residual = 0.0;
};

LemmaResidualReport lemma_residual(const Signal& f, std::span<const std::pair<double, double>> probes,
                                   double fd_step, Side side = Side::Right);

/// n x n probe pairs x < y drawn from a uniform grid on [lo, hi].
std::vector<std::pair<double, double>> probe_grid(Interval range, int n);

// ---------------------------------------------------------------------------
// Taylor expansion at a point

struct TaylorCoeffs {
  double center = 0.0;
  std::array<double, 4> a{};  // a[j-1] = f^(j)(center) / j!
  Interval window;
  double residual = 0.0;  // rms of the fit; 0 for closed-form coefficients
  double condition = 1.0;
};

/// Degree-4 least-squares fit of f(center + t) - f(center) on a dense grid over
/// [center - halfwidth, center + halfwidth]. Throws IllConditioned above 1e12.
TaylorCoeffs fit_taylor(const Signal& f, double center, double halfwidth);

/// Closed-form coefficients from the analytic derivatives.
TaylorCoeffs taylor_coeffs(const AnalyticSignal& f, double center);

/// 9 A3 A1 - 2 A2^2; vanishes exactly when 3 f' f''' = (f'')^2 at the center.
double rigidity_defect(const TaylorCoeffs& coeffs);

struct TaylorStep {
  double eps = 0.0;
  double rho = 0.0;  // offset of the mean crossing from the center
  double rho_predicted = 0.0;
  double oscillation = 0.0;
  double oscillation_predicted = 0.0;
  double quarter_tv = 0.0;
  double quarter_tv_predicted = 0.0;
};

struct TaylorExpansionReport {
  TaylorCoeffs coeffs;
  std::vector<TaylorStep> steps;  // in the order of the eps list
  // log-log slopes of the prediction errors; absent when errors vanish
  std::optional<double> rho_error_order;
  std::optional<double> oscillation_error_order;
  std::optional<double> quarter_tv_error_order;
  // extrapolations to eps -> 0 in powers of eps^2
  double rho_ratio_limit = 0.0;  // rho / eps^2, predicted A2 / (3 A1)
  double cubic_coefficient = 0.0;  // (osc - A1 eps / 2) / eps^3, predicted A3/4 + A2^2/(18 A1)
  double cubic_coefficient_predicted = 0.0;
};

/// Expansions of rho, osc and |Df|/4 on (x0 - eps, x0 + eps). Coefficients are
/// closed-form for analytic signals and fitted otherwise. Throws NotMonotone
/// when f' changes sign on the largest window.
TaylorExpansionReport taylor_expansion_check(const Signal& f, double x0, std::span<const double> eps);

/// Value at zero of the polynomial in eps^2 through (eps_i^2, values_i).
double extrapolate_to_zero(std::span<const double> eps, std::span<const double> values);

// ---------------------------------------------------------------------------
// The ODE 3 g g'' = (g')^2 and the power-law family

/// max |3 g g'' - (g')^2| over `probes` evenly spaced points of I (endpoints included).
double ode_residual_max(const AnalyticSignal& g, Interval I, int probes);

/// ode_residual_max for g(x) = A (x - B)^(3/2). Throws BadBranch when B lies inside I.
double ode_family_check(double A, double B, Interval I, int probes);

/// osc / |Df| of x^s on (0, b): 2 s / (1 + s)^(2 + 1/s). Throws BadExponent for s <= 0.
double power_quotient(double s);

/// |Df|/4 - osc for f(z) = z^s on (a, b), via the mean-crossing point.
double phi(double s, double a, double b);

/// Mean-crossing point of z^s on (a, b): (mean)^(1/s).
double power_crossing(double s, double a, double b);

/// (2 + 1/s) ln(1 + s) - ln(8 s); zero iff power_quotient(s) == 1/4.
double exponent_function(double s);

/// Sign-change roots of exponent_function on [lo, hi] (10^4-point scan, then bisection to tol).
std::vector<double> exponent_equation_solve(double lo, double hi, double tol);

}  // namespace bvq
