#include "bvq/rigidity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "bvq/interval_calculus.hpp"

namespace bvq {
namespace {

Interval inside(const Signal& f, Interval I) {
  if (!(I.lo < I.hi)) throw Error(ErrorKind::EmptyInterval, "need x < y");
  if (!f.domain().contains(I, 1e-12 * f.domain().length()))
    throw Error(ErrorKind::OutOfDomain, "interval leaves the signal domain");
  return I;
}

template <class G>
double bisect_root(G&& g, double lo, double hi) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  if (g(hi) == 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> loglog_slope(std::span<const double> eps, std::span<const double> err, double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(std::abs(err[i]) > floor)) continue;
    const double lx = std::log(eps[i]), ly = std::log(std::abs(err[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

void check_exponent(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::BadExponent, "exponent must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------

double osc_derivative_rhs(const Signal& f, double x, double y, Side side) {
  const Interval I = inside(f, {x, y});
  const LevelSplit split = level_split(f, I);
  if (split.at > 0.0)
    throw Error(ErrorKind::FlatAtMean, "f equals its mean on a set of measure " + std::to_string(split.at));
  const double len = I.length();
  const double osc = (split.upper_tail + split.lower_tail) / len;
  const double r = split.below - split.above;
  const double excess = f(side == Side::Right ? y : x) - split.mean;
  return -osc / len + std::abs(excess) / len + r * excess / (len * len);
}

LemmaResidualReport lemma_residual(const Signal& f, std::span<const std::pair<double, double>> probes,
                                   double fd_step, Side side) {
  if (!(fd_step > 0.0)) throw Error(ErrorKind::BadResolution, "fd_step must be positive");
  LemmaResidualReport report;
  report.fd_step = fd_step;
  report.side = side;
  report.probes.reserve(probes.size());
  const double h = fd_step;
  for (const auto& [x, y] : probes) {
    LemmaProbe p;
    p.x = x;
    p.y = y;
    p.rhs = osc_derivative_rhs(f, x, y, side);
    if (side == Side::Right) {
      p.fd_derivative = (interval_oscillation(f, {x, y + h}) - interval_oscillation(f, {x, y - h})) / (2.0 * h);
      p.lhs = 0.25 * std::abs(f.derivative(y, 1));
    } else {
      p.fd_derivative = -(interval_oscillation(f, {x + h, y}) - interval_oscillation(f, {x - h, y})) / (2.0 * h);
      p.lhs = 0.25 * std::abs(f.derivative(x, 1));
    }
    p.fd_residual = std::abs(p.fd_derivative - p.rhs);
    p.identity_residual = std::abs(p.lhs - p.rhs);
    report.max_fd_residual = std::max(report.max_fd_residual, p.fd_residual);
    report.max_identity_residual = std::max(report.max_identity_residual, p.identity_residual);
    report.probes.push_back(p);
  }
  return report;
}

std::vector<std::pair<double, double>> probe_grid(Interval range, int n) {
  std::vector<std::pair<double, double>> out;
  const double step = range.length() / n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.emplace_back(range.lo + step * i, range.lo + step * (j + 1));
  return out;
}

// ---------------------------------------------------------------------------

TaylorCoeffs fit_taylor(const Signal& f, double center, double halfwidth) {
  if (!(halfwidth > 0.0)) throw Error(ErrorKind::BadResolution, "halfwidth must be positive");
  const Interval window{center - halfwidth, center + halfwidth};
  inside(f, window);

  constexpr int samples = 201;
  const double f0 = f(center);
  Eigen::MatrixXd design(samples, 4);
  Eigen::MatrixXd raw(samples, 4);
  Eigen::VectorXd rhs(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = halfwidth * (2.0 * i / (samples - 1) - 1.0);
    const double u = t / halfwidth;
    for (int j = 0; j < 4; ++j) {
      design(i, j) = std::pow(u, j + 1);
      raw(i, j) = std::pow(t, j + 1);
    }
    rhs(i) = f(center + t) - f0;
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd_raw(raw);
  const auto sv = svd_raw.singularValues();
  const double condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(condition <= 1e12))
    throw Error(ErrorKind::IllConditioned, "fit matrix condition number " + std::to_string(condition));

  const Eigen::VectorXd scaled = design.colPivHouseholderQr().solve(rhs);
  TaylorCoeffs out;
  out.center = center;
  out.window = window;
  out.condition = condition;
  double power = 1.0;
  for (int j = 0; j < 4; ++j) {
    power *= halfwidth;
    out.a[static_cast<std::size_t>(j)] = scaled(j) / power;
  }
  out.residual = std::sqrt((design * scaled - rhs).squaredNorm() / samples);
  return out;
}

TaylorCoeffs taylor_coeffs(const AnalyticSignal& f, double center) {
  if (!f.domain().contains(center)) throw Error(ErrorKind::OutOfDomain, "center outside domain");
  TaylorCoeffs out;
  out.center = center;
  out.window = {center, center};
  double factorial = 1.0;
  for (int j = 1; j <= 4; ++j) {
    factorial *= j;
    out.a[static_cast<std::size_t>(j - 1)] = f.derivative(center, j) / factorial;
  }
  return out;
}

double rigidity_defect(const TaylorCoeffs& c) { return 9.0 * c.a[2] * c.a[0] - 2.0 * c.a[1] * c.a[1]; }

double extrapolate_to_zero(std::span<const double> eps, std::span<const double> values) {
  // Neville's scheme in u = eps^2 evaluated at u = 0
  std::vector<double> p(values.begin(), values.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double ui = eps[i] * eps[i], uj = eps[i + level] * eps[i + level];
      p[i] = (uj * p[i] - ui * p[i + 1]) / (uj - ui);
    }
  }
  return p.empty() ? 0.0 : p[0];
}

TaylorExpansionReport taylor_expansion_check(const Signal& f, double x0, std::span<const double> eps) {
  if (eps.empty()) throw Error(ErrorKind::BadResolution, "empty eps list");
  double eps_max = 0.0;
  for (double e : eps) {
    if (!(e > 0.0)) throw Error(ErrorKind::BadResolution, "eps must be positive");
    eps_max = std::max(eps_max, e);
  }
  inside(f, {x0 - eps_max, x0 + eps_max});

  const double d0 = f.derivative(x0, 1);
  constexpr int checks = 1001;
  for (int i = 0; i < checks; ++i) {
    const double x = x0 - eps_max + 2.0 * eps_max * i / (checks - 1);
    const double d = f.derivative(x, 1);
    if (!(d * d0 > 0.0))
      throw Error(ErrorKind::NotMonotone, "f' changes sign near x=" + std::to_string(x));
  }

  TaylorExpansionReport report;
  report.coeffs = f.analytic() ? taylor_coeffs(*f.analytic(), x0)
                               : fit_taylor(f, x0, 0.05 * f.domain().length());
  // normalize to f' > 0; osc, rho and |Df| are unchanged by f -> -f
  std::array<double, 4> a = report.coeffs.a;
  if (a[0] < 0.0)
    for (double& v : a) v = -v;
  const double a1 = a[0], a2 = a[1], a3 = a[2];

  std::vector<double> eps_v(eps.begin(), eps.end());
  std::vector<double> rho_err, osc_err, tv_err, rho_ratio, cubic;
  for (double e : eps_v) {
    const Interval I{x0 - e, x0 + e};
    const IntervalStats st = interval_stats(f, I);
    const double sign = d0 > 0.0 ? 1.0 : -1.0;
    const double rho = bisect_root([&](double t) { return sign * (f(x0 + t) - st.mean); }, -e, e);

    TaylorStep step;
    step.eps = e;
    step.rho = rho;
    step.rho_predicted = a2 / (3.0 * a1) * e * e;
    step.oscillation = st.oscillation;
    step.oscillation_predicted = 0.5 * a1 * e + (a3 / 4.0 + a2 * a2 / (18.0 * a1)) * e * e * e;
    step.quarter_tv = 0.25 * st.total_variation;
    step.quarter_tv_predicted = 0.5 * a1 * e + 0.5 * a3 * e * e * e;
    report.steps.push_back(step);

    rho_err.push_back(step.rho - step.rho_predicted);
    osc_err.push_back(step.oscillation - step.oscillation_predicted);
    tv_err.push_back(step.quarter_tv - step.quarter_tv_predicted);
    rho_ratio.push_back(rho / (e * e));
    cubic.push_back((st.oscillation - 0.5 * a1 * e) / (e * e * e));
  }

  const double floor = 1e-14 * std::max(1.0, std::abs(a1) * eps_max);
  report.rho_error_order = loglog_slope(eps_v, rho_err, floor);
  report.oscillation_error_order = loglog_slope(eps_v, osc_err, floor);
  report.quarter_tv_error_order = loglog_slope(eps_v, tv_err, floor);
  report.rho_ratio_limit = extrapolate_to_zero(eps_v, rho_ratio);
  report.cubic_coefficient = extrapolate_to_zero(eps_v, cubic);
  report.cubic_coefficient_predicted = a3 / 4.0 + a2 * a2 / (18.0 * a1);
  return report;
}

// ---------------------------------------------------------------------------

double ode_residual_max(const AnalyticSignal& g, Interval I, int probes) {
  if (probes < 2) throw Error(ErrorKind::BadResolution, "need at least 2 probes");
  if (!g.domain().contains(I, 1e-12 * g.domain().length()))
    throw Error(ErrorKind::OutOfDomain, "probe interval leaves the signal domain");
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const double x = i + 1 == probes ? I.hi : I.lo + I.length() * i / (probes - 1);
    const double g0 = g(x), g1 = g.derivative(x, 1), g2 = g.derivative(x, 2);
    if (!std::isfinite(g2)) continue;  // branch point of a power law
    worst = std::max(worst, std::abs(3.0 * g0 * g2 - g1 * g1));
  }
  return worst;
}

double ode_family_check(double A, double B, Interval I, int probes) {
  if (I.empty()) throw Error(ErrorKind::EmptyInterval, "empty probe interval");
  if (B > I.lo && B < I.hi) throw Error(ErrorKind::BadBranch, "B lies inside the probe interval");
  if (A == 0.0) return 0.0;
  const AnalyticSignal g(Power{1.5, B, A, 0.0}, I);
  return ode_residual_max(g, I, probes);
}

double power_quotient(double s) {
  check_exponent(s);
  return 2.0 * s / std::pow(1.0 + s, 2.0 + 1.0 / s);
}

double power_crossing(double s, double a, double b) {
  check_exponent(s);
  if (!(a >= 0.0 && a < b)) throw Error(ErrorKind::BadInterval, "need 0 <= a < b");
  const double mean = (std::pow(b, s + 1.0) - std::pow(a, s + 1.0)) / ((s + 1.0) * (b - a));
  return std::pow(mean, 1.0 / s);
}

double phi(double s, double a, double b) {
  const double x = power_crossing(s, a, b);
  const double below = (x - a) * std::pow(x, s) - (std::pow(x, s + 1.0) - std::pow(a, s + 1.0)) / (s + 1.0);
  return (std::pow(b, s) - std::pow(a, s)) / 4.0 - 2.0 / (b - a) * below;
}

double exponent_function(double s) {
  check_exponent(s);
  return (2.0 + 1.0 / s) * std::log1p(s) - std::log(8.0 * s);
}

std::vector<double> exponent_equation_solve(double lo, double hi, double tol) {
  if (!(lo > 0.0 && lo < hi)) throw Error(ErrorKind::BadInterval, "need 0 < lo < hi");
  if (!(tol > 0.0)) throw Error(ErrorKind::BadResolution, "tol must be positive");
  constexpr int grid = 10000;
  std::vector<double> roots;
  auto push = [&](double r) {
    if (roots.empty() || std::abs(roots.back() - r) > tol) roots.push_back(r);
  };
  double a = lo, fa = exponent_function(lo);
  if (fa == 0.0) push(a);
  for (int i = 1; i < grid; ++i) {
    const double b = i + 1 == grid ? hi : lo + (hi - lo) * i / (grid - 1);
    const double fb = exponent_function(b);
    if (fb == 0.0) {
      push(b);
    } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      double l = a, r = b, fl = fa;
      while (r - l > tol) {
        const double m = 0.5 * (l + r);
        const double fm = exponent_function(m);
        if (fm == 0.0) {
          l = r = m;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      push(0.5 * (l + r));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace bvq
