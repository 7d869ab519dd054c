#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bvq/signal.hpp"

namespace bvq {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

double signed_magnitude(Rng& rng, double a, double b) {
  const double m = uniform(rng, a, b);
  return std::bernoulli_distribution(0.5)(rng) ? m : -m;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// f' = c0 + q(t)^2 with q of degree (degree-1)/2, so f is strictly increasing.
AnalyticSignal monotone_polynomial(Rng& rng, const FamilyParams& params) {
  const Interval d = params.domain;
  const double center = d.center();
  const double h = 0.5 * d.length();
  const int qdeg = std::max(1, (params.degree - 1) / 2);

  std::vector<double> q(static_cast<std::size_t>(qdeg) + 1);
  double scale = 1.0;
  for (int j = 0; j <= qdeg; ++j) {
    // coefficients in the normalized variable t/h; the leading one is kept away from 0
    const double c = j == qdeg ? signed_magnitude(rng, 1.0, 2.0) : uniform(rng, -1.0, 1.0);
    q[static_cast<std::size_t>(j)] = c / scale;
    scale *= h;
  }
  std::vector<double> deriv = poly_mul(q, q);
  deriv[0] += uniform(rng, 0.1, 1.0);

  const double gain = uniform(rng, 0.5, 3.0);
  std::vector<double> coeffs(deriv.size() + 1);
  coeffs[0] = uniform(rng, -1.0, 1.0);
  for (std::size_t j = 0; j < deriv.size(); ++j) coeffs[j + 1] = gain * deriv[j] / static_cast<double>(j + 1);
  return AnalyticSignal(Polynomial{center, std::move(coeffs)}, d);
}

AnalyticSignal piecewise_affine(Rng& rng, const FamilyParams& params) {
  const Interval d = params.domain;
  const int k = std::max(2, params.pieces);
  // piece lengths within a factor 3 of each other
  std::vector<double> weights(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& w : weights) total += (w = uniform(rng, 0.5, 1.5));
  std::vector<double> cuts;
  double cursor = d.lo;
  for (int i = 0; i + 1 < k; ++i) {
    cursor += d.length() * weights[static_cast<std::size_t>(i)] / total;
    cuts.push_back(cursor);
  }

  Composite c;
  double value = uniform(rng, -1.0, 1.0);
  double left = d.lo;
  double prev_slope = 0.0;
  for (int i = 0; i < k; ++i) {
    const double right = i + 1 < k ? cuts[static_cast<std::size_t>(i)] : d.hi;
    double slope = signed_magnitude(rng, 0.5, 3.0);
    while (i > 0 && std::abs(slope - prev_slope) < 0.5) slope = signed_magnitude(rng, 0.5, 3.0);
    c.pieces.push_back({{left, right}, Affine{slope, value - slope * left}});
    value += slope * (right - left);
    prev_slope = slope;
    left = right;
  }
  return AnalyticSignal(std::move(c), d);
}

}  // namespace

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "random_affine") return FamilyKind::RandomAffine;
  if (name == "random_centered_jump") return FamilyKind::RandomCenteredJump;
  if (name == "random_offcenter_jump") return FamilyKind::RandomOffcenterJump;
  if (name == "random_monotone_polynomial") return FamilyKind::RandomMonotonePolynomial;
  if (name == "random_piecewise_affine") return FamilyKind::RandomPiecewiseAffine;
  if (name == "power") return FamilyKind::Power;
  throw Error(ErrorKind::UnknownKind, "unknown family '" + std::string(name) + "'");
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::RandomAffine: return "random_affine";
    case FamilyKind::RandomCenteredJump: return "random_centered_jump";
    case FamilyKind::RandomOffcenterJump: return "random_offcenter_jump";
    case FamilyKind::RandomMonotonePolynomial: return "random_monotone_polynomial";
    case FamilyKind::RandomPiecewiseAffine: return "random_piecewise_affine";
    case FamilyKind::Power: return "power";
  }
  return "unknown";
}

AnalyticSignal generate_family(FamilyKind kind, std::uint64_t seed, const FamilyParams& params) {
  Rng rng(seed);
  const Interval d = params.domain;
  switch (kind) {
    case FamilyKind::RandomAffine:
      return AnalyticSignal(Affine{signed_magnitude(rng, 0.2, 5.0), uniform(rng, -2.0, 2.0)}, d);
    case FamilyKind::RandomCenteredJump: {
      const double left = uniform(rng, -2.0, 2.0);
      return AnalyticSignal(Jump{d.center(), left, left + signed_magnitude(rng, 0.5, 3.0)}, d);
    }
    case FamilyKind::RandomOffcenterJump: {
      double t = uniform(rng, 0.1, 0.4);
      if (std::bernoulli_distribution(0.5)(rng)) t = 1.0 - t;
      const double left = uniform(rng, -2.0, 2.0);
      return AnalyticSignal(Jump{d.lo + t * d.length(), left, left + signed_magnitude(rng, 0.5, 3.0)}, d);
    }
    case FamilyKind::RandomMonotonePolynomial:
      return monotone_polynomial(rng, params);
    case FamilyKind::RandomPiecewiseAffine:
      return piecewise_affine(rng, params);
    case FamilyKind::Power: {
      if (!(params.exponent > 0.0)) throw Error(ErrorKind::BadExponent, "power family needs exponent > 0");
      const double shift = (d.lo < 0.0 && d.hi > 0.0) ? d.lo : 0.0;
      return AnalyticSignal(bvq::Power{params.exponent, shift, 1.0, 0.0}, d);
    }
  }
  throw Error(ErrorKind::UnknownKind, "unhandled family kind");
}

SampledSignal random_sampled_signal(std::uint64_t seed, std::size_t n, Interpolation mode, Interval domain) {
  if (n < 2) throw Error(ErrorKind::BadResolution, "need at least 2 samples");
  Rng rng(seed);
  std::vector<double> grid(n), values(n);
  const double step = domain.length() / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double jitter = (i == 0 || i + 1 == n) ? 0.0 : uniform(rng, -0.35, 0.35) * step;
    grid[i] = i + 1 == n ? domain.hi : domain.lo + step * static_cast<double>(i) + jitter;
    // occasional repeats give flat cells, which exercise the level-set edge cases
    const bool repeat = i > 0 && std::bernoulli_distribution(0.15)(rng);
    values[i] = repeat ? values[i - 1] : uniform(rng, -1.0, 1.0);
  }
  return SampledSignal(std::move(grid), std::move(values), mode);
}

}  // namespace bvq
