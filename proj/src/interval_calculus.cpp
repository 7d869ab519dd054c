#include "bvq/interval_calculus.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "detail/pieces.hpp"

namespace bvq {
namespace {

using detail::SmoothPiece;

std::string describe(Interval I) { return "(" + std::to_string(I.lo) + ", " + std::to_string(I.hi) + ")"; }

// Validates I against f's domain and snaps endpoints that overshoot by rounding.
Interval checked(const Signal& f, Interval I) {
  if (!(I.lo < I.hi)) throw Error(ErrorKind::EmptyInterval, "interval " + describe(I) + " is empty");
  const Interval d = f.domain();
  const double slack = 1e-12 * d.length();
  if (!d.contains(I, slack))
    throw Error(ErrorKind::OutOfDomain, "interval " + describe(I) + " leaves domain " + describe(d));
  return {std::max(I.lo, d.lo), std::min(I.hi, d.hi)};
}

// Values are handled as deviations from the first piece's left value, so a
// large offset does not swamp slope * |I| for affine data.
struct Deviation {
  double reference = 0.0;
  std::vector<double> base;  // value at each piece's left end, minus reference

  Deviation(const std::vector<SmoothPiece>& pieces) {
    if (pieces.empty()) return;
    reference = detail::value(pieces.front().form, pieces.front().lo);
    base.reserve(pieces.size());
    base.push_back(0.0);
    for (std::size_t i = 1; i < pieces.size(); ++i)
      base.push_back(detail::value(pieces[i].form, pieces[i].lo) - reference);
  }

  double at(const std::vector<SmoothPiece>& pieces, std::size_t i, double x) const {
    return base[i] + detail::difference(pieces[i].form, x, pieces[i].lo);
  }

  // integral of (f - reference) over [a, b] inside piece i
  double integral(const std::vector<SmoothPiece>& pieces, std::size_t i, double a, double b) const {
    const SmoothPiece& p = pieces[i];
    if (detail::is_linear(p.form)) return 0.5 * (at(pieces, i, a) + at(pieces, i, b)) * (b - a);
    return detail::integral(p.form, a, b) - reference * (b - a);
  }
};

struct Splitter {
  const std::vector<SmoothPiece>& pieces;
  const Deviation& dev;
  double level;  // relative to dev.reference
  double tol;
  LevelSplit& out;

  void one_sided(std::size_t i, double a, double b, bool above) {
    const double excess = dev.integral(pieces, i, a, b) - level * (b - a);
    if (above) {
      out.above += b - a;
      out.upper_tail += std::max(0.0, excess);
    } else {
      out.below += b - a;
      out.lower_tail += std::max(0.0, -excess);
    }
  }

  void monotone(std::size_t i, double a, double b) {
    const SmoothPiece& p = pieces[i];
    const double da = dev.at(pieces, i, a) - level;
    const double db = dev.at(pieces, i, b) - level;
    if (detail::is_flat(p.form)) {
      if (std::abs(da) <= tol) {
        out.at += b - a;
      } else {
        (da > 0.0 ? out.above : out.below) += b - a;
        (da > 0.0 ? out.upper_tail : out.lower_tail) += std::abs(da) * (b - a);
      }
      return;
    }
    if (da >= 0.0 && db >= 0.0) return one_sided(i, a, b, true);
    if (da <= 0.0 && db <= 0.0) return one_sided(i, a, b, false);
    const double c = detail::is_linear(p.form)
                         ? std::clamp(a + (-da) / (db - da) * (b - a), a, b)
                         : detail::crossing(p.form, dev.reference + level, a, b);
    if (c > a) one_sided(i, a, c, da > 0.0);
    if (c < b) one_sided(i, c, b, db > 0.0);
  }
};

// level_is_mean: split about the mean of f on I (level argument ignored)
LevelSplit split_about(const Signal& f, Interval I, double level, bool level_is_mean) {
  const auto pieces = detail::smooth_pieces(f, I);
  const Deviation dev(pieces);
  LevelSplit out;
  double scale = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    sum += dev.integral(pieces, i, pieces[i].lo, pieces[i].hi);
    scale = std::max({scale, std::abs(dev.at(pieces, i, pieces[i].lo)), std::abs(dev.at(pieces, i, pieces[i].hi))});
  }
  const double rel = level_is_mean ? sum / I.length() : level - dev.reference;
  out.mean = level_is_mean ? dev.reference + rel : level;

  Splitter splitter{pieces, dev, rel, 8.0 * DBL_EPSILON * scale, out};
  std::vector<double> crit;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const SmoothPiece& p = pieces[i];
    crit.clear();
    detail::critical_points(p.form, p.lo, p.hi, crit);
    double a = p.lo;
    for (double c : crit) {
      splitter.monotone(i, a, c);
      a = c;
    }
    splitter.monotone(i, a, p.hi);
  }
  return out;
}

double tv_of(const std::vector<SmoothPiece>& pieces) {
  double tv = 0.0;
  std::vector<double> crit;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const SmoothPiece& p = pieces[i];
    if (detail::is_linear(p.form)) {
      tv += std::abs(detail::derivative(p.form, p.lo, 1)) * (p.hi - p.lo);
    } else {
      crit.clear();
      detail::critical_points(p.form, p.lo, p.hi, crit);
      double a = p.lo;
      for (double c : crit) {
        tv += std::abs(detail::difference(p.form, c, a));
        a = c;
      }
      tv += std::abs(detail::difference(p.form, p.hi, a));
    }
    if (i + 1 < pieces.size()) {
      const SmoothPiece& q = pieces[i + 1];
      tv += std::abs(detail::value(q.form, q.lo) - detail::value(p.form, p.hi));
    }
  }
  return tv;
}

}  // namespace

double interval_mean(const Signal& f, Interval I) {
  I = checked(f, I);
  return split_about(f, I, 0.0, true).mean;
}

LevelSplit level_split(const Signal& f, Interval I) {
  I = checked(f, I);
  return split_about(f, I, 0.0, true);
}

double absolute_deviation(const Signal& f, Interval I, double level) {
  I = checked(f, I);
  const LevelSplit s = split_about(f, I, level, false);
  return s.upper_tail + s.lower_tail;
}

double interval_oscillation(const Signal& f, Interval I) {
  I = checked(f, I);
  const LevelSplit s = split_about(f, I, 0.0, true);
  return (s.upper_tail + s.lower_tail) / I.length();
}

double total_variation(const Signal& f, Interval I) {
  I = checked(f, I);
  return tv_of(detail::smooth_pieces(f, I));
}

double level_balance(const Signal& f, Interval I) {
  I = checked(f, I);
  const LevelSplit s = split_about(f, I, 0.0, true);
  return s.below - s.above;
}

std::optional<double> poincare_quotient(const Signal& f, Interval I) {
  return interval_stats(f, I).quotient;
}

IntervalStats interval_stats(const Signal& f, Interval I) {
  I = checked(f, I);
  const auto pieces = detail::smooth_pieces(f, I);
  const LevelSplit s = split_about(f, I, 0.0, true);
  IntervalStats out;
  out.interval = I;
  out.mean = s.mean;
  out.oscillation = (s.upper_tail + s.lower_tail) / I.length();
  out.total_variation = tv_of(pieces);
  out.level_balance = s.below - s.above;
  if (out.total_variation > 0.0) out.quotient = out.oscillation / out.total_variation;
  return out;
}

QuotientMap quotient_map(const Signal& f, std::span<const double> scales, double stride) {
  if (!(stride > 0.0)) throw Error(ErrorKind::BadResolution, "stride must be positive");
  for (double s : scales)
    if (!(s > 0.0)) throw Error(ErrorKind::BadResolution, "scales must be positive");

  QuotientMap map;
  map.domain = f.domain();
  map.scale_grid.assign(scales.begin(), scales.end());
  map.stride = stride;
  const Interval d = map.domain;
  const double slack = 1e-12 * d.length();
  for (std::size_t k = 0;; ++k) {
    const double c = d.lo + static_cast<double>(k) * stride;
    if (c > d.hi + slack) break;
    map.position_grid.push_back(std::min(c, d.hi));
  }

  for (double s : map.scale_grid) {
    for (double c : map.position_grid) {
      const Interval w{c - 0.5 * s, c + 0.5 * s};
      // windows that overflow are skipped, never clipped
      if (!d.contains(w, slack)) continue;
      map.entries.push_back({c, s, interval_stats(f, w)});
    }
  }
  if (map.entries.empty()) throw Error(ErrorKind::NoValidWindow, "every window exceeds the domain");
  return map;
}

std::vector<Interval> mesh_partition(Interval J, double mesh) {
  if (!(mesh > 0.0) || mesh > J.length() * (1.0 + 1e-12))
    throw Error(ErrorKind::BadMesh, "mesh must lie in (0, |J|]");
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(J.length() / mesh * (1.0 + 1e-12))));
  std::vector<Interval> parts;
  parts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = J.lo + J.length() * static_cast<double>(i) / static_cast<double>(n);
    const double b = i + 1 == n ? J.hi : J.lo + J.length() * static_cast<double>(i + 1) / static_cast<double>(n);
    parts.push_back({a, b});
  }
  return parts;
}

double partition_osc_sum(const Signal& f, Interval J, double mesh) {
  J = checked(f, J);
  double sum = 0.0;
  for (const Interval& I : mesh_partition(J, mesh)) sum += interval_oscillation(f, I);
  return sum;
}

double measure_extension_defect(const Signal& f, Interval J, double split) {
  J = checked(f, J);
  if (!(split > J.lo && split < J.hi))
    throw Error(ErrorKind::BadSplit, "split " + std::to_string(split) + " not inside " + describe(J));
  return std::abs(interval_oscillation(f, J) - interval_oscillation(f, {J.lo, split}) -
                  interval_oscillation(f, {split, J.hi}));
}

}  // namespace bvq
