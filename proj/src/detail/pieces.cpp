#include "detail/pieces.hpp"

#include <algorithm>
#include <cmath>

namespace bvq::detail {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double falling(double s, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= s - i;
  return r;
}

std::vector<double> trimmed(std::span<const double> c) {
  std::vector<double> out(c.begin(), c.end());
  while (!out.empty() && out.back() == 0.0) out.pop_back();
  return out;
}

std::vector<double> derivative_coeffs(std::span<const double> c) {
  std::vector<double> d;
  for (std::size_t j = 1; j < c.size(); ++j) d.push_back(static_cast<double>(j) * c[j]);
  return d;
}

// Bisection on a bracketing pair; g(lo) and g(hi) have opposite signs.
template <class G>
double bisect(G&& g, double lo, double hi) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  double ghi = g(hi);
  if (ghi == 0.0) return hi;
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

double power_integral(const Power& p, double u, double v) {
  const double s1 = p.exponent + 1.0;
  // antiderivative of |x-B|^s is sign(x-B) |x-B|^(s+1) / (s+1)
  auto anti = [&](double x) {
    const double d = x - p.shift;
    const double a = std::pow(std::abs(d), s1) / s1;
    return d < 0.0 ? -a : a;
  };
  return p.scale * (anti(v) - anti(u)) + p.offset * (v - u);
}

}  // namespace

double polynomial_value(std::span<const double> c, double t) {
  double r = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) r = r * t + c[j];
  return r;
}

std::vector<double> polynomial_roots(std::span<const double> coeffs, double tu, double tv) {
  const std::vector<double> c = trimmed(coeffs);
  std::vector<double> roots;
  if (c.size() <= 1) return roots;
  if (c.size() == 2) {
    const double r = -c[0] / c[1];
    if (r > tu && r < tv) roots.push_back(r);
    return roots;
  }
  // Roots are isolated between consecutive extrema.
  const std::vector<double> dc = derivative_coeffs(c);
  std::vector<double> knots{tu};
  for (double e : polynomial_roots(dc, tu, tv)) knots.push_back(e);
  knots.push_back(tv);

  auto p = [&](double t) { return polynomial_value(c, t); };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double pa = p(a), pb = p(b);
    if (i > 0 && pa == 0.0) {
      if (roots.empty() || roots.back() != a) roots.push_back(a);
      continue;
    }
    if ((pa < 0.0 && pb > 0.0) || (pa > 0.0 && pb < 0.0)) {
      const double r = bisect(p, a, b);
      if (r > tu && r < tv && (roots.empty() || roots.back() != r)) roots.push_back(r);
    }
  }
  return roots;
}

double value(const Smooth& s, double x) {
  return std::visit(
      overloaded{
          [&](const Segment& g) {
            if (g.x1 == g.x0) return g.y0;
            return g.y0 + (x - g.x0) / (g.x1 - g.x0) * (g.y1 - g.y0);
          },
          [&](const Affine& a) { return a.slope * x + a.intercept; },
          [&](const Power& p) { return p.scale * std::pow(std::abs(x - p.shift), p.exponent) + p.offset; },
          [&](const Exponential& e) { return e.scale * std::exp(e.rate * x) + e.offset; },
          [&](const Polynomial& q) { return polynomial_value(q.coefficients, x - q.center); },
      },
      s);
}

double integral(const Smooth& s, double u, double v) {
  return std::visit(
      overloaded{
          [&](const Segment&) { return 0.5 * (value(s, u) + value(s, v)) * (v - u); },
          [&](const Affine& a) { return (0.5 * a.slope * (u + v) + a.intercept) * (v - u); },
          [&](const Power& p) { return power_integral(p, u, v); },
          [&](const Exponential& e) {
            if (e.rate == 0.0) return (e.scale + e.offset) * (v - u);
            return e.scale / e.rate * (std::exp(e.rate * v) - std::exp(e.rate * u)) + e.offset * (v - u);
          },
          [&](const Polynomial& q) {
            const auto& c = q.coefficients;
            auto anti = [&](double t) {
              double r = 0.0;
              for (std::size_t j = c.size(); j-- > 0;) r = r * t + c[j] / static_cast<double>(j + 1);
              return r * t;
            };
            return anti(v - q.center) - anti(u - q.center);
          },
      },
      s);
}

double derivative(const Smooth& s, double x, int order) {
  if (order == 0) return value(s, x);
  return std::visit(
      overloaded{
          [&](const Segment& g) {
            if (order > 1 || g.x1 == g.x0) return 0.0;
            return (g.y1 - g.y0) / (g.x1 - g.x0);
          },
          [&](const Affine& a) { return order == 1 ? a.slope : 0.0; },
          [&](const Power& p) {
            const double d = x - p.shift;
            const double sign = (d < 0.0 && order % 2 == 1) ? -1.0 : 1.0;
            return p.scale * falling(p.exponent, order) * sign * std::pow(std::abs(d), p.exponent - order);
          },
          [&](const Exponential& e) { return e.scale * std::pow(e.rate, order) * std::exp(e.rate * x); },
          [&](const Polynomial& q) {
            const auto& c = q.coefficients;
            const double t = x - q.center;
            double r = 0.0;
            for (std::size_t j = c.size(); j-- > static_cast<std::size_t>(order);)
              r = r * t + c[j] * falling(static_cast<double>(j), order);
            return r;
          },
      },
      s);
}

bool is_flat(const Smooth& s) {
  return std::visit(overloaded{
                        [](const Segment& g) { return g.y0 == g.y1; },
                        [](const Affine& a) { return a.slope == 0.0; },
                        [](const Power& p) { return p.scale == 0.0 || p.exponent == 0.0; },
                        [](const Exponential& e) { return e.scale == 0.0 || e.rate == 0.0; },
                        [](const Polynomial& q) {
                          return std::all_of(q.coefficients.begin() + std::min<std::size_t>(1, q.coefficients.size()),
                                             q.coefficients.end(), [](double c) { return c == 0.0; });
                        },
                    },
                    s);
}

bool is_linear(const Smooth& s) { return std::holds_alternative<Segment>(s) || std::holds_alternative<Affine>(s); }

double difference(const Smooth& s, double x, double xr) {
  if (is_linear(s)) return derivative(s, x, 1) * (x - xr);
  return value(s, x) - value(s, xr);
}

void critical_points(const Smooth& s, double u, double v, std::vector<double>& out) {
  if (const auto* q = std::get_if<Polynomial>(&s)) {
    const auto dc = derivative_coeffs(q->coefficients);
    for (double t : polynomial_roots(dc, u - q->center, v - q->center)) {
      const double x = t + q->center;
      if (x > u && x < v) out.push_back(x);
    }
  }
  // Segments, affine, exponential and admissible power pieces are monotone.
}

double crossing(const Smooth& s, double level, double u, double v) {
  const double c = std::visit(
      overloaded{
          [&](const Segment&) {
            const double fu = value(s, u), fv = value(s, v);
            if (fv == fu) return u;
            return u + (level - fu) / (fv - fu) * (v - u);
          },
          [&](const Affine& a) { return a.slope == 0.0 ? u : (level - a.intercept) / a.slope; },
          [&](const Power& p) {
            const double r = std::pow((level - p.offset) / p.scale, 1.0 / p.exponent);
            return (0.5 * (u + v) >= p.shift) ? p.shift + r : p.shift - r;
          },
          [&](const Exponential& e) { return std::log((level - e.offset) / e.scale) / e.rate; },
          [&](const Polynomial&) { return bisect([&](double x) { return value(s, x) - level; }, u, v); },
      },
      s);
  if (!std::isfinite(c)) return bisect([&](double x) { return value(s, x) - level; }, u, v);
  return std::clamp(c, u, v);
}

namespace {

void append_simple(const SimpleForm& form, double lo, double hi, Interval I, std::vector<SmoothPiece>& out) {
  const double a = std::max(lo, I.lo), b = std::min(hi, I.hi);
  if (!(a < b)) return;
  std::visit(overloaded{
                 [&](const Jump& j) {
                   const double loc = std::clamp(j.location, a, b);
                   if (a < loc) out.push_back({a, loc, Affine{0.0, j.left_value}});
                   if (loc < b) out.push_back({loc, b, Affine{0.0, j.right_value}});
                 },
                 [&](const auto& smooth) { out.push_back({a, b, Smooth{smooth}}); },
             },
             form);
}

}  // namespace

std::vector<SmoothPiece> smooth_pieces(const AnalyticSignal& f, Interval I) {
  std::vector<SmoothPiece> out;
  const Interval d = f.domain();
  std::visit(overloaded{
                 [&](const Composite& c) {
                   for (const Piece& p : c.pieces) append_simple(p.form, p.domain.lo, p.domain.hi, I, out);
                 },
                 [&](const auto& simple) { append_simple(SimpleForm{simple}, d.lo, d.hi, I, out); },
             },
             f.form());
  return out;
}

std::vector<SmoothPiece> smooth_pieces(const Signal& f, Interval I) {
  if (const auto* a = f.analytic()) return smooth_pieces(*a, I);

  const SampledSignal& s = *f.sampled();
  const auto g = s.grid();
  const auto y = s.values();
  std::vector<SmoothPiece> out;
  const std::size_t first = s.cell_of(I.lo);
  for (std::size_t i = first; i + 1 < g.size() && g[i] < I.hi; ++i) {
    const double a = std::max(g[i], I.lo), b = std::min(g[i + 1], I.hi);
    if (!(a < b)) continue;
    if (s.mode() == Interpolation::PiecewiseLinear) {
      out.push_back({a, b, Segment{g[i], y[i], g[i + 1], y[i + 1]}});
    } else {
      out.push_back({a, b, Affine{0.0, y[i]}});
    }
  }
  return out;
}

std::vector<SmoothPiece> monotone_pieces(const Signal& f, Interval I) {
  std::vector<SmoothPiece> out;
  std::vector<double> crit;
  for (const SmoothPiece& p : smooth_pieces(f, I)) {
    crit.clear();
    critical_points(p.form, p.lo, p.hi, crit);
    double a = p.lo;
    for (double c : crit) {
      if (c > a && c < p.hi) {
        out.push_back({a, c, p.form});
        a = c;
      }
    }
    out.push_back({a, p.hi, p.form});
  }
  return out;
}

}  // namespace bvq::detail
