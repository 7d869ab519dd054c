#include "bvq/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/pieces.hpp"

namespace bvq {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string fmt_num(double x) { return std::to_string(x); }

double eval_simple(const SimpleForm& form, double x) {
  return std::visit(overloaded{
                        [&](const Jump& j) { return x < j.location ? j.left_value : j.right_value; },
                        [&](const auto& s) { return detail::value(detail::Smooth{s}, x); },
                    },
                    form);
}

double derive_simple(const SimpleForm& form, double x, int order) {
  return std::visit(overloaded{
                        [&](const Jump& j) { return order == 0 ? eval_simple(j, x) : 0.0; },
                        [&](const auto& s) { return detail::derivative(detail::Smooth{s}, x, order); },
                    },
                    form);
}

void validate_simple(const SimpleForm& form, Interval domain) {
  std::visit(overloaded{
                 [&](const Power& p) {
                   if (!(p.exponent > 0.0) || !std::isfinite(p.exponent))
                     throw Error(ErrorKind::InvalidSignal, "power exponent must be positive");
                   if (p.shift > domain.lo && p.shift < domain.hi)
                     throw Error(ErrorKind::InvalidSignal,
                                 "power shift " + fmt_num(p.shift) + " lies inside the domain");
                 },
                 [&](const Polynomial& q) {
                   if (q.coefficients.empty())
                     throw Error(ErrorKind::InvalidSignal, "polynomial needs at least one coefficient");
                 },
                 [](const auto&) {},
             },
             form);
}

const Piece& piece_at(const Composite& c, double x) {
  for (const Piece& p : c.pieces)
    if (x < p.domain.hi) return p;
  return c.pieces.back();
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::EmptyInterval: return "EmptyInterval";
    case ErrorKind::BadResolution: return "BadResolution";
    case ErrorKind::JumpInLinearMode: return "JumpInLinearMode";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::NoValidWindow: return "NoValidWindow";
    case ErrorKind::BadMesh: return "BadMesh";
    case ErrorKind::BadSplit: return "BadSplit";
    case ErrorKind::FlatAtMean: return "FlatAtMean";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::BadBranch: return "BadBranch";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::BadInterval: return "BadInterval";
    case ErrorKind::EmptyMap: return "EmptyMap";
    case ErrorKind::InvalidSignal: return "InvalidSignal";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(Interpolation mode) {
  return mode == Interpolation::PiecewiseLinear ? "piecewise-linear" : "piecewise-constant";
}

// ---------------------------------------------------------------------------
// SampledSignal

SampledSignal::SampledSignal(std::vector<double> grid, std::vector<double> values, Interpolation mode)
    : grid_(std::move(grid)), values_(std::move(values)), mode_(mode) {
  if (grid_.size() < 2) throw Error(ErrorKind::BadResolution, "a sampled signal needs at least 2 points");
  if (values_.size() != grid_.size())
    throw Error(ErrorKind::InvalidSignal, "grid has " + std::to_string(grid_.size()) + " points but values has " +
                                              std::to_string(values_.size()));
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i]))
      throw Error(ErrorKind::InvalidSignal, "non-finite sample at index " + std::to_string(i));
    if (i > 0 && !(grid_[i] > grid_[i - 1]))
      throw Error(ErrorKind::InvalidSignal, "grid not strictly increasing at index " + std::to_string(i));
  }
}

std::size_t SampledSignal::cell_of(double x) const noexcept {
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
  return std::min(i, grid_.size() - 2);
}

double SampledSignal::operator()(double x) const noexcept {
  const std::size_t i = cell_of(x);
  if (mode_ == Interpolation::PiecewiseConstant) return x >= grid_.back() ? values_.back() : values_[i];
  return detail::value(detail::Segment{grid_[i], values_[i], grid_[i + 1], values_[i + 1]}, x);
}

double SampledSignal::slope(double x) const noexcept {
  if (mode_ == Interpolation::PiecewiseConstant) return 0.0;
  const std::size_t i = cell_of(x);
  return (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
}

// ---------------------------------------------------------------------------
// AnalyticSignal

AnalyticSignal::AnalyticSignal(AnalyticForm form, Interval domain) : form_(std::move(form)), domain_(domain) {
  if (!std::isfinite(domain_.lo) || !std::isfinite(domain_.hi) || domain_.empty())
    throw Error(ErrorKind::EmptyInterval, "analytic domain needs lo < hi");
  std::visit(overloaded{
                 [&](const Composite& c) {
                   if (c.pieces.empty()) throw Error(ErrorKind::InvalidSignal, "composite without pieces");
                   const double slack = 1e-12 * domain_.length();
                   double cursor = domain_.lo;
                   for (std::size_t i = 0; i < c.pieces.size(); ++i) {
                     const Piece& p = c.pieces[i];
                     if (p.domain.empty())
                       throw Error(ErrorKind::InvalidSignal, "composite piece " + std::to_string(i) + " is empty");
                     if (std::abs(p.domain.lo - cursor) > slack)
                       throw Error(ErrorKind::InvalidSignal,
                                   "composite piece " + std::to_string(i) + " does not abut its predecessor");
                     validate_simple(p.form, p.domain);
                     cursor = p.domain.hi;
                   }
                   if (std::abs(cursor - domain_.hi) > slack)
                     throw Error(ErrorKind::InvalidSignal, "composite pieces do not cover the domain");
                 },
                 [&](const auto& s) { validate_simple(SimpleForm{s}, domain_); },
             },
             form_);
}

double AnalyticSignal::operator()(double x) const {
  return std::visit(overloaded{
                        [&](const Composite& c) { return eval_simple(piece_at(c, x).form, x); },
                        [&](const auto& s) { return eval_simple(SimpleForm{s}, x); },
                    },
                    form_);
}

double AnalyticSignal::derivative(double x, int order) const {
  return std::visit(overloaded{
                        [&](const Composite& c) { return derive_simple(piece_at(c, x).form, x, order); },
                        [&](const auto& s) { return derive_simple(SimpleForm{s}, x, order); },
                    },
                    form_);
}

bool AnalyticSignal::has_jumps() const {
  const auto pieces = detail::smooth_pieces(*this, domain_);
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const double left = detail::value(pieces[i].form, pieces[i].hi);
    const double right = detail::value(pieces[i + 1].form, pieces[i + 1].lo);
    if (std::abs(left - right) > 1e-12 * std::max({1.0, std::abs(left), std::abs(right)})) return true;
  }
  return false;
}

AffineMap AffineMap::inverse() const {
  if (scale == 0.0) throw Error(ErrorKind::DegenerateMap, "affine map with zero scale has no inverse");
  return {1.0 / scale, -offset / scale};
}

// ---------------------------------------------------------------------------
// Signal

Interval Signal::domain() const noexcept {
  return std::visit([](const auto& s) { return s.domain(); }, impl_);
}

double Signal::operator()(double x) const {
  return std::visit([&](const auto& s) { return s(x); }, impl_);
}

double Signal::derivative(double x, int order) const {
  if (const auto* s = sampled()) {
    if (order == 0) return (*s)(x);
    return order == 1 ? s->slope(x) : 0.0;
  }
  return analytic()->derivative(x, order);
}

double evaluate(const Signal& f, double x) {
  const Interval d = f.domain();
  if (!d.contains(x))
    throw Error(ErrorKind::OutOfDomain,
                "x=" + fmt_num(x) + " outside domain [" + fmt_num(d.lo) + ", " + fmt_num(d.hi) + "]");
  return f(x);
}

SampledSignal sample(const AnalyticSignal& f, std::size_t n, Interpolation mode) {
  if (n < 2) throw Error(ErrorKind::BadResolution, "need at least 2 samples, got " + std::to_string(n));
  if (mode == Interpolation::PiecewiseLinear && f.has_jumps())
    throw Error(ErrorKind::JumpInLinearMode, "signal has a jump; sample it in piecewise-constant mode");
  const Interval d = f.domain();
  std::vector<double> grid(n), values(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = i + 1 == n ? d.hi : d.lo + d.length() * static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = f(grid[i]);
  }
  return SampledSignal(std::move(grid), std::move(values), mode);
}

// ---------------------------------------------------------------------------
// Affine conjugation

namespace {

SimpleForm conjugate_simple(const SimpleForm& form, const AffineMap& L, const AffineMap& F) {
  const double fs = F.scale, fo = F.offset;
  return std::visit(
      overloaded{
          [&](const Affine& a) -> SimpleForm {
            return Affine{L.scale * a.slope * fs, L.scale * (a.slope * fo + a.intercept) + L.offset};
          },
          [&](const Jump& j) -> SimpleForm {
            const double loc = (j.location - fo) / fs;
            const double l = L(j.left_value), r = L(j.right_value);
            return fs > 0.0 ? Jump{loc, l, r} : Jump{loc, r, l};
          },
          [&](const Power& p) -> SimpleForm {
            return Power{p.exponent, (p.shift - fo) / fs, L.scale * p.scale * std::pow(std::abs(fs), p.exponent),
                         L(p.offset)};
          },
          [&](const Exponential& e) -> SimpleForm {
            return Exponential{e.rate * fs, L.scale * e.scale * std::exp(e.rate * fo), L(e.offset)};
          },
          [&](const Polynomial& q) -> SimpleForm {
            Polynomial out{(q.center - fo) / fs, q.coefficients};
            double factor = L.scale;
            for (double& c : out.coefficients) {
              c *= factor;
              factor *= fs;
            }
            out.coefficients[0] += L.offset;
            return out;
          },
      },
      form);
}

Interval pull_back(Interval I, const AffineMap& F) {
  const AffineMap inv = F.inverse();
  const double a = inv(I.lo), b = inv(I.hi);
  return {std::min(a, b), std::max(a, b)};
}

void check_maps(const AffineMap& L, const AffineMap& F) {
  if (L.scale == 0.0 || F.scale == 0.0) throw Error(ErrorKind::DegenerateMap, "affine maps need nonzero scale");
}

}  // namespace

AnalyticSignal affine_conjugate(const AnalyticSignal& f, const AffineMap& L, const AffineMap& F) {
  check_maps(L, F);
  const Interval domain = pull_back(f.domain(), F);
  AnalyticForm form = std::visit(overloaded{
                                     [&](const Composite& c) -> AnalyticForm {
                                       Composite out;
                                       for (const Piece& p : c.pieces)
                                         out.pieces.push_back({pull_back(p.domain, F), conjugate_simple(p.form, L, F)});
                                       if (F.scale < 0.0) std::reverse(out.pieces.begin(), out.pieces.end());
                                       // snap outer ends so the tiling check sees exact endpoints
                                       out.pieces.front().domain.lo = domain.lo;
                                       out.pieces.back().domain.hi = domain.hi;
                                       for (std::size_t i = 0; i + 1 < out.pieces.size(); ++i)
                                         out.pieces[i + 1].domain.lo = out.pieces[i].domain.hi;
                                       return out;
                                     },
                                     [&](const auto& s) -> AnalyticForm {
                                       return std::visit([](auto&& v) -> AnalyticForm { return v; },
                                                         conjugate_simple(SimpleForm{s}, L, F));
                                     },
                                 },
                                 f.form());
  return AnalyticSignal(std::move(form), domain);
}

SampledSignal affine_conjugate(const SampledSignal& f, const AffineMap& L, const AffineMap& F) {
  check_maps(L, F);
  const AffineMap inv = F.inverse();
  const auto g = f.grid();
  const auto y = f.values();
  const std::size_t n = g.size();
  std::vector<double> grid(n), values(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = inv(g[i]);
    values[i] = L(y[i]);
  }
  if (F.scale < 0.0) {
    std::reverse(grid.begin(), grid.end());
    if (f.mode() == Interpolation::PiecewiseLinear) {
      std::reverse(values.begin(), values.end());
    } else {
      // new cell k is old cell n-2-k; the trailing value is the one at the new right end
      std::vector<double> cells(n);
      for (std::size_t k = 0; k + 1 < n; ++k) cells[k] = L(y[n - 2 - k]);
      cells[n - 1] = L(y[0]);
      values = std::move(cells);
    }
  }
  return SampledSignal(std::move(grid), std::move(values), f.mode());
}

Signal affine_conjugate(const Signal& f, const AffineMap& L, const AffineMap& F) {
  if (const auto* s = f.sampled()) return Signal(affine_conjugate(*s, L, F));
  return Signal(affine_conjugate(*f.analytic(), L, F));
}

}  // namespace bvq
