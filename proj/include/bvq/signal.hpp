#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "bvq/error.hpp"
#include "bvq/interval.hpp"

namespace bvq {

enum class Interpolation { PiecewiseLinear, PiecewiseConstant };

std::string_view to_string(Interpolation mode);

/// Samples on a strictly increasing grid. Piecewise-constant cells are
/// right-continuous: the value on [grid[i], grid[i+1]) is values[i].
class SampledSignal {
public:
  SampledSignal(std::vector<double> grid, std::vector<double> values,
                Interpolation mode = Interpolation::PiecewiseLinear);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  Interpolation mode() const noexcept { return mode_; }
  Interval domain() const noexcept { return {grid_.front(), grid_.back()}; }
  std::size_t size() const noexcept { return grid_.size(); }

  /// Index i of the cell [grid[i], grid[i+1]) holding x; the last cell is closed.
  std::size_t cell_of(double x) const noexcept;

  double operator()(double x) const noexcept;
  /// Slope of the cell holding x (right cell at breakpoints); 0 in constant mode.
  double slope(double x) const noexcept;

private:
  std::vector<double> grid_;
  std::vector<double> values_;
  Interpolation mode_;
};

// Closed-form families. Each is evaluated in global coordinates.
struct Affine {
  double slope = 1.0;
  double intercept = 0.0;
};

/// left_value for x < location, right_value for x >= location.
struct Jump {
  double location = 0.5;
  double left_value = 0.0;
  double right_value = 1.0;
};

/// scale * |x - shift|^exponent + offset
struct Power {
  double exponent = 1.0;
  double shift = 0.0;
  double scale = 1.0;
  double offset = 0.0;
};

/// scale * exp(rate * x) + offset
struct Exponential {
  double rate = 1.0;
  double scale = 1.0;
  double offset = 0.0;
};

/// sum_j coefficients[j] * (x - center)^j
struct Polynomial {
  double center = 0.0;
  std::vector<double> coefficients;
};

using SimpleForm = std::variant<Affine, Jump, Power, Exponential, Polynomial>;

struct Piece {
  Interval domain;
  SimpleForm form;
};

/// Pieces ordered left to right, tiling the composite's domain.
/// At an interior boundary the right piece is used (right-continuous).
struct Composite {
  std::vector<Piece> pieces;
};

using AnalyticForm = std::variant<Affine, Jump, Power, Exponential, Polynomial, Composite>;

class AnalyticSignal {
public:
  AnalyticSignal(AnalyticForm form, Interval domain);

  const AnalyticForm& form() const noexcept { return form_; }
  Interval domain() const noexcept { return domain_; }

  double operator()(double x) const;
  /// k-th derivative of the smooth part at x. Jumps contribute nothing.
  double derivative(double x, int order = 1) const;
  bool has_jumps() const;

private:
  AnalyticForm form_;
  Interval domain_;
};

struct AffineMap {
  double scale = 1.0;
  double offset = 0.0;

  constexpr double operator()(double x) const noexcept { return scale * x + offset; }
  AffineMap inverse() const;
};

class Signal {
public:
  Signal(SampledSignal s) : impl_(std::move(s)) {}
  Signal(AnalyticSignal s) : impl_(std::move(s)) {}

  Interval domain() const noexcept;
  bool is_sampled() const noexcept { return std::holds_alternative<SampledSignal>(impl_); }
  const SampledSignal* sampled() const noexcept { return std::get_if<SampledSignal>(&impl_); }
  const AnalyticSignal* analytic() const noexcept { return std::get_if<AnalyticSignal>(&impl_); }

  double operator()(double x) const;
  double derivative(double x, int order = 1) const;

private:
  std::variant<SampledSignal, AnalyticSignal> impl_;
};

/// f(x), with OutOfDomain outside the closed domain.
double evaluate(const Signal& f, double x);

/// Uniform n-point grid over the analytic domain, values taken at grid points.
SampledSignal sample(const AnalyticSignal& f, std::size_t n,
                     Interpolation mode = Interpolation::PiecewiseLinear);

/// x -> L(f(F(x))). The new domain is the preimage of f's domain under F.
Signal affine_conjugate(const Signal& f, const AffineMap& L, const AffineMap& F);
AnalyticSignal affine_conjugate(const AnalyticSignal& f, const AffineMap& L, const AffineMap& F);
SampledSignal affine_conjugate(const SampledSignal& f, const AffineMap& L, const AffineMap& F);

enum class FamilyKind {
  RandomAffine,
  RandomCenteredJump,
  RandomOffcenterJump,
  RandomMonotonePolynomial,
  RandomPiecewiseAffine,
  Power,
};

FamilyKind parse_family_kind(std::string_view name);
std::string_view to_string(FamilyKind kind);

struct FamilyParams {
  Interval domain{0.0, 1.0};
  double exponent = 2.5;  // Power only
  int degree = 3;         // RandomMonotonePolynomial
  int pieces = 4;         // RandomPiecewiseAffine
};

AnalyticSignal generate_family(FamilyKind kind, std::uint64_t seed, const FamilyParams& params = {});

/// Random samples on a jittered grid; test-corpus helper for property checks.
SampledSignal random_sampled_signal(std::uint64_t seed, std::size_t n, Interpolation mode,
                                    Interval domain = {0.0, 1.0});

}  // namespace bvq
