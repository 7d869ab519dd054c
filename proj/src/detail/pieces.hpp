#pragma once

// Decomposition of any signal into smooth pieces with closed-form integrals.
// All interval functionals are built on top of this.

#include <span>
#include <variant>
#include <vector>

#include "bvq/signal.hpp"

namespace bvq::detail {

/// Linear cell given by its endpoints; exact for sampled data.
struct Segment {
  double x0, y0, x1, y1;
};

using Smooth = std::variant<Segment, Affine, Power, Exponential, Polynomial>;

struct SmoothPiece {
  double lo;
  double hi;
  Smooth form;
};

double value(const Smooth& s, double x);
double integral(const Smooth& s, double u, double v);
double derivative(const Smooth& s, double x, int order);
bool is_flat(const Smooth& s);
bool is_linear(const Smooth& s);

/// s(x) - s(xr), computed as slope * (x - xr) for linear forms.
double difference(const Smooth& s, double x, double xr);

/// Interior points of (u, v) where the derivative changes sign, ascending.
void critical_points(const Smooth& s, double u, double v, std::vector<double>& out);

/// Point c in [u, v] with s(c) = level, for s monotone on [u, v] with
/// s(u) - level and s(v) - level of opposite sign.
double crossing(const Smooth& s, double level, double u, double v);

/// Pieces of f clipped to [I.lo, I.hi], left to right. Zero-length pieces are dropped.
std::vector<SmoothPiece> smooth_pieces(const Signal& f, Interval I);
std::vector<SmoothPiece> smooth_pieces(const AnalyticSignal& f, Interval I);

/// Real roots of sum_j c[j] t^j in the open interval (tu, tv), ascending.
std::vector<double> polynomial_roots(std::span<const double> coeffs, double tu, double tv);

double polynomial_value(std::span<const double> coeffs, double t);

/// Same pieces, then split at critical points so each is monotone.
std::vector<SmoothPiece> monotone_pieces(const Signal& f, Interval I);

}  // namespace bvq::detail
