#pragma once

#include <algorithm>
#include <cmath>

namespace bvq {

/// Open interval (lo, hi). Validity is checked by the functionals that consume it.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  constexpr double length() const noexcept { return hi - lo; }
  constexpr double center() const noexcept { return 0.5 * (lo + hi); }
  constexpr bool empty() const noexcept { return !(lo < hi); }

  // closed-interval membership; functionals accept the closure of the domain
  constexpr bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& other, double slack = 0.0) const noexcept {
    return other.lo >= lo - slack && other.hi <= hi + slack;
  }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace bvq
