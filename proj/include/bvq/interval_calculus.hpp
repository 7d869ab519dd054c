#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bvq/signal.hpp"

namespace bvq {

/// The four interval functionals bundled, plus their ratio.
struct IntervalStats {
  Interval interval;
  double mean = 0.0;
  double oscillation = 0.0;      // (1/|I|) * integral of |f - mean|
  double total_variation = 0.0;  // |Df|(I)
  double level_balance = 0.0;    // |{f < mean}| - |{f > mean}|
  std::optional<double> quotient;  // oscillation / total_variation, absent when tv == 0
};

/// Measures and tail integrals of f about its own mean on I.
struct LevelSplit {
  double mean = 0.0;
  double below = 0.0;       // |{f < mean} ∩ I|
  double above = 0.0;       // |{f > mean} ∩ I|
  double at = 0.0;          // |{f = mean} ∩ I|
  double lower_tail = 0.0;  // integral over {f < mean} of (mean - f)
  double upper_tail = 0.0;  // integral over {f > mean} of (f - mean)
};

double interval_mean(const Signal& f, Interval I);
double interval_oscillation(const Signal& f, Interval I);
double total_variation(const Signal& f, Interval I);
double level_balance(const Signal& f, Interval I);
std::optional<double> poincare_quotient(const Signal& f, Interval I);
IntervalStats interval_stats(const Signal& f, Interval I);

/// Exact level-set decomposition at the mean; the two tails agree up to rounding.
LevelSplit level_split(const Signal& f, Interval I);

/// Integral of |f - level| over I (unnormalized).
double absolute_deviation(const Signal& f, Interval I, double level);

struct WindowStats {
  double center = 0.0;
  double scale = 0.0;
  IntervalStats stats;
};

struct QuotientMap {
  Interval domain;
  std::vector<double> scale_grid;
  std::vector<double> position_grid;  // domain.lo + k * stride
  double stride = 0.0;
  std::vector<WindowStats> entries;   // ordered by scale (as given), then position
};

/// Stats of every window [c - s/2, c + s/2] with c on the stride grid that fits in the domain.
QuotientMap quotient_map(const Signal& f, std::span<const double> scales, double stride);

/// Sum of osc over a deterministic partition of J into pieces of length in [mesh, 2 mesh].
double partition_osc_sum(const Signal& f, Interval J, double mesh);
std::vector<Interval> mesh_partition(Interval J, double mesh);

/// |osc(J) - osc(J.lo, split) - osc(split, J.hi)|
double measure_extension_defect(const Signal& f, Interval J, double split);

}  // namespace bvq
