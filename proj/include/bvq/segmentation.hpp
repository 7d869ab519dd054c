#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bvq/interval_calculus.hpp"

namespace bvq {

enum class SegmentClass { Affine, Jump, Constant, Other };

std::string_view to_string(SegmentClass c);

struct Segment {
  Interval interval;
  SegmentClass kind = SegmentClass::Other;
  // affine: slope, intercept; jump: location, left_value, right_value; constant: value; other: mean
  std::vector<std::pair<std::string, double>> parameters;
  double max_quotient_deviation = 0.0;
};

struct SegmentationReport {
  std::vector<Segment> segments;  // ordered, tiling the domain
};

struct ClassifyOptions {
  double tol = 1e-3;
  int min_scales = 3;  // distinct scales an affine segment must be probed at
};

/// Partition of the map's domain into affine / jump / constant / other segments.
///
/// Jump points are grid positions where the two finest centered windows reach
/// Q >= 1/2 - tol; each claims the largest centered window that keeps that
/// bound. The remaining gaps are swept left to right: a segment is affine while
/// every map window inside it has |Q - 1/4| <= tol (probed at >= min_scales
/// scales), constant while every window inside it has zero variation.
SegmentationReport classify_segments(const Signal& f, const QuotientMap& map, const ClassifyOptions& options = {});

}  // namespace bvq
