#include "bvq/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bvq {
namespace {

struct Window {
  Interval interval;
  double scale;
  std::optional<double> quotient;
};

class Classifier {
public:
  Classifier(const Signal& f, const QuotientMap& map, const ClassifyOptions& opt)
      : f_(f), map_(map), opt_(opt), slack_(1e-9 * map.domain.length()) {
    for (const WindowStats& e : map.entries) windows_.push_back({e.stats.interval, e.scale, e.stats.quotient});
  }

  SegmentationReport run() {
    std::vector<Segment> jumps = jump_segments();
    std::vector<Segment> out;
    double cursor = map_.domain.lo;
    for (const Segment& j : jumps) {
      sweep({cursor, j.interval.lo}, out);
      out.push_back(j);
      cursor = j.interval.hi;
    }
    sweep({cursor, map_.domain.hi}, out);
    settle_other(out);
    merge(out);
    for (Segment& s : out) describe(s);
    return {std::move(out)};
  }

private:
  bool affine_ok(const Window& w) const { return w.quotient && std::abs(*w.quotient - 0.25) <= opt_.tol; }
  bool flat_ok(const Window& w) const { return !w.quotient; }
  bool jump_ok(std::optional<double> q) const { return q && *q >= 0.5 - opt_.tol; }

  bool within(const Interval& w, const Interval& seg) const { return seg.contains(w, slack_); }

  std::vector<Segment> jump_segments() const {
    std::set<double> scale_set(map_.scale_grid.begin(), map_.scale_grid.end());
    if (scale_set.size() < 2) return {};
    const double s0 = *scale_set.begin();
    const double s1 = *std::next(scale_set.begin());

    std::map<std::pair<double, std::size_t>, std::optional<double>> q;  // (scale, position index)
    for (const WindowStats& e : map_.entries) {
      const auto it = std::lower_bound(map_.position_grid.begin(), map_.position_grid.end(), e.center);
      q[{e.scale, static_cast<std::size_t>(it - map_.position_grid.begin())}] = e.stats.quotient;
    }
    auto at = [&](double s, std::size_t k) -> std::optional<double> {
      const auto it = q.find({s, k});
      return it == q.end() ? std::nullopt : it->second;
    };

    // runs of adjacent candidate positions collapse onto their strongest member
    std::vector<std::size_t> points;
    double best = -1.0;
    std::size_t best_k = 0;
    bool in_run = false;
    for (std::size_t k = 0; k <= map_.position_grid.size(); ++k) {
      const bool hit = k < map_.position_grid.size() && jump_ok(at(s0, k)) && jump_ok(at(s1, k));
      if (hit) {
        const double score = *at(s0, k) + *at(s1, k);
        if (!in_run || score > best) {
          best = score;
          best_k = k;
        }
        in_run = true;
      } else if (in_run) {
        points.push_back(best_k);
        in_run = false;
      }
    }

    std::vector<Segment> out;
    const Interval d = map_.domain;
    for (std::size_t k : points) {
      const double p = map_.position_grid[k];
      const double floor = out.empty() ? d.lo : out.back().interval.hi;
      double r = 0.5 * s0;
      if (p - r < floor - slack_) continue;
      for (;;) {
        const double next = r + map_.stride;
        const Interval w{p - next, p + next};
        if (w.lo < floor - slack_ || w.hi > d.hi + slack_) break;
        if (!jump_ok(interval_stats(f_, {std::max(w.lo, d.lo), std::min(w.hi, d.hi)}).quotient)) break;
        r = next;
      }
      Segment s;
      s.interval = {std::max(p - r, d.lo), std::min(p + r, d.hi)};
      s.kind = SegmentClass::Jump;
      s.parameters = {{"location", p}};
      out.push_back(std::move(s));
    }
    return out;
  }

  // extent reached from u while every window starting at or after u passes ok()
  template <class Ok>
  double reach(const Interval& gap, double u, Ok&& ok, std::set<double>* scales, int* seen) const {
    std::vector<const Window*> ws;
    for (const Window& w : windows_)
      if (w.interval.lo >= u - slack_ && within(w.interval, gap)) ws.push_back(&w);
    std::sort(ws.begin(), ws.end(), [](const Window* a, const Window* b) {
      return a->interval.hi < b->interval.hi || (a->interval.hi == b->interval.hi && a->interval.lo < b->interval.lo);
    });
    if (seen) *seen = static_cast<int>(ws.size());
    double v = u;
    for (const Window* w : ws) {
      if (!ok(*w)) return v;
      v = std::max(v, w->interval.hi);
      if (scales) scales->insert(w->scale);
    }
    return gap.hi;
  }

  void sweep(const Interval& gap, std::vector<Segment>& out) const {
    if (gap.length() <= slack_) return;
    const std::size_t first = out.size();
    double u = gap.lo;
    while (u < gap.hi - slack_) {
      std::set<double> scales;
      int seen = 0;
      const double va = reach(gap, u, [&](const Window& w) { return affine_ok(w); }, &scales, &seen);
      if (seen == 0) {
        // nothing probes the tail; it joins its left neighbour
        if (out.size() > first) {
          out.back().interval.hi = gap.hi;
        } else {
          out.push_back({{u, gap.hi}, SegmentClass::Other, {}, 0.0});
        }
        return;
      }
      if (va > u + slack_ && static_cast<int>(scales.size()) >= opt_.min_scales) {
        out.push_back({{u, va}, SegmentClass::Affine, {}, 0.0});
        u = va;
        continue;
      }
      const double vc = reach(gap, u, [&](const Window& w) { return flat_ok(w); }, nullptr, nullptr);
      if (vc > u + slack_) {
        out.push_back({{u, vc}, SegmentClass::Constant, {}, 0.0});
        u = vc;
        continue;
      }
      double next = gap.hi;
      for (const Window& w : windows_)
        if (w.interval.lo > u + slack_ && within(w.interval, gap)) next = std::min(next, w.interval.lo);
      out.push_back({{u, next}, SegmentClass::Other, {}, 0.0});
      u = next;
    }
  }

  void settle_other(std::vector<Segment>& segs) const {
    // merge runs of other first so the flatness test sees the whole run
    std::vector<Segment> merged;
    for (Segment& s : segs) {
      if (!merged.empty() && merged.back().kind == SegmentClass::Other && s.kind == SegmentClass::Other) {
        merged.back().interval.hi = s.interval.hi;
      } else {
        merged.push_back(std::move(s));
      }
    }
    for (Segment& s : merged)
      if (s.kind == SegmentClass::Other && total_variation(f_, s.interval) == 0.0) s.kind = SegmentClass::Constant;
    segs = std::move(merged);
  }

  std::pair<double, double> line_fit(const Interval& I) const {
    constexpr int n = 65;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      const double x = I.lo + I.length() * (i + 0.5) / n;
      const double y = f_(x);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
  }

  bool compatible(const Segment& a, const Segment& b) const {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case SegmentClass::Other: return true;
      case SegmentClass::Jump: return false;
      case SegmentClass::Constant: {
        const double va = interval_mean(f_, a.interval), vb = interval_mean(f_, b.interval);
        return std::abs(va - vb) <= 1e-12 * std::max({1.0, std::abs(va), std::abs(vb)});
      }
      case SegmentClass::Affine: {
        const auto [sa, ia] = line_fit(a.interval);
        const auto [sb, ib] = line_fit(b.interval);
        const double x = a.interval.hi;
        const double scale = std::max({1.0, std::abs(sa), std::abs(sb)});
        return std::abs(sa - sb) <= 1e-9 * scale && std::abs((sa * x + ia) - (sb * x + ib)) <= 1e-9 * scale;
      }
    }
    return false;
  }

  void merge(std::vector<Segment>& segs) const {
    std::vector<Segment> out;
    for (Segment& s : segs) {
      if (!out.empty() && compatible(out.back(), s)) {
        out.back().interval.hi = s.interval.hi;
      } else {
        out.push_back(std::move(s));
      }
    }
    segs = std::move(out);
  }

  void describe(Segment& s) const {
    const Interval I = s.interval;
    double dev = 0.0;
    switch (s.kind) {
      case SegmentClass::Affine: {
        const auto [slope, intercept] = line_fit(I);
        s.parameters = {{"slope", slope}, {"intercept", intercept}};
        for (const Window& w : windows_)
          if (within(w.interval, I) && w.quotient) dev = std::max(dev, std::abs(*w.quotient - 0.25));
        break;
      }
      case SegmentClass::Jump: {
        const double p = s.parameters.front().second;
        s.parameters = {{"location", p},
                        {"left_value", interval_mean(f_, {I.lo, p})},
                        {"right_value", interval_mean(f_, {p, I.hi})}};
        const auto q = poincare_quotient(f_, I);
        dev = q ? std::abs(0.5 - *q) : 0.5;
        break;
      }
      case SegmentClass::Constant:
        s.parameters = {{"value", interval_mean(f_, I)}};
        break;
      case SegmentClass::Other:
        s.parameters = {{"mean", interval_mean(f_, I)}};
        for (const Window& w : windows_)
          if (within(w.interval, I) && w.quotient) dev = std::max(dev, std::abs(*w.quotient - 0.25));
        break;
    }
    s.max_quotient_deviation = dev;
  }

  const Signal& f_;
  const QuotientMap& map_;
  ClassifyOptions opt_;
  double slack_;
  std::vector<Window> windows_;
};

}  // namespace

std::string_view to_string(SegmentClass c) {
  switch (c) {
    case SegmentClass::Affine: return "affine";
    case SegmentClass::Jump: return "jump";
    case SegmentClass::Constant: return "constant";
    case SegmentClass::Other: return "other";
  }
  return "other";
}

SegmentationReport classify_segments(const Signal& f, const QuotientMap& map, const ClassifyOptions& options) {
  if (map.entries.empty()) throw Error(ErrorKind::EmptyMap, "quotient map has no entries");
  return Classifier(f, map, options).run();
}

}  // namespace bvq
