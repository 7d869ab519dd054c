#include <cmath>
#include <random>

#include "bvq/interval_calculus.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace bvq;

namespace {

Interval random_interval(std::mt19937_64& rng, Interval d) {
  std::uniform_real_distribution<double> u(d.lo, d.hi);
  const double a = u(rng), b = u(rng);
  return {std::min(a, b), std::max(a, b)};
}

void check_against_oracle(const Signal& f, Interval I, double tol) {
  const IntervalStats s = interval_stats(f, I);
  const auto breaks = f.sampled() ? f.sampled()->grid() : std::span<const double>{};
  const oracle::Stats o = oracle::quadrature([&](double x) { return f(x); }, I, breaks);
  CHECK(std::abs(s.mean - o.mean) <= tol);
  CHECK(std::abs(s.oscillation - o.osc) <= tol);
  CHECK(std::abs(s.total_variation - o.tv) <= tol);
  CHECK(std::abs(s.level_balance - o.balance) <= tol);
}

}  // namespace

TEST_CASE("functionals match quadrature on analytic signals") {
  const std::vector<AnalyticSignal> fs{
      AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {-1.0, 1.0}),
      AnalyticSignal(Polynomial{0.1, {0.3, -1.0, 0.0, 4.0}}, {-1.0, 1.0}),
      AnalyticSignal(Exponential{2.0, 1.0, 0.0}, {-1.0, 1.0}),
      AnalyticSignal(Power{2.5, -1.0, 1.0, 0.0}, {-1.0, 1.0}),
      AnalyticSignal(Power{0.5, 1.0, -1.0, 0.0}, {-1.0, 1.0}),
  };
  std::mt19937_64 rng(3);
  for (const AnalyticSignal& a : fs) {
    check_against_oracle(Signal(a), a.domain(), 1e-6);
    for (int i = 0; i < 3; ++i) check_against_oracle(Signal(a), random_interval(rng, a.domain()), 1e-6);
  }
}

TEST_CASE("functionals match quadrature on sampled signals") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Signal pl(random_sampled_signal(seed, 40, Interpolation::PiecewiseLinear));
    check_against_oracle(pl, random_interval(rng, pl.domain()), 1e-6);
    const Signal pc(random_sampled_signal(seed, 40, Interpolation::PiecewiseConstant));
    check_against_oracle(pc, random_interval(rng, pc.domain()), 1e-6);
  }
}

TEST_CASE("affine signals have quotient exactly one quarter") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Signal f(generate_family(FamilyKind::RandomAffine, seed));
    for (int i = 0; i < 10; ++i) {
      const Interval I = random_interval(rng, f.domain());
      CHECK(std::abs(*poincare_quotient(f, I) - 0.25) <= 1e-12);
      CHECK(std::abs(level_balance(f, I)) <= 1e-12 * I.length());
    }
  }
}

TEST_CASE("constant and jump quotients") {
  const Signal c(AnalyticSignal(Affine{0.0, 3.0}, {0.0, 1.0}));
  CHECK_FALSE(poincare_quotient(c, {0.2, 0.7}).has_value());
  CHECK(interval_oscillation(c, {0.2, 0.7}) == 0.0);
  CHECK(level_split(c, {0.2, 0.7}).at == doctest::Approx(0.5));

  for (double t : {0.1, 0.25, 0.5, 0.8}) {
    const Signal j(AnalyticSignal(Jump{t, 0.0, 1.0}, {0.0, 1.0}));
    CHECK(std::abs(*poincare_quotient(j, {0.0, 1.0}) - 2 * t * (1 - t)) <= 1e-12);
  }
}

TEST_CASE("level split bookkeeping") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Signal f(random_sampled_signal(seed, 25, seed % 2 ? Interpolation::PiecewiseConstant
                                                             : Interpolation::PiecewiseLinear));
    const Interval I{0.1, 0.9};
    const LevelSplit s = level_split(f, I);
    CHECK(s.below + s.above + s.at == doctest::Approx(I.length()));
    CHECK(std::abs(s.lower_tail - s.upper_tail) <= 1e-12);
    CHECK(level_balance(f, I) == doctest::Approx(s.below - s.above));
    // the mean is the one level where both tails agree, so |f - m| integrates to twice either tail
    CHECK(absolute_deviation(f, I, s.mean) == doctest::Approx(2 * s.upper_tail));
    CHECK(interval_oscillation(f, I) * I.length() == doctest::Approx(2 * s.upper_tail));
  }
}

TEST_CASE("oscillation bounded by half the variation") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Signal f(random_sampled_signal(seed, 30, seed % 2 ? Interpolation::PiecewiseConstant
                                                             : Interpolation::PiecewiseLinear));
    const IntervalStats s = interval_stats(f, {0.0, 1.0});
    CHECK(s.oscillation <= 0.5 * s.total_variation + 1e-12);
    if (s.quotient) CHECK(*s.quotient >= 0.0);
  }
}

TEST_CASE("quotient is invariant under affine conjugation") {
  const Signal f(AnalyticSignal(Polynomial{0.0, {0.0, 1.0, 0.0, 1.0}}, {-1.0, 1.0}));
  const AffineMap L{-3.0, 2.0}, F{0.5, -0.5};  // F maps [-1, 3] onto [-1, 1]
  const Signal g = affine_conjugate(f, L, F);
  const Interval I{-0.3, 0.8};
  const Interval J{F.inverse()(I.lo), F.inverse()(I.hi)};
  CHECK(*poincare_quotient(g, J) == doctest::Approx(*poincare_quotient(f, I)).epsilon(1e-12));
}

TEST_CASE("interval checks") {
  const Signal f(AnalyticSignal(Affine{1.0, 0.0}, {0.0, 1.0}));
  CHECK_THROWS_AS(interval_mean(f, {0.5, 0.5}), Error);
  CHECK_THROWS_AS(interval_mean(f, {0.5, 1.5}), Error);
  CHECK_NOTHROW(interval_mean(f, {0.0, 1.0}));
  try {
    total_variation(f, {0.7, 0.2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyInterval);
  }
}

TEST_CASE("quotient map layout") {
  const Signal f(AnalyticSignal(Affine{2.0, 0.0}, {0.0, 1.0}));
  const std::vector<double> scales{0.5, 0.25};
  const QuotientMap m = quotient_map(f, scales, 0.125);
  CHECK(m.scale_grid == scales);
  CHECK(m.position_grid.front() == 0.0);
  // scale 0.5 fits centers 0.25..0.75 (5), scale 0.25 fits 0.125..0.875 (7)
  REQUIRE(m.entries.size() == 12);
  CHECK(m.entries.front().scale == 0.5);
  CHECK(m.entries.front().center == doctest::Approx(0.25));
  CHECK(m.entries.back().scale == 0.25);
  CHECK(m.entries.back().center == doctest::Approx(0.875));
  for (const WindowStats& w : m.entries) {
    CHECK(w.stats.interval.length() == doctest::Approx(w.scale));
    CHECK(*w.stats.quotient == doctest::Approx(0.25));
  }

  const std::vector<double> too_big{2.0};
  CHECK_THROWS_AS(quotient_map(f, too_big, 0.1), Error);
  const std::vector<double> bad{-0.1};
  CHECK_THROWS_AS(quotient_map(f, bad, 0.1), Error);
  CHECK_THROWS_AS(quotient_map(f, scales, 0.0), Error);
}

TEST_CASE("mesh partition and oscillation sums") {
  for (double mesh : {0.07, 0.1, 0.3, 1.0}) {
    const auto parts = mesh_partition({0.0, 1.0}, mesh);
    CHECK(parts.front().lo == 0.0);
    CHECK(parts.back().hi == 1.0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      CHECK(parts[i].length() >= mesh * (1 - 1e-12));
      CHECK(parts[i].length() <= 2 * mesh);
      if (i) CHECK(parts[i].lo == parts[i - 1].hi);
    }
  }
  CHECK_THROWS_AS(mesh_partition({0.0, 1.0}, 1.5), Error);
  CHECK_THROWS_AS(mesh_partition({0.0, 1.0}, 0.0), Error);

  const Signal f(AnalyticSignal(Affine{-3.0, 1.0}, {0.0, 2.0}));
  CHECK(partition_osc_sum(f, {0.0, 2.0}, 0.3) == doctest::Approx(3.0 * 2.0 / 4.0));

  // for a general signal the sum stays below |Df|/2
  const Signal g(random_sampled_signal(7, 50, Interpolation::PiecewiseLinear));
  CHECK(partition_osc_sum(g, {0.0, 1.0}, 0.05) <= 0.5 * total_variation(g, {0.0, 1.0}));
}

TEST_CASE("additivity defect") {
  const Signal a(AnalyticSignal(Affine{1.7, -0.2}, {0.0, 1.0}));
  for (double s : {0.1, 0.5, 0.77}) CHECK(measure_extension_defect(a, {0.0, 1.0}, s) <= 1e-15);
  CHECK_THROWS_AS(measure_extension_defect(a, {0.0, 1.0}, 1.0), Error);

  const Signal sq(AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {-1.0, 1.0}));
  // both halves and the whole have the same oscillation, so the defect equals it
  const auto o = [&](Interval I) { return oracle::quadrature([&](double x) { return sq(x); }, I).osc; };
  const double expect = std::abs(o({-1.0, 1.0}) - o({-1.0, 0.0}) - o({0.0, 1.0}));
  CHECK(measure_extension_defect(sq, {-1.0, 1.0}, 0.0) == doctest::Approx(expect).epsilon(1e-6));
  CHECK(measure_extension_defect(sq, {-1.0, 1.0}, 0.0) == doctest::Approx(o({0.0, 1.0})).epsilon(1e-6));
}
