#include <cmath>
#include <random>

#include "bvq/interval_calculus.hpp"
#include "bvq/rigidity.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace bvq;

namespace {

const Signal square(AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {-1.0, 1.0}));
const Signal expo(AnalyticSignal(Exponential{1.0, 1.0, 0.0}, {0.0, 1.0}));

double osc(const Signal& f, double x, double y) { return interval_oscillation(f, {x, y}); }

}  // namespace

TEST_CASE("one-sided derivative of the oscillation") {
  const double h = 1e-5;
  for (const auto& [x, y] : std::vector<std::pair<double, double>>{{-0.8, 0.3}, {-0.5, 0.9}, {0.1, 0.6}}) {
    const double right = (osc(square, x, y + h) - osc(square, x, y - h)) / (2 * h);
    CHECK(osc_derivative_rhs(square, x, y) == doctest::Approx(right).epsilon(1e-6));
    const double left = (osc(square, x + h, y) - osc(square, x - h, y)) / (2 * h);
    CHECK(osc_derivative_rhs(square, x, y, Side::Left) == doctest::Approx(-left).epsilon(1e-6));
  }
}

TEST_CASE("one-sided derivative on an affine signal is |f'|/4") {
  const Signal f(AnalyticSignal(Affine{-2.0, 1.0}, {0.0, 1.0}));
  for (const auto& [x, y] : probe_grid({0.05, 0.95}, 4)) {
    CHECK(std::abs(osc_derivative_rhs(f, x, y) - 0.5) <= 1e-12);
    CHECK(std::abs(osc_derivative_rhs(f, x, y, Side::Left) - 0.5) <= 1e-12);
  }
}

TEST_CASE("flat at the mean is rejected") {
  const Signal c(AnalyticSignal(Affine{0.0, 1.0}, {0.0, 1.0}));
  try {
    osc_derivative_rhs(c, 0.1, 0.5);
    FAIL("expected FlatAtMean");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FlatAtMean);
  }
}

TEST_CASE("probe grid") {
  const auto g = probe_grid({0.0, 1.0}, 4);
  CHECK(g.size() == 10);
  for (const auto& [x, y] : g) {
    CHECK(x < y);
    CHECK(x >= 0.0);
    CHECK(y <= 1.0);
  }
}

TEST_CASE("finite-difference residual report") {
  const auto grid = probe_grid({0.05, 0.95}, 4);
  const auto a = lemma_residual(expo, grid, 1e-3);
  const auto b = lemma_residual(expo, grid, 5e-4);
  CHECK(a.probes.size() == grid.size());
  CHECK(a.max_fd_residual < 1e-5);
  CHECK(a.max_fd_residual / b.max_fd_residual == doctest::Approx(4.0).epsilon(0.1));
  for (const LemmaProbe& p : a.probes) {
    CHECK(p.lhs == doctest::Approx(std::exp(p.y) / 4));
    CHECK(p.identity_residual == doctest::Approx(std::abs(p.lhs - p.rhs)));
  }
}

TEST_CASE("taylor coefficients") {
  const AnalyticSignal p(Polynomial{0.0, {5.0, 1.0, -2.0, 3.0, 7.0}}, {-2.0, 2.0});
  const TaylorCoeffs c = taylor_coeffs(p, 0.0);
  CHECK(c.a[0] == doctest::Approx(1.0));
  CHECK(c.a[1] == doctest::Approx(-2.0));
  CHECK(c.a[2] == doctest::Approx(3.0));
  CHECK(c.a[3] == doctest::Approx(7.0));

  const TaylorCoeffs e = taylor_coeffs(AnalyticSignal(Exponential{1.0, 1.0, 0.0}, {0.0, 1.0}), 0.5);
  const TaylorCoeffs fit = fit_taylor(expo, 0.5, 0.05);
  for (int j = 0; j < 3; ++j) CHECK(fit.a[j] == doctest::Approx(e.a[j]).epsilon(1e-4));
  CHECK(fit.residual < 1e-9);

  CHECK_THROWS_AS(fit_taylor(expo, 0.5, 1e-6), Error);
}

TEST_CASE("rigidity defect") {
  const AnalyticSignal cube(Polynomial{0.0, {0.0, 0.0, 0.0, 1.0}}, {0.0, 2.0});
  CHECK(rigidity_defect(taylor_coeffs(cube, 1.0)) == doctest::Approx(9.0));
  // f' = A (x - B)^(3/2)
  for (double B : {-1.0, 0.0}) {
    const AnalyticSignal f(Power{2.5, B, 0.4 * 1.7, 0.3}, {0.0, 2.0});
    for (double x : {0.3, 1.0, 1.9}) CHECK(std::abs(rigidity_defect(taylor_coeffs(f, x))) <= 1e-8);
  }
  CHECK(rigidity_defect(taylor_coeffs(AnalyticSignal(Affine{2.0, 1.0}, {0.0, 1.0}), 0.5)) == 0.0);
}

TEST_CASE("taylor expansion check on x^2 and e^x") {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const Signal sq(AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {0.0, 2.0}));
  const auto r = taylor_expansion_check(sq, 1.0, eps);
  CHECK(r.rho_ratio_limit == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
  CHECK(r.cubic_coefficient == doctest::Approx(1.0 / 36.0).epsilon(1e-6));
  CHECK(r.cubic_coefficient_predicted == doctest::Approx(1.0 / 36.0));
  REQUIRE(r.steps.size() == 3);
  for (const TaylorStep& s : r.steps) {
    const auto o = oracle::quadrature([&](double x) { return sq(x); }, {1.0 - s.eps, 1.0 + s.eps});
    CHECK(s.oscillation == doctest::Approx(o.osc).epsilon(1e-6));
    CHECK(s.quarter_tv == doctest::Approx(o.tv / 4).epsilon(1e-6));
  }

  const auto e = taylor_expansion_check(expo, 0.5, eps);
  const double a1 = std::exp(0.5), a2 = a1 / 2, a3 = a1 / 6;
  CHECK(e.rho_ratio_limit == doctest::Approx(a2 / (3 * a1)).epsilon(1e-3));
  CHECK(e.cubic_coefficient == doctest::Approx(a3 / 4 + a2 * a2 / (18 * a1)).epsilon(1e-3));
  REQUIRE(e.rho_error_order.has_value());
  CHECK(*e.rho_error_order > 3.5);

  CHECK_THROWS_AS(taylor_expansion_check(square, 0.0, eps), Error);
}

TEST_CASE("extrapolation in eps squared") {
  const std::vector<double> eps{0.4, 0.2, 0.1};
  std::vector<double> v;
  for (double e : eps) v.push_back(1.0 + 2 * e * e - 3 * std::pow(e, 4));
  CHECK(extrapolate_to_zero(eps, v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ode family") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    const double A = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    CHECK(ode_family_check(A, -0.5, {0.0, 1.0}, 50) <= 1e-10);
  }
  CHECK(ode_family_check(1.0, 0.0, {0.0, 1.0}, 50) <= 1e-10);
  CHECK_THROWS_AS(ode_family_check(1.0, 0.5, {0.0, 1.0}, 50), Error);
  CHECK(ode_residual_max(AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {1.0, 2.0}), {1.0, 2.0}, 20) > 1.0);
}

TEST_CASE("power-law quotient and phi") {
  CHECK(power_quotient(1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(power_quotient(2.5) - 0.2472900816) <= 1e-9);
  CHECK(std::abs(phi(2.5, 0.0, 1.0) - 0.0027099184) <= 1e-9);
  CHECK(std::abs(phi(1.0, 0.2, 0.9)) <= 1e-15);
  for (double s : {0.5, 1.5, 3.0}) {
    const auto o = oracle::quadrature([s](double x) { return std::pow(x, s); }, {0.0, 1.0});
    CHECK(power_quotient(s) == doctest::Approx(o.osc / o.tv).epsilon(1e-6));
    CHECK(phi(s, 0.0, 1.0) == doctest::Approx(o.tv / 4 - o.osc).epsilon(1e-5));
    const double c = power_crossing(s, 0.0, 1.0);
    CHECK(std::pow(c, s) == doctest::Approx(o.mean).epsilon(1e-8));
  }
  CHECK_THROWS_AS(power_quotient(0.0), Error);
  CHECK_THROWS_AS(phi(2.0, 1.0, 0.5), Error);
  CHECK_THROWS_AS(phi(2.0, -1.0, 0.5), Error);
}

TEST_CASE("exponent equation") {
  CHECK(std::abs(exponent_function(1.0)) <= 1e-15);
  CHECK(std::abs(exponent_function(2.5) - 0.0108988508) <= 1e-9);
  for (double s : {0.7, 1.3, 2.5, 3.1})
    CHECK(exponent_function(s) == doctest::Approx(-std::log(power_quotient(s) * 4)).epsilon(1e-12).scale(1.0));
  const auto roots = exponent_equation_solve(0.5, 4.0, 1e-12);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(roots[1] - 2.3685648182) <= 1e-9);
  CHECK_THROWS_AS(exponent_equation_solve(0.0, 1.0, 1e-12), Error);
  CHECK_THROWS_AS(exponent_equation_solve(2.0, 1.0, 1e-12), Error);
}
