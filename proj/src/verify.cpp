#include "bvq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "bvq/interval_calculus.hpp"
#include "bvq/rigidity.hpp"

namespace bvq {
namespace {

using Json = nlohmann::ordered_json;

CheckResult at_most(std::string name, int probes, double value, double tol, Json details = Json::object()) {
  return {std::move(name), probes, value, tol, false, value <= tol, std::move(details)};
}

CheckResult above(std::string name, int probes, double value, double threshold, Json details = Json::object()) {
  return {std::move(name), probes, value, threshold, true, value > threshold, std::move(details)};
}

double tol_or(const VerifyOptions& o, double fallback) { return o.tol.value_or(fallback); }

Interval random_interval(std::mt19937_64& rng, Interval d) {
  std::uniform_real_distribution<double> u(d.lo, d.hi);
  double a = u(rng), b = u(rng);
  while (std::abs(a - b) < 1e-3 * d.length()) b = u(rng);
  return {std::min(a, b), std::max(a, b)};
}

void affine_suite(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const double tol = tol_or(o, 1e-10);
  std::mt19937_64 rng(o.seed);
  double identity = 0.0, lemma_id = 0.0, lemma_fd = 0.0, defect = 0.0, partition = 0.0, rigidity = 0.0;
  int intervals = 0, probes = 0, splits = 0;
  constexpr int signals = 20;
  for (int k = 0; k < signals; ++k) {
    const AnalyticSignal a = generate_family(FamilyKind::RandomAffine, o.seed * 1000 + k);
    const Signal f(a);
    const double slope = std::get<Affine>(a.form()).slope;
    for (int i = 0; i < 20; ++i, ++intervals) {
      const Interval I = random_interval(rng, a.domain());
      identity = std::max(identity, std::abs(*poincare_quotient(f, I) - 0.25));
      const double split = std::uniform_real_distribution<double>(I.lo, I.hi)(rng);
      if (split > I.lo && split < I.hi) {
        defect = std::max(defect, measure_extension_defect(f, I, split));
        ++splits;
      }
    }
    const auto grid = probe_grid({0.05, 0.95}, 5);
    const auto rep = lemma_residual(f, grid, 1e-4);
    lemma_id = std::max(lemma_id, rep.max_identity_residual);
    lemma_fd = std::max(lemma_fd, rep.max_fd_residual);
    probes += static_cast<int>(grid.size());
    partition = std::max(partition, std::abs(partition_osc_sum(f, a.domain(), 0.07) - std::abs(slope) / 4.0));
    rigidity = std::max(rigidity, std::abs(rigidity_defect(taylor_coeffs(a, 0.5))));
  }
  out.push_back(at_most("affine_identity", intervals, identity, tol, {{"signals", signals}}));
  out.push_back(at_most("one_sided_identity", probes, lemma_id, tol));
  out.push_back(at_most("one_sided_finite_difference", probes, lemma_fd, tol, {{"fd_step", 1e-4}}));
  out.push_back(at_most("additivity_defect", splits, defect, tol));
  out.push_back(at_most("partition_sum", signals, partition, tol));
  out.push_back(at_most("rigidity_defect", signals, rigidity, tol));
}

void power_suite(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const double s = o.exponent;
  const double tol = tol_or(o, 1e-10);
  const Signal f(AnalyticSignal(Power{s, 0.0, 1.0, 0.0}, {0.0, 2.0}));
  const IntervalStats unit = interval_stats(f, {0.0, 1.0});
  const double q = power_quotient(s);
  const double ph = phi(s, 0.0, 1.0);

  out.push_back(at_most("power_quotient_matches_oscillation", 1, std::abs(q - *unit.quotient), tol,
                        {{"s", s}, {"power_quotient", q}, {"oscillation_over_variation", *unit.quotient}}));

  double phi_gap = 0.0;
  const std::vector<std::pair<double, double>> ranges{{0.0, 1.0}, {0.25, 1.5}, {0.5, 2.0}};
  for (const auto& [a, b] : ranges) {
    const IntervalStats st = interval_stats(f, {a, b});
    phi_gap = std::max(phi_gap, std::abs(phi(s, a, b) - (0.25 * st.total_variation - st.oscillation)));
  }
  out.push_back(at_most("phi_matches_interval_calculus", static_cast<int>(ranges.size()), phi_gap, tol));

  double lo = INFINITY, hi = -INFINITY;
  for (double b : {0.5, 1.0, 2.0}) {
    const double r = phi(s, 0.0, b) / std::pow(b, s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.push_back(at_most("phi_scale_invariance", 3, hi - lo, tol));

  const bool solution = std::abs(ph) <= tol;
  out.push_back(CheckResult{"affine_identity_status", 1, std::abs(ph), tol, false, true,
                            {{"s", s},
                             {"phi_0_1", ph},
                             {"solves_affine_identity", solution},
                             {"verdict", solution ? "solution" : "non-solution"}}});
}

void exponent_suite(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const double tol = tol_or(o, 1e-10);
  const auto roots = exponent_equation_solve(0.5, 4.0, 1e-12);
  double dist_one = INFINITY, dist_five_halves = INFINITY;
  for (double r : roots) {
    dist_one = std::min(dist_one, std::abs(r - 1.0));
    dist_five_halves = std::min(dist_five_halves, std::abs(r - 2.5));
  }
  Json details = {{"range", {0.5, 4.0}}, {"roots", roots}};
  out.push_back(at_most("root_at_one", 1, dist_one, tol, details));
  out.push_back(above("exponent_function_at_five_halves", 1, std::abs(exponent_function(2.5)), 0.01,
                      {{"F(2.5)", exponent_function(2.5)}}));
  out.push_back(above("no_root_at_five_halves", static_cast<int>(roots.size()), dist_five_halves, 1e-6));
}

struct SmoothCase {
  const char* name;
  AnalyticSignal signal;
  Interval probes;
};

std::vector<SmoothCase> smooth_cases() {
  return {
      {"x^2", AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {-1.0, 1.0}), {-0.9, 0.9}},
      {"exp(x)", AnalyticSignal(Exponential{1.0, 1.0, 0.0}, {0.0, 1.0}), {0.05, 0.95}},
      {"x^(5/2)", AnalyticSignal(Power{2.5, 0.0, 1.0, 0.0}, {0.1, 1.0}), {0.15, 0.95}},
  };
}

void lemma_suite(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const double tol = tol_or(o, 1e-6);
  constexpr double h = 1e-4;
  for (const SmoothCase& c : smooth_cases()) {
    const Signal f(c.signal);
    const auto grid = probe_grid(c.probes, 5);
    const auto coarse = lemma_residual(f, grid, h);
    const auto fine = lemma_residual(f, grid, 0.5 * h);
    const double ratio = coarse.max_fd_residual / fine.max_fd_residual;
    const int n = static_cast<int>(grid.size());
    out.push_back(at_most(std::string("one_sided_fd_") + c.name, n, coarse.max_fd_residual, tol,
                          {{"fd_step", h}, {"identity_residual", coarse.max_identity_residual}}));
    out.push_back(above(std::string("fd_convergence_") + c.name, n, ratio, 3.5,
                        {{"residual_h", coarse.max_fd_residual}, {"residual_h_over_2", fine.max_fd_residual}}));
  }
}

void taylor_suite(const VerifyOptions&, std::vector<CheckResult>& out) {
  const Signal f(AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {0.0, 2.0}));
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const auto rep = taylor_expansion_check(f, 1.0, eps);
  const double rho_ratio = rep.steps.back().rho / (0.05 * 0.05);
  const double rho_rel = std::abs(rho_ratio / (1.0 / 6.0) - 1.0);
  const double cubic_rel = std::abs(rep.cubic_coefficient / (1.0 / 36.0) - 1.0);
  out.push_back(at_most("rho_over_eps_squared", 1, rho_rel, 0.02, {{"rho_over_eps2", rho_ratio}, {"expected", 1.0 / 6.0}}));
  out.push_back(at_most("oscillation_cubic_coefficient", static_cast<int>(eps.size()), cubic_rel, 0.05,
                        {{"richardson", rep.cubic_coefficient}, {"expected", 1.0 / 36.0}}));
  out.push_back(at_most("rigidity_defect_x^(5/2)", 1,
                        std::abs(rigidity_defect(taylor_coeffs(AnalyticSignal(Power{2.5, 0.0, 1.0, 0.0}, {0.5, 2.0}), 1.0))),
                        1e-8));
  out.push_back(above("rigidity_defect_x^3", 1,
                      std::abs(rigidity_defect(taylor_coeffs(AnalyticSignal(Polynomial{0.0, {0, 0, 0, 1.0}}, {0.5, 2.0}), 1.0))),
                      0.1));
}

void ode_suite(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const double tol = tol_or(o, 1e-10);
  std::mt19937_64 rng(o.seed);
  const Interval I{0.5, 2.0};
  double worst = 0.0;
  Json params = Json::array();
  for (int k = 0; k < 10; ++k) {
    const double A = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const double B = std::uniform_real_distribution<double>(-2.0, 0.5)(rng);
    worst = std::max(worst, ode_family_check(A, B, I, 100));
    params.push_back({A, B});
  }
  out.push_back(at_most("ode_family_residual", 1000, worst, tol, {{"A_B", params}}));
}

void measure_suite(const VerifyOptions& o, std::vector<CheckResult>& out) {
  const double tol = tol_or(o, 1e-12);
  std::mt19937_64 rng(o.seed);
  const Signal a(generate_family(FamilyKind::RandomAffine, o.seed));
  double worst = 0.0;
  for (int k = 0; k < 20; ++k)
    worst = std::max(worst, measure_extension_defect(a, {0.0, 1.0}, std::uniform_real_distribution<double>(0.01, 0.99)(rng)));
  out.push_back(at_most("affine_additivity_defect", 20, worst, tol));

  const Signal sq(AnalyticSignal(Polynomial{0.0, {0.0, 0.0, 1.0}}, {-1.0, 1.0}));
  const double d = measure_extension_defect(sq, {-1.0, 1.0}, 0.0);
  out.push_back(above("x^2_additivity_defect", 1, d, 0.1, {{"defect", d}}));
}

const std::map<std::string, std::function<void(const VerifyOptions&, std::vector<CheckResult>&)>>& suites() {
  static const std::map<std::string, std::function<void(const VerifyOptions&, std::vector<CheckResult>&)>> table{
      {"affine", affine_suite}, {"power", power_suite}, {"exponent", exponent_suite}, {"lemma", lemma_suite},
      {"taylor", taylor_suite}, {"ode", ode_suite},     {"measure", measure_suite},
  };
  return table;
}

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> verification_suites() {
  std::vector<std::string> names{"all"};
  for (const auto& [name, _] : suites()) names.push_back(name);
  return names;
}

VerificationReport run_verification(std::string_view suite, const VerifyOptions& options) {
  VerificationReport report;
  report.suite = std::string(suite);
  if (suite == "all") {
    for (const char* name : {"affine", "power", "exponent", "lemma", "taylor", "ode", "measure"})
      suites().at(name)(options, report.checks);
    return report;
  }
  const auto it = suites().find(std::string(suite));
  if (it == suites().end()) throw Error(ErrorKind::UnknownKind, "unknown suite '" + std::string(suite) + "'");
  it->second(options, report.checks);
  return report;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    Json j = {{"check", c.name},
              {"probes", c.probes},
              {"max_residual", c.value},
              {"tolerance", c.threshold},
              {"criterion", c.must_exceed ? "max_residual > tolerance" : "max_residual <= tolerance"},
              {"pass", c.pass}};
    for (const auto& [k, v] : c.details.items()) j[k] = v;
    checks.push_back(std::move(j));
  }
  return {{"suite", report.suite}, {"pass", report.pass()}, {"checks", std::move(checks)}};
}

}  // namespace bvq
