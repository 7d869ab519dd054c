#include "bvq/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bvq {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- descriptors ----------------------------------------------------------

double number(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(where + ": missing field '" + key + "'");
  if (!it->is_number()) parse_fail(where + ": field '" + key + "' must be a number");
  return it->get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

Interval interval_field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(where + ": missing field '" + key + "'");
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
    parse_fail(where + ": field '" + key + "' must be [lo, hi]");
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

std::string type_of(const Json& j, const std::string& where) {
  if (!j.is_object()) parse_fail(where + ": descriptor must be an object");
  const auto it = j.find("type");
  if (it == j.end() || !it->is_string()) parse_fail(where + ": missing string field 'type'");
  return it->get<std::string>();
}

SimpleForm simple_form(const Json& j, const std::string& type, const std::string& where) {
  if (type == "affine") return Affine{number(j, "slope", where), number(j, "intercept", where)};
  if (type == "jump")
    return Jump{number(j, "location", where), number(j, "left_value", where), number(j, "right_value", where)};
  if (type == "power")
    return Power{number(j, "exponent", where), number_or(j, "shift", 0.0, where), number_or(j, "scale", 1.0, where),
                 number_or(j, "offset", 0.0, where)};
  if (type == "exponential")
    return Exponential{number(j, "rate", where), number_or(j, "scale", 1.0, where), number_or(j, "offset", 0.0, where)};
  if (type == "polynomial") {
    const auto it = j.find("coefficients");
    if (it == j.end() || !it->is_array()) parse_fail(where + ": field 'coefficients' must be an array");
    Polynomial p{number_or(j, "center", 0.0, where), {}};
    for (const Json& c : *it) {
      if (!c.is_number()) parse_fail(where + ": coefficients must be numbers");
      p.coefficients.push_back(c.get<double>());
    }
    return p;
  }
  throw Error(ErrorKind::UnknownKind, where + ": unknown signal type '" + type + "'");
}

AnalyticForm widen(SimpleForm s) {
  return std::visit([](auto&& f) -> AnalyticForm { return std::move(f); }, std::move(s));
}

Json form_json(const SimpleForm& form) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Affine>) {
          return {{"type", "affine"}, {"slope", f.slope}, {"intercept", f.intercept}};
        } else if constexpr (std::is_same_v<T, Jump>) {
          return {{"type", "jump"}, {"location", f.location}, {"left_value", f.left_value}, {"right_value", f.right_value}};
        } else if constexpr (std::is_same_v<T, Power>) {
          return {{"type", "power"}, {"exponent", f.exponent}, {"shift", f.shift}, {"scale", f.scale}, {"offset", f.offset}};
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return {{"type", "exponential"}, {"rate", f.rate}, {"scale", f.scale}, {"offset", f.offset}};
        } else {
          return {{"type", "polynomial"}, {"center", f.center}, {"coefficients", f.coefficients}};
        }
      },
      form);
}

Json interval_json(Interval I) { return Json::array({I.lo, I.hi}); }

// --- commands -------------------------------------------------------------

Signal load_signal(const RunConfig& c) {
  if (c.input) return read_csv(*c.input, c.mode);
  const std::string& s = *c.signal_json;
  const auto first = s.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && s[first] == '{';
  return parse_signal(inline_json ? std::string_view(s) : std::string_view(slurp(s)));
}

struct Grid {
  std::vector<double> scales;
  double stride;
};

Grid window_grid(const RunConfig& c, Interval domain, std::initializer_list<double> fractions) {
  Grid g;
  if (c.scales.empty()) {
    for (double f : fractions) g.scales.push_back(f * domain.length());
  } else {
    g.scales = c.scales;
  }
  g.stride = c.stride.value_or(*std::min_element(g.scales.begin(), g.scales.end()) / 4.0);
  return g;
}

std::string emit(const Json& j) { return j.dump(2) + "\n"; }

CommandResult analyze(const RunConfig& c) {
  const Signal f = load_signal(c);
  const Grid g = window_grid(c, f.domain(), {0.125, 0.25, 0.5});
  const QuotientMap map = quotient_map(f, g.scales, g.stride);
  return {c.format == OutputFormat::Json ? emit(to_json(map)) : to_csv(map), ExitOk, {}};
}

CommandResult segment(const RunConfig& c) {
  const Signal f = load_signal(c);
  const Grid g = window_grid(c, f.domain(), {1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4});
  const QuotientMap map = quotient_map(f, g.scales, g.stride);
  ClassifyOptions opt;
  if (c.tol) opt.tol = *c.tol;
  const SegmentationReport rep = classify_segments(f, map, opt);
  if (c.format == OutputFormat::Csv) return {to_csv(rep), ExitOk, {}};
  Json j = to_json(rep);
  j["domain"] = interval_json(map.domain);
  return {emit(j), ExitOk, {}};
}

CommandResult verify(const RunConfig& c) {
  VerifyOptions opt;
  opt.seed = c.seed;
  opt.tol = c.tol;
  opt.exponent = c.s;
  const VerificationReport rep = run_verification(c.suite, opt);
  std::string out = c.format == OutputFormat::Json ? emit(to_json(rep)) : to_csv(rep);
  return {std::move(out), rep.pass() ? ExitOk : ExitVerifyFailed, {}};
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidSignal:
    case ErrorKind::UnknownKind:
    case ErrorKind::JumpInLinearMode: return ExitInputError;
    default: return ExitDomainError;
  }
}

void validate(const RunConfig& c) {
  if (c.command != "analyze" && c.command != "segment" && c.command != "verify")
    parse_fail("unknown command '" + c.command + "'");
  const int sources = (c.input ? 1 : 0) + (c.signal_json ? 1 : 0);
  if (c.command == "verify") {
    if (sources != 0) parse_fail("verify takes no signal input");
  } else if (sources != 1) {
    parse_fail("exactly one of --input and --signal-json is required");
  }
  if (c.tol && !(*c.tol > 0.0)) parse_fail("--tol must be positive");
  for (double s : c.scales)
    if (!(s > 0.0) || !std::isfinite(s)) parse_fail("--scales entries must be positive");
  if (c.stride && !(*c.stride > 0.0)) parse_fail("--stride must be positive");
}

CommandResult run_command(const RunConfig& config) {
  try {
    validate(config);
    if (config.command == "analyze") return analyze(config);
    if (config.command == "segment") return segment(config);
    return verify(config);
  } catch (const Error& e) {
    return {{}, exit_code_for(e.kind()), e.what()};
  }
}

SampledSignal parse_csv(std::string_view text, Interpolation mode) {
  std::vector<double> xs, ys;
  std::size_t row = 0;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      parse_fail("row " + std::to_string(row) + ": expected two columns x,y");
    const auto x = to_number(line.substr(0, comma));
    const auto y = to_number(line.substr(comma + 1));
    if (first && !x) {
      first = false;
      continue;  // header
    }
    first = false;
    if (!x) parse_fail("row " + std::to_string(row) + ": x is not a finite number");
    if (!y) parse_fail("row " + std::to_string(row) + ": y is not a finite number");
    if (!xs.empty() && !(*x > xs.back()))
      parse_fail("row " + std::to_string(row) + ": x column is not strictly increasing");
    xs.push_back(*x);
    ys.push_back(*y);
  }
  if (xs.size() < 2) parse_fail("need at least 2 data rows, got " + std::to_string(xs.size()));
  return SampledSignal(std::move(xs), std::move(ys), mode);
}

SampledSignal read_csv(const std::string& path, Interpolation mode) { return parse_csv(slurp(path), mode); }

AnalyticSignal signal_from_json(const Json& j) {
  const std::string type = type_of(j, "signal");
  if (type == "family") {
    const auto it = j.find("kind");
    if (it == j.end() || !it->is_string()) parse_fail("signal: missing string field 'kind'");
    FamilyParams p;
    if (j.contains("domain")) p.domain = interval_field(j, "domain", "signal");
    p.exponent = number_or(j, "exponent", p.exponent, "signal");
    p.degree = static_cast<int>(number_or(j, "degree", p.degree, "signal"));
    p.pieces = static_cast<int>(number_or(j, "pieces", p.pieces, "signal"));
    const double seed = number_or(j, "seed", 0.0, "signal");
    if (seed < 0.0) parse_fail("signal: seed must be non-negative");
    return generate_family(parse_family_kind(it->get<std::string>()), static_cast<std::uint64_t>(seed), p);
  }
  if (type == "composite") {
    const auto it = j.find("pieces");
    if (it == j.end() || !it->is_array() || it->empty()) parse_fail("signal: 'pieces' must be a non-empty array");
    Composite c;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "pieces[" + std::to_string(i) + "]";
      const Json& pj = (*it)[i];
      c.pieces.push_back({interval_field(pj, "domain", where), simple_form(pj, type_of(pj, where), where)});
    }
    const Interval d = j.contains("domain") ? interval_field(j, "domain", "signal")
                                            : Interval{c.pieces.front().domain.lo, c.pieces.back().domain.hi};
    return AnalyticSignal(std::move(c), d);
  }
  return AnalyticSignal(widen(simple_form(j, type, "signal")), interval_field(j, "domain", "signal"));
}

AnalyticSignal parse_signal(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("signal JSON: ") + e.what());
  }
  return signal_from_json(j);
}

Json to_json(const AnalyticSignal& f) {
  Json j;
  if (const auto* c = std::get_if<Composite>(&f.form())) {
    Json pieces = Json::array();
    for (const Piece& p : c->pieces) {
      Json pj = form_json(p.form);
      pj["domain"] = interval_json(p.domain);
      pieces.push_back(std::move(pj));
    }
    j = {{"type", "composite"}, {"pieces", std::move(pieces)}};
  } else {
    j = std::visit(
        [](const auto& form) -> Json {
          if constexpr (std::is_same_v<std::decay_t<decltype(form)>, Composite>) {
            return {};
          } else {
            return form_json(form);
          }
        },
        f.form());
  }
  j["domain"] = interval_json(f.domain());
  return j;
}

Json to_json(const QuotientMap& map) {
  Json windows = Json::array();
  for (const WindowStats& w : map.entries) {
    windows.push_back({{"center", w.center},
                       {"scale", w.scale},
                       {"mean", w.stats.mean},
                       {"osc", w.stats.oscillation},
                       {"tv", w.stats.total_variation},
                       {"R", w.stats.level_balance},
                       {"quotient", w.stats.quotient ? Json(*w.stats.quotient) : Json(nullptr)}});
  }
  return {{"domain", interval_json(map.domain)},
          {"scales", map.scale_grid},
          {"stride", map.stride},
          {"windows", std::move(windows)}};
}

std::string to_csv(const QuotientMap& map) {
  std::string out = "center,scale,mean,osc,tv,R,quotient\n";
  for (const WindowStats& w : map.entries) {
    for (double v : {w.center, w.scale, w.stats.mean, w.stats.oscillation, w.stats.total_variation, w.stats.level_balance})
      out += format_number(v) + ",";
    if (w.stats.quotient) out += format_number(*w.stats.quotient);
    out += "\n";
  }
  return out;
}

Json to_json(const SegmentationReport& report) {
  Json segs = Json::array();
  for (const Segment& s : report.segments) {
    Json params = Json::object();
    for (const auto& [k, v] : s.parameters) params[k] = v;
    segs.push_back({{"start", s.interval.lo},
                    {"end", s.interval.hi},
                    {"class", std::string(to_string(s.kind))},
                    {"parameters", std::move(params)},
                    {"max_quotient_deviation", s.max_quotient_deviation}});
  }
  return {{"segments", std::move(segs)}};
}

std::string to_csv(const SegmentationReport& report) {
  std::string out = "start,end,class,max_quotient_deviation,parameters\n";
  for (const Segment& s : report.segments) {
    out += format_number(s.interval.lo) + "," + format_number(s.interval.hi) + "," + std::string(to_string(s.kind)) +
           "," + format_number(s.max_quotient_deviation) + ",";
    for (std::size_t i = 0; i < s.parameters.size(); ++i)
      out += (i ? ";" : "") + s.parameters[i].first + "=" + format_number(s.parameters[i].second);
    out += "\n";
  }
  return out;
}

std::string to_csv(const VerificationReport& report) {
  std::string out = "check,probes,max_residual,tolerance,pass\n";
  for (const CheckResult& c : report.checks)
    out += c.name + "," + std::to_string(c.probes) + "," + format_number(c.value) + "," + format_number(c.threshold) +
           "," + (c.pass ? "true" : "false") + "\n";
  return out;
}

}  // namespace bvq
