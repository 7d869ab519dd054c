#include <string>

#include "bvq/report.hpp"
#include "doctest.h"

using namespace bvq;
using Json = nlohmann::ordered_json;

namespace {

const std::string data = BVQ_TEST_DATA;

ErrorKind parse_error_kind(std::string_view text) {
  try {
    parse_csv(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("csv accepted");
  return ErrorKind::OutOfDomain;
}

RunConfig config(std::string command) {
  RunConfig c;
  c.command = std::move(command);
  return c;
}

}  // namespace

TEST_CASE("csv ingestion") {
  const SampledSignal a = parse_csv("x,y\n0,1\n0.5,2\n1,0\n");
  CHECK(a.size() == 3);
  CHECK(a(0.25) == doctest::Approx(1.5));
  const SampledSignal b = parse_csv("0,1\r\n1,3\r\n\r\n");
  CHECK(b.size() == 2);
  CHECK(parse_csv(" 0 , 1 \n 1 , 2 ").values()[1] == 2.0);
  CHECK(parse_csv("t,v\n0,1\n1,2", Interpolation::PiecewiseConstant).mode() == Interpolation::PiecewiseConstant);

  CHECK(parse_error_kind("x,y\n0,1\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("") == ErrorKind::ParseError);
  CHECK(parse_error_kind("0,1\n1,2,3\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("0,1\n1,abc\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("0,1\n1,nan\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("0,1\n1,2\nx,y\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("1,1,\n") == ErrorKind::ParseError);
}

TEST_CASE("csv errors name the row") {
  try {
    parse_csv("x,y\n0,0\n2,1\n1,2\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("row 4") != std::string::npos);
  }
  try {
    parse_csv("0,0\n1,\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("descriptors round-trip") {
  const std::vector<std::string> texts{
      R"({"type":"affine","slope":2,"intercept":-1,"domain":[0,1]})",
      R"({"type":"jump","location":0.3,"left_value":1,"right_value":4,"domain":[0,1]})",
      R"({"type":"power","exponent":2.5,"shift":0,"scale":1,"offset":0,"domain":[0,2]})",
      R"({"type":"exponential","rate":-1,"domain":[0,1]})",
      R"({"type":"polynomial","center":0.5,"coefficients":[1,0,3],"domain":[0,1]})",
      R"({"type":"composite","pieces":[{"type":"affine","slope":1,"intercept":0,"domain":[0,1]},
          {"type":"jump","location":1.5,"left_value":1,"right_value":2,"domain":[1,2]}]})",
      R"({"type":"family","kind":"random_piecewise_affine","seed":4})",
  };
  for (const std::string& t : texts) {
    CAPTURE(t);
    const AnalyticSignal f = parse_signal(t);
    const Json j = to_json(f);
    const AnalyticSignal g = signal_from_json(j);
    CHECK(to_json(g) == j);
    for (double x : {0.1, 0.5, 0.9}) CHECK(f(x) == g(x));
  }
}

TEST_CASE("descriptor errors") {
  auto kind = [](std::string_view t) {
    try {
      parse_signal(t);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("accepted " << t);
    return ErrorKind::OutOfDomain;
  };
  CHECK(kind(R"({"type":"wave","domain":[0,1]})") == ErrorKind::UnknownKind);
  CHECK(kind(R"({"type":"affine","slope":1,"domain":[0,1]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"type":"affine","slope":"1","intercept":0,"domain":[0,1]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"slope":1})") == ErrorKind::ParseError);
  CHECK(kind(R"({"type":"affine",)") == ErrorKind::ParseError);
  CHECK(kind(R"({"type":"power","exponent":2,"shift":0.5,"domain":[0,1]})") == ErrorKind::InvalidSignal);
  CHECK(kind(R"({"type":"family","kind":"zigzag"})") == ErrorKind::UnknownKind);
}

TEST_CASE("analyze reports every window") {
  RunConfig c = config("analyze");
  c.input = data + "/affine_3x_plus_1.csv";
  c.scales = {0.1, 0.2};
  const CommandResult r = run_command(c);
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.output);
  CHECK(j["windows"].size() == 37 + 33);
  for (const Json& w : j["windows"]) CHECK(std::abs(w["quotient"].get<double>() - 0.25) <= 1e-12);
  // emitted JSON parses back to itself
  CHECK(Json::parse(j.dump(2)) == j);
  CHECK(j.dump(2) + "\n" == r.output);
}

TEST_CASE("undefined quotient is null or empty") {
  RunConfig c = config("analyze");
  c.input = data + "/constant.csv";
  const Json j = Json::parse(run_command(c).output);
  for (const Json& w : j["windows"]) CHECK(w["quotient"].is_null());
  c.format = OutputFormat::Csv;
  const std::string csv = run_command(c).output;
  CHECK(csv.rfind("center,scale,mean,osc,tv,R,quotient\n", 0) == 0);
  CHECK(csv.find(",\n") != std::string::npos);
}

TEST_CASE("analyze x^2 on the full domain") {
  RunConfig c = config("analyze");
  c.input = data + "/square.csv";
  c.scales = {2.0};
  const Json j = Json::parse(run_command(c).output);
  REQUIRE(j["windows"].size() == 1);
  CHECK(j["windows"][0]["quotient"].get<double>() == doctest::Approx(0.1283).epsilon(1e-3));
}

TEST_CASE("segment fixtures") {
  RunConfig c = config("segment");
  c.signal_json = data + "/composite.json";
  c.scales = {0.1, 0.2, 0.4};
  c.stride = 0.05;
  Json j = Json::parse(run_command(c).output);
  REQUIRE(j["segments"].size() == 3);
  CHECK(j["segments"][0]["class"] == "affine");
  CHECK(j["segments"][1]["class"] == "jump");
  CHECK(j["segments"][2]["class"] == "constant");

  RunConfig a = config("segment");
  a.signal_json = R"({"type":"affine","slope":-2,"intercept":0.5,"domain":[0,4]})";
  j = Json::parse(run_command(a).output);
  REQUIRE(j["segments"].size() == 1);
  CHECK(j["segments"][0]["class"] == "affine");

  RunConfig s = config("segment");
  s.input = data + "/too_short.csv";
  CHECK(run_command(s).exit_code == ExitInputError);
}

TEST_CASE("exit codes") {
  RunConfig none = config("analyze");
  CHECK(run_command(none).exit_code == ExitInputError);

  RunConfig both = config("analyze");
  both.input = data + "/constant.csv";
  both.signal_json = data + "/affine.json";
  CHECK(run_command(both).exit_code == ExitInputError);

  RunConfig missing = config("analyze");
  missing.input = data + "/does_not_exist.csv";
  CHECK(run_command(missing).exit_code == ExitInputError);

  RunConfig big = config("analyze");
  big.input = data + "/constant.csv";
  big.scales = {5.0};
  const CommandResult r = run_command(big);
  CHECK(r.exit_code == ExitDomainError);
  CHECK(r.error.find("NoValidWindow") != std::string::npos);

  RunConfig tol = config("segment");
  tol.input = data + "/constant.csv";
  tol.tol = -1.0;
  CHECK(run_command(tol).exit_code == ExitInputError);

  RunConfig jump = config("analyze");
  jump.signal_json = R"({"type":"jump","location":0.5,"left_value":0,"right_value":1,"domain":[0,1]})";
  CHECK(run_command(jump).exit_code == 0);

  RunConfig suite = config("verify");
  suite.suite = "nope";
  CHECK(run_command(suite).exit_code == ExitInputError);

  RunConfig strict = config("verify");
  strict.suite = "ode";
  strict.tol = 1e-300;
  CHECK(run_command(strict).exit_code == ExitVerifyFailed);

  CHECK(run_command(config("launch")).exit_code == ExitInputError);
}

TEST_CASE("output is deterministic") {
  RunConfig c = config("verify");
  c.suite = "affine";
  c.seed = 9;
  const CommandResult a = run_command(c), b = run_command(c);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  c.seed = 10;
  CHECK(run_command(c).output != a.output);
}

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_number(3.0) == "3");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
