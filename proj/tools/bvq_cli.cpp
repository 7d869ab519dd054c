#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bvq/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Oscillation / total-variation quotients of one-dimensional signals"};
  app.require_subcommand(1);

  bvq::RunConfig cfg;
  std::string input, signal_json, output, format = "json", mode = "linear";
  double tol = 0.0;

  auto add_signal_flags = [&](CLI::App* sub) {
    sub->add_option("--input", input, "CSV file with columns x,y");
    sub->add_option("--signal-json", signal_json, "analytic descriptor: file path or inline JSON");
    sub->add_option("--mode", mode, "sampled interpolation")->check(CLI::IsMember({"linear", "constant"}));
    sub->add_option("--scales", cfg.scales, "window lengths")->delimiter(',');
    sub->add_option("--stride", cfg.stride, "spacing of window centers");
  };
  auto add_common_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "tolerance");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", output, "write the report here instead of stdout");
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* analyze = app.add_subcommand("analyze", "per-window mean, osc, tv, R and quotient");
  add_signal_flags(analyze);
  add_common_flags(analyze);
  auto* segment = app.add_subcommand("segment", "split the domain into affine / jump / constant / other");
  add_signal_flags(segment);
  add_common_flags(segment);
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  add_common_flags(verify);
  verify->add_option("--suite", cfg.suite, "affine, power, exponent, lemma, taylor, ode, measure or all");
  verify->add_option("--s", cfg.s, "exponent for the power suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : bvq::ExitInputError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();
  if (cfg.command != "verify") {
    if (sub->count("--input")) cfg.input = input;
    if (sub->count("--signal-json")) cfg.signal_json = signal_json;
  }
  if (sub->count("--tol")) cfg.tol = tol;
  if (sub->count("--output")) cfg.output = output;
  cfg.format = format == "csv" ? bvq::OutputFormat::Csv : bvq::OutputFormat::Json;
  cfg.mode = mode == "constant" ? bvq::Interpolation::PiecewiseConstant : bvq::Interpolation::PiecewiseLinear;

  const bvq::CommandResult r = bvq::run_command(cfg);
  if (!r.error.empty()) {
    std::cerr << "bvq " << cfg.command << ": " << r.error << "\n";
    return r.exit_code;
  }
  if (cfg.output) {
    std::ofstream out(*cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "bvq: cannot write '" << *cfg.output << "'\n";
      return bvq::ExitInputError;
    }
    out << r.output;
  } else {
    std::cout << r.output;
  }
  return r.exit_code;
}
