// Command line front end: cpsemi analyze|decompose|index|covariance|verify.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cpsemi/cli.hpp"
#include "cpsemi/errors.hpp"

namespace {

using cpsemi::cli::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cpsemi::ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw cpsemi::ParseError(path + ": " + e.what());
  }
}

int emit(const cpsemi::cli::CommandResult& result, const std::string& output) {
  const std::string text = cpsemi::cli::render(result.output);
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return cpsemi::cli::kParseError;
    }
    out << text;
  }
  if (result.exit_code != cpsemi::cli::kOk && result.output.contains("error")) {
    std::cerr << result.output["error"].get<std::string>() << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded generators of CP semigroups: decomposition, index and units"};
  app.require_subcommand(1);

  cpsemi::cli::Options opts;
  std::string input;
  std::string units;
  std::string output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "generator JSON file")->required();
    sub->add_option("--tol", opts.tol, "eigenvalue cutoff and PSD slack")->capture_default_str();
    sub->add_option("--seed", opts.seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--output", output, "write JSON here instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "CCP test, canonical decomposition and index");
  CLI::App* decompose = app.add_subcommand("decompose", "canonical (E, k) as a gkls spec");
  CLI::App* index = app.add_subcommand("index", "index of the generator");
  CLI::App* covariance = app.add_subcommand("covariance", "closed form and estimate of c(S, T)");
  CLI::App* verify = app.add_subcommand("verify", "run consistency checks");
  for (CLI::App* sub : {analyze, decompose, index, covariance, verify}) add_common(sub);
  covariance->add_option("--units", units, "units JSON file")->required();
  covariance->add_option("--t", opts.t, "time horizon")->capture_default_str();
  covariance->add_option("--m", opts.m, "number of subdivisions")->capture_default_str();
  verify->add_option("--checks", opts.checks, "subset of checks to run")
      ->delimiter(',')
      ->check(CLI::IsMember(cpsemi::cli::verify_check_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cpsemi::cli::kParseError;
  }

  try {
    const json spec = read_json(input);
    if (*analyze) return emit(cpsemi::cli::cmd_analyze(spec, opts), output);
    if (*decompose) return emit(cpsemi::cli::cmd_decompose(spec, opts), output);
    if (*index) return emit(cpsemi::cli::cmd_index(spec, opts), output);
    if (*covariance) return emit(cpsemi::cli::cmd_covariance(spec, read_json(units), opts), output);
    return emit(cpsemi::cli::cmd_verify(spec, opts), output);
  } catch (const cpsemi::Error& e) {
    std::cerr << e.what() << "\n";
    return cpsemi::cli::kParseError;
  }
}
