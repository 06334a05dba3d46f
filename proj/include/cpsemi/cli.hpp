#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpsemi/semigroup.hpp"

namespace cpsemi::cli {

using json = nlohmann::json;

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kNotGenerator = 2,
  kNumericalLimit = 3,
  kCheckFailed = 4,
};

/// Complex numbers are [re, im]; matrices are row-major arrays of rows.
json to_json(Complex z);
json to_json(const CMatrix& m);
Complex complex_from_json(const json& j);
/// Throws ParseError unless j is an n x n matrix.
CMatrix matrix_from_json(const json& j, int n);

/// One of
///   {"type": "superop", "n", "matrix"}
///   {"type": "gkls", "n", "kraus", "k"}
///   {"type": "hamiltonian_lindblad", "n", "h", "lindblad"}
/// Extra keys are ignored. Throws ParseError.
SuperOperator parse_generator(const json& spec, const Tolerances& tol = {});

/// {"units": [{"c": [re, im], "v": [[re, im], ...]}, ...]}, v in coordinates
/// of the decomposed basis. Throws ParseError.
std::vector<Unit> parse_units(const json& doc, const std::shared_ptr<const GklsForm>& owner);

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  double t = 1.0;
  int m = 512;
  std::vector<std::string> checks;  ///< empty selects every check
};

/// eig_cut and psd_slack follow --tol; residual keeps its default.
Tolerances tolerances_from(const Options& opts);

struct CommandResult {
  json output;
  int exit_code = kOk;
};

CommandResult cmd_analyze(const json& spec, const Options& opts);
CommandResult cmd_decompose(const json& spec, const Options& opts);
CommandResult cmd_index(const json& spec, const Options& opts);
CommandResult cmd_covariance(const json& spec, const json& units, const Options& opts);
CommandResult cmd_verify(const json& spec, const Options& opts);

/// Names accepted by --checks.
const std::vector<std::string>& verify_check_names();

/// Stable text form: keys sorted, two-space indent, trailing newline.
std::string render(const json& j);

}  // namespace cpsemi::cli
