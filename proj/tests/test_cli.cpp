#include <catch_amalgamated.hpp>

#include "cpsemi/cli.hpp"
#include "cpsemi/errors.hpp"
#include "cpsemi/generator.hpp"
#include "cpsemi/sampling.hpp"

using namespace cpsemi;
using cli::json;

namespace {

json dephasing_spec() {
  return json::parse(R"({"type": "hamiltonian_lindblad", "n": 2,
                         "h": [[0, 0], [0, 0]],
                         "lindblad": [[[1, 0], [0, -1]]]})");
}

json superop_spec(const SuperOperator& l) {
  return {{"type", "superop"}, {"n", l.dim()}, {"matrix", cli::to_json(l.matrix())}};
}

}  // namespace

TEST_CASE("complex and matrix JSON round trip") {
  Rng rng(81);
  const CMatrix m = random_complex_matrix(3, 3, rng);
  CHECK(cli::matrix_from_json(cli::to_json(m), 3) == m);
  CHECK(cli::complex_from_json(json::parse("[1.5, -2]")) == Complex(1.5, -2.0));
  CHECK(cli::complex_from_json(json::parse("3")) == Complex(3.0, 0.0));
  CHECK(cli::to_json(Complex(-0.0, -0.0)).dump() == "[0.0,0.0]");
  CHECK_THROWS_AS(cli::matrix_from_json(json::parse("[[1, 2]]"), 2), ParseError);
  CHECK_THROWS_AS(cli::complex_from_json(json::parse("[1, 2, 3]")), ParseError);
}

TEST_CASE("all three spec types parse to the same generator") {
  const SuperOperator l = cli::parse_generator(dephasing_spec());
  const json gkls = json::parse(R"({"type": "gkls", "n": 2,
                                    "kraus": [[[1, 0], [0, -1]]],
                                    "k": [[-0.5, 0], [0, -0.5]]})");
  CHECK((cli::parse_generator(gkls).matrix() - l.matrix()).norm() < 1e-15);
  CHECK((cli::parse_generator(superop_spec(l)).matrix() - l.matrix()).norm() < 1e-15);
}

TEST_CASE("malformed specs are parse errors") {
  CHECK_THROWS_AS(cli::parse_generator(json::parse(R"({"type": "nope", "n": 2})")), ParseError);
  CHECK_THROWS_AS(cli::parse_generator(json::parse(R"({"type": "gkls", "n": 2})")), ParseError);
  CHECK_THROWS_AS(cli::parse_generator(json::parse(R"({"type": "superop", "n": 2, "matrix": [[1]]})")),
                  ParseError);
  CHECK_THROWS_AS(cli::parse_generator(json::parse(
                      R"({"type": "hamiltonian_lindblad", "n": 2, "h": [[0, 1], [0, 0]], "lindblad": []})")),
                  ParseError);
  const cli::CommandResult r = cli::cmd_analyze(json::parse(R"({"n": 2})"), {});
  CHECK(r.exit_code == cli::kParseError);
  CHECK(r.output.contains("error"));
}

TEST_CASE("analyze output is byte-identical across runs") {
  const cli::Options opts;
  const std::string first = cli::render(cli::cmd_analyze(dephasing_spec(), opts).output);
  const std::string second = cli::render(cli::cmd_analyze(dephasing_spec(), opts).output);
  CHECK(first == second);
  CHECK(first.back() == '\n');
  // Keys come out sorted.
  CHECK(first.find("\"basis\"") < first.find("\"ccp\""));
  CHECK(first.find("\"rank\"") < first.find("\"unital\""));
}

TEST_CASE("verify output is byte-identical for a fixed seed") {
  Rng rng(83);
  const json spec = superop_spec(random_ccp_generator(2, GeneratorKind::general, rng));
  cli::Options opts;
  opts.seed = 17;
  const cli::CommandResult a = cli::cmd_verify(spec, opts);
  const cli::CommandResult b = cli::cmd_verify(spec, opts);
  CHECK(cli::render(a.output) == cli::render(b.output));
  CHECK(a.exit_code == cli::kOk);
  CHECK(a.output["pass"].get<bool>());
}

TEST_CASE("analyze round trip through a gkls spec gives the same generator") {
  Rng rng(84);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const SuperOperator l = random_ccp_generator(n, static_cast<GeneratorKind>(trial % 3), rng);
    const cli::CommandResult r = cli::cmd_analyze(superop_spec(l), {});
    REQUIRE(r.exit_code == cli::kOk);
    const json back = {{"type", "gkls"}, {"n", n}, {"kraus", r.output["basis"]}, {"k", r.output["k_canonical"]}};
    const SuperOperator l2 = cli::parse_generator(back);
    CHECK(same_generator(decompose(l), decompose(l2)).same);

    const cli::CommandResult dec = cli::cmd_decompose(superop_spec(l), {});
    REQUIRE(dec.exit_code == cli::kOk);
    CHECK((cli::parse_generator(dec.output).matrix() - l.matrix()).norm() <= 1e-10 * l.matrix().norm());
  }
}

TEST_CASE("analyze reports non-generators with exit code 2") {
  const cli::CommandResult r = cli::cmd_analyze(superop_spec(SuperOperator::transpose(2)), {});
  CHECK(r.exit_code == cli::kNotGenerator);
  CHECK_FALSE(r.output["ccp"].get<bool>());
  CHECK(r.output["witness"].contains("vector"));
  CHECK(cli::cmd_decompose(superop_spec(SuperOperator::transpose(2)), {}).exit_code == cli::kNotGenerator);
  CHECK(cli::cmd_verify(superop_spec(SuperOperator::transpose(2)), {}).exit_code == cli::kNotGenerator);
}

TEST_CASE("automorphism generators carry a note") {
  const json spec = json::parse(R"({"type": "hamiltonian_lindblad", "n": 2,
                                    "h": [[1, [0, -1]], [[0, 1], -1]], "lindblad": []})");
  const cli::CommandResult r = cli::cmd_analyze(spec, {});
  REQUIRE(r.exit_code == cli::kOk);
  CHECK(r.output["rank"] == 0);
  CHECK(r.output.contains("note"));
  CHECK(cli::cmd_index(spec, {}).output["index"] == 0);
}

TEST_CASE("covariance command matches the closed form on dephasing") {
  const json units = json::parse(R"({"units": [{"c": [0, 0], "v": [[1, 0]]},
                                               {"c": [0.5, 0.25], "v": [[0, 1]]}]})");
  cli::Options opts;
  opts.m = 512;
  const cli::CommandResult r = cli::cmd_covariance(dephasing_spec(), units, opts);
  REQUIRE(r.exit_code == cli::kOk);
  CHECK(r.output["abs_error"].get<double>() < 1e-6);
  CHECK(cli::complex_from_json(r.output["closed"]) == Complex(0.5, -1.25));

  const json bad = json::parse(R"({"units": [{"c": [0, 0], "v": [[1, 0], [2, 0]]}]})");
  CHECK(cli::cmd_covariance(dephasing_spec(), bad, opts).exit_code == cli::kParseError);
  const json branch = json::parse(R"({"units": [{"c": [0, 3.141592653589793], "v": [0]},
                                                {"c": [0, 0], "v": [0]}]})");
  opts.m = 1;
  CHECK(cli::cmd_covariance(dephasing_spec(), branch, opts).exit_code == cli::kNumericalLimit);
}

TEST_CASE("verify can run a subset and rejects unknown checks") {
  cli::Options opts;
  opts.checks = {"semigroup_law", "units"};
  const cli::CommandResult r = cli::cmd_verify(dephasing_spec(), opts);
  CHECK(r.exit_code == cli::kOk);
  CHECK(r.output["checks"].size() == 2);
  opts.checks = {"bogus"};
  CHECK(cli::cmd_verify(dephasing_spec(), opts).exit_code == cli::kParseError);
  for (const std::string& name : cli::verify_check_names()) {
    opts.checks = {name};
    CHECK(cli::cmd_verify(dephasing_spec(), opts).exit_code == cli::kOk);
  }
}

TEST_CASE("tol flag sets the cutoffs but not the residual") {
  cli::Options opts;
  opts.tol = 1e-6;
  const Tolerances tol = cli::tolerances_from(opts);
  CHECK(tol.eig_cut == 1e-6);
  CHECK(tol.psd_slack == 1e-6);
  CHECK(tol.residual == Tolerances{}.residual);
}
