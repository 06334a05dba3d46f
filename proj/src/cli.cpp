#include "cpsemi/cli.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpsemi/errors.hpp"
#include "cpsemi/sampling.hpp"
#include "cpsemi/symbol.hpp"

namespace cpsemi::cli {

namespace {

// Adding +0.0 maps -0.0 to 0.0 so equal values always print identically.
double clean(double x) { return x + 0.0; }

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json matrices_to_json(const std::vector<CMatrix>& ms) {
  json out = json::array();
  for (const CMatrix& m : ms) out.push_back(to_json(m));
  return out;
}

int parse_dimension(const json& spec) {
  if (!spec.contains("n") || !spec["n"].is_number_integer()) {
    throw ParseError("missing integer field \"n\"");
  }
  const int n = spec["n"].get<int>();
  if (n < 1 || n > 16) throw ParseError("n = " + std::to_string(n) + " outside 1..16");
  return n;
}

const json& field(const json& spec, const char* name) {
  if (!spec.is_object() || !spec.contains(name)) {
    throw ParseError(std::string("missing field \"") + name + "\"");
  }
  return spec[name];
}

std::vector<CMatrix> matrix_list(const json& j, int n, const char* name) {
  if (!j.is_array()) throw ParseError(std::string("\"") + name + "\" must be an array");
  std::vector<CMatrix> out;
  for (const json& item : j) out.push_back(matrix_from_json(item, n));
  return out;
}

const std::vector<double>& t_grid() {
  static const std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  return grid;
}

CommandResult failure(int code, const std::string& message) {
  return {json{{"error", message}}, code};
}

template <typename Body>
CommandResult guarded(Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return failure(kParseError, e.what());
  } catch (const json::exception& e) {
    return failure(kParseError, std::string("ParseError: ") + e.what());
  } catch (const DimensionMismatch& e) {
    return failure(kParseError, e.what());
  } catch (const NotCCP& e) {
    return failure(kNotGenerator, e.what());
  } catch (const NotHermiticityPreserving& e) {
    return failure(kNotGenerator, e.what());
  } catch (const NotMember& e) {
    return failure(kNumericalLimit, e.what());
  } catch (const LogBranch& e) {
    return failure(kNumericalLimit, e.what());
  }
}

std::shared_ptr<const GklsForm> decompose_shared(const SuperOperator& l, const Tolerances& tol) {
  return std::make_shared<const GklsForm>(decompose(l, tol));
}

}  // namespace

json to_json(Complex z) { return json::array({clean(z.real()), clean(z.imag())}); }

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex numbers are encoded as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ParseError("expected " + std::to_string(n) + " rows");
  }
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) out(r, c) = complex_from_json(row[c]);
  }
  if (!out.allFinite()) throw ParseError("non-finite matrix entry");
  return out;
}

SuperOperator parse_generator(const json& spec, const Tolerances& tol) {
  const json& type = field(spec, "type");
  if (!type.is_string()) throw ParseError("\"type\" must be a string");
  const std::string kind = type.get<std::string>();
  const int n = parse_dimension(spec);
  if (kind == "superop") {
    return {n, matrix_from_json(field(spec, "matrix"), n * n)};
  }
  if (kind == "gkls") {
    const std::vector<CMatrix> kraus = matrix_list(field(spec, "kraus"), n, "kraus");
    return gkls_map(kraus, matrix_from_json(field(spec, "k"), n));
  }
  if (kind == "hamiltonian_lindblad") {
    const CMatrix h = matrix_from_json(field(spec, "h"), n);
    if ((h - h.adjoint()).norm() > tol.residual * std::max(1.0, h.norm())) {
      throw ParseError("\"h\" is not Hermitian");
    }
    const std::vector<CMatrix> ops = matrix_list(field(spec, "lindblad"), n, "lindblad");
    return hamiltonian_lindblad(h, ops);
  }
  throw ParseError("unknown generator type \"" + kind + "\"");
}

std::vector<Unit> parse_units(const json& doc, const std::shared_ptr<const GklsForm>& owner) {
  const json& list = field(doc, "units");
  if (!list.is_array()) throw ParseError("\"units\" must be an array");
  std::vector<Unit> out;
  for (const json& item : list) {
    const Complex c = complex_from_json(field(item, "c"));
    const json& v = field(item, "v");
    if (!v.is_array() || static_cast<int>(v.size()) != owner->rank()) {
      throw ParseError("unit \"v\" needs " + std::to_string(owner->rank()) +
                       " coordinates (rank of the generator)");
    }
    CVector coords(owner->rank());
    for (int i = 0; i < owner->rank(); ++i) coords(i) = complex_from_json(v[i]);
    out.push_back(make_unit(owner, c, std::move(coords)));
  }
  return out;
}

Tolerances tolerances_from(const Options& opts) {
  Tolerances tol;
  tol.eig_cut = opts.tol;
  tol.psd_slack = opts.tol;
  return tol;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

CommandResult cmd_analyze(const json& spec, const Options& opts) {
  return guarded([&]() -> CommandResult {
    const Tolerances tol = tolerances_from(opts);
    const SuperOperator l = parse_generator(spec, tol);
    const CcpVerdict verdict = conditional_cp_verdict(l, tol);
    const bool unital = is_unital_generator(l, tol);

    json report;
    report["n"] = l.dim();
    report["hermiticity_preserving"] = verdict.hermiticity_preserving;
    report["ccp"] = verdict.conditionally_cp;
    report["unital"] = unital;
    if (!verdict.conditionally_cp) {
      json witness;
      witness["projected_choi_eigenvalue"] = clean(verdict.min_eigenvalue);
      if (verdict.witness) witness["vector"] = vector_to_json(*verdict.witness);
      if (verdict.hermiticity_preserving) {
        if (const auto tuple = find_constrained_witness(l, 50, opts.seed, tol)) {
          witness["constrained_form_eigenvalue"] = clean(tuple->min_eigenvalue);
        }
      }
      report["witness"] = std::move(witness);
      return {std::move(report), kNotGenerator};
    }

    const GklsForm d = decompose(l, tol);
    report["rank"] = d.rank();
    report["index"] = d.rank();
    report["index_note"] = "index of the minimal E0-semigroup dilation (equals the rank)";
    report["k_canonical"] = to_json(d.k);
    report["basis"] = matrices_to_json(d.space.basis());
    report["residuals"] = {
        {"decompose", clean(d.residual)},
        {"relative", clean(d.residual / std::max(1.0, l.matrix().norm()))},
    };
    if (d.rank() == 0 && unital) {
      report["note"] = "semigroup of *-automorphisms; no CAR/CCR dilation index applies";
    }
    return {std::move(report), kOk};
  });
}

CommandResult cmd_decompose(const json& spec, const Options& opts) {
  return guarded([&]() -> CommandResult {
    const Tolerances tol = tolerances_from(opts);
    const GklsForm d = decompose(parse_generator(spec, tol), tol);
    json out;
    out["type"] = "gkls";
    out["n"] = d.n();
    out["kraus"] = matrices_to_json(d.space.basis());
    out["k"] = to_json(d.k);
    out["rank"] = d.rank();
    out["residual"] = clean(d.residual);
    return {std::move(out), kOk};
  });
}

CommandResult cmd_index(const json& spec, const Options& opts) {
  return guarded([&]() -> CommandResult {
    const Tolerances tol = tolerances_from(opts);
    const SuperOperator l = parse_generator(spec, tol);
    const int idx = index(l, tol);
    json out;
    out["index"] = idx;
    out["rank"] = idx;
    out["unital"] = is_unital_generator(l, tol);
    out["note"] = "index of the minimal E0-semigroup dilation (equals the rank)";
    return {std::move(out), kOk};
  });
}

CommandResult cmd_covariance(const json& spec, const json& units, const Options& opts) {
  return guarded([&]() -> CommandResult {
    const Tolerances tol = tolerances_from(opts);
    const SuperOperator l = parse_generator(spec, tol);
    const auto d = decompose_shared(l, tol);
    const std::vector<Unit> us = parse_units(units, d);
    if (us.size() != 2) throw ParseError("covariance needs exactly two units");
    if (!(opts.t > 0.0) || opts.m < 1) throw ParseError("covariance needs --t > 0 and --m >= 1");
    const Complex closed = covariance(us[0], us[1]);
    const Complex estimate = covariance_estimate(l, us[0], us[1], opts.t, opts.m, tol);
    json out;
    out["closed"] = to_json(closed);
    out["estimate"] = to_json(estimate);
    out["abs_error"] = clean(std::abs(estimate - closed));
    return {std::move(out), kOk};
  });
}

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {
      "ccp_equivalence", "covariance", "domination", "gauge",
      "product_system",  "semigroup_law", "units"};
  return names;
}

namespace {

json check_ccp_equivalence(const SuperOperator& l, const Tolerances& tol, std::uint64_t seed) {
  const CcpVerdict verdict = conditional_cp_verdict(l, tol);
  bool exp_cp = true;
  for (const double t : {1e-3, 1e-2, 1e-1, 1.0}) {
    exp_cp = exp_cp && is_completely_positive(evolve(l, t), tol);
  }
  const auto witness = find_constrained_witness(l, 50, seed, tol);
  const bool pass = verdict.conditionally_cp == exp_cp && verdict.conditionally_cp == !witness;
  return {{"pass", pass},
          {"projected_choi", verdict.conditionally_cp},
          {"exponential_cp", exp_cp},
          {"constrained_witness_found", witness.has_value()}};
}

json check_product_system(const SuperOperator& l, const Tolerances& tol) {
  const bool a = product_system_check(l, 0.5, 0.5, tol);
  const bool b = product_system_check(l, 0.3, 0.7, tol);
  return {{"pass", a && b}, {"s0.5_t0.5", a}, {"s0.3_t0.7", b}};
}

json check_semigroup_law(const SuperOperator& l) {
  double worst = 0.0;
  for (const auto& [s, t] : {std::pair{0.3, 0.7}, std::pair{0.5, 0.5}, std::pair{0.25, 1.5}}) {
    const CMatrix lhs = (evolve(l, s) * evolve(l, t)).matrix();
    const CMatrix rhs = evolve(l, s + t).matrix();
    worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
  }
  return {{"pass", worst <= 1e-10}, {"max_relative_error", clean(worst)}};
}

json check_domination(const SuperOperator& l, const Tolerances& tol, std::uint64_t seed) {
  Rng rng(seed);
  const int n = l.dim();
  const CMatrix v = random_complex_matrix(n, n, rng) / std::sqrt(static_cast<double>(n));
  const SuperOperator l2 = l + SuperOperator::conjugation(v);
  double margin = 0.0;
  for (const double t : t_grid()) margin = std::min(margin, domination_margin(l, l2, t));
  return {{"pass", dominates(l, l2, t_grid(), tol)}, {"min_choi_eigenvalue", clean(margin)}};
}

json check_gauge(const GklsForm& d, const Tolerances& tol, std::uint64_t seed) {
  Rng rng(seed + 1);
  const int n = d.n();
  const CMatrix id = CMatrix::Identity(n, n);
  const CVector lambda = random_complex_matrix(d.rank(), 1, rng).col(0);
  const SuperOperator p = d.space.cp_map();
  const bool symbol_ok = symbols_equal(gauge_shift(d, lambda, 0.5), p, tol);

  // Shifted Kraus family with the drift compensated so the generator is unchanged.
  std::vector<CMatrix> shifted;
  CMatrix u = CMatrix::Zero(n, n);
  for (int m = 0; m < d.rank(); ++m) {
    shifted.push_back(d.space.basis()[m] + lambda(m) * id);
    u += std::conj(lambda(m)) * d.space.basis()[m];
  }
  const CMatrix k2 = d.k - u - 0.5 * lambda.squaredNorm() * id;
  const GklsForm again = decompose(gkls_map(shifted, k2), tol);
  const SameGeneratorResult same = same_generator(d, again, tol);

  GklsForm bumped = d;
  bumped.k += 0.1 * id;
  const bool bumped_same = same_generator(d, bumped, tol).same;

  return {{"pass", symbol_ok && same.same && !bumped_same},
          {"symbols_equal", symbol_ok},
          {"shifted_same_generator", same.same},
          {"perturbed_same_generator", bumped_same}};
}

json check_units(const SuperOperator& l, const std::shared_ptr<const GklsForm>& d,
                 const Tolerances& tol, std::uint64_t seed) {
  const std::vector<Unit> units = sample_units(d, d->rank() + 3, seed);
  int failures = 0;
  for (const Unit& u : units) failures += verify_unit(l, u, t_grid(), tol) ? 0 : 1;
  return {{"pass", failures == 0},
          {"units", static_cast<int>(units.size())},
          {"failures", failures}};
}

json check_covariance(const std::shared_ptr<const GklsForm>& d, const Tolerances& tol,
                      std::uint64_t seed) {
  const CovarianceKernel kernel = covariance_kernel(sample_units(d, d->rank() + 3, seed));
  const CMatrix g = centered_gram(kernel);
  const int dim = gram_dimension(kernel, tol);
  const double min_eig = min_eigenvalue(g);
  const bool cpd = min_eig >= -tol.psd_slack * tolerance_scale(g);

  // With sum(lambda) = 0 the scalar parts cancel and the quadratic form of
  // the covariance equals that of <v_i, v_j>_E.
  Rng rng(seed + 2);
  const auto size = static_cast<Eigen::Index>(kernel.sample.size());
  CVector lambda = random_complex_matrix(static_cast<int>(size), 1, rng).col(0);
  lambda.array() -= lambda.mean();
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double self_gap = 0.0;
  for (Eigen::Index i = 0; i < size; ++i) {
    const Unit& ui = kernel.sample[i];
    for (Eigen::Index j = 0; j < size; ++j) {
      const Unit& uj = kernel.sample[j];
      const Complex w = lambda(i) * std::conj(lambda(j));
      lhs += w * uj.v_coords.dot(ui.v_coords);
      rhs += w * kernel.matrix(i, j);
    }
    const Unit pure = make_unit(d, 0.0, ui.v_coords);
    self_gap = std::max(self_gap, std::abs(covariance(pure, pure) - ui.v_coords.squaredNorm()));
  }
  const bool lemma_ok = std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)) &&
                        self_gap <= 1e-10;
  return {{"pass", cpd && lemma_ok && dim == d->rank()},
          {"gram_dimension", dim},
          {"rank", d->rank()},
          {"conditionally_positive_definite", cpd},
          {"inner_product_identities", lemma_ok}};
}

}  // namespace

CommandResult cmd_verify(const json& spec, const Options& opts) {
  return guarded([&]() -> CommandResult {
    const Tolerances tol = tolerances_from(opts);
    const SuperOperator l = parse_generator(spec, tol);
    std::vector<std::string> checks = opts.checks;
    if (checks.empty()) checks = verify_check_names();
    for (const std::string& name : checks) {
      const auto& known = verify_check_names();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ParseError("unknown check \"" + name + "\"");
      }
    }

    const bool ccp = is_conditionally_cp(l, tol);
    std::shared_ptr<const GklsForm> d;
    if (ccp) d = decompose_shared(l, tol);

    json results = json::object();
    bool all = true;
    bool needs_generator = false;
    for (const std::string& name : checks) {
      json r;
      if (name == "ccp_equivalence") {
        r = check_ccp_equivalence(l, tol, opts.seed);
      } else if (!ccp) {
        r = {{"pass", false}, {"skipped", "input is not a generator of a CP semigroup"}};
        needs_generator = true;
      } else if (name == "product_system") {
        r = check_product_system(l, tol);
      } else if (name == "semigroup_law") {
        r = check_semigroup_law(l);
      } else if (name == "domination") {
        r = check_domination(l, tol, opts.seed);
      } else if (name == "gauge") {
        r = check_gauge(*d, tol, opts.seed);
      } else if (name == "units") {
        r = check_units(l, d, tol, opts.seed);
      } else {
        r = check_covariance(d, tol, opts.seed);
      }
      all = all && r["pass"].get<bool>();
      results[name] = std::move(r);
    }
    json out{{"checks", std::move(results)}, {"pass", all}, {"seed", opts.seed}};
    const int code = all ? kOk : (needs_generator ? kNotGenerator : kCheckFailed);
    return {std::move(out), code};
  });
}

}  // namespace cpsemi::cli
