#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadperm/conditions.hpp"
#include "quadperm/curves.hpp"
#include "quadperm/field.hpp"
#include "quadperm/niho.hpp"
#include "quadperm/prove.hpp"
#include "quadperm/rng.hpp"
#include "quadperm/sweep.hpp"

using json = nlohmann::ordered_json;
using namespace quadperm;

namespace {

json clauses_json(const ConditionClauses& c) {
  return json{{"theta4_nonzero", c.theta4_nonzero},
              {"theta2_zero", c.theta2_zero},
              {"a3_in_mu", c.a3_in_mu},
              {"a3_noncube", c.a3_noncube},
              {"theta1_nonzero", c.theta1_nonzero},
              {"theta3_eq_theta2_pow", c.theta3_eq_theta2_pow},
              {"trinomial_rootfree", c.trinomial_rootfree}};
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw Error("cannot open output file " + path);
  return file;
}

int cmd_field(int m) {
  FieldSpec fs = FieldSpec::make(m);
  NihoExponents e = exponents(fs);
  json out{{"m", fs.m()},
           {"q", fs.q()},
           {"modulus", FieldSpec::to_hex(fs.modulus())},
           {"k", FieldSpec::to_hex(fs.k())},
           {"trace_k", fs.trace(fs.k())},
           {"ext_generator", fs.to_string(fs.ext_generator())},
           {"mu_generator", fs.to_string(fs.mu_generator())},
           {"exponents",
            json{{"s1", e.s1}, {"s2", e.s2}, {"s3", e.s3},
                 {"d1", e.d1}, {"d2", e.d2}, {"d3", e.d3}}}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_check(int m, const std::string& a1, const std::string& a2,
              const std::string& a3, const std::string& oracle,
              bool with_curves) {
  FieldSpec fs = FieldSpec::make(m);
  CoefficientTriple t{fs.parse_ext(a1), fs.parse_ext(a2), fs.parse_ext(a3)};
  ConditionReport rep = classify(fs, t);
  ThetaVector tv = thetas(fs, t);

  json out{{"m", m},
           {"a1", fs.to_string(t.a1)},
           {"a2", fs.to_string(t.a2)},
           {"a3", fs.to_string(t.a3)},
           {"thetas",
            json{{"theta1", FieldSpec::to_hex(tv.theta1)},
                 {"theta2", fs.to_string(tv.theta2)},
                 {"theta3", fs.to_string(tv.theta3)},
                 {"theta4", FieldSpec::to_hex(tv.theta4)},
                 {"theta4p", FieldSpec::to_hex(tv.theta4p)}}},
           {"branch", branch_name(rep.branch)},
           {"clauses", clauses_json(rep.clauses)},
           {"c_value",
            rep.c_value ? json(FieldSpec::to_hex(*rep.c_value)) : json()}};

  bool run_mu = oracle != "exhaustive";
  bool run_exh = oracle != "mu";
  json pp_mu, pp_exh, agree;
  bool mu_val = false, exh_val = false;
  if (run_mu) pp_mu = mu_val = is_pp_via_mu(fs, t);
  if (run_exh) pp_exh = exh_val = is_pp_exhaustive(fs, t);
  out["pp_mu"] = pp_mu;
  out["pp_exhaustive"] = pp_exh;
  out["agree"] = (run_mu && run_exh) ? json(mu_val == exh_val) : json();

  // the phi(infinity) corner: the excluded value (a1+a2+a3+1)^{q-1} is
  // ill-formed when 1 + a1 + a2 + a3 = 0
  ExtElem s = fs.ext_add(fs.ext_add(kExtOne, t.a1), fs.ext_add(t.a2, t.a3));
  json notes = rep.notes;
  if (s == kExtZero)
    notes.push_back("1 + a1 + a2 + a3 = 0: the excluded mu value is ill-formed");
  out["notes"] = notes;

  if (with_curves) {
    BivarPoly F = build_curve_C(fs, tv);
    HCurve h = build_curve_H(fs, h_params_from_triple(fs, t), t);
    out["curves"] =
        json{{"mu_points_off_diagonal_C", mu_square_points(fs, F).size()},
             {"fq_points_off_diagonal_H", fq_points_off_diagonal(fs, h.L)},
             {"hasse_weil_ok", hasse_weil_ok(fs.q())}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& output) {
  FieldSpec fs = FieldSpec::make(cfg.m);
  std::ofstream file;
  std::ostream& out = open_output(output, file);
  SweepSummary s = run_sweep(fs, cfg, out);
  json summary{{"total", s.total},
               {"degenerate", s.degenerate},
               {"condition1", s.condition1},
               {"condition2", s.condition2},
               {"none", s.none},
               {"pps_found", s.pps_found},
               {"sufficiency_violations", s.sufficiency_violations},
               {"necessity_violations", s.necessity_violations},
               {"oracle_disagreements", s.oracle_disagreements}};
  std::cerr << summary.dump() << "\n";
  return s.fatal(cfg.m) ? 1 : 0;
}

int cmd_curve_points(int m, const std::string& a1, const std::string& a2,
                     const std::string& a3, const std::string& which,
                     const std::string& output) {
  FieldSpec fs = FieldSpec::make(m);
  CoefficientTriple t{fs.parse_ext(a1), fs.parse_ext(a2), fs.parse_ext(a3)};
  ThetaVector tv = thetas(fs, t);
  std::ofstream file;
  std::ostream& out = open_output(output, file);
  out << "x_a,x_b,y_a,y_b\n";
  auto emit = [&](ExtElem x, ExtElem y) {
    out << FieldSpec::to_hex(x.a) << ',' << FieldSpec::to_hex(x.b) << ','
        << FieldSpec::to_hex(y.a) << ',' << FieldSpec::to_hex(y.b) << '\n';
  };
  if (which == "C" || which == "D") {
    BivarPoly P = which == "C" ? build_curve_C(fs, tv) : build_curve_D(fs, tv);
    for (auto& [x, y] : mu_square_points(fs, P)) emit(x, y);
  } else if (which == "H") {
    HCurve h = build_curve_H(fs, h_params_from_triple(fs, t), t);
    for (Bits a = 0; a < fs.q(); ++a)
      for (Bits b = 0; b < fs.q(); ++b) {
        if (a == b) continue;
        if (h.L.eval(fs.ext(a), fs.ext(b)) == kExtZero)
          emit(fs.ext(a), fs.ext(b));
      }
  } else {
    throw Error("unknown curve " + which);
  }
  return 0;
}

int cmd_verify_identities(int m, std::uint64_t count, std::uint64_t seed) {
  FieldSpec fs = FieldSpec::make(m);
  std::uint64_t failures = 0;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    CoefficientTriple t = sample_triple(fs, seed, idx);
    ThetaVector tv = thetas(fs, t);  // asserts the norm identity
    bool ok = verify_numerator_identity(fs, t) &&
              build_curve_D(fs, tv).compose_sym() == build_curve_C(fs, tv);
    if (ok) {
      try {
        build_curve_H(fs, h_params_from_triple(fs, t), t);
      } catch (const ParameterInconsistency&) {
        ok = false;
      }
    }
    if (!ok) ++failures;
  }
  json out{{"m", m}, {"count", count}, {"seed", seed}, {"failures", failures}};
  std::cout << out.dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_prove(const std::string& id, const std::string& scripts_dir,
              int checks, std::uint64_t seed) {
  ProveRun run = run_prove(scripts_dir, id, checks, seed);
  json out = json::array();
  for (const auto& r : run.results) {
    json steps = json::array();
    for (const auto& s : r.report.steps)
      steps.push_back(json{{"index", s.index},
                           {"kind", s.kind},
                           {"name", s.name},
                           {"ok", s.ok},
                           {"assertion", s.is_assertion},
                           {"detail", s.detail}});
    out.push_back(json{{"id", r.report.id},
                       {"passed", r.report.passed},
                       {"conclusion", r.conclusion},
                       {"resultant_checks", r.resultant_checks},
                       {"resultant_checks_ok", r.resultant_checks_ok},
                       {"steps", steps}});
  }
  std::cout << out.dump(2) << "\n";
  return run.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "quadperm: permutation testing and proof replay for Niho-exponent "
      "quadrinomials over GF(2^(2m))"};
  app.require_subcommand(1);

  int m = 3;
  std::string a1 = "0x0", a2 = "0x0", a3 = "0x0";
  std::string oracle = "both";
  std::string output;
  bool with_curves = false;

  auto* field = app.add_subcommand("field", "describe a field tower");
  field->add_option("--m", m, "base field degree")->required();

  auto* check = app.add_subcommand("check", "classify one triple");
  check->add_option("--m", m)->required();
  check->add_option("--a1", a1, "coefficient, hex or A+B*i");
  check->add_option("--a2", a2);
  check->add_option("--a3", a3);
  check->add_option("--oracle", oracle)
      ->check(CLI::IsMember({"mu", "exhaustive", "both"}));
  check->add_flag("--curves", with_curves, "include curve point counts");

  SweepConfig cfg;
  std::string mode = "random", pp_oracle = "mu", format = "json_lines";
  auto* sweep = app.add_subcommand("sweep", "classify many triples");
  sweep->add_option("--m", cfg.m)->required();
  sweep->add_option("--mode", mode)
      ->check(CLI::IsMember({"random", "exhaustive_subfield"}));
  sweep->add_option("--count", cfg.count);
  sweep->add_option("--seed", cfg.seed);
  sweep->add_option("--pp-oracle", pp_oracle)
      ->check(CLI::IsMember({"mu", "exhaustive", "both"}));
  sweep->add_option("--format", format)
      ->check(CLI::IsMember({"json_lines", "csv"}));
  sweep->add_option("--output", output, "output file (default stdout)");
  sweep->add_option("--workers", cfg.workers);

  std::string which = "C";
  auto* cpoints = app.add_subcommand("curve-points", "list curve points");
  cpoints->add_option("--m", m)->required();
  cpoints->add_option("--a1", a1);
  cpoints->add_option("--a2", a2);
  cpoints->add_option("--a3", a3);
  cpoints->add_option("--curve", which)->check(CLI::IsMember({"C", "D", "H"}));
  cpoints->add_option("--output", output);

  std::uint64_t count = 100, seed = 1;
  auto* vident = app.add_subcommand("verify-identities",
                                    "exact curve identities on random triples");
  vident->add_option("--m", m)->required();
  vident->add_option("--count", count);
  vident->add_option("--seed", seed);

  std::string script_id = "all";
  const char* env_dir = std::getenv("QUADPERM_SCRIPTS_DIR");
  std::string scripts_dir = env_dir ? env_dir : "scripts";
  int checks = 100;
  auto* prove = app.add_subcommand("prove", "replay the proof script corpus");
  prove->add_option("id", script_id, "script id or 'all'");
  prove->add_option("--scripts-dir", scripts_dir);
  prove->add_option("--checks", checks, "resultant specializations per script");
  prove->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (field->parsed()) return cmd_field(m);
    if (check->parsed()) return cmd_check(m, a1, a2, a3, oracle, with_curves);
    if (sweep->parsed()) {
      cfg.mode = mode == "random" ? SweepConfig::Mode::Random
                                  : SweepConfig::Mode::ExhaustiveSubfield;
      cfg.oracle = pp_oracle == "mu"          ? SweepConfig::Oracle::Mu
                   : pp_oracle == "exhaustive" ? SweepConfig::Oracle::Exhaustive
                                               : SweepConfig::Oracle::Both;
      cfg.format = format == "csv" ? SweepConfig::Format::Csv
                                   : SweepConfig::Format::JsonLines;
      return cmd_sweep(cfg, output);
    }
    if (cpoints->parsed()) return cmd_curve_points(m, a1, a2, a3, which, output);
    if (vident->parsed()) return cmd_verify_identities(m, count, seed);
    if (prove->parsed()) return cmd_prove(script_id, scripts_dir, checks, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
