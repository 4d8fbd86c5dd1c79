#include "quadperm/sweep.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "quadperm/niho.hpp"
#include "quadperm/rng.hpp"

namespace quadperm {
namespace {

struct RecordOutcome {
  std::string rendered;
  Branch branch;
  bool pp = false;
  bool sufficiency_violation = false;
  bool necessity_violation = false;
  bool oracle_disagreement = false;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

RecordOutcome process_triple(const FieldSpec& fs, const SweepConfig& cfg,
                             const CoefficientTriple& t) {
  RecordOutcome out;
  ConditionReport rep = classify(fs, t);
  out.branch = rep.branch;

  bool have_exh = cfg.oracle != SweepConfig::Oracle::Mu;
  bool have_mu = cfg.oracle != SweepConfig::Oracle::Exhaustive;
  bool pp_mu = have_mu && is_pp_via_mu(fs, t);
  bool pp_exh = have_exh && is_pp_exhaustive(fs, t);
  out.pp = have_mu ? pp_mu : pp_exh;
  out.oracle_disagreement = have_mu && have_exh && pp_mu != pp_exh;

  bool classified =
      rep.branch == Branch::Condition1 || rep.branch == Branch::Condition2;
  out.sufficiency_violation = classified && !out.pp;
  out.necessity_violation =
      out.pp && rep.branch == Branch::None;  // degenerate excluded by branch
  bool consistent = !out.sufficiency_violation && !out.oracle_disagreement &&
                    !(fs.m() >= 9 && out.necessity_violation);

  std::ostringstream os;
  if (cfg.format == SweepConfig::Format::Csv) {
    os << fs.m() << ',' << fs.to_string(t.a1) << ',' << fs.to_string(t.a2)
       << ',' << fs.to_string(t.a3) << ',' << branch_name(rep.branch) << ','
       << bool_str(rep.clauses.theta4_nonzero) << ','
       << bool_str(rep.clauses.theta2_zero) << ','
       << bool_str(rep.clauses.a3_in_mu) << ','
       << bool_str(rep.clauses.a3_noncube) << ','
       << bool_str(rep.clauses.theta1_nonzero) << ','
       << bool_str(rep.clauses.theta3_eq_theta2_pow) << ','
       << bool_str(rep.clauses.trinomial_rootfree) << ','
       << (rep.c_value ? FieldSpec::to_hex(*rep.c_value) : "") << ','
       << (have_mu ? bool_str(pp_mu) : "") << ','
       << (have_exh ? bool_str(pp_exh) : "") << ',' << bool_str(consistent);
  } else {
    os << "{\"m\":" << fs.m() << ",\"a1\":\"" << fs.to_string(t.a1)
       << "\",\"a2\":\"" << fs.to_string(t.a2) << "\",\"a3\":\""
       << fs.to_string(t.a3) << "\",\"branch\":\"" << branch_name(rep.branch)
       << "\",\"clauses\":{"
       << "\"theta4_nonzero\":" << bool_str(rep.clauses.theta4_nonzero)
       << ",\"theta2_zero\":" << bool_str(rep.clauses.theta2_zero)
       << ",\"a3_in_mu\":" << bool_str(rep.clauses.a3_in_mu)
       << ",\"a3_noncube\":" << bool_str(rep.clauses.a3_noncube)
       << ",\"theta1_nonzero\":" << bool_str(rep.clauses.theta1_nonzero)
       << ",\"theta3_eq_theta2_pow\":"
       << bool_str(rep.clauses.theta3_eq_theta2_pow)
       << ",\"trinomial_rootfree\":" << bool_str(rep.clauses.trinomial_rootfree)
       << "},\"c_value\":"
       << (rep.c_value ? "\"" + FieldSpec::to_hex(*rep.c_value) + "\""
                       : "null")
       << ",\"pp_mu\":" << (have_mu ? bool_str(pp_mu) : "null")
       << ",\"pp_exhaustive\":" << (have_exh ? bool_str(pp_exh) : "null")
       << ",\"consistent\":" << bool_str(consistent) << "}";
  }
  out.rendered = os.str();
  return out;
}

}  // namespace

CoefficientTriple sample_triple(const FieldSpec& fs, std::uint64_t seed,
                                std::uint64_t index) {
  // Three extension elements need 6m <= 64 bits of entropy per draw; m <= 10
  // takes one 64-bit word, larger m takes one word per element.
  CoefficientTriple t;
  const Bits mask = fs.q() - 1;
  if (6 * fs.m() <= 64) {
    std::uint64_t r = splitmix64(seed, index);
    auto take = [&]() {
      Bits v = static_cast<Bits>(r) & mask;
      r >>= fs.m();
      return v;
    };
    t.a1 = {take(), take()};
    t.a2 = {take(), take()};
    t.a3 = {take(), take()};
  } else {
    auto draw = [&](std::uint64_t lane) {
      std::uint64_t r = splitmix64(seed, index * 4 + lane);
      return ExtElem{static_cast<Bits>(r) & mask,
                     static_cast<Bits>(r >> fs.m()) & mask};
    };
    t.a1 = draw(1);
    t.a2 = draw(2);
    t.a3 = draw(3);
  }
  return t;
}

SweepSummary run_sweep(const FieldSpec& fs, const SweepConfig& cfg,
                       std::ostream& out) {
  std::vector<CoefficientTriple> triples;
  if (cfg.mode == SweepConfig::Mode::ExhaustiveSubfield) {
    if (fs.m() > 3) throw Error("exhaustive_subfield mode requires m <= 3");
    // All triples with coordinates in the GF(4) subfield {x : x^4 = x}.
    std::vector<ExtElem> subfield;
    for (std::uint64_t i = 0; i < fs.q2(); ++i) {
      ExtElem x = fs.element_at(i);
      ExtElem x2 = fs.ext_mul(x, x);
      if (fs.ext_mul(x2, x2) == x) subfield.push_back(x);
    }
    for (ExtElem a1 : subfield)
      for (ExtElem a2 : subfield)
        for (ExtElem a3 : subfield) triples.push_back({a1, a2, a3});
  } else {
    triples.reserve(cfg.count);
    for (std::uint64_t i = 0; i < cfg.count; ++i)
      triples.push_back(sample_triple(fs, cfg.seed, i));
  }

  const std::uint64_t n = triples.size();
  unsigned workers = cfg.workers ? cfg.workers
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
  std::vector<std::vector<RecordOutcome>> results(workers);
  auto work = [&](unsigned w) {
    std::uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
    results[w].reserve(hi - lo);
    for (std::uint64_t i = lo; i < hi; ++i)
      results[w].push_back(process_triple(fs, cfg, triples[i]));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }

  SweepSummary s;
  if (cfg.format == SweepConfig::Format::Csv) out << kSweepCsvHeader << '\n';
  for (auto& chunk : results)
    for (auto& r : chunk) {
      out << r.rendered << '\n';
      ++s.total;
      switch (r.branch) {
        case Branch::Degenerate:
          ++s.degenerate;
          break;
        case Branch::Condition1:
          ++s.condition1;
          break;
        case Branch::Condition2:
          ++s.condition2;
          break;
        case Branch::None:
          ++s.none;
          break;
      }
      if (r.pp) ++s.pps_found;
      if (r.sufficiency_violation) ++s.sufficiency_violations;
      if (r.necessity_violation) ++s.necessity_violations;
      if (r.oracle_disagreement) ++s.oracle_disagreements;
    }
  return s;
}

}  // namespace quadperm
