#ifndef QUADPERM_SWEEP_HPP
#define QUADPERM_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "quadperm/conditions.hpp"
#include "quadperm/field.hpp"

namespace quadperm {

struct SweepConfig {
  int m = 3;
  enum class Mode { ExhaustiveSubfield, Random } mode = Mode::Random;
  std::uint64_t count = 1000;  // random mode
  std::uint64_t seed = 0;
  enum class Oracle { Mu, Exhaustive, Both } oracle = Oracle::Mu;
  enum class Format { JsonLines, Csv } format = Format::JsonLines;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct SweepSummary {
  std::uint64_t total = 0;
  std::uint64_t degenerate = 0, condition1 = 0, condition2 = 0, none = 0;
  std::uint64_t pps_found = 0;
  std::uint64_t sufficiency_violations = 0;  // classified but not a PP
  std::uint64_t necessity_violations = 0;    // non-degenerate PP left unclassified
  std::uint64_t oracle_disagreements = 0;
  // Nonzero exit: any sufficiency violation or oracle disagreement, plus
  // necessity violations at m >= 9 (below that they are findings, not bugs).
  bool fatal(int m) const {
    return sufficiency_violations > 0 || oracle_disagreements > 0 ||
           (m >= 9 && necessity_violations > 0);
  }
};

// CSV column order (documented contract):
//   m,a1,a2,a3,branch,theta4_nonzero,theta2_zero,a3_in_mu,a3_noncube,
//   theta1_nonzero,theta3_eq_theta2_pow,trinomial_rootfree,c_value,
//   pp_mu,pp_exhaustive,consistent
inline constexpr const char* kSweepCsvHeader =
    "m,a1,a2,a3,branch,theta4_nonzero,theta2_zero,a3_in_mu,a3_noncube,"
    "theta1_nonzero,theta3_eq_theta2_pow,trinomial_rootfree,c_value,"
    "pp_mu,pp_exhaustive,consistent";

// Runs the sweep, writing one record per triple to `out` in index order
// (deterministic for a given seed) followed by no summary; the summary is
// returned. Sampling is counter-based, so worker count does not affect the
// output bytes.
SweepSummary run_sweep(const FieldSpec& fs, const SweepConfig& cfg,
                       std::ostream& out);

// The triple at stream position `index` for a seed (uniform, rejection-free).
CoefficientTriple sample_triple(const FieldSpec& fs, std::uint64_t seed,
                                std::uint64_t index);

}  // namespace quadperm

#endif
