#ifndef QUADPERM_PROVE_HPP
#define QUADPERM_PROVE_HPP

#include <string>
#include <vector>

#include "quadperm/script.hpp"

namespace quadperm {

struct ProveResult {
  sym::ScriptReport report;
  int resultant_checks = 0;        // specialization cross-checks performed
  bool resultant_checks_ok = false;
  std::string conclusion;          // from the manifest
};

struct ProveRun {
  std::vector<ProveResult> results;
  bool all_passed() const {
    for (const auto& r : results)
      if (!r.report.passed || !r.resultant_checks_ok) return false;
    return !results.empty();
  }
};

// Script ids listed in the corpus manifest, in manifest order.
std::vector<std::string> corpus_script_ids(const std::string& scripts_dir);

// Runs one script (or every manifest entry for id = "all") from the corpus
// directory, with `checks` random resultant specializations per script.
// Throws UnknownScript for an id missing from the manifest.
ProveRun run_prove(const std::string& scripts_dir, const std::string& id,
                   int checks = 100, std::uint64_t seed = 1);

}  // namespace quadperm

#endif
