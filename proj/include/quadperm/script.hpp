#ifndef QUADPERM_SCRIPT_HPP
#define QUADPERM_SCRIPT_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "quadperm/symbolic.hpp"

namespace quadperm {
namespace sym {

// A proof script is data: an ordered list of steps over the 23-variable
// ring. Line-oriented format, '#' comments, ':'-separated fields:
//
//   include FILE
//   def NAME = EXPR
//   subst NAME = EXPR : MONOMIAL -> EXPR
//   coeffs NAME = EXPR : VAR : VAR
//   res NAME = EXPR : EXPR : VAR
//   evalrat NAME = EXPR : VAR : NUM-EXPR : DEN-EXPR : POW
//   assert_divides EXPR : NAME
//   assert_member EXPR : NAME
//   assert_zero NAME
//   assert_pair_sum_divides EXPR : NAME
//   note TEXT
//
// Set-valued sources (from coeffs) map res/subst over their members.
struct Step {
  enum class Kind {
    Define,
    Substitute,
    ExtractCoefficients,
    Resultant,
    EvalRational,
    AssertDivides,
    AssertMember,
    AssertZero,
    AssertPairSumDivides,
    Note,
  };
  Kind kind;
  std::string name;                // target name for binding steps
  std::vector<std::string> args;   // raw argument fields
  int line = 0;                    // source line for diagnostics
};

struct ProofScript {
  std::string id;
  std::vector<Step> steps;
};

// Resolves `include` by file name; returns the file contents.
using IncludeResolver = std::function<std::string(const std::string&)>;

ProofScript parse_script(const std::string& id, const std::string& text,
                         const IncludeResolver& resolver);

struct StepReport {
  int index = 0;
  std::string kind;
  std::string name;
  bool ok = true;
  bool is_assertion = false;
  std::string detail;  // sizes, or the offending polynomial on failure
};

struct ScriptReport {
  std::string id;
  bool passed = false;
  std::vector<StepReport> steps;
};

// A resultant invocation recorded during a run, for specialization
// cross-checks of the Sylvester implementation.
struct ResultantInstance {
  SparsePoly p, q;
  VarId v;
  SparsePoly result;
};

using PolySet = std::vector<SparsePoly>;  // sorted, unique
using Value = std::variant<SparsePoly, PolySet>;

class ScriptRunner {
 public:
  ScriptReport run(const ProofScript& script);

  const std::vector<ResultantInstance>& resultant_instances() const {
    return resultants_;
  }
  // Environment after the last run, for inspection tools.
  const std::map<std::string, Value>& environment() const { return env_; }

 private:
  std::map<std::string, Value> env_;
  std::vector<ResultantInstance> resultants_;
};

// Random-specialization consistency check of the recorded resultant calls:
// evaluates all other variables in GF(2^l) and compares with the univariate
// resultant, skipping assignments that drop the leading v-degree of either
// input. Returns the number of checks performed.
int cross_check_resultants(const std::vector<ResultantInstance>& instances,
                           int checks, std::uint64_t seed);

}  // namespace sym
}  // namespace quadperm

#endif
