#ifndef QUADPERM_CONDITIONS_HPP
#define QUADPERM_CONDITIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "quadperm/field.hpp"
#include "quadperm/niho.hpp"

namespace quadperm {

// The five invariants of a coefficient triple:
//   theta1 = 1 + a1^{q+1} + a2^{q+1} + a3^{q+1}
//   theta2 = a1^q + a3 a2^q
//   theta3 = a3 + a2 a1^q
//   theta4 = a1^{q+1} + a3^{q+1}
//   theta4p = theta1 + theta4 = 1 + a2^{q+1}
// with norm(theta2) + norm(theta3) = theta4 * theta4p.
struct ThetaVector {
  Bits theta1 = 0;
  ExtElem theta2;
  ExtElem theta3;
  Bits theta4 = 0;
  Bits theta4p = 0;
};

ThetaVector thetas(const FieldSpec& fs, const CoefficientTriple& t);

// Builds a ThetaVector from raw values, validating both identities
// (theta4p = theta1 + theta4 and the norm identity). Used to drive the
// curve verifiers on synthesized parameter sets.
ThetaVector theta_vector_raw(const FieldSpec& fs, Bits theta1, ExtElem theta2,
                             ExtElem theta3, Bits theta4);

enum class Branch { Condition1, Condition2, Degenerate, None };

const char* branch_name(Branch b);

struct ConditionClauses {
  // Condition 1: theta4 != 0, theta2 = 0, a3 in mu_{q+1}, a3 not a cube there.
  bool theta4_nonzero = false;
  bool theta2_zero = false;
  bool a3_in_mu = false;
  bool a3_noncube = false;
  // Condition 2: theta1 != 0, theta2 != 0, theta4 = 0, theta3 = theta2^{2q-1},
  // and x^3 + x + theta1^2/theta2^{q+1} has no root in GF(q).
  bool theta1_nonzero = false;
  bool theta3_eq_theta2_pow = false;
  bool trinomial_rootfree = false;

  bool condition1() const {
    return theta4_nonzero && theta2_zero && a3_in_mu && a3_noncube;
  }
  bool condition2() const {
    return theta1_nonzero && !theta2_zero && !theta4_nonzero &&
           theta3_eq_theta2_pow && trinomial_rootfree;
  }
};

struct ConditionReport {
  Branch branch = Branch::None;
  ConditionClauses clauses;
  // The trinomial constant theta1^2 / theta2^{q+1}, when theta2 != 0.
  std::optional<Bits> c_value;
  std::vector<std::string> notes;
};

ConditionClauses check_condition_1(const FieldSpec& fs,
                                   const CoefficientTriple& t);
ConditionClauses check_condition_2(const FieldSpec& fs,
                                   const CoefficientTriple& t);
ConditionReport classify(const FieldSpec& fs, const CoefficientTriple& t);

// Self-check of the substitution bridging theta1 + z + z^3/theta2^{q+1} = 0
// and the trinomial x^3 + x + theta1^2/theta2^{q+1} = 0: both have a root in
// GF(q) or neither does. Throws Theta2Zero when theta2 = 0.
bool zroots_equivalence(const FieldSpec& fs, const ThetaVector& tv);

}  // namespace quadperm

#endif
