#include "quadperm/conditions.hpp"

#include <cassert>

namespace quadperm {

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::Condition1:
      return "Condition1";
    case Branch::Condition2:
      return "Condition2";
    case Branch::Degenerate:
      return "Degenerate";
    case Branch::None:
      return "None";
  }
  return "?";
}

namespace {

void validate(const FieldSpec& fs, const ThetaVector& tv) {
  if ((tv.theta1 ^ tv.theta4) != tv.theta4p)
    throw ParameterInconsistency("theta4p != theta1 + theta4");
  Bits lhs = fs.norm(tv.theta2) ^ fs.norm(tv.theta3);
  if (lhs != fs.mul(tv.theta4, tv.theta4p))
    throw ParameterInconsistency("norm(theta2)+norm(theta3) != theta4*theta4p");
}

// theta2^{2q-1} = frobenius(theta2)^2 / theta2, defined for theta2 != 0.
ExtElem theta2_pow_2q_minus_1(const FieldSpec& fs, ExtElem theta2) {
  ExtElem fq = fs.frobenius(theta2);
  return fs.ext_mul(fs.ext_mul(fq, fq), fs.ext_inv(theta2));
}

}  // namespace

ThetaVector thetas(const FieldSpec& fs, const CoefficientTriple& t) {
  ThetaVector tv;
  const Bits n1 = fs.norm(t.a1), n2 = fs.norm(t.a2), n3 = fs.norm(t.a3);
  tv.theta1 = 1 ^ n1 ^ n2 ^ n3;
  tv.theta2 = fs.ext_add(fs.frobenius(t.a1),
                         fs.ext_mul(t.a3, fs.frobenius(t.a2)));
  tv.theta3 = fs.ext_add(t.a3, fs.ext_mul(t.a2, fs.frobenius(t.a1)));
  tv.theta4 = n1 ^ n3;
  tv.theta4p = tv.theta1 ^ tv.theta4;
  validate(fs, tv);
  return tv;
}

ThetaVector theta_vector_raw(const FieldSpec& fs, Bits theta1, ExtElem theta2,
                             ExtElem theta3, Bits theta4) {
  ThetaVector tv{theta1, theta2, theta3, theta4,
                 static_cast<Bits>(theta1 ^ theta4)};
  validate(fs, tv);
  return tv;
}

ConditionClauses check_condition_1(const FieldSpec& fs,
                                   const CoefficientTriple& t) {
  ThetaVector tv = thetas(fs, t);
  ConditionClauses c;
  c.theta4_nonzero = tv.theta4 != 0;
  c.theta2_zero = tv.theta2 == kExtZero;
  c.a3_in_mu = fs.in_mu(t.a3);
  c.a3_noncube = c.a3_in_mu && !fs.is_cube_in_mu(t.a3);
  return c;
}

ConditionClauses check_condition_2(const FieldSpec& fs,
                                   const CoefficientTriple& t) {
  ThetaVector tv = thetas(fs, t);
  ConditionClauses c;
  c.theta4_nonzero = tv.theta4 != 0;
  c.theta2_zero = tv.theta2 == kExtZero;
  c.theta1_nonzero = tv.theta1 != 0;
  if (!c.theta2_zero) {
    c.theta3_eq_theta2_pow = tv.theta3 == theta2_pow_2q_minus_1(fs, tv.theta2);
    Bits cval = fs.mul(fs.mul(tv.theta1, tv.theta1), fs.inv(fs.norm(tv.theta2)));
    c.trinomial_rootfree = fs.solve_cubic_trinomial(cval).empty();
  }
  return c;
}

ConditionReport classify(const FieldSpec& fs, const CoefficientTriple& t) {
  ConditionReport r;
  ThetaVector tv = thetas(fs, t);
  r.clauses.theta4_nonzero = tv.theta4 != 0;
  r.clauses.theta2_zero = tv.theta2 == kExtZero;
  r.clauses.a3_in_mu = fs.in_mu(t.a3);
  r.clauses.a3_noncube = r.clauses.a3_in_mu && !fs.is_cube_in_mu(t.a3);
  r.clauses.theta1_nonzero = tv.theta1 != 0;
  if (!r.clauses.theta2_zero) {
    r.clauses.theta3_eq_theta2_pow =
        tv.theta3 == theta2_pow_2q_minus_1(fs, tv.theta2);
    Bits cval =
        fs.mul(fs.mul(tv.theta1, tv.theta1), fs.inv(fs.norm(tv.theta2)));
    r.c_value = cval;
    r.clauses.trinomial_rootfree = fs.solve_cubic_trinomial(cval).empty();
  }
  if (fs.m() % 2 == 0)
    r.notes.push_back("condition-1 vacuous: 3 does not divide q+1");
  if (t.all_zero()) {
    r.branch = Branch::Degenerate;
  } else if (r.clauses.condition1()) {
    r.branch = Branch::Condition1;
  } else if (r.clauses.condition2()) {
    r.branch = Branch::Condition2;
  } else {
    r.branch = Branch::None;
  }
  return r;
}

bool zroots_equivalence(const FieldSpec& fs, const ThetaVector& tv) {
  if (tv.theta2 == kExtZero) throw Theta2Zero();
  const Bits n = fs.norm(tv.theta2);
  const Bits ninv = fs.inv(n);
  // z-equation: theta1 + z + z^3/n = 0 over GF(q).
  bool z_has_root = false;
  for (Bits z = 0; z < fs.q(); ++z) {
    Bits v = tv.theta1 ^ z ^ fs.mul(fs.mul(fs.mul(z, z), z), ninv);
    if (v == 0) {
      z_has_root = true;
      break;
    }
  }
  Bits cval = fs.mul(fs.mul(tv.theta1, tv.theta1), ninv);
  bool trin_has_root = !fs.solve_cubic_trinomial(cval).empty();
  return z_has_root == trin_has_root;
}

}  // namespace quadperm
