#ifndef QUADPERM_SYMBOLIC_HPP
#define QUADPERM_SYMBOLIC_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadperm/errors.hpp"
#include "quadperm/field.hpp"

namespace quadperm {
namespace sym {

// The fixed 23-variable ring over GF(2). The variable the source material
// calls `m` is named `ma` here to avoid colliding with the field degree.
inline constexpr int kNumVars = 23;
inline constexpr std::array<const char*, kNumVars> kVarNames = {
    "x",  "y",  "C",  "D",   "E",  "F",  "i",  "j",   "ma",  "k",  "a", "b",
    "c",  "d",  "e",  "f",   "g",  "t4", "t1", "aq",  "bq",  "aq2", "bq2"};

using VarId = int;

std::optional<VarId> var_by_name(const std::string& name);

// Exponent vector packed 8 bits per variable across three words, variable 0
// in the highest byte of w0, so that plain word comparison is lexicographic
// order. Byte lanes keep intermediate elimination products (which can pass
// degree 15 in one variable) exact.
struct Monomial {
  std::uint64_t w0 = 0, w1 = 0, w2 = 0;

  static Monomial one() { return {}; }
  static Monomial var(VarId v, int e = 1);

  int exponent(VarId v) const;
  int total_degree() const;
  bool is_one() const { return w0 == 0 && w1 == 0 && w2 == 0; }

  bool divides(const Monomial& m) const;
  Monomial operator*(const Monomial& o) const;  // throws ExponentOverflow
  Monomial operator/(const Monomial& o) const;  // requires divides

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Graded lexicographic order.
  bool grlex_less(const Monomial& o) const;

  std::string to_string() const;
};

// Polynomial over GF(2): the set of its monomials, kept as a vector sorted
// in descending graded-lex order. Addition is symmetric difference.
class SparsePoly {
 public:
  SparsePoly() = default;
  static SparsePoly zero() { return {}; }
  static SparsePoly one() { return from_monomial(Monomial::one()); }
  static SparsePoly var(VarId v, int e = 1) {
    return from_monomial(Monomial::var(v, e));
  }
  static SparsePoly from_monomial(const Monomial& m);
  static SparsePoly from_terms(std::vector<Monomial> terms);  // canonicalizes

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Monomial>& terms() const { return terms_; }
  const Monomial& leading() const;  // throws on zero

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly pow(int e) const;  // e <= 8

  int degree(VarId v) const;
  int total_degree() const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;
  bool operator<(const SparsePoly& o) const;  // deterministic set order

  // Evaluation with all variables assigned values in GF(2^l).
  Bits eval(const FieldSpec& fs,
            const std::array<Bits, kNumVars>& vals) const;
  // Coefficients in v (index = degree) evaluated at the assignment; the
  // entry for v itself in `vals` is ignored.
  std::vector<Bits> eval_coeffs(const FieldSpec& fs, VarId v,
                                const std::array<Bits, kNumVars>& vals) const;

  std::string to_string() const;

 private:
  std::vector<Monomial> terms_;
};

// Repeatedly replaces every term divisible by the monomial m with
// (term/m)*r until none is; the rule must strictly reduce the degree in
// some variable of m (throws NonTerminatingRule otherwise).
SparsePoly substitution(const SparsePoly& p, const Monomial& m,
                        const SparsePoly& r);

// The set of nonzero coefficient polynomials of p viewed in
// GF(2)[others][v1, v2], collapsed to a set (sorted, unique).
std::vector<SparsePoly> find_coefficients2(const SparsePoly& p, VarId v1,
                                           VarId v2);

// Resultant with respect to v: determinant of the Sylvester matrix over
// GF(2)[other vars] by fraction-free elimination. Degenerate conventions:
// zero input gives 0; if exactly one input is constant in v, returns
// const^{deg of the other}; both constant throws BothConstantInVar.
SparsePoly resultant(const SparsePoly& p, const SparsePoly& q, VarId v);

// True iff f divides g exactly (single-divisor division, zero remainder).
// Throws DivisorZero when f = 0.
bool divides(const SparsePoly& f, const SparsePoly& g);

// Exact quotient g / f; throws Error when not divisible.
SparsePoly exact_quotient(const SparsePoly& f, const SparsePoly& g);

// Univariate resultant over GF(2^l), used to cross-check specializations.
Bits univariate_resultant(const FieldSpec& fs, const std::vector<Bits>& p,
                          const std::vector<Bits>& q);

}  // namespace sym
}  // namespace quadperm

#endif
