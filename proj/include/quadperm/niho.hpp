#ifndef QUADPERM_NIHO_HPP
#define QUADPERM_NIHO_HPP

#include <cstdint>
#include <optional>

#include "quadperm/field.hpp"

namespace quadperm {

struct CoefficientTriple {
  ExtElem a1, a2, a3;
  friend auto operator<=>(const CoefficientTriple&,
                          const CoefficientTriple&) = default;
  bool all_zero() const {
    return a1 == kExtZero && a2 == kExtZero && a3 == kExtZero;
  }
};

// The exponent family (s1, s2, s3) = (1/4, 1, 3/4) read modulo q+1 and the
// induced exponents d_i = s_i (q-1) + 1 modulo q^2 - 1.
struct NihoExponents {
  std::uint32_t s1, s2, s3;
  std::uint64_t d1, d2, d3;
};

NihoExponents exponents(const FieldSpec& fs);

// Value of the mu-restricted rational map: either an element of mu_{q+1}
// or a pole (the denominator vanished).
struct MuMapValue {
  std::optional<ExtElem> value;  // nullopt = Pole
  bool is_pole() const { return !value.has_value(); }
};

// f(x) = x + a1 x^{d1} + a2 x^{d2} + a3 x^{d3}; f(0) = 0.
ExtElem eval_f(const FieldSpec& fs, const CoefficientTriple& t, ExtElem x);

// Injectivity of f over all of GF(q^2) via a q^2-bit hit array.
// Throws FieldTooLarge when q^2 > 2^22.
bool is_pp_exhaustive(const FieldSpec& fs, const CoefficientTriple& t);

// p(x) = (x^4 + a1^q x^3 + a3^q x + a2^q) / (a2 x^4 + a3 x^3 + a1 x + 1)
// for x in mu_{q+1}. Throws NotInMu if the argument is outside mu.
MuMapValue eval_p(const FieldSpec& fs, const CoefficientTriple& t, ExtElem x);

// The mu_{q+1} permutation criterion: no pole and injective on mu (q+1
// evaluations).
bool is_pp_via_mu(const FieldSpec& fs, const CoefficientTriple& t);

// phi(x) = (x+e)/(x+e+1) with e = i, an injection of GF(q) into
// mu_{q+1} \ {1}.
ExtElem phi(const FieldSpec& fs, Bits x);

// One coordinate of the inverse map psi: X -> (X(e+1)+e)/(X+1); the
// left inverse of phi. Throws DivisionByZero at X = 1.
ExtElem psi_component(const FieldSpec& fs, ExtElem x);

}  // namespace quadperm

#endif
