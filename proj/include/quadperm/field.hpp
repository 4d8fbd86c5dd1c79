#ifndef QUADPERM_FIELD_HPP
#define QUADPERM_FIELD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "quadperm/errors.hpp"

namespace quadperm {

// A base-field element of GF(2^m) in polynomial basis: bit j = coefficient
// of X^j in the residue polynomial, always reduced to degree < m.
using Bits = std::uint32_t;

// Element of GF(q^2) = GF(q)[i]/(i^2+i+k), stored as a + b*i.
struct ExtElem {
  Bits a = 0;
  Bits b = 0;
  friend auto operator<=>(const ExtElem&, const ExtElem&) = default;
};

inline constexpr ExtElem kExtZero{0, 0};
inline constexpr ExtElem kExtOne{1, 0};

// Exact arithmetic in GF(2^m) and its quadratic extension. Immutable after
// construction; all operations are const and safe to call concurrently.
class FieldSpec {
 public:
  // Default modulus and tower constant for the given degree (m = 1..16),
  // honoring the modulus override file if the environment names one.
  static FieldSpec make(int m);
  // Explicit construction; validates irreducibility and trace(k) = 1.
  static FieldSpec make(int m, Bits modulus, Bits k);

  int m() const { return m_; }
  Bits modulus() const { return modulus_; }
  Bits k() const { return k_; }
  std::uint32_t q() const { return q_; }
  std::uint64_t q2() const { return static_cast<std::uint64_t>(q_) * q_; }

  // ---- base field -------------------------------------------------------
  Bits add(Bits x, Bits y) const { return x ^ y; }
  Bits mul(Bits x, Bits y) const {
    if (x == 0 || y == 0) return 0;
    std::uint32_t s = log_[x] + log_[y];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Bits inv(Bits x) const {
    if (x == 0) throw InversionOfZero();
    return x == 1 ? 1 : exp_[q_ - 1 - log_[x]];
  }
  Bits pow(Bits x, std::uint64_t e) const;
  // The unique square root (squaring is a bijection in characteristic 2).
  Bits sqrt(Bits x) const;
  // Absolute trace over GF(2), value in {0, 1}.
  Bits trace(Bits x) const;

  // ---- quadratic extension ----------------------------------------------
  ExtElem ext(Bits a, Bits b = 0) const { return ExtElem{a, b}; }
  ExtElem ext_add(ExtElem x, ExtElem y) const { return {x.a ^ y.a, x.b ^ y.b}; }
  // (a+bi)(c+di) = (ac + bd k) + (ad + bc + bd) i, from i^2 = i + k.
  ExtElem ext_mul(ExtElem x, ExtElem y) const {
    Bits ac = mul(x.a, y.a);
    Bits bd = mul(x.b, y.b);
    Bits ad_bc = mul(x.a ^ x.b, y.a ^ y.b) ^ ac ^ bd;  // = ad + bc
    return {ac ^ mul(bd, k_), ad_bc ^ bd};
  }
  // x^q = (a+b) + b i; fixes exactly the base field.
  ExtElem frobenius(ExtElem x) const { return {x.a ^ x.b, x.b}; }
  // x^{q+1} = a^2 + ab + b^2 k, always a base-field value.
  Bits norm(ExtElem x) const {
    return mul(x.a, x.a) ^ mul(x.a, x.b) ^ mul(mul(x.b, x.b), k_);
  }
  ExtElem ext_inv(ExtElem x) const {
    Bits n = norm(x);
    if (n == 0) throw InversionOfZero();
    Bits ni = inv(n);
    ExtElem xq = frobenius(x);
    return {mul(xq.a, ni), mul(xq.b, ni)};
  }
  ExtElem ext_pow(ExtElem x, std::uint64_t e) const;
  ExtElem ext_sqrt(ExtElem x) const;
  // Absolute trace over GF(2) of an extension element (= trace(b) since
  // x + x^q = b).
  Bits ext_trace(ExtElem x) const { return trace(x.b); }
  // Solves w^2 + w = d; empty when ext_trace(d) = 1, else the root with
  // the smaller encoding (the other is w + 1).
  std::vector<ExtElem> artin_schreier_roots(ExtElem d) const;

  // ---- mu_{q+1}, the norm-1 subgroup -------------------------------------
  bool in_mu(ExtElem x) const { return norm(x) == 1; }
  // A fixed generator of mu_{q+1}: w^{q-1} for the first primitive w found.
  ExtElem mu_generator() const { return mu_gen_; }
  // A fixed primitive element of GF(q^2).
  ExtElem ext_generator() const { return ext_gen_; }
  bool is_cube_in_mu(ExtElem a) const;
  // All x in GF(q^2) with x^3 = a (a must be in mu_{q+1}); empty or 3 roots.
  std::vector<ExtElem> cube_roots_in_mu(ExtElem a) const;
  // All roots of x^3 + x + c in GF(q), by exhaustive evaluation.
  std::vector<Bits> solve_cubic_trinomial(Bits c) const;

  // ---- encodings ---------------------------------------------------------
  static std::string to_hex(Bits x);
  std::string to_string(ExtElem x) const;       // "0xA+0xB*i"
  static Bits parse_base(const std::string& s); // hex
  ExtElem parse_ext(const std::string& s) const;

  // Index packing for hit arrays: a | (b << m), a bijection onto [0, q^2).
  std::uint64_t index_of(ExtElem x) const {
    return static_cast<std::uint64_t>(x.a) |
           (static_cast<std::uint64_t>(x.b) << m_);
  }
  ExtElem element_at(std::uint64_t idx) const {
    return {static_cast<Bits>(idx & (q_ - 1)),
            static_cast<Bits>((idx >> m_) & (q_ - 1))};
  }

 private:
  FieldSpec(int m, Bits modulus, Bits k);

  Bits mul_slow(Bits x, Bits y) const;
  void build_tables();
  void find_generators();

  int m_;
  Bits modulus_;
  Bits k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> log_;
  std::vector<Bits> exp_;
  ExtElem ext_gen_{};
  ExtElem mu_gen_{};
};

// True iff the degree-m bit-vector polynomial is irreducible over GF(2),
// by trial division against all polynomials of degree <= m/2.
bool gf2_poly_irreducible(Bits poly, int m);

// Environment variable naming a modulus override file, one line per degree:
//   m=<int> modulus=<hex> k=<hex>
inline constexpr const char* kModulusFileEnv = "QUADPERM_MODULUS_FILE";

}  // namespace quadperm

#endif
