#include "quadperm/niho.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace quadperm {
namespace {

// Extended Euclid inverse of a modulo n (gcd(a, n) = 1).
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(n),
               newr = static_cast<std::int64_t>(a % n);
  while (newr != 0) {
    std::int64_t qq = r / newr;
    std::int64_t tmp = t - qq * newt;
    t = newt;
    newt = tmp;
    tmp = r - qq * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

NihoExponents exponents(const FieldSpec& fs) {
  const std::uint64_t q = fs.q();
  const std::uint64_t n = q + 1;          // odd, so 4 is invertible
  const std::uint64_t mod = fs.q2() - 1;  // exponent modulus
  NihoExponents e{};
  e.s1 = static_cast<std::uint32_t>(inverse_mod(4, n));
  e.s2 = 1;
  e.s3 = static_cast<std::uint32_t>((3 * static_cast<std::uint64_t>(e.s1)) % n);
  e.d1 = (static_cast<std::uint64_t>(e.s1) * (q - 1) + 1) % mod;
  e.d2 = (static_cast<std::uint64_t>(e.s2) * (q - 1) + 1) % mod;
  e.d3 = (static_cast<std::uint64_t>(e.s3) * (q - 1) + 1) % mod;
  return e;
}

ExtElem eval_f(const FieldSpec& fs, const CoefficientTriple& t, ExtElem x) {
  if (x == kExtZero) return kExtZero;
  NihoExponents e = exponents(fs);
  ExtElem r = x;
  r = fs.ext_add(r, fs.ext_mul(t.a1, fs.ext_pow(x, e.d1)));
  r = fs.ext_add(r, fs.ext_mul(t.a2, fs.ext_pow(x, e.d2)));
  r = fs.ext_add(r, fs.ext_mul(t.a3, fs.ext_pow(x, e.d3)));
  return r;
}

bool is_pp_exhaustive(const FieldSpec& fs, const CoefficientTriple& t) {
  if (fs.q2() > (std::uint64_t{1} << 22)) throw FieldTooLarge();
  const std::uint64_t n = fs.q2();
  std::vector<bool> hit(n, false);
  hit[0] = true;  // f(0) = 0
  NihoExponents e = exponents(fs);
  const ExtElem g = fs.ext_generator();
  // Walk x = g^j with incremental powers x^{d_i} = (g^{d_i})^j.
  const ExtElem g1 = fs.ext_pow(g, e.d1);
  const ExtElem g2 = fs.ext_pow(g, e.d2);
  const ExtElem g3 = fs.ext_pow(g, e.d3);
  ExtElem x = kExtOne, p1 = kExtOne, p2 = kExtOne, p3 = kExtOne;
  for (std::uint64_t j = 0; j + 1 < n; ++j) {
    ExtElem y = fs.ext_add(
        fs.ext_add(x, fs.ext_mul(t.a1, p1)),
        fs.ext_add(fs.ext_mul(t.a2, p2), fs.ext_mul(t.a3, p3)));
    std::uint64_t idx = fs.index_of(y);
    if (hit[idx]) return false;
    hit[idx] = true;
    x = fs.ext_mul(x, g);
    p1 = fs.ext_mul(p1, g1);
    p2 = fs.ext_mul(p2, g2);
    p3 = fs.ext_mul(p3, g3);
  }
  return true;
}

MuMapValue eval_p(const FieldSpec& fs, const CoefficientTriple& t, ExtElem x) {
  if (!fs.in_mu(x)) throw NotInMu();
  const ExtElem x2 = fs.ext_mul(x, x);
  const ExtElem x3 = fs.ext_mul(x2, x);
  const ExtElem x4 = fs.ext_mul(x2, x2);
  ExtElem num = fs.ext_add(fs.ext_add(x4, fs.ext_mul(fs.frobenius(t.a1), x3)),
                           fs.ext_add(fs.ext_mul(fs.frobenius(t.a3), x),
                                      fs.frobenius(t.a2)));
  ExtElem den = fs.ext_add(fs.ext_add(fs.ext_mul(t.a2, x4),
                                      fs.ext_mul(t.a3, x3)),
                           fs.ext_add(fs.ext_mul(t.a1, x), kExtOne));
  if (den == kExtZero) return MuMapValue{};
  ExtElem v = fs.ext_mul(num, fs.ext_inv(den));
  assert(fs.in_mu(v) && "p maps mu into mu whenever defined");
  return MuMapValue{v};
}

bool is_pp_via_mu(const FieldSpec& fs, const CoefficientTriple& t) {
  const std::uint32_t q = fs.q();
  // A q^2-bit map gives early exit on the first duplicate, which dominates
  // the cost on random triples; beyond 2^24 indices fall back to sorting the
  // q+1 values instead.
  const bool bitmap = fs.q2() <= (std::uint64_t{1} << 24);
  std::vector<bool> hit;
  std::vector<std::uint64_t> seen;
  if (bitmap)
    hit.assign(fs.q2(), false);
  else
    seen.reserve(q + 1);
  ExtElem x = kExtOne;
  for (std::uint32_t j = 0; j <= q; ++j) {
    MuMapValue v = eval_p(fs, t, x);
    if (v.is_pole()) return false;
    std::uint64_t idx = fs.index_of(*v.value);
    if (bitmap) {
      if (hit[idx]) return false;
      hit[idx] = true;
    } else {
      seen.push_back(idx);
    }
    x = fs.ext_mul(x, fs.mu_generator());
  }
  if (!bitmap) {
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      return false;
  }
  return true;
}

ExtElem phi(const FieldSpec& fs, Bits x) {
  // (x + i) / (x + i + 1); the denominator has b = 1, never zero.
  ExtElem num = fs.ext(x, 1);
  ExtElem den = fs.ext(x ^ 1, 1);
  return fs.ext_mul(num, fs.ext_inv(den));
}

ExtElem psi_component(const FieldSpec& fs, ExtElem x) {
  if (x == kExtOne) throw DivisionByZero("psi_component at X = 1");
  ExtElem e = fs.ext(0, 1);
  ExtElem num = fs.ext_add(fs.ext_mul(x, fs.ext_add(e, kExtOne)), e);
  ExtElem den = fs.ext_add(x, kExtOne);
  return fs.ext_mul(num, fs.ext_inv(den));
}

}  // namespace quadperm
