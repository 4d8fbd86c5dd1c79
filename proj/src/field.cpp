#include "quadperm/field.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace quadperm {
namespace {

// Lowest-weight irreducible polynomial of each degree, ties broken by value.
constexpr std::array<Bits, 17> kDefaultModulus = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,    0x43,   0x83,  0x11B,
    0x203,   0x409,  0x805,  0x1009, 0x201B, 0x4021,  0x8003, 0x1002B};

int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t p) {
  int dp = poly_degree(p);
  int da = poly_degree(a);
  while (da >= dp && a) {
    a ^= p << (da - dp);
    da = poly_degree(a);
  }
  return a;
}

// Absolute trace without a constructed FieldSpec (used when choosing k).
Bits raw_trace(Bits x, int m, Bits modulus) {
  const Bits q = Bits{1} << m;
  auto mul = [&](Bits a, Bits b) {
    Bits r = 0;
    while (b) {
      if (b & 1) r ^= a;
      b >>= 1;
      a <<= 1;
      if (a & q) a ^= modulus;
    }
    return r;
  };
  Bits t = 0, y = x;
  for (int j = 0; j < m; ++j) {
    t ^= y;
    y = mul(y, y);
  }
  return t & 1;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

bool gf2_poly_irreducible(Bits poly, int m) {
  if (poly_degree(poly) != m) return false;
  if (m == 1) return true;
  if ((poly & 1) == 0) return false;  // divisible by X
  for (int d = 1; d <= m / 2; ++d) {
    for (Bits div = Bits{1} << d; div < (Bits{1} << (d + 1)); ++div) {
      if (poly_mod(poly, div) == 0) return false;
    }
  }
  return true;
}

FieldSpec::FieldSpec(int m, Bits modulus, Bits k)
    : m_(m), modulus_(modulus), k_(k), q_(std::uint32_t{1} << m) {
  if (m < 1 || m > 20) throw Error("field degree out of supported range");
  if (!gf2_poly_irreducible(modulus, m)) throw NotIrreducible();
  build_tables();
  if (trace(k) != 1) throw BadTowerConstant("trace of tower constant k is not 1");
  find_generators();
}

Bits FieldSpec::mul_slow(Bits x, Bits y) const {
  Bits r = 0;
  while (y) {
    if (y & 1) r ^= x;
    y >>= 1;
    x <<= 1;
    if (x & q_) x ^= modulus_;
  }
  return r;
}

void FieldSpec::build_tables() {
  log_.assign(q_, 0);
  exp_.assign(q_, 0);
  // Find a multiplicative generator of GF(q)* by order testing.
  auto factors = prime_factors(q_ - 1);
  Bits gen = 0;
  for (Bits cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto p : factors) {
      // cand^{(q-1)/p} by square-and-multiply with slow mul
      std::uint64_t e = (q_ - 1) / p;
      Bits r = 1, base = cand;
      while (e) {
        if (e & 1) r = mul_slow(r, base);
        base = mul_slow(base, base);
        e >>= 1;
      }
      if (r == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = cand;
      break;
    }
  }
  if (gen == 0 && q_ == 2) gen = 1;
  Bits x = 1;
  for (std::uint32_t j = 0; j < q_ - 1; ++j) {
    exp_[j] = x;
    log_[x] = j;
    x = mul_slow(x, gen);
  }
}

Bits FieldSpec::pow(Bits x, std::uint64_t e) const {
  if (x == 0) return e == 0 ? 1 : 0;
  std::uint64_t le = (static_cast<std::uint64_t>(log_[x]) * (e % (q_ - 1))) %
                     (q_ - 1);
  return exp_[le];
}

Bits FieldSpec::sqrt(Bits x) const { return pow(x, q_ >> 1); }

Bits FieldSpec::trace(Bits x) const {
  Bits t = 0, y = x;
  for (int j = 0; j < m_; ++j) {
    t ^= y;
    y = mul(y, y);
  }
  return t & 1;
}

ExtElem FieldSpec::ext_pow(ExtElem x, std::uint64_t e) const {
  if (x == kExtZero) return e == 0 ? kExtOne : kExtZero;
  e %= q2() - 1;
  ExtElem r = kExtOne;
  while (e) {
    if (e & 1) r = ext_mul(r, x);
    x = ext_mul(x, x);
    e >>= 1;
  }
  return r;
}

ExtElem FieldSpec::ext_sqrt(ExtElem x) const {
  // Squaring is a bijection; the inverse is x -> x^{2^{2m-1}}.
  ExtElem r = x;
  for (int j = 0; j < 2 * m_ - 1; ++j) r = ext_mul(r, r);
  return r;
}

std::vector<ExtElem> FieldSpec::artin_schreier_roots(ExtElem d) const {
  if (ext_trace(d) != 0) return {};
  // With tau of absolute trace 1, w = sum_{i=0}^{n-2} S_i tau^{2^i} where
  // S_i = sum_{j>i} d^{2^j} solves w^2 + w = d.
  const int n = 2 * m_;
  ExtElem tau = ext(0, k_);  // trace(k) = 1 so ext_trace(tau) = 1
  std::vector<ExtElem> dpow(n);  // d^{2^j}
  dpow[0] = d;
  for (int j = 1; j < n; ++j) dpow[j] = ext_mul(dpow[j - 1], dpow[j - 1]);
  ExtElem w = kExtZero;
  ExtElem taupow = tau;
  for (int i = 0; i <= n - 2; ++i) {
    ExtElem s = kExtZero;
    for (int j = i + 1; j <= n - 1; ++j) s = ext_add(s, dpow[j]);
    w = ext_add(w, ext_mul(s, taupow));
    taupow = ext_mul(taupow, taupow);
  }
  ExtElem w1 = ext_add(w, kExtOne);
  return w <= w1 ? std::vector<ExtElem>{w, w1} : std::vector<ExtElem>{w1, w};
}

void FieldSpec::find_generators() {
  const std::uint64_t n = q2() - 1;
  auto factors = prime_factors(n);
  for (std::uint64_t idx = 2; idx < q2(); ++idx) {
    ExtElem cand = element_at(idx);
    bool primitive = true;
    for (auto p : factors) {
      if (ext_pow(cand, n / p) == kExtOne) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      ext_gen_ = cand;
      mu_gen_ = ext_pow(cand, q_ - 1);
      return;
    }
  }
  throw Error("no primitive element found");
}

bool FieldSpec::is_cube_in_mu(ExtElem a) const {
  if (!in_mu(a)) throw NotInMu();
  if (m_ % 2 == 0) return true;  // 3 does not divide q+1: cubing is a bijection
  return ext_pow(a, (q_ + 1) / 3) == kExtOne;
}

std::vector<ExtElem> FieldSpec::cube_roots_in_mu(ExtElem a) const {
  if (!in_mu(a)) throw NotInMu();
  // One root inside mu_{q+1} if it exists, then multiply by the cube roots
  // of unity of GF(q^2) (3 | q^2 - 1 always).
  ExtElem root = kExtZero;
  bool found = false;
  ExtElem x = kExtOne;
  for (std::uint32_t j = 0; j <= q_; ++j) {
    if (ext_mul(ext_mul(x, x), x) == a) {
      root = x;
      found = true;
      break;
    }
    x = ext_mul(x, mu_gen_);
  }
  if (!found) return {};  // no cube root anywhere in GF(q^2) (m odd, non-cube)
  ExtElem omega = ext_pow(ext_gen_, (q2() - 1) / 3);
  std::vector<ExtElem> roots{root, ext_mul(root, omega),
                             ext_mul(root, ext_mul(omega, omega))};
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Bits> FieldSpec::solve_cubic_trinomial(Bits c) const {
  std::vector<Bits> roots;
  for (Bits x = 0; x < q_; ++x) {
    if ((mul(mul(x, x), x) ^ x ^ c) == 0) roots.push_back(x);
  }
  return roots;
}

std::string FieldSpec::to_hex(Bits x) {
  std::ostringstream os;
  os << "0x" << std::hex << std::uppercase << x;
  return os.str();
}

std::string FieldSpec::to_string(ExtElem x) const {
  return to_hex(x.a) + "+" + to_hex(x.b) + "*i";
}

Bits FieldSpec::parse_base(const std::string& s) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos, 16);
  } catch (const std::exception&) {
    throw ParseError("bad base element: " + s);
  }
  if (pos != s.size()) throw ParseError("bad base element: " + s);
  return static_cast<Bits>(v);
}

ExtElem FieldSpec::parse_ext(const std::string& s) const {
  // "A+B*i" with A, B hex; a bare "A" means B = 0.
  auto plus = s.find('+');
  if (plus == std::string::npos) {
    Bits a = parse_base(s);
    if (a >= q_) throw ParseError("element out of range: " + s);
    return {a, 0};
  }
  std::string left = s.substr(0, plus);
  std::string right = s.substr(plus + 1);
  auto star = right.find('*');
  if (star == std::string::npos || right.substr(star + 1) != "i")
    throw ParseError("bad extension element: " + s);
  Bits a = parse_base(left);
  Bits b = parse_base(right.substr(0, star));
  if (a >= q_ || b >= q_) throw ParseError("element out of range: " + s);
  return {a, b};
}

namespace {

struct OverrideEntry {
  Bits modulus;
  Bits k;
};

// Parses "m=<int> modulus=<hex> k=<hex>" lines; returns the entry for m.
bool load_override(int m, OverrideEntry* out) {
  const char* path = std::getenv(kModulusFileEnv);
  if (path == nullptr || *path == '\0') return false;
  std::ifstream in(path);
  if (!in) throw ParseError(std::string("cannot open modulus file ") + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    int lm = -1;
    OverrideEntry e{0, 0};
    while (ls >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError("bad modulus line: " + line);
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "m") {
        lm = std::stoi(val);
      } else if (key == "modulus") {
        e.modulus = FieldSpec::parse_base(val);
      } else if (key == "k") {
        e.k = FieldSpec::parse_base(val);
      } else {
        throw ParseError("bad modulus key: " + key);
      }
    }
    if (lm == m) {
      *out = e;
      return true;
    }
  }
  return false;
}

}  // namespace

FieldSpec FieldSpec::make(int m, Bits modulus, Bits k) {
  return FieldSpec(m, modulus, k);
}

FieldSpec FieldSpec::make(int m) {
  OverrideEntry e{0, 0};
  if (load_override(m, &e)) return FieldSpec(m, e.modulus, e.k);
  if (m < 1 || m > 16) throw Error("no default modulus for this degree");
  Bits modulus = kDefaultModulus[m];
  Bits k = 1;
  if (m % 2 == 0) {
    // trace(1) = m mod 2 = 0 for even m: take the smallest trace-1 element.
    for (Bits cand = 1; cand < (Bits{1} << m); ++cand) {
      if (raw_trace(cand, m, modulus) == 1) {
        k = cand;
        break;
      }
    }
  }
  return FieldSpec(m, modulus, k);
}

}  // namespace quadperm
