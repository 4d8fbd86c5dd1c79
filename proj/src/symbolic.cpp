#include "quadperm/symbolic.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace quadperm {
namespace sym {
namespace {

constexpr std::uint64_t kByteTop = 0x8080808080808080ULL;

// Word-parallel byte addition; true in *overflow when any lane wraps.
std::uint64_t byte_add(std::uint64_t x, std::uint64_t y, bool* overflow) {
  std::uint64_t s = x + y;
  std::uint64_t carries = (x & y) | ((x | y) & ~s);
  if (carries & kByteTop) *overflow = true;
  return s;
}

// Word-parallel byte subtraction; true in *underflow if any lane borrows.
std::uint64_t byte_sub(std::uint64_t x, std::uint64_t y, bool* underflow) {
  std::uint64_t d = x - y;
  std::uint64_t borrows = (~x & y) | ((~x | y) & d);
  if (borrows & kByteTop) *underflow = true;
  return d;
}

int byte_sum(std::uint64_t w) {
  std::uint64_t s = (w & 0x00FF00FF00FF00FFULL) +
                    ((w >> 8) & 0x00FF00FF00FF00FFULL);
  s += s >> 16;
  s += s >> 32;
  return static_cast<int>(s & 0xFFFF);
}

int shift_for(VarId v) { return 8 * (7 - (v & 7)); }

std::uint64_t& word_for(Monomial& m, VarId v) {
  return v < 8 ? m.w0 : v < 16 ? m.w1 : m.w2;
}
std::uint64_t word_for(const Monomial& m, VarId v) {
  return v < 8 ? m.w0 : v < 16 ? m.w1 : m.w2;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = m.w0 * 0x9E3779B97F4A7C15ULL;
    h ^= m.w1 + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= m.w2 + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::optional<VarId> var_by_name(const std::string& name) {
  for (int v = 0; v < kNumVars; ++v)
    if (name == kVarNames[v]) return v;
  return std::nullopt;
}

Monomial Monomial::var(VarId v, int e) {
  if (e < 0 || e > 255) throw ExponentOverflow();
  Monomial m;
  word_for(m, v) |= static_cast<std::uint64_t>(e) << shift_for(v);
  return m;
}

int Monomial::exponent(VarId v) const {
  return static_cast<int>((word_for(*this, v) >> shift_for(v)) & 0xFF);
}

int Monomial::total_degree() const {
  return byte_sum(w0) + byte_sum(w1) + byte_sum(w2);
}

bool Monomial::divides(const Monomial& m) const {
  bool borrow = false;
  byte_sub(m.w0, w0, &borrow);
  byte_sub(m.w1, w1, &borrow);
  byte_sub(m.w2, w2, &borrow);
  return !borrow;
}

Monomial Monomial::operator*(const Monomial& o) const {
  bool overflow = false;
  Monomial r;
  r.w0 = byte_add(w0, o.w0, &overflow);
  r.w1 = byte_add(w1, o.w1, &overflow);
  r.w2 = byte_add(w2, o.w2, &overflow);
  if (overflow) throw ExponentOverflow();
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  bool borrow = false;
  Monomial r;
  r.w0 = byte_sub(w0, o.w0, &borrow);
  r.w1 = byte_sub(w1, o.w1, &borrow);
  r.w2 = byte_sub(w2, o.w2, &borrow);
  if (borrow) throw Error("monomial division underflow");
  return r;
}

bool Monomial::grlex_less(const Monomial& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da < db;
  if (w0 != o.w0) return w0 < o.w0;
  if (w1 != o.w1) return w1 < o.w1;
  return w2 < o.w2;
}

std::string Monomial::to_string() const {
  if (is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  for (int v = 0; v < kNumVars; ++v) {
    int e = exponent(v);
    if (e == 0) continue;
    if (!first) os << "*";
    first = false;
    os << kVarNames[v];
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

SparsePoly SparsePoly::from_monomial(const Monomial& m) {
  SparsePoly p;
  p.terms_.push_back(m);
  return p;
}

SparsePoly SparsePoly::from_terms(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return b.grlex_less(a); });
  SparsePoly p;
  // adjacent equal pairs cancel over GF(2)
  std::size_t i = 0;
  while (i < terms.size()) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 == 1) p.terms_.push_back(terms[i]);
    i = j;
  }
  return p;
}

const Monomial& SparsePoly::leading() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.front();
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i] == o.terms_[j]) {
      ++i;
      ++j;  // cancel
    } else if (o.terms_[j].grlex_less(terms_[i])) {
      r.terms_.push_back(terms_[i++]);
    } else {
      r.terms_.push_back(o.terms_[j++]);
    }
  }
  r.terms_.insert(r.terms_.end(),
                  terms_.begin() + static_cast<std::ptrdiff_t>(i),
                  terms_.end());
  r.terms_.insert(r.terms_.end(),
                  o.terms_.begin() + static_cast<std::ptrdiff_t>(j),
                  o.terms_.end());
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  std::unordered_set<Monomial, MonomialHash> acc;
  acc.reserve(terms_.size() * 2);
  for (const Monomial& a : terms_)
    for (const Monomial& b : o.terms_) {
      Monomial m = a * b;
      auto it = acc.find(m);
      if (it == acc.end())
        acc.insert(m);
      else
        acc.erase(it);
    }
  std::vector<Monomial> terms(acc.begin(), acc.end());
  return from_terms(std::move(terms));
}

SparsePoly SparsePoly::pow(int e) const {
  if (e < 0 || e > 8) throw Error("pow exponent out of range");
  SparsePoly r = one();
  for (int t = 0; t < e; ++t) r = r * *this;
  return r;
}

int SparsePoly::degree(VarId v) const {
  int d = -1;
  for (const Monomial& m : terms_) d = std::max(d, m.exponent(v));
  return d;
}

int SparsePoly::total_degree() const {
  int d = -1;
  for (const Monomial& m : terms_) d = std::max(d, m.total_degree());
  return d;
}

bool SparsePoly::operator<(const SparsePoly& o) const {
  return std::lexicographical_compare(
      terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
      [](const Monomial& a, const Monomial& b) { return b.grlex_less(a); });
}

Bits SparsePoly::eval(const FieldSpec& fs,
                      const std::array<Bits, kNumVars>& vals) const {
  Bits acc = 0;
  for (const Monomial& m : terms_) {
    Bits prod = 1;
    for (int v = 0; v < kNumVars && prod != 0; ++v) {
      int e = m.exponent(v);
      if (e) prod = fs.mul(prod, fs.pow(vals[v], e));
    }
    acc ^= prod;
  }
  return acc;
}

std::vector<Bits> SparsePoly::eval_coeffs(
    const FieldSpec& fs, VarId v,
    const std::array<Bits, kNumVars>& vals) const {
  std::vector<Bits> out(static_cast<std::size_t>(std::max(0, degree(v))) + 1,
                        0);
  for (const Monomial& m : terms_) {
    int e = m.exponent(v);
    Bits prod = 1;
    for (int u = 0; u < kNumVars && prod != 0; ++u) {
      if (u == v) continue;
      int eu = m.exponent(u);
      if (eu) prod = fs.mul(prod, fs.pow(vals[u], eu));
    }
    out[e] ^= prod;
  }
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].to_string();
  }
  return os.str();
}

SparsePoly substitution(const SparsePoly& p, const Monomial& m,
                        const SparsePoly& r) {
  if (m.is_one()) throw NonTerminatingRule("left side is the unit monomial");
  bool reduces = false;
  for (int v = 0; v < kNumVars && !reduces; ++v) {
    int em = m.exponent(v);
    if (em == 0) continue;
    int dr = r.degree(v);  // -1 for the zero polynomial
    if (dr < em) reduces = true;
  }
  if (!reduces) throw NonTerminatingRule(m.to_string());
  SparsePoly cur = p;
  for (;;) {
    std::vector<Monomial> keep;
    SparsePoly replaced;
    bool any = false;
    for (const Monomial& t : cur.terms()) {
      if (m.divides(t)) {
        any = true;
        replaced = replaced + SparsePoly::from_monomial(t / m) * r;
      } else {
        keep.push_back(t);
      }
    }
    if (!any) return cur;
    cur = SparsePoly::from_terms(std::move(keep)) + replaced;
  }
}

std::vector<SparsePoly> find_coefficients2(const SparsePoly& p, VarId v1,
                                           VarId v2) {
  // bucket terms by (deg_{v1}, deg_{v2})
  struct Cell {
    int i, j;
    std::vector<Monomial> terms;
  };
  std::vector<Cell> cells;
  for (const Monomial& t : p.terms()) {
    int i = t.exponent(v1);
    int j = v2 == v1 ? 0 : t.exponent(v2);
    auto it = std::find_if(cells.begin(), cells.end(),
                           [&](const Cell& c) { return c.i == i && c.j == j; });
    Monomial stripped =
        t / (Monomial::var(v1, i) * (v2 == v1 ? Monomial::one()
                                              : Monomial::var(v2, j)));
    if (it == cells.end())
      cells.push_back(Cell{i, j, {stripped}});
    else
      it->terms.push_back(stripped);
  }
  std::vector<SparsePoly> out;
  for (Cell& c : cells) {
    SparsePoly cp = SparsePoly::from_terms(std::move(c.terms));
    if (!cp.is_zero()) out.push_back(std::move(cp));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Coefficients of p as a polynomial in v over GF(2)[other vars].
std::vector<SparsePoly> coeffs_in(const SparsePoly& p, VarId v) {
  int d = p.degree(v);
  std::vector<std::vector<Monomial>> buckets(
      static_cast<std::size_t>(std::max(0, d)) + 1);
  for (const Monomial& t : p.terms()) {
    int e = t.exponent(v);
    buckets[e].push_back(t / Monomial::var(v, e));
  }
  std::vector<SparsePoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(SparsePoly::from_terms(std::move(b)));
  return out;
}

SparsePoly small_pow(const SparsePoly& p, int e) {
  SparsePoly r = SparsePoly::one();
  for (int t = 0; t < e; ++t) r = r * p;
  return r;
}

}  // namespace

SparsePoly exact_quotient(const SparsePoly& f, const SparsePoly& g) {
  if (f.is_zero()) throw DivisorZero();
  SparsePoly r = g;
  std::vector<Monomial> qterms;
  const Monomial& lf = f.leading();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading();
    if (!lf.divides(lr)) throw Error("exact_quotient: not divisible");
    Monomial t = lr / lf;
    qterms.push_back(t);
    r = r + SparsePoly::from_monomial(t) * f;
  }
  return SparsePoly::from_terms(std::move(qterms));
}

bool divides(const SparsePoly& f, const SparsePoly& g) {
  if (f.is_zero()) throw DivisorZero();
  SparsePoly r = g;
  const Monomial& lf = f.leading();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading();
    if (!lf.divides(lr)) return false;
    r = r + SparsePoly::from_monomial(lr / lf) * f;
  }
  return true;
}

SparsePoly resultant(const SparsePoly& p, const SparsePoly& q, VarId v) {
  if (p.is_zero() || q.is_zero()) return SparsePoly::zero();
  const int dp = p.degree(v), dq = q.degree(v);
  if (dp == 0 && dq == 0) throw BothConstantInVar();
  if (dp == 0) return small_pow(p, dq);
  if (dq == 0) return small_pow(q, dp);

  auto pc = coeffs_in(p, v);  // pc[e] = coefficient of v^e
  auto qc = coeffs_in(q, v);
  const int n = dp + dq;
  std::vector<std::vector<SparsePoly>> M(
      static_cast<std::size_t>(n),
      std::vector<SparsePoly>(static_cast<std::size_t>(n)));
  for (int r = 0; r < dq; ++r)
    for (int j = 0; j <= dp; ++j) M[r][r + j] = pc[static_cast<std::size_t>(dp - j)];
  for (int r = 0; r < dp; ++r)
    for (int j = 0; j <= dq; ++j)
      M[dq + r][r + j] = qc[static_cast<std::size_t>(dq - j)];

  // Fraction-free (Bareiss) elimination; characteristic 2 removes signs,
  // and divisions by the previous pivot are exact.
  SparsePoly prev = SparsePoly::one();
  for (int kcol = 0; kcol + 1 < n; ++kcol) {
    if (M[kcol][kcol].is_zero()) {
      int swap_row = -1;
      for (int r = kcol + 1; r < n; ++r)
        if (!M[r][kcol].is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return SparsePoly::zero();
      std::swap(M[kcol], M[swap_row]);
    }
    for (int r = kcol + 1; r < n; ++r) {
      for (int cidx = kcol + 1; cidx < n; ++cidx) {
        SparsePoly num =
            M[kcol][kcol] * M[r][cidx] + M[r][kcol] * M[kcol][cidx];
        M[r][cidx] = exact_quotient(prev, num);
      }
      M[r][kcol] = SparsePoly::zero();
    }
    prev = M[kcol][kcol];
  }
  return M[n - 1][n - 1];
}

Bits univariate_resultant(const FieldSpec& fs, const std::vector<Bits>& p,
                          const std::vector<Bits>& q) {
  auto deg = [](const std::vector<Bits>& a) {
    for (int d = static_cast<int>(a.size()) - 1; d >= 0; --d)
      if (a[static_cast<std::size_t>(d)] != 0) return d;
    return -1;
  };
  const int dp = deg(p), dq = deg(q);
  if (dp < 0 || dq < 0) return 0;
  if (dp == 0 && dq == 0) throw BothConstantInVar();
  if (dp == 0) return fs.pow(p[0], static_cast<std::uint64_t>(dq));
  if (dq == 0) return fs.pow(q[0], static_cast<std::uint64_t>(dp));
  const int n = dp + dq;
  std::vector<std::vector<Bits>> M(static_cast<std::size_t>(n),
                                   std::vector<Bits>(static_cast<std::size_t>(n), 0));
  for (int r = 0; r < dq; ++r)
    for (int j = 0; j <= dp; ++j)
      M[r][r + j] = p[static_cast<std::size_t>(dp - j)];
  for (int r = 0; r < dp; ++r)
    for (int j = 0; j <= dq; ++j)
      M[dq + r][r + j] = q[static_cast<std::size_t>(dq - j)];
  // Gaussian elimination over GF(2^l); determinant has no sign in char 2.
  Bits det = 1;
  for (int kcol = 0; kcol < n; ++kcol) {
    int piv = -1;
    for (int r = kcol; r < n; ++r)
      if (M[r][kcol] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    std::swap(M[kcol], M[piv]);
    det = fs.mul(det, M[kcol][kcol]);
    Bits inv = fs.inv(M[kcol][kcol]);
    for (int r = kcol + 1; r < n; ++r) {
      if (M[r][kcol] == 0) continue;
      Bits factor = fs.mul(M[r][kcol], inv);
      for (int cidx = kcol; cidx < n; ++cidx)
        M[r][cidx] ^= fs.mul(factor, M[kcol][cidx]);
    }
  }
  return det;
}

}  // namespace sym
}  // namespace quadperm
