#include "quadperm/curves.hpp"

#include <algorithm>
#include <cassert>

namespace quadperm {

std::size_t BivarPoly::idx(int i, int j) {
  if (i < 0 || j < 0 || i > kDmax || j > kDmax)
    throw DegreeOverflow("bivariate degree bound exceeded");
  return static_cast<std::size_t>(i) * (kDmax + 1) + j;
}

bool BivarPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](ExtElem e) { return e == kExtZero; });
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
  BivarPoly r(*fs_);
  for (std::size_t n = 0; n < c_.size(); ++n)
    r.c_[n] = fs_->ext_add(c_[n], o.c_[n]);
  return r;
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
  BivarPoly r(*fs_);
  for (int i = 0; i <= kDmax; ++i)
    for (int j = 0; j <= kDmax; ++j) {
      ExtElem ci = at(i, j);
      if (ci == kExtZero) continue;
      for (int a = 0; a <= kDmax; ++a)
        for (int b = 0; b <= kDmax; ++b) {
          ExtElem cb = o.at(a, b);
          if (cb == kExtZero) continue;
          r.add_at(i + a, j + b, fs_->ext_mul(ci, cb));  // throws on overflow
        }
    }
  return r;
}

BivarPoly BivarPoly::scaled(ExtElem s) const {
  BivarPoly r(*fs_);
  for (int i = 0; i <= kDmax; ++i)
    for (int j = 0; j <= kDmax; ++j) r.set(i, j, fs_->ext_mul(at(i, j), s));
  return r;
}

ExtElem BivarPoly::eval(ExtElem x, ExtElem y) const {
  ExtElem acc = kExtZero;
  ExtElem xi = kExtOne;
  for (int i = 0; i <= kDmax; ++i) {
    ExtElem row = kExtZero;
    ExtElem yj = kExtOne;
    for (int j = 0; j <= kDmax; ++j) {
      row = fs_->ext_add(row, fs_->ext_mul(at(i, j), yj));
      yj = fs_->ext_mul(yj, y);
    }
    acc = fs_->ext_add(acc, fs_->ext_mul(row, xi));
    xi = fs_->ext_mul(xi, x);
  }
  return acc;
}

BivarPoly BivarPoly::ddx() const {
  BivarPoly r(*fs_);
  for (int i = 1; i <= kDmax; ++i)
    if (i & 1)  // even exponents vanish in characteristic 2
      for (int j = 0; j <= kDmax; ++j) r.set(i - 1, j, at(i, j));
  return r;
}

BivarPoly BivarPoly::ddy() const { return swapped().ddx().swapped(); }

BivarPoly BivarPoly::swapped() const {
  BivarPoly r(*fs_);
  for (int i = 0; i <= kDmax; ++i)
    for (int j = 0; j <= kDmax; ++j) r.set(j, i, at(i, j));
  return r;
}

BivarPoly BivarPoly::divide_by_x_plus_y() const {
  // Synthetic division in X at the root X = Y:
  //   Q_i(Y) = A_{i+1}(Y) + Y Q_{i+1}(Y), remainder A_0(Y) + Y Q_0(Y).
  BivarPoly quot(*fs_);
  for (int i = kDmax - 1; i >= 0; --i) {
    for (int j = 0; j <= kDmax; ++j) {
      ExtElem v = at(i + 1, j);
      if (j > 0) v = fs_->ext_add(v, quot.at(i + 1, j - 1));
      quot.set(i, j, v);
    }
  }
  for (int j = 0; j <= kDmax; ++j) {
    ExtElem v = at(0, j);
    if (j > 0) v = fs_->ext_add(v, quot.at(0, j - 1));
    if (v != kExtZero) throw Error("polynomial not divisible by X+Y");
  }
  // Shift the quotient rows down by one X-degree slot.
  BivarPoly r(*fs_);
  for (int i = 0; i < kDmax; ++i)
    for (int j = 0; j <= kDmax; ++j) r.set(i, j, quot.at(i, j));
  return r;
}

BivarPoly BivarPoly::shifted(ExtElem x0, ExtElem y0) const {
  // Binomial expansion of (X + x0)^i (Y + y0)^j term by term.
  const FieldSpec& fs = *fs_;
  // binom[i][a] = coefficient of X^a in (X + t)^i as powers of t, char 2:
  // (X+t)^i = sum_a C(i,a) X^a t^{i-a}, C(i,a) mod 2 via Lucas.
  auto lucas_odd = [](int n, int r) { return (r & ~n) == 0; };
  BivarPoly out(fs);
  std::array<ExtElem, kDmax + 1> xp{}, yp{};
  xp[0] = kExtOne;
  yp[0] = kExtOne;
  for (int d = 1; d <= kDmax; ++d) {
    xp[d] = fs.ext_mul(xp[d - 1], x0);
    yp[d] = fs.ext_mul(yp[d - 1], y0);
  }
  for (int i = 0; i <= kDmax; ++i)
    for (int j = 0; j <= kDmax; ++j) {
      ExtElem cij = at(i, j);
      if (cij == kExtZero) continue;
      for (int a = 0; a <= i; ++a) {
        if (!lucas_odd(i, a)) continue;
        for (int b = 0; b <= j; ++b) {
          if (!lucas_odd(j, b)) continue;
          out.add_at(a, b,
                     fs.ext_mul(cij, fs.ext_mul(xp[i - a], yp[j - b])));
        }
      }
    }
  return out;
}

BivarPoly BivarPoly::compose_sym() const {
  const FieldSpec& fs = *fs_;
  BivarPoly u(fs), v(fs), out(fs);
  u.set(1, 0, kExtOne);
  u.set(0, 1, kExtOne);
  v.set(1, 1, kExtOne);
  std::vector<BivarPoly> up{BivarPoly(fs)}, vp{BivarPoly(fs)};
  up[0].set(0, 0, kExtOne);
  vp[0].set(0, 0, kExtOne);
  for (int i = 0; i <= kDmax; ++i)
    for (int j = 0; j <= kDmax; ++j) {
      ExtElem cij = at(i, j);
      if (cij == kExtZero) continue;
      while (static_cast<int>(up.size()) <= i) up.push_back(up.back() * u);
      while (static_cast<int>(vp.size()) <= j) vp.push_back(vp.back() * v);
      out = out + (up[i] * vp[j]).scaled(cij);
    }
  return out;
}

int BivarPoly::min_total_degree() const {
  int best = -1;
  for (int i = 0; i <= kDmax; ++i)
    for (int j = 0; j <= kDmax; ++j)
      if (at(i, j) != kExtZero && (best == -1 || i + j < best)) best = i + j;
  return best;
}

bool BivarPoly::equal_up_to_unit(const BivarPoly& p, const BivarPoly& q) {
  const FieldSpec& fs = *p.fs_;
  ExtElem lp = kExtZero, lq = kExtZero;
  for (int i = 0; i <= kDmax && lp == kExtZero; ++i)
    for (int j = 0; j <= kDmax; ++j)
      if (p.at(i, j) != kExtZero) {
        lp = p.at(i, j);
        lq = q.at(i, j);
        break;
      }
  if (lp == kExtZero) return q.is_zero();
  if (lq == kExtZero) return false;
  return p.scaled(fs.ext_inv(lp)) == q.scaled(fs.ext_inv(lq));
}

BivarPoly build_curve_C(const FieldSpec& fs, const ThetaVector& tv) {
  BivarPoly F(fs);
  const ExtElem t3q = fs.frobenius(tv.theta3);
  const ExtElem t2q = fs.frobenius(tv.theta2);
  const ExtElem t4 = fs.ext(tv.theta4);
  const ExtElem t4p = fs.ext(tv.theta4p);
  F.add_at(0, 0, t3q);
  F.add_at(3, 3, tv.theta3);
  F.add_at(2, 1, t4);  // theta4 XY(X+Y)
  F.add_at(1, 2, t4);
  F.add_at(3, 0, t4p);  // theta4' (X+Y)^3
  F.add_at(2, 1, t4p);
  F.add_at(1, 2, t4p);
  F.add_at(0, 3, t4p);
  F.add_at(1, 1, tv.theta2);  // theta2 (XY + (X+Y)^2)
  F.add_at(2, 0, tv.theta2);
  F.add_at(0, 2, tv.theta2);
  F.add_at(3, 1, t2q);  // theta2^q (X^2Y^2 + XY(X+Y)^2)
  F.add_at(2, 2, t2q);
  F.add_at(1, 3, t2q);
  return F;
}

bool verify_numerator_identity(const FieldSpec& fs,
                               const CoefficientTriple& t) {
  const ExtElem a1q = fs.frobenius(t.a1);
  const ExtElem a2q = fs.frobenius(t.a2);
  const ExtElem a3q = fs.frobenius(t.a3);
  BivarPoly p1(fs), p2(fs), p3(fs), p4(fs);
  // (a1 Y + a2 Y^4 + a3 Y^3 + 1)(X^3 a1^q + a2^q + a3^q X + X^4)
  p1.add_at(0, 1, t.a1);
  p1.add_at(0, 4, t.a2);
  p1.add_at(0, 3, t.a3);
  p1.add_at(0, 0, kExtOne);
  p2.add_at(3, 0, a1q);
  p2.add_at(0, 0, a2q);
  p2.add_at(1, 0, a3q);
  p2.add_at(4, 0, kExtOne);
  // (a1 X + a2 X^4 + a3 X^3 + 1)(Y^3 a1^q + a2^q + Y a3^q + Y^4)
  p3.add_at(1, 0, t.a1);
  p3.add_at(4, 0, t.a2);
  p3.add_at(3, 0, t.a3);
  p3.add_at(0, 0, kExtOne);
  p4.add_at(0, 3, a1q);
  p4.add_at(0, 0, a2q);
  p4.add_at(0, 1, a3q);
  p4.add_at(0, 4, kExtOne);
  BivarPoly num = p1 * p2 + p3 * p4;
  // Antisymmetry of p(X)-p(Y) makes the sum vanish on X = Y.
  BivarPoly quot = num.divide_by_x_plus_y();
  return quot == build_curve_C(fs, thetas(fs, t));
}

BivarPoly build_curve_D(const FieldSpec& fs, const ThetaVector& tv) {
  BivarPoly G(fs);  // variables (u, v) in the (X, Y) slots
  const ExtElem t3q = fs.frobenius(tv.theta3);
  const ExtElem t2q = fs.frobenius(tv.theta2);
  G.add_at(0, 0, t3q);
  G.add_at(3, 0, fs.ext(tv.theta4p));  // theta4' u^3
  G.add_at(1, 1, fs.ext(tv.theta4));   // theta4 u v
  G.add_at(0, 3, tv.theta3);           // theta3 v^3
  G.add_at(2, 0, tv.theta2);           // theta2 (u^2 + v)
  G.add_at(0, 1, tv.theta2);
  G.add_at(2, 1, t2q);  // theta2^q v (u^2 + v)
  G.add_at(0, 2, t2q);
  return G;
}

std::vector<std::pair<ExtElem, ExtElem>> mu_square_points(
    const FieldSpec& fs, const BivarPoly& P) {
  if (fs.q() > (1u << 12)) throw FieldTooLarge();
  std::vector<ExtElem> mu;
  ExtElem x = kExtOne;
  for (std::uint32_t j = 0; j <= fs.q(); ++j) {
    mu.push_back(x);
    x = fs.ext_mul(x, fs.mu_generator());
  }
  std::sort(mu.begin(), mu.end());
  std::vector<std::pair<ExtElem, ExtElem>> pts;
  for (ExtElem a : mu)
    for (ExtElem b : mu) {
      if (a == b) continue;
      if (P.eval(a, b) == kExtZero) pts.emplace_back(a, b);
    }
  return pts;
}

std::uint64_t fq_points_off_diagonal(const FieldSpec& fs, const BivarPoly& L) {
  if (fs.q() > (1u << 12)) throw FieldTooLarge();
  std::uint64_t n = 0;
  for (Bits a = 0; a < fs.q(); ++a)
    for (Bits b = 0; b < fs.q(); ++b) {
      if (a == b) continue;
      if (L.eval(fs.ext(a), fs.ext(b)) == kExtZero) ++n;
    }
  return n;
}

HParams h_params_from_triple(const FieldSpec& fs, const CoefficientTriple& t) {
  ThetaVector tv = thetas(fs, t);
  return HParams{tv.theta2.a, tv.theta2.b, tv.theta3.a, tv.theta3.b,
                 tv.theta4, tv.theta1};
}

namespace {

// The literal coefficient table of the F_q-model of the curve.
std::array<std::array<Bits, 4>, 4> gamma_table(const FieldSpec& fs,
                                               const HParams& p) {
  const Bits C = p.C, D = p.D, E = p.E, F = p.F;
  const Bits k = fs.k(), t4 = p.theta4, t1 = p.theta1;
  auto m = [&](Bits a, Bits b) { return fs.mul(a, b); };
  const Bits k2 = m(k, k), k3 = m(k2, k);
  std::array<std::array<Bits, 4>, 4> g{};
  g[3][3] = D ^ F;
  g[3][2] = C ^ D ^ E ^ F ^ t4;
  g[2][3] = g[3][2];
  g[3][1] = C ^ m(D, k) ^ D ^ E ^ m(F, k) ^ F ^ t4;
  g[1][3] = g[3][1];
  g[3][0] = m(C, k) ^ C ^ m(E, k) ^ E ^ F ^ m(k, t4) ^ t4 ^ t1;
  g[0][3] = g[3][0];
  g[2][2] = C ^ m(D, k) ^ D ^ E ^ m(F, k) ^ F;
  g[2][1] = m(C, k) ^ C ^ m(E, k) ^ E ^ F ^ m(k, t4) ^ t1;
  g[1][2] = g[2][1];
  g[2][0] = C ^ m(D, k2) ^ m(D, k) ^ E ^ m(F, k2) ^ m(F, k) ^ F ^ m(k, t4);
  g[0][2] = g[2][0];
  g[1][1] = C ^ m(D, k2) ^ m(D, k) ^ E ^ m(F, k2) ^ m(F, k) ^ F;
  g[1][0] = m(C, k2) ^ m(C, k) ^ m(D, k2) ^ m(E, k2) ^ m(E, k) ^ E ^
            m(F, k2) ^ F ^ m(k2, t4);
  g[0][1] = g[1][0];
  g[0][0] = m(C, k2) ^ m(D, k3) ^ m(F, k3) ^ m(F, k) ^ F ^ m(E, k2) ^ E;
  return g;
}

// Univariate helper: multiply small coefficient lists over GF(q^2).
std::vector<ExtElem> upoly_mul(const FieldSpec& fs,
                               const std::vector<ExtElem>& a,
                               const std::vector<ExtElem>& b) {
  std::vector<ExtElem> r(a.size() + b.size() - 1, kExtZero);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = fs.ext_add(r[i + j], fs.ext_mul(a[i], b[j]));
  return r;
}

std::vector<ExtElem> upoly_pow(const FieldSpec& fs,
                               const std::vector<ExtElem>& base, int e) {
  std::vector<ExtElem> r{kExtOne};
  for (int t = 0; t < e; ++t) r = upoly_mul(fs, r, base);
  return r;
}

}  // namespace

HCurve build_curve_H(const FieldSpec& fs, const HParams& p) {
  // The table/transform agreement is a formal identity in the parameters, so
  // no theta identity is imposed here; see the triple-checking overload.
  ThetaVector tv{p.theta1, fs.ext(p.C, p.D), fs.ext(p.E, p.F), p.theta4,
                 static_cast<Bits>(p.theta1 ^ p.theta4)};

  // (a) literal table
  auto g = gamma_table(fs, p);

  // (b) transform: sum_{a,b} F_{ab} (X+i)^a (X+i+1)^{3-a} (Y+i)^b (Y+i+1)^{3-b}
  BivarPoly Fc = build_curve_C(fs, tv);
  const ExtElem iel = fs.ext(0, 1);
  const ExtElem ip1 = fs.ext(1, 1);
  std::array<std::vector<ExtElem>, 4> w;
  for (int a = 0; a <= 3; ++a)
    w[a] = upoly_mul(fs, upoly_pow(fs, {iel, kExtOne}, a),
                     upoly_pow(fs, {ip1, kExtOne}, 3 - a));
  BivarPoly L(fs);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      ExtElem c = Fc.at(a, b);
      if (c == kExtZero) continue;
      for (std::size_t da = 0; da < w[a].size(); ++da)
        for (std::size_t db = 0; db < w[b].size(); ++db)
          L.add_at(static_cast<int>(da), static_cast<int>(db),
                   fs.ext_mul(c, fs.ext_mul(w[a][da], w[b][db])));
    }

  for (int i = 0; i <= BivarPoly::kDmax; ++i)
    for (int j = 0; j <= BivarPoly::kDmax; ++j) {
      ExtElem want = (i <= 3 && j <= 3) ? fs.ext(g[i][j]) : kExtZero;
      if (L.at(i, j) != want)
        throw ParameterInconsistency(
            "gamma table and transform expansion disagree");
    }
  return HCurve{g, L};
}

HCurve build_curve_H(const FieldSpec& fs, const HParams& p,
                     const CoefficientTriple& t) {
  HParams from_triple = h_params_from_triple(fs, t);
  if (from_triple.C != p.C || from_triple.D != p.D || from_triple.E != p.E ||
      from_triple.F != p.F || from_triple.theta4 != p.theta4 ||
      from_triple.theta1 != p.theta1)
    throw ParameterInconsistency("parameters do not match the triple");
  return build_curve_H(fs, p);
}

bool verify_split_decD(const FieldSpec& fs, ExtElem a3) {
  if (fs.m() % 2 == 0) throw Error("verify_split_decD requires odd m");
  if (!fs.in_mu(a3)) throw NotInMu();
  if (!fs.is_cube_in_mu(a3)) throw Error("a3 is not a cube in mu");
  auto roots = fs.cube_roots_in_mu(a3);
  assert(roots.size() == 3);
  // Normalized theta2 = 0 curve for a3 in mu: a3^q + u^3 + u v + a3 v^3.
  BivarPoly G(fs);
  G.add_at(0, 0, fs.frobenius(a3));
  G.add_at(3, 0, kExtOne);
  G.add_at(1, 1, kExtOne);
  G.add_at(0, 3, a3);
  BivarPoly prod(fs);
  prod.set(0, 0, kExtOne);
  for (ExtElem alpha : roots) {
    BivarPoly lin(fs);
    lin.add_at(1, 0, kExtOne);
    lin.add_at(0, 1, alpha);
    lin.add_at(0, 0, fs.ext_inv(alpha));
    prod = prod * lin;
  }
  return BivarPoly::equal_up_to_unit(prod, G);
}

bool verify_split_Cfact(const FieldSpec& fs, ExtElem a3) {
  if (fs.m() % 2 == 0) throw Error("verify_split_Cfact requires odd m");
  if (!fs.in_mu(a3)) throw NotInMu();
  if (!fs.is_cube_in_mu(a3)) throw Error("a3 is not a cube in mu");
  auto roots = fs.cube_roots_in_mu(a3);
  // theta2 = 0 specialization of C with a3 in mu:
  // a3^q + a3 X^3Y^3 + XY(X+Y) + (X+Y)^3.
  BivarPoly F(fs);
  F.add_at(0, 0, fs.frobenius(a3));
  F.add_at(3, 3, a3);
  F.add_at(2, 1, kExtOne);
  F.add_at(1, 2, kExtOne);
  F.add_at(3, 0, kExtOne);
  F.add_at(2, 1, kExtOne);  // (X+Y)^3 overlaps XY(X+Y) on X^2Y, XY^2
  F.add_at(1, 2, kExtOne);
  F.add_at(0, 3, kExtOne);
  BivarPoly prod(fs);
  prod.set(0, 0, kExtOne);
  std::vector<ExtElem> inv_roots;
  for (ExtElem alpha : roots) {
    ExtElem ai = fs.ext_inv(alpha);
    inv_roots.push_back(ai);
    BivarPoly lx(fs), ly(fs);
    lx.add_at(1, 0, kExtOne);
    lx.add_at(0, 0, ai);
    ly.add_at(0, 1, kExtOne);
    ly.add_at(0, 0, ai);
    prod = prod * lx * ly;
  }
  if (!BivarPoly::equal_up_to_unit(prod, F)) return false;
  // mu^2 points off the diagonal exist and sit on the named lines.
  auto pts = mu_square_points(fs, F);
  if (pts.empty()) return false;
  for (auto& [X, Y] : pts) {
    bool on_named_line =
        std::find(inv_roots.begin(), inv_roots.end(), X) != inv_roots.end() ||
        std::find(inv_roots.begin(), inv_roots.end(), Y) != inv_roots.end();
    if (!on_named_line) return false;
  }
  return true;
}

bool verify_split_t1zero(const FieldSpec& fs, const ThetaVector& tv) {
  if (tv.theta2 == kExtZero) throw Theta2Zero();
  if (tv.theta4 != 0 || tv.theta1 != 0)
    throw Error("verify_split_t1zero requires theta1 = theta4 = 0");
  const ExtElem t2 = tv.theta2;
  const ExtElem t2q = fs.frobenius(t2);
  const ExtElem t2_pow_2qm1 = fs.ext_mul(fs.ext_mul(t2q, t2q), fs.ext_inv(t2));
  if (tv.theta3 != t2_pow_2qm1)
    throw Error("verify_split_t1zero requires theta3 = theta2^{2q-1}");
  const Bits n = fs.norm(t2);
  const ExtElem t2_1mq = fs.ext_mul(fs.ext_mul(t2, t2), fs.ext(fs.inv(n)));
  const ExtElem t2_qm1 = fs.ext_mul(t2q, fs.ext_inv(t2));
  BivarPoly f1(fs), f2(fs);
  f1.add_at(0, 0, t2);
  f1.add_at(0, 1, t2q);
  f2.add_at(0, 0, t2_1mq);
  f2.add_at(2, 0, kExtOne);
  f2.add_at(0, 2, t2_qm1);
  BivarPoly G = build_curve_D(fs, tv);
  if (!(f1 * f2 == G)) return false;
  // Second factor = theta2^{-q} dG/dv.
  if (!(f2.scaled(fs.frobenius(t2)) == G.ddy())) return false;
  // Witness point (theta2^{1-q}/alpha, alpha) on C in mu^2 off the diagonal.
  ExtElem alpha = kExtOne;
  for (std::uint32_t j = 0; j <= fs.q(); ++j) {
    if (alpha != t2_1mq && fs.ext_mul(alpha, alpha) != t2_1mq) break;
    alpha = fs.ext_mul(alpha, fs.mu_generator());
  }
  ExtElem X = fs.ext_mul(t2_1mq, fs.ext_inv(alpha));
  BivarPoly C = build_curve_C(fs, tv);
  return fs.in_mu(X) && fs.in_mu(alpha) && X != alpha &&
         C.eval(X, alpha) == kExtZero;
}

bool verify_split_conics(const FieldSpec& fs, const ThetaVector& tv, Bits z1) {
  if (tv.theta2 == kExtZero) throw Theta2Zero();
  if (tv.theta4 != 0 || tv.theta1 == 0)
    throw Error("verify_split_conics requires theta4 = 0, theta1 != 0");
  const ExtElem t2 = tv.theta2;
  const ExtElem t2q = fs.frobenius(t2);
  const Bits n = fs.norm(t2);
  // z1 must satisfy z^3 + n z + n theta1 = 0 (the cleared z-equation).
  Bits lhs = fs.mul(fs.mul(z1, z1), z1) ^ fs.mul(n, z1) ^ fs.mul(n, tv.theta1);
  if (lhs != 0) throw NoRationalRoot();
  // Remaining factor z^2 + z1 z + (z1^2 + n); roots z = z1 w with
  // w^2 + w = 1 + n / z1^2 (z1 != 0 since theta1 != 0).
  assert(z1 != 0);
  ExtElem d = fs.ext(1 ^ fs.mul(n, fs.inv(fs.mul(z1, z1))));
  auto ws = fs.artin_schreier_roots(d);
  if (ws.empty()) return false;  // cannot happen: d is base-field valued
  ExtElem z2 = fs.ext_mul(fs.ext(z1), ws[0]);
  ExtElem z3 = fs.ext_mul(fs.ext(z1), ws[1]);
  BivarPoly prod(fs);
  prod.set(0, 0, kExtOne);
  for (ExtElem zi : {fs.ext(z1), z2, z3}) {
    BivarPoly conic(fs);
    conic.add_at(1, 0, zi);
    conic.add_at(0, 1, zi);
    conic.add_at(1, 1, t2q);
    conic.add_at(0, 0, t2);
    prod = prod * conic;
  }
  BivarPoly C = build_curve_C(fs, tv);
  if (!BivarPoly::equal_up_to_unit(prod, C)) return false;
  // Nonsingularity of each conic: z_i^2 != theta2^{q+1} given theta1 != 0.
  for (ExtElem zi : {fs.ext(z1), z2, z3})
    if (fs.ext_mul(zi, zi) == fs.ext(n)) return false;
  // Witness point ((theta2 + z1 a)/(theta2^q a + z1), a), a in mu.
  const ExtElem t2_1mq = fs.ext_mul(fs.ext_mul(t2, t2), fs.ext(fs.inv(n)));
  ExtElem a = kExtOne;
  for (std::uint32_t j = 0; j <= fs.q(); ++j) {
    if (a != t2_1mq && fs.ext_mul(a, a) != t2_1mq) break;
    a = fs.ext_mul(a, fs.mu_generator());
  }
  ExtElem zz1 = fs.ext(z1);
  ExtElem num = fs.ext_add(t2, fs.ext_mul(zz1, a));
  ExtElem den = fs.ext_add(fs.ext_mul(t2q, a), zz1);
  if (den == kExtZero) return false;
  ExtElem X = fs.ext_mul(num, fs.ext_inv(den));
  return fs.in_mu(X) && fs.in_mu(a) && X != a && C.eval(X, a) == kExtZero;
}

namespace {

PointClass classify_point(const BivarPoly& G, ExtElem u, ExtElem v) {
  BivarPoly shifted = G.shifted(u, v);
  int d = shifted.min_total_degree();
  if (d == 2) return PointClass::Double;
  if (d == 3) return PointClass::Triple;
  throw Error("unexpected multiplicity at singular point");
}

}  // namespace

SingularPointReport singular_points_D(const FieldSpec& fs,
                                      const ThetaVector& tv, Derivation mode) {
  BivarPoly G = build_curve_D(fs, tv);
  SingularPointReport rep;
  rep.derivation = mode;
  if (mode == Derivation::BruteForce) {
    if (fs.q() > (1u << 10)) throw FieldTooLarge();
    BivarPoly Gu = G.ddx(), Gv = G.ddy();
    for (std::uint64_t iu = 0; iu < fs.q2(); ++iu)
      for (std::uint64_t iv = 0; iv < fs.q2(); ++iv) {
        ExtElem u = fs.element_at(iu), v = fs.element_at(iv);
        if (G.eval(u, v) != kExtZero) continue;
        if (Gu.eval(u, v) != kExtZero || Gv.eval(u, v) != kExtZero) continue;
        rep.points.push_back({u, v, classify_point(G, u, v)});
      }
  } else {
    if (tv.theta2 == kExtZero) {
      if (tv.theta4p == 0) throw UnsupportedRegime("theta2 = theta4' = 0");
      // a3 = theta3 / theta4'; singular iff a3 in mu, then the three points
      // (a3^q alpha^2, a3^q alpha) over the cube roots alpha of a3.
      ExtElem a3 = fs.ext_mul(tv.theta3, fs.ext(fs.inv(tv.theta4p)));
      if (!fs.in_mu(a3)) return rep;  // nonsingular
      ExtElem a3q = fs.frobenius(a3);
      for (ExtElem alpha : fs.cube_roots_in_mu(a3)) {
        ExtElem u = fs.ext_mul(a3q, fs.ext_mul(alpha, alpha));
        ExtElem v = fs.ext_mul(a3q, alpha);
        rep.points.push_back({u, v, classify_point(G, u, v)});
      }
    } else if (tv.theta4 == 0) {
      // One singular point (0, alpha) with alpha^2 = theta2/theta3; a triple
      // point exactly when theta3 = theta2^{2q-1} (and theta1 != 0).
      const ExtElem t2q = fs.frobenius(tv.theta2);
      const ExtElem pow2qm1 =
          fs.ext_mul(fs.ext_mul(t2q, t2q), fs.ext_inv(tv.theta2));
      if (tv.theta1 == 0 && tv.theta3 == pow2qm1)
        throw UnsupportedRegime("split curve: no isolated singular point");
      ExtElem alpha =
          fs.ext_sqrt(fs.ext_mul(tv.theta2, fs.ext_inv(tv.theta3)));
      rep.points.push_back({kExtZero, alpha, classify_point(G, kExtZero, alpha)});
    } else {
      throw UnsupportedRegime("no closed form for theta2 != 0, theta4 != 0");
    }
  }
  std::sort(rep.points.begin(), rep.points.end(),
            [](const SingularPoint& a, const SingularPoint& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  return rep;
}

bool hasse_weil_ok(std::uint64_t q) {
  // q + 1 - 20 sqrt(q) - 12 >= 0  <=>  q > 11 and (q - 11)^2 >= 400 q.
  if (q <= 11) return false;
  unsigned __int128 lhs = static_cast<unsigned __int128>(q - 11) * (q - 11);
  unsigned __int128 rhs = static_cast<unsigned __int128>(400) * q;
  return lhs >= rhs;
}

}  // namespace quadperm
