#ifndef QUADPERM_CURVES_HPP
#define QUADPERM_CURVES_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "quadperm/conditions.hpp"
#include "quadperm/field.hpp"
#include "quadperm/niho.hpp"

namespace quadperm {

// Dense bivariate polynomial over GF(q^2) with per-variable degree <= dmax.
// Coefficient of X^i Y^j lives at (i, j). Multiplication throws
// DegreeOverflow when a product would exceed dmax.
class BivarPoly {
 public:
  static constexpr int kDmax = 8;

  explicit BivarPoly(const FieldSpec& fs) : fs_(&fs) {}

  const FieldSpec& field() const { return *fs_; }

  ExtElem at(int i, int j) const { return c_[idx(i, j)]; }
  void set(int i, int j, ExtElem v) { c_[idx(i, j)] = v; }
  void add_at(int i, int j, ExtElem v) {
    c_[idx(i, j)] = fs_->ext_add(c_[idx(i, j)], v);
  }

  bool is_zero() const;
  bool operator==(const BivarPoly& o) const { return c_ == o.c_; }

  BivarPoly operator+(const BivarPoly& o) const;
  BivarPoly operator*(const BivarPoly& o) const;
  BivarPoly scaled(ExtElem s) const;

  ExtElem eval(ExtElem x, ExtElem y) const;
  // Formal partial derivatives in characteristic 2.
  BivarPoly ddx() const;
  BivarPoly ddy() const;
  // Swap variables: P(Y, X).
  BivarPoly swapped() const;
  // Exact division by (X + Y); throws Error when not divisible.
  BivarPoly divide_by_x_plus_y() const;
  // Translated polynomial P(X + x0, Y + y0).
  BivarPoly shifted(ExtElem x0, ExtElem y0) const;
  // Substitute u = X+Y, v = XY into a polynomial in (u, v).
  BivarPoly compose_sym() const;
  // Lowest total degree among nonzero coefficients (-1 for the zero poly).
  int min_total_degree() const;

  // Both sides scaled so the lexicographically first nonzero coefficient is
  // 1; equality up to a nonzero scalar.
  static bool equal_up_to_unit(const BivarPoly& p, const BivarPoly& q);

 private:
  static std::size_t idx(int i, int j);
  const FieldSpec* fs_;
  std::array<ExtElem, (kDmax + 1) * (kDmax + 1)> c_{};
};

// F(X,Y) of the curve associated to p(x):
//   theta3^q + theta3 X^3Y^3 + theta4 XY(X+Y) + theta4' (X+Y)^3
//   + theta2 (XY + (X+Y)^2) + theta2^q (X^2Y^2 + XY(X+Y)^2).
BivarPoly build_curve_C(const FieldSpec& fs, const ThetaVector& tv);

// Expands the two-fraction numerator of (p(X)-p(Y))/(X-Y), divides exactly
// by (X+Y) and compares with build_curve_C.
bool verify_numerator_identity(const FieldSpec& fs, const CoefficientTriple& t);

// G(u,v) = theta3^q + theta4' u^3 + theta4 uv + theta3 v^3
//          + theta2 (u^2 + v) + theta2^q v (u^2 + v).
BivarPoly build_curve_D(const FieldSpec& fs, const ThetaVector& tv);

// All zeros of P with both coordinates in mu_{q+1} and X != Y.
// Throws FieldTooLarge when q > 2^12.
std::vector<std::pair<ExtElem, ExtElem>> mu_square_points(const FieldSpec& fs,
                                                          const BivarPoly& P);

// Number of (a, b) in GF(q)^2 with a != b and L(a, b) = 0.
std::uint64_t fq_points_off_diagonal(const FieldSpec& fs, const BivarPoly& L);

// Parameters of the F_q-model: theta2 = C + iD, theta3 = E + iF.
struct HParams {
  Bits C = 0, D = 0, E = 0, F = 0;
  Bits theta4 = 0, theta1 = 0;
};

HParams h_params_from_triple(const FieldSpec& fs, const CoefficientTriple& t);

struct HCurve {
  // gamma[i][j] = coefficient of X^i Y^j, base-field valued.
  std::array<std::array<Bits, 4>, 4> gamma{};
  BivarPoly L;
};

// Builds the curve H both from the literal gamma table and from the
// transform (X+e+1)^3 (Y+e+1)^3 F(phi(X), phi(Y)); throws
// ParameterInconsistency if the two constructions disagree. The second
// overload additionally checks the parameters against a supplied triple.
HCurve build_curve_H(const FieldSpec& fs, const HParams& p);
HCurve build_curve_H(const FieldSpec& fs, const HParams& p,
                     const CoefficientTriple& t);

// Factorization of D in the theta2 = 0 specialization for a cube a3 in mu:
// (u + alpha1 v + alpha1^{-1})(u + alpha2 v + alpha2^{-1})(u + alpha3 v + alpha3^{-1}).
bool verify_split_decD(const FieldSpec& fs, ExtElem a3);

// Corresponding six-line splitting of C: prod_i (X + alpha_i^{-1})(Y + alpha_i^{-1});
// also checks that C meets mu^2 off the diagonal in points with a coordinate
// among the alpha_i^{-1}.
bool verify_split_Cfact(const FieldSpec& fs, ExtElem a3);

// theta1 = 0, theta4 = 0, theta3 = theta2^{2q-1} splitting of D:
// (theta2 + theta2^q v)(theta2^{1-q} + u^2 + theta2^{q-1} v^2), plus the
// witness point (theta2^{1-q}/alpha, alpha) on C in mu^2 off the diagonal.
bool verify_split_t1zero(const FieldSpec& fs, const ThetaVector& tv);

// Three-conic splitting when eq. theta1 + z + z^3/theta2^{q+1} = 0 has a
// root z1 in GF(q): product over the roots z_i of
// (z_i (X+Y) + theta2^q XY + theta2), compared with the pullback of D; plus
// the witness point ((theta2+z1 a)/(theta2^q a+z1), a). Throws NoRationalRoot
// when z1 is not a root.
bool verify_split_conics(const FieldSpec& fs, const ThetaVector& tv, Bits z1);

enum class PointClass { Double, Triple };
enum class Derivation { ClosedForm, BruteForce };

struct SingularPoint {
  ExtElem u, v;
  PointClass cls;
};

struct SingularPointReport {
  std::vector<SingularPoint> points;  // sorted by (u, v)
  Derivation derivation;
};

// Singular points of D over GF(q^2). Brute force enumerates GF(q^2)^2 for
// common zeros of G and its formal partials (q <= 2^10); closed form returns
// the predicted points for the supported regimes:
//   theta2 = 0 (theta4p != 0), and theta2 != 0 with theta4 = 0.
// Throws UnsupportedRegime outside these.
SingularPointReport singular_points_D(const FieldSpec& fs,
                                      const ThetaVector& tv, Derivation mode);

// The point-guarantee threshold q + 1 - 20 sqrt(q) - 12 >= 0, exactly.
bool hasse_weil_ok(std::uint64_t q);

}  // namespace quadperm

#endif
