#pragma once

// Bivariate truncated power series with a certified precision degree.
//
// Precision rules (prec = largest total degree whose coefficients are known):
//   a + b            min(Pa, Pb)
//   a * b            min(Pa + ord b, Pb + ord a)
//   d/dx, d/dy       P - 1
//   J(gx, gy)        min((PJ + 1) * m - 1, Pg), m = min(ord gx, ord gy) >= 1
//   1 / u            requested precision, capped by Pu
//   J / d            min(PJ, Pd) - ord d
// Exact polynomials carry prec == kExact and stay exact under every operation
// that maps polynomials to polynomials.

#include <map>
#include <string>
#include <utility>

#include "ttid/algebra/field.hpp"

namespace ttid {

using Exponent = std::pair<int, int>;

class Jet2 {
 public:
  static constexpr int kExact = 1 << 28;

  Jet2() = default;
  explicit Jet2(int prec) : prec_(prec) {}
  static Jet2 constant(const FieldElement& c, int prec = kExact);
  static Jet2 monomial(const FieldElement& c, int i, int j, int prec = kExact);
  static Jet2 var_x(int prec = kExact) { return monomial(FieldElement(1), 1, 0, prec); }
  static Jet2 var_y(int prec = kExact) { return monomial(FieldElement(1), 0, 1, prec); }

  int prec() const { return prec_; }
  bool exact() const { return prec_ >= kExact; }
  const std::map<Exponent, FieldElement>& terms() const { return terms_; }

  // Throws InsufficientPrecision when i + j > prec.
  FieldElement coeff(int i, int j) const;
  void set(int i, int j, const FieldElement& c);
  void add_term(int i, int j, const FieldElement& c);

  // Lowest total degree among stored (structurally nonzero) terms; a lower
  // bound for the order.  prec + 1 for an empty truncated jet.
  int low_degree() const;
  // Exact order.  Zero tests are exact (may split).  Throws
  // InsufficientPrecision if every certified coefficient vanishes.
  int order() const;
  int max_degree() const;
  bool is_zero() const;

  Jet2 truncated(int p) const;
  Jet2 homogeneous_part(int d) const;
  // Keep only terms of total degree <= p without changing the precision claim.
  Jet2 with_prec(int p) const;

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  Jet2 scaled(const FieldElement& s) const;

  Jet2 dx() const;
  Jet2 dy() const;
  Jet2 substitute(const Jet2& gx, const Jet2& gy) const;
  Jet2 invert_unit(int prec) const;
  // Exact quotient by d (degree by degree); NotDivisible otherwise.
  Jet2 divide_exact(const Jet2& d) const;
  // Divide by x^a y^b; every stored term must be divisible.
  Jet2 divide_monomial(int a, int b) const;
  Jet2 swapped() const;  // exchange the roles of x and y

  bool operator==(const Jet2& o) const;
  bool operator!=(const Jet2& o) const { return !(*this == o); }
  // Equality of coefficients up to degree p.
  bool agrees_with(const Jet2& o, int p) const;

  std::string str(const std::string& vx = "x", const std::string& vy = "y") const;

 private:
  std::map<Exponent, FieldElement> terms_;
  int prec_ = kExact;
};

// Precision arithmetic that keeps kExact absorbing.
inline int prec_add(int p, int d) { return p >= Jet2::kExact ? Jet2::kExact : p + d; }
inline int prec_min(int a, int b) { return a < b ? a : b; }

// Homogeneous polynomial of degree d as univariate coefficients:
// c[j] = coefficient of x^(d-j) y^j.
Coeffs homogeneous_to_univariate(const Jet2& h, int d);
Jet2 univariate_to_homogeneous(const Coeffs& c, int d);

}  // namespace ttid
