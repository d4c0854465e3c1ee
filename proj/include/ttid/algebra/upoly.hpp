#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ttid/algebra/field.hpp"

namespace ttid {

// Univariate polynomial over the tower with a variable tag for printing.
struct UniPoly {
  Coeffs coeffs;
  std::string var = "t";

  UniPoly() = default;
  UniPoly(Coeffs c, std::string v = "t") : coeffs(std::move(c)), var(std::move(v)) { poly::trim(coeffs); }
  int degree() const { return poly::degree(coeffs); }
  bool is_zero() const { return coeffs.empty(); }
  FieldElement operator()(const FieldElement& x) const { return poly::eval(coeffs, x); }
  std::string str() const { return poly::str(coeffs, var); }
  bool operator==(const UniPoly& o) const { return poly::equal(coeffs, o.coeffs); }
};

UniPoly gcd(const UniPoly& p, const UniPoly& q);

// Yun's algorithm: p = lc * prod f_i^i with f_i monic squarefree and
// pairwise coprime.  Returns the nonconstant (f_i, i).
std::vector<std::pair<Coeffs, int>> squarefree_decomposition(const Coeffs& p);

// Rational roots of a polynomial with rational coefficients (exactly verified).
std::vector<mpq_class> rational_roots_of(const Coeffs& p);

bool has_rational_coefficients(const Coeffs& p);

// Sum of `value` over all roots of the modulus of the algebraic `level`
// (trace of multiplication).  `value` must live at `level` or below it.
FieldElement trace(const FieldElement& value, const LevelPtr& level);

}  // namespace ttid
