#pragma once

#include "ttid/algebra/jet.hpp"

namespace ttid {

// Univariate truncated series: coefficients known up to degree `prec`.
struct Series1 {
  Coeffs c;
  int prec = Jet2::kExact;

  Series1() = default;
  Series1(Coeffs coeffs, int p = Jet2::kExact) : c(std::move(coeffs)), prec(p) { poly::trim(c); }
  FieldElement at(int i) const;  // InsufficientPrecision beyond prec
};

// Residue at 0 of numer/denom.  denom = x^m * unit needs numer certified to
// degree m-1 and denom to degree 2m-1.
FieldElement laurent_residue(const Series1& numer, const Series1& denom);

// Restriction of a jet to y = 0 (or x = 0) as a series in the other variable.
Series1 restrict_to_x_axis(const Jet2& j);
Series1 restrict_to_y_axis(const Jet2& j);

}  // namespace ttid
