#pragma once

#include "ttid/algebra/jet.hpp"

namespace ttid {

// gcd of two exact bivariate polynomials, normalized so that the coefficient of
// its largest monomial (highest y-degree, then highest x-degree) is 1.  The
// gcd of two zero polynomials is zero.
Jet2 bipoly_gcd(const Jet2& a, const Jet2& b);

// Normalize a nonzero exact polynomial as in bipoly_gcd.
Jet2 bipoly_normalize(const Jet2& a);

bool bipoly_is_unit(const Jet2& a);

}  // namespace ttid
