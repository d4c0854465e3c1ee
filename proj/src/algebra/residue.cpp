#include "ttid/algebra/residue.hpp"

namespace ttid {

FieldElement Series1::at(int i) const {
  if (i > prec) throw InsufficientPrecision("series coefficient beyond certified degree");
  return i < static_cast<int>(c.size()) ? c[i] : FieldElement();
}

FieldElement laurent_residue(const Series1& numer, const Series1& denom) {
  int m = 0;
  for (;; ++m) {
    if (m > denom.prec) throw InsufficientPrecision("denominator vanishes to its certified degree");
    if (m >= static_cast<int>(denom.c.size())) {
      if (denom.prec >= Jet2::kExact) throw DivisionByZero("residue with zero denominator");
      continue;
    }
    if (!denom.c[m].is_zero()) break;
  }
  if (m == 0) return FieldElement();
  // coefficient of x^(m-1) in numer / u, u = denom / x^m
  int need = m - 1;
  if (numer.prec < need || denom.prec < m + need)
    throw InsufficientPrecision("residue needs more certified terms");
  FieldElement inv0 = denom.c[m].inverse();
  Coeffs q(need + 1);
  for (int n = 0; n <= need; ++n) {
    FieldElement acc = numer.at(n);
    for (int k = 1; k <= n; ++k) acc -= denom.at(m + k) * q[n - k];
    q[n] = acc * inv0;
  }
  return q[need];
}

Series1 restrict_to_x_axis(const Jet2& j) {
  Coeffs c;
  for (const auto& [e, v] : j.terms()) {
    if (e.second != 0) continue;
    if (static_cast<int>(c.size()) <= e.first) c.resize(e.first + 1);
    c[e.first] = v;
  }
  return Series1(c, j.prec());
}

Series1 restrict_to_y_axis(const Jet2& j) { return restrict_to_x_axis(j.swapped()); }

}  // namespace ttid
