#include "ttid/germs/vector_field.hpp"

namespace ttid {

int VectorField::order() const {
  int oa = Jet2::kExact, ob = Jet2::kExact;
  bool a_empty = false, b_empty = false;
  try {
    oa = a.order();
  } catch (const InsufficientPrecision&) {
    a_empty = true;
  }
  try {
    ob = b.order();
  } catch (const InsufficientPrecision&) {
    b_empty = true;
  }
  // A component that vanishes to its certified degree only bounds the order.
  if (a_empty && (b_empty || ob > a.prec())) throw InsufficientPrecision("vector field vanishes to its precision");
  if (b_empty && oa > b.prec()) throw InsufficientPrecision("vector field vanishes to its precision");
  return std::min(oa, ob);
}

Jet2 VectorField::apply(const Jet2& g, int p) const {
  return (a * g.dx()).truncated(p) + (b * g.dy()).truncated(p);
}

std::string VectorField::str(const std::string& vx, const std::string& vy) const {
  return "(" + a.str(vx, vy) + ")*d" + vx + " + (" + b.str(vx, vy) + ")*d" + vy;
}

Jet2 tangency_polynomial(const VectorField& X, int d) {
  Jet2 ad = X.a.homogeneous_part(d), bd = X.b.homogeneous_part(d);
  return Jet2::var_x() * bd - Jet2::var_y() * ad;
}

bool is_dicritical(const VectorField& X) { return tangency_polynomial(X, X.order()).is_zero(); }

}  // namespace ttid
