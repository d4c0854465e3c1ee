#include "ttid/germs/directions.hpp"

#include "ttid/algebra/bipoly.hpp"

namespace ttid {

FieldElement eval_homogeneous(const Jet2& h, const ProjPoint& v) {
  FieldElement r;
  for (const auto& [e, c] : h.terms()) r += c * v.a().pow(e.first) * v.b().pow(e.second);
  return r;
}

Jet2 characteristic_polynomial(const Diffeo& F) {
  if (!F.tangent_to_identity()) throw InvalidArgument("characteristic directions need a tangent to the identity germ");
  int k1 = F.order();
  auto [fx, fy] = F.jets(k1);
  return Jet2::var_x() * fy.homogeneous_part(k1) - Jet2::var_y() * fx.homogeneous_part(k1);
}

std::vector<CharDirection> characteristic_directions(const Diffeo& F) {
  Jet2 h = characteristic_polynomial(F);
  if (h.is_zero()) throw DicriticalMap();
  int k1 = F.order();
  auto [fx, fy] = F.jets(k1);
  Jet2 p = fx.homogeneous_part(k1), q = fy.homogeneous_part(k1);
  std::vector<CharDirection> out;
  for (auto& fam : root_decompose(h, k1 + 1)) {
    CharDirection d;
    d.degenerate = eval_homogeneous(p, fam.point).is_zero() && eval_homogeneous(q, fam.point).is_zero();
    d.family = std::move(fam);
    out.push_back(std::move(d));
  }
  return out;
}

bool is_characteristic(const Diffeo& F, const ProjPoint& v) {
  return eval_homogeneous(characteristic_polynomial(F), v).is_zero();
}

FixedCurves fixed_curves(const Diffeo& F) {
  Jet2 g;
  switch (F.kind()) {
    case Diffeo::Kind::Rational:
      g = bipoly_gcd(F.num_x() - Jet2::var_x() * F.den_x(), F.num_y() - Jet2::var_y() * F.den_y());
      break;
    case Diffeo::Kind::Generator:
      g = bipoly_gcd(F.generator().a, F.generator().b);
      break;
    case Diffeo::Kind::Jet:
      throw InvalidArgument("fixed curves need an exact map");
  }
  Jet2 raw = g;
  if (!g.terms().empty() && g.max_degree() > 0) {
    Jet2 rep = bipoly_gcd(g, bipoly_gcd(g.dx(), g.dy()));
    if (rep.max_degree() > 0) g = bipoly_normalize(g.divide_exact(rep));
  }
  FixedCurves fc;
  fc.g = g;
  fc.raw = raw;
  fc.order = g.order();
  fc.isolated = fc.order == 0;
  if (fc.order > 0 && fc.order < Jet2::kExact) fc.tangents = root_decompose(g.homogeneous_part(fc.order), fc.order);
  return fc;
}

}  // namespace ttid
