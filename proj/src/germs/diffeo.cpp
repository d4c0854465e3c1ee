#include "ttid/germs/diffeo.hpp"

#include "ttid/germs/exp_log.hpp"

namespace ttid {

namespace {

bool is_one(const Jet2& j) { return j.terms().size() == 1 && j.coeff(0, 0).rep_is_one(); }

std::string fraction_str(const Jet2& n, const Jet2& d, const std::string& vx, const std::string& vy) {
  if (is_one(d)) return n.str(vx, vy);
  return "(" + n.str(vx, vy) + ")/(" + d.str(vx, vy) + ")";
}

}  // namespace

Diffeo Diffeo::rational(Jet2 nx, Jet2 dx, Jet2 ny, Jet2 dy) {
  if (!nx.exact() || !dx.exact() || !ny.exact() || !dy.exact())
    throw InvalidArgument("rational maps need exact polynomials");
  if (!nx.coeff(0, 0).rep_is_zero() || !ny.coeff(0, 0).rep_is_zero())
    throw InvalidArgument("the map must fix the origin");
  if (dx.coeff(0, 0).is_zero() || dy.coeff(0, 0).is_zero())
    throw InvalidArgument("denominators must not vanish at the origin");
  Diffeo F;
  F.kind_ = Kind::Rational;
  F.nx_ = std::move(nx);
  F.dx_ = std::move(dx);
  F.ny_ = std::move(ny);
  F.dy_ = std::move(dy);
  return F;
}

Diffeo Diffeo::polynomial(Jet2 fx, Jet2 fy) {
  return rational(std::move(fx), Jet2::constant(FieldElement(1)), std::move(fy), Jet2::constant(FieldElement(1)));
}

Diffeo Diffeo::exp_of(VectorField X) {
  if (!X.exact()) throw InvalidArgument("exp_of needs an exact generator");
  Diffeo F;
  F.kind_ = Kind::Generator;
  F.gen_ = std::move(X);
  return F;
}

Diffeo Diffeo::jet(Jet2 fx, Jet2 fy) {
  Diffeo F;
  F.kind_ = Kind::Jet;
  F.nx_ = std::move(fx);
  F.ny_ = std::move(fy);
  return F;
}

int Diffeo::prec() const { return kind_ == Kind::Jet ? prec_min(nx_.prec(), ny_.prec()) : Jet2::kExact; }

std::pair<Jet2, Jet2> Diffeo::jets(int N) const {
  switch (kind_) {
    case Kind::Rational:
      return {(nx_ * dx_.invert_unit(N)).truncated(N), (ny_ * dy_.invert_unit(N)).truncated(N)};
    case Kind::Generator:
      return exp_jets(gen_, N);
    case Kind::Jet:
      if (prec() < N) throw InsufficientPrecision("map jet certified only to degree " + std::to_string(prec()));
      return {nx_.truncated(N), ny_.truncated(N)};
  }
  return {};
}

std::array<FieldElement, 4> Diffeo::linear_part() const {
  auto [fx, fy] = jets(1);
  return {fx.coeff(1, 0), fx.coeff(0, 1), fy.coeff(1, 0), fy.coeff(0, 1)};
}

bool Diffeo::tangent_to_identity() const {
  auto l = linear_part();
  return (l[0] - FieldElement(1)).is_zero() && l[1].is_zero() && l[2].is_zero() &&
         (l[3] - FieldElement(1)).is_zero();
}

int Diffeo::order() const {
  switch (kind_) {
    case Kind::Rational:
      return VectorField(nx_ - Jet2::var_x() * dx_, ny_ - Jet2::var_y() * dy_).order();
    case Kind::Generator:
      return gen_.order();
    case Kind::Jet:
      return VectorField(nx_ - Jet2::var_x(), ny_ - Jet2::var_y()).order();
  }
  return 0;
}

std::string Diffeo::str(const std::string& vx, const std::string& vy) const {
  switch (kind_) {
    case Kind::Rational:
      return "(" + fraction_str(nx_, dx_, vx, vy) + ", " + fraction_str(ny_, dy_, vx, vy) + ")";
    case Kind::Generator:
      return "exp(" + gen_.str(vx, vy) + ")";
    case Kind::Jet:
      return "(" + nx_.str(vx, vy) + ", " + ny_.str(vx, vy) + ")";
  }
  return {};
}

std::pair<Jet2, Jet2> compose(const std::pair<Jet2, Jet2>& F, const std::pair<Jet2, Jet2>& G, int N) {
  return {F.first.substitute(G.first, G.second).truncated(N), F.second.substitute(G.first, G.second).truncated(N)};
}

}  // namespace ttid
