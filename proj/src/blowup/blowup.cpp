#include "ttid/blowup/blowup.hpp"

#include "ttid/algebra/bipoly.hpp"

namespace ttid {

DivisorPoint DivisorPoint::from_direction(const ProjPoint& v) {
  if (v.at_infinity()) return chart_t(FieldElement());
  return chart_s(v.coordinate());
}

ProjPoint DivisorPoint::direction() const {
  if (chart == Chart::T) return ProjPoint(FieldElement(1), coordinate);
  return ProjPoint(coordinate, FieldElement(1));
}

std::string DivisorPoint::str() const { return (chart == Chart::T ? "t=" : "s=") + coordinate.str(); }

Jet2 chart_t_substitute(const Jet2& p, const FieldElement& t0, int shift) {
  int out = p.exact() ? Jet2::kExact : p.prec() - shift;
  Jet2 r(out);
  int maxj = 0;
  for (const auto& [e, c] : p.terms()) maxj = std::max(maxj, e.second);
  std::vector<FieldElement> pw{FieldElement(1)};
  bool t0_zero = t0.rep_is_zero();
  if (!t0_zero)
    for (int k = 1; k <= maxj; ++k) pw.push_back(pw.back() * t0);
  for (const auto& [e, c] : p.terms()) {
    int n = e.first + e.second - shift;
    if (n < 0) throw NotDivisible("chart substitution is not divisible by the chart factor");
    if (n > out) continue;
    int j = e.second;
    if (t0_zero) {
      r.add_term(n, j, c);
      continue;
    }
    mpz_class binom = 1;
    for (int k = 0; k <= j && n + k <= out; ++k) {
      r.add_term(n, k, c * FieldElement(mpq_class(binom)) * pw[j - k]);
      binom = binom * (j - k) / (k + 1);
    }
  }
  return r;
}

Jet2 chart_s_substitute(const Jet2& p, const FieldElement& s0, int shift) {
  return chart_t_substitute(p.swapped(), s0, shift).swapped();
}

namespace {

VectorField chart_t_field(const VectorField& X, const FieldElement& t0, int e) {
  Jet2 u = Jet2::var_y() + Jet2::constant(t0);
  Jet2 xdot = chart_t_substitute(X.a, t0, e);
  Jet2 tdot = chart_t_substitute(X.b, t0, e + 1) - u * chart_t_substitute(X.a, t0, e + 1);
  return {xdot, tdot};
}

VectorField chart_field(const VectorField& X, const DivisorPoint& p, int e) {
  try {
    if (p.chart == DivisorPoint::Chart::T) return chart_t_field(X, p.coordinate, e);
    return chart_t_field(X.swapped(), p.coordinate, e).swapped();
  } catch (const NotDivisible&) {
    throw InvalidArgument("blow-up needs a field vanishing at the center");
  }
}

std::optional<int> certified_order(const Jet2& j) {
  try {
    return j.order();
  } catch (const InsufficientPrecision&) {
    return std::nullopt;
  }
}

bool is_square(const mpq_class& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

}  // namespace

VectorField blow_up_vf(const VectorField& X, const DivisorPoint& p) { return chart_field(X, p, 0); }

StrictTransform strict_transform(const VectorField& Xbar, const DivisorPoint& p) {
  int nu = Xbar.order();
  if (nu == 0) throw InvalidArgument("strict transform of a non-singular field");
  StrictTransform st;
  st.dicritical = is_dicritical(Xbar);
  st.power = st.dicritical ? nu : nu - 1;
  st.field = chart_field(Xbar, p, st.power);
  return st;
}

Saturation saturate(const VectorField& X) {
  if (X.exact()) {
    if (X.is_zero()) throw InvalidArgument("saturation of the zero field");
    Jet2 f = bipoly_gcd(X.a, X.b);
    if (f.max_degree() <= 0) return saturate_by(X, Jet2::constant(FieldElement(1)));
    return saturate_by(X, f);
  }
  auto oa = certified_order(X.a), ob = certified_order(X.b);
  bool trivial = false;
  if ((oa && *oa == 0) || (ob && *ob == 0)) {
    trivial = true;
  } else if (oa && ob && *oa < Jet2::kExact && *ob < Jet2::kExact) {
    int deg = 0;
    homogeneous_gcd(X.a.homogeneous_part(*oa), *oa, X.b.homogeneous_part(*ob), *ob, &deg);
    trivial = deg == 0;
  }
  if (!trivial) throw InsufficientPrecision("saturation of a truncated field cannot be certified");
  Saturation s;
  s.f = Jet2::constant(FieldElement(1));
  s.field = X;
  s.strictly_singular = X.order() >= 1;
  return s;
}

Saturation saturate_by(const VectorField& X, const Jet2& f) {
  Saturation s;
  s.f = f;
  s.field = VectorField(X.a.divide_exact(f), X.b.divide_exact(f));
  s.strictly_singular = s.field.order() >= 1;
  return s;
}

Jet2 homogeneous_gcd(const Jet2& h1, int d1, const Jet2& h2, int d2, int* deg) {
  auto dehom = [](const Jet2& h, int d, bool& inf) {
    Coeffs c = homogeneous_to_univariate(h, d);
    c.resize(d + 1);
    Coeffs p(d + 1);
    for (int j = 0; j <= d; ++j) p[d - j] = c[j];
    poly::trim(p);
    inf = p.empty() || c[0].is_zero();
    return p;
  };
  bool inf1 = false, inf2 = false;
  Coeffs p1 = dehom(h1, d1, inf1), p2 = dehom(h2, d2, inf2);
  if (p1.empty() && p2.empty()) throw InvalidArgument("gcd of two zero forms");
  Coeffs g = poly::gcd(p1, p2);
  int dg = poly::degree(g) + ((inf1 && inf2) ? 1 : 0);
  Jet2 out;
  for (int i = 0; i <= poly::degree(g); ++i) out.set(i, dg - i, g[i]);
  *deg = dg;
  return out;
}

Diffeo swapped(const Diffeo& F) {
  switch (F.kind()) {
    case Diffeo::Kind::Rational:
      return Diffeo::rational(F.num_y().swapped(), F.den_y().swapped(), F.num_x().swapped(), F.den_x().swapped());
    case Diffeo::Kind::Generator:
      return Diffeo::exp_of(F.generator().swapped());
    case Diffeo::Kind::Jet:
      return Diffeo::jet(F.num_y().swapped(), F.num_x().swapped());
  }
  return F;
}

Diffeo blow_up_diffeo(const Diffeo& F, const DivisorPoint& p) {
  if (p.chart == DivisorPoint::Chart::S)
    return swapped(blow_up_diffeo(swapped(F), DivisorPoint::chart_t(p.coordinate)));
  const FieldElement& t0 = p.coordinate;
  if (F.kind() == Diffeo::Kind::Generator) return Diffeo::exp_of(blow_up_vf(F.generator(), p));

  bool rational = F.kind() == Diffeo::Kind::Rational;
  Jet2 one = Jet2::constant(FieldElement(1));
  const Jet2& nx = F.num_x();
  const Jet2& ny = F.num_y();
  Jet2 dx = rational ? F.den_x() : one, dy = rational ? F.den_y() : one;
  Jet2 num = chart_t_substitute(ny * dx - (nx * dy).scaled(t0), t0, 1);
  Jet2 den = chart_t_substitute(dy * nx, t0, 1);
  if (!num.coeff(0, 0).is_zero() || den.coeff(0, 0).is_zero())
    throw NotInvariantDirection("direction " + p.direction().str() + " is not invariant under the linear part");
  num.set(0, 0, FieldElement());
  if (rational)
    return Diffeo::rational(chart_t_substitute(nx, t0, 0), chart_t_substitute(dx, t0, 0), num, den);
  int P = num.prec();
  return Diffeo::jet(chart_t_substitute(nx, t0, 0), (num * den.invert_unit(P)).truncated(P));
}

std::string SingularityClass::tag_name() const {
  switch (tag) {
    case Tag::NonSingular:
      return "NonSingular";
    case Tag::ReducedNonDegenerate:
      return "ReducedNonDegenerate";
    case Tag::ReducedSaddleNode:
      return "ReducedSaddleNode";
    case Tag::NotReduced:
      return "NotReduced";
  }
  return {};
}

std::string SingularityClass::eigen_str() const {
  if (tag == Tag::NonSingular) return "";
  if (lambda1 && lambda2) return "(" + lambda1->str() + ", " + lambda2->str() + ")";
  return "roots of l^2 - (" + trace.str() + ")*l + (" + det.str() + ")";
}

SingularityClass classify_singularity(const VectorField& Xbar) {
  SingularityClass sc;
  if (Xbar.prec() < 1) throw InsufficientPrecision("linear part not certified");
  if (!Xbar.a.coeff(0, 0).is_zero() || !Xbar.b.coeff(0, 0).is_zero()) return sc;
  FieldElement ax = Xbar.a.coeff(1, 0), ay = Xbar.a.coeff(0, 1);
  FieldElement bx = Xbar.b.coeff(1, 0), by = Xbar.b.coeff(0, 1);
  sc.trace = ax + by;
  sc.det = ax * by - ay * bx;
  if (sc.det.is_zero()) {
    sc.lambda1 = sc.trace;
    sc.lambda2 = FieldElement();
    sc.tag = sc.trace.is_zero() ? SingularityClass::Tag::NotReduced : SingularityClass::Tag::ReducedSaddleNode;
    return sc;
  }
  if (auto sq = sqrt_exact(sc.trace * sc.trace - FieldElement(4) * sc.det)) {
    FieldElement half = FieldElement::fraction(1, 2);
    sc.lambda1 = (sc.trace + *sq) * half;
    sc.lambda2 = (sc.trace - *sq) * half;
  }
  // lambda2/lambda1 = rho satisfies rho + 1/rho + 2 = tr^2/det
  bool positive_rational = false;
  if (auto sigma = rational_value(sc.trace * sc.trace / sc.det))
    positive_rational = *sigma >= 4 && is_square(*sigma * (*sigma - 4));
  sc.tag = positive_rational ? SingularityClass::Tag::NotReduced : SingularityClass::Tag::ReducedNonDegenerate;
  return sc;
}

}  // namespace ttid
