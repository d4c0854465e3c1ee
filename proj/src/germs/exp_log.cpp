#include "ttid/germs/exp_log.hpp"

namespace ttid {

std::pair<Jet2, Jet2> exp_jets(const VectorField& X, int N) {
  if (X.prec() < N) throw InsufficientPrecision("generator certified only to degree " + std::to_string(X.prec()));
  VectorField Xn = X.truncated(N);
  if (Xn.a.low_degree() < 2 || Xn.b.low_degree() < 2) throw InvalidArgument("exp needs a generator of order >= 2");
  auto series = [&](const Jet2& start) {
    Jet2 sum = start.truncated(N), term = sum;
    for (int n = 1; n <= N; ++n) {
      term = Xn.apply(term, N).scaled(FieldElement::fraction(1, n));
      if (term.terms().empty()) break;
      sum += term;
    }
    return sum.truncated(N);
  };
  Jet2 fx = series(Jet2::var_x()), fy = series(Jet2::var_y());
  return {fx, fy};
}

Diffeo exp(const VectorField& X, int N) {
  auto [fx, fy] = exp_jets(X, N);
  return Diffeo::jet(std::move(fx), std::move(fy));
}

VectorField log_jets(const std::pair<Jet2, Jet2>& F, int N) {
  Jet2 dx = (F.first - Jet2::var_x()).truncated(N), dy = (F.second - Jet2::var_y()).truncated(N);
  if (dx.prec() < N || dy.prec() < N) throw InsufficientPrecision("map certified below the requested degree");
  VectorField D(dx, dy);
  if (D.is_zero()) return VectorField(Jet2(N), Jet2(N));
  int order = D.order();
  if (order >= Jet2::kExact) return VectorField(Jet2(N), Jet2(N));
  if (order < 2) throw InvalidArgument("log needs a tangent to the identity germ");
  int k = order - 1;
  VectorField X = D.homogeneous_part(order);
  X.a = X.a.truncated(N);
  X.b = X.b.truncated(N);
  // X_n = F_n - [exp(X_{<=d})]_n for n = d+1 .. d+k
  for (int d = order; d < N; d += k) {
    int top = std::min(d + k, N);
    auto E = exp_jets(VectorField(X.a.with_prec(top), X.b.with_prec(top)), top);
    for (int n = d + 1; n <= top; ++n) {
      Jet2 ex = (F.first - E.first).homogeneous_part(n);
      Jet2 ey = (F.second - E.second).homogeneous_part(n);
      X.a += ex;
      X.b += ey;
    }
  }
  Jet2 a(N), b(N);
  a += X.a;
  b += X.b;
  return VectorField(a, b);
}

VectorField log(const Diffeo& F, int N) {
  if (F.kind() == Diffeo::Kind::Generator) return F.generator().truncated(N);
  return log_jets(F.jets(N), N);
}

}  // namespace ttid
