#include "ttid/index/index.hpp"

#include <algorithm>

#include "ttid/algebra/upoly.hpp"
#include "ttid/germs/directions.hpp"
#include "ttid/germs/exp_log.hpp"

namespace ttid {

namespace {

Series1 make_series(Coeffs c, int prec) {
  if (prec < Jet2::kExact && static_cast<int>(c.size()) > prec + 1) c.resize(prec + 1);
  return Series1(std::move(c), prec);
}

// lowest index that can be nonzero (prec + 1 when nothing is known)
int low_index(const Series1& a) {
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!a.c[i].rep_is_zero()) return static_cast<int>(i);
  return a.prec >= Jet2::kExact ? Jet2::kExact : a.prec + 1;
}

Series1 add_constant(Series1 a, const FieldElement& k) {
  if (a.c.empty()) a.c.resize(1);
  a.c[0] += k;
  poly::trim(a.c);
  return a;
}

Series1 sub(const Series1& a, const Series1& b) {
  int p = prec_min(a.prec, b.prec);
  return make_series(poly::sub(a.c, b.c), p);
}

Jet2 series_as_jet(const Series1& s) {
  Jet2 j(s.prec);
  for (size_t i = 0; i < s.c.size(); ++i) j.set(static_cast<int>(i), 0, s.c[i]);
  return j;
}

bool vanishes(const Series1& s) {
  return std::all_of(s.c.begin(), s.c.end(), [](const FieldElement& v) { return v.is_zero(); });
}

FieldElement norm2(const FieldElement& w, const LevelPtr& level) {
  FieldElement t = trace(w, level);
  return (t * t - trace(w * w, level)) * FieldElement::fraction(1, 2);
}

ProjPoint vertical() { return ProjPoint(FieldElement(0), FieldElement(1)); }

}  // namespace

int series_order(const Series1& a) {
  int o = low_index(a);
  if (o > a.prec) throw InsufficientPrecision("series vanishes to its certified degree");
  for (size_t i = o; i < a.c.size(); ++i)
    if (!a.c[i].is_zero()) return static_cast<int>(i);
  if (a.prec >= Jet2::kExact) return Jet2::kExact;
  throw InsufficientPrecision("series vanishes to its certified degree");
}

Series1 series_mul(const Series1& a, const Series1& b) {
  int p = (a.prec >= Jet2::kExact && b.prec >= Jet2::kExact)
              ? Jet2::kExact
              : prec_min(prec_add(a.prec, low_index(b)), prec_add(b.prec, low_index(a)));
  Coeffs c;
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (static_cast<int>(i) > p) break;
    for (size_t j = 0; j < b.c.size() && static_cast<int>(i + j) <= p; ++j) {
      if (c.size() <= i + j) c.resize(i + j + 1);
      c[i + j] += a.c[i] * b.c[j];
    }
  }
  return make_series(std::move(c), p);
}

Series1 series_derivative(const Series1& a) { return make_series(poly::derivative(a.c), prec_add(a.prec, -1)); }

Series1 series_compose(const Series1& a, const Series1& b) {
  int ob = low_index(b);
  if (!b.c.empty() && !b.c[0].rep_is_zero()) throw InvalidArgument("inner series must vanish at 0");
  int p = a.prec >= Jet2::kExact ? Jet2::kExact : (a.prec + 1) * ob - 1;
  if (b.prec < Jet2::kExact) p = std::min(p, b.prec);
  Series1 result = make_series({}, p);
  Series1 power = make_series({FieldElement(1)}, Jet2::kExact);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (i > 0) power = series_mul(power, b);
    if (!a.c[i].rep_is_zero()) result.c = poly::add(result.c, poly::scale(power.c, a.c[i]));
    if (p < Jet2::kExact && static_cast<int>(i + 1) * ob > p) break;
  }
  return make_series(result.c, p);
}

Series1 series_reverse(const Series1& a, int K) {
  K = std::min(K, a.prec);
  FieldElement a1 = a.at(1);
  if (!a.at(0).is_zero() || a1.is_zero()) throw InvalidArgument("series is not invertible for composition");
  FieldElement inv = a1.inverse();
  Coeffs r{FieldElement(), inv};
  for (int n = 2; n <= K; ++n) {
    Series1 comp = series_compose(a, make_series(r, n));
    FieldElement e = comp.at(n);
    r.resize(n + 1);
    r[n] = -e * inv;
  }
  return make_series(r, K);
}

Series1 eval_on_branch(const Jet2& j, const Series1& x, const Series1& y) {
  int ox = low_index(x), oy = low_index(y);
  if (ox < 1 || oy < 1) throw InvalidArgument("branch must pass through the origin");
  int m = std::min(ox, oy);
  int p = j.exact() ? Jet2::kExact : (j.prec() + 1) * m - 1;
  p = prec_min(p, prec_min(x.prec, y.prec));
  if (p >= Jet2::kExact) p = Jet2::kExact;
  std::vector<Series1> px{make_series({FieldElement(1)}, Jet2::kExact)}, py = px;
  Coeffs acc;
  for (const auto& [e, c] : j.terms()) {
    if (p < Jet2::kExact && e.first * ox + e.second * oy > p) continue;
    while (static_cast<int>(px.size()) <= e.first) px.push_back(make_series(series_mul(px.back(), x).c, p));
    while (static_cast<int>(py.size()) <= e.second) py.push_back(make_series(series_mul(py.back(), y).c, p));
    Series1 t = series_mul(px[e.first], py[e.second]);
    acc = poly::add(acc, poly::scale(t.c, c));
  }
  return make_series(std::move(acc), p);
}

IndexValue cs_index(const VectorField& X0, Axis axis, int factor_power) {
  if (axis == Axis::X) {
    IndexValue v = cs_index(X0.swapped(), Axis::Y, factor_power);
    v.separatrix = "(x)";
    v.field = X0.str();
    return v;
  }
  VectorField X = X0;
  if (factor_power > 0) X = VectorField(X.a.divide_monomial(0, factor_power), X.b.divide_monomial(0, factor_power));
  for (;;) {
    Series1 a0 = restrict_to_x_axis(X.a), b0 = restrict_to_x_axis(X.b);
    if (!vanishes(b0)) throw SeparatrixNotStrict("the axis is not invariant");
    if (!vanishes(a0)) break;
    if (!X.exact()) throw InsufficientPrecision("cannot certify the field off the separatrix");
    if (X.is_zero()) throw InvalidArgument("zero field");
    X = VectorField(X.a.divide_monomial(0, 1), X.b.divide_monomial(0, 1));
  }
  IndexValue v;
  v.value = laurent_residue(restrict_to_x_axis(X.b.dy()), restrict_to_x_axis(X.a));
  v.separatrix = "(y)";
  v.field = X0.str();
  return v;
}

IndexValue cs_index_graph(const VectorField& X, const Series1& psi) {
  if (!psi.c.empty() && !psi.c[0].is_zero()) throw InvalidArgument("curve must pass through the origin");
  Jet2 P = series_as_jet(psi);
  Jet2 dP = series_as_jet(series_derivative(psi));
  Jet2 gy = Jet2::var_y() + P;
  Jet2 a = X.a.substitute(Jet2::var_x(), gy);
  Jet2 b = X.b.substitute(Jet2::var_x(), gy) - dP * a;
  IndexValue v = cs_index(VectorField(a, b), Axis::Y);
  v.separatrix = "y = " + Jet2(series_as_jet(psi)).str("x", "y");
  v.field = X.str();
  return v;
}

Branch separatrix_branch(const VectorField& Xbar, const ProjPoint& v, int K) {
  if (!v.at_infinity() && v.coordinate().is_zero()) {
    Branch b = separatrix_branch(Xbar.swapped(), ProjPoint::infinity(), K);
    return {b.y, b.x};
  }
  FieldElement sigma = v.at_infinity() ? FieldElement() : v.coordinate().inverse();
  // coordinates (x, w) with y = w + sigma x
  Jet2 gy = Jet2::var_y() + Jet2::var_x().scaled(sigma);
  Jet2 a = Xbar.a.substitute(Jet2::var_x(), gy);
  Jet2 b = Xbar.b.substitute(Jet2::var_x(), gy) - a.scaled(sigma);
  if (!b.coeff(1, 0).is_zero()) throw InvalidArgument("direction is not an eigendirection");
  FieldElement lambda = a.coeff(1, 0), mu = b.coeff(0, 1);
  K = std::min(K, Xbar.prec());
  Series1 tau = make_series({FieldElement(), FieldElement(1)}, Jet2::kExact);
  Coeffs phi{FieldElement(), FieldElement()};
  for (int j = 2; j <= K; ++j) {
    Series1 ph = make_series(phi, j);
    Series1 E = sub(eval_on_branch(b, tau, ph), series_mul(series_derivative(ph), eval_on_branch(a, tau, ph)));
    FieldElement den = mu - FieldElement(j) * lambda;
    FieldElement ej = E.at(j);
    phi.resize(j + 1);
    if (den.is_zero()) {
      if (!ej.is_zero()) throw InvalidArgument("no formal separatrix in this direction");
      continue;
    }
    phi[j] = -ej / den;
  }
  Coeffs yc = phi;
  yc[1] = sigma;
  return {tau, make_series(yc, K)};
}

Branch push_down(const ResolutionTree& tree, int id, int to, Branch b) {
  for (int k = id; k != to; k = tree.node(k).parent) {
    if (k < 0) throw InvalidArgument("target is not an ancestor");
    const DivisorPoint& c = tree.node(k).center;
    if (c.chart == DivisorPoint::Chart::T) {
      b = {b.x, series_mul(add_constant(b.y, c.coordinate), b.x)};
    } else {
      b = {series_mul(add_constant(b.x, c.coordinate), b.y), b.y};
    }
  }
  return b;
}

IndexValue cs_index_branch(const VectorField& X, const Branch& b) {
  bool x_is_tau = b.x.prec >= Jet2::kExact && b.x.c.size() == 2 && b.x.c[0].rep_is_zero() && b.x.c[1].rep_is_one();
  if (x_is_tau) return cs_index_graph(X, b.y);
  int K = prec_min(b.x.prec, b.y.prec);
  if (low_index(b.x) == 1 && !b.x.c[1].is_zero())
    return cs_index_graph(X, series_compose(b.y, series_reverse(b.x, K)));
  if (low_index(b.y) == 1 && !b.y.c[1].is_zero()) {
    IndexValue v = cs_index_graph(X.swapped(), series_compose(b.x, series_reverse(b.y, K)));
    return v;
  }
  throw InvalidArgument("branch is singular");
}

IndexValue separatrix_index(const ResolutionTree& tree, int leaf, const ProjPoint& v, int to) {
  const VectorField& field = tree.node(leaf).field;
  for (int K = 6;; K *= 2) {
    int k = std::min(K, field.prec());
    try {
      Branch b = push_down(tree, leaf, to, separatrix_branch(field, v, k));
      return cs_index_branch(tree.node(to).field, b);
    } catch (const InsufficientPrecision&) {
      if (k < K || K >= 96) throw;
    }
  }
}

FieldElement divisor_index(const ResolutionTree& tree, int child) {
  const ResolutionNode& c = tree.node(child);
  Axis axis = c.center.chart == DivisorPoint::Chart::T ? Axis::X : Axis::Y;
  return cs_index(c.field, axis).value;
}

FieldElement divisor_index_sum(const ResolutionTree& tree, int node) {
  const ResolutionNode& n = tree.node(node);
  if (n.dicritical) throw Dicritical("the divisor is not invariant");
  FieldElement sum;
  for (int c : n.children) {
    FieldElement v = divisor_index(tree, c);
    const RootFamily& fam = tree.node(c).family;
    sum += fam.level ? trace(v, fam.level) : v;
  }
  return sum;
}

std::vector<IndexTableEntry> divisor_index_table(const ResolutionTree& tree) {
  std::vector<IndexTableEntry> out;
  for (const auto& n : tree.nodes) {
    if (!n.blown_up || n.dicritical) continue;
    for (int c : n.children) {
      const ResolutionNode& ch = tree.node(c);
      IndexTableEntry e;
      e.node = n.id;
      e.child = c;
      e.point = ch.center.str();
      e.factor = ch.family.factor.empty() ? "[1:0]" : poly::str(ch.family.factor, "s");
      e.weight = ch.weight();
      e.value = divisor_index(tree, c);
      out.push_back(std::move(e));
    }
  }
  return out;
}

IndexValue residual_index(const Diffeo& F, Axis axis, int start_order) {
  int k = F.order() - 1;
  int N = start_order > 0 ? start_order : 4 * (k + 1);
  int power = -1;
  if (F.exact()) {
    Jet2 g = fixed_curves(F).raw;
    if (g.terms().empty()) throw InvalidArgument("the identity has no residual index");
    power = 0;
    for (;;) {
      try {
        g = axis == Axis::Y ? g.divide_monomial(0, 1) : g.divide_monomial(1, 0);
        ++power;
      } catch (const NotDivisible&) {
        break;
      }
    }
  }
  for (; N <= 512; N *= 2) {
    try {
      VectorField X = log(F, N);
      if (axis == Axis::X) return cs_index(X.swapped(), Axis::Y, power);
      return cs_index(X, Axis::Y, power);
    } catch (const InsufficientPrecision&) {
    }
  }
  throw InsufficientPrecision("residual index not certified up to order 512");
}

bool IndexReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.ok; });
}

IndexReport validate_index_properties(const ResolutionTree& tree, bool throw_on_failure) {
  IndexReport rep;
  auto record = [&](std::string prop, int node, const FieldElement& want, const FieldElement& got) {
    PropertyCheck c;
    c.property = std::move(prop);
    c.node = node;
    c.expected = want.str();
    c.got = got.str();
    c.ok = (want - got).is_zero();
    if (!c.ok && throw_on_failure)
      throw PropertyViolation(c.property + " fails at n" + std::to_string(node) + ": expected " + c.expected + ", got " +
                              c.got);
    rep.checks.push_back(std::move(c));
  };

  for (const auto& n : tree.nodes) {
    if (!n.blown_up || n.dicritical) continue;
    record("divisor sum", n.id, FieldElement(-1), divisor_index_sum(tree, n.id));
    // a non-singular point of the new divisor
    Coeffs c = homogeneous_to_univariate(n.tangency, n.tangency_degree);
    c.resize(n.tangency_degree + 1);
    for (long s0 = 1; s0 < 64; ++s0) {
      FieldElement val;
      for (int j = n.tangency_degree; j >= 0; --j) val = val * FieldElement(s0) + c[n.tangency_degree - j];
      if (val.is_zero()) continue;
      StrictTransform st = strict_transform(n.field, DivisorPoint::chart_s(FieldElement(s0)));
      record("integral curve", n.id, FieldElement(), cs_index(st.field, Axis::Y).value);
      break;
    }
  }

  for (const auto& n : tree.nodes) {
    if (!n.leaf() || !n.cls.reduced()) continue;
    Jet2 q = tangency_polynomial(n.field.truncated(1), 1);
    std::vector<std::pair<FieldElement, RootFamily>> values;
    for (const RootFamily& fam : root_decompose(q, 2)) {
      FieldElement local = separatrix_index(tree, n.id, fam.point, n.id).value;
      values.emplace_back(local, fam);
      FieldElement lambda = fam.point.at_infinity() ? n.field.a.coeff(1, 0)
                                                    : n.field.b.coeff(1, 0) * fam.point.coordinate() + n.field.b.coeff(0, 1);
      if (n.cls.tag == SingularityClass::Tag::ReducedSaddleNode && !lambda.is_zero())
        record("strong saddle-node index", n.id, FieldElement(), local);

      // decrement along the path of free smooth branches
      bool in_div = (fam.point == vertical() && n.div_x && n.inv_x) ||
                    (fam.point == ProjPoint::infinity() && n.div_y && n.inv_y);
      if (in_div || fam.level) continue;
      FieldElement below = local;
      int child = n.id;
      for (int anc = n.parent; anc >= 0; child = anc, anc = tree.node(anc).parent) {
        FieldElement here;
        try {
          here = separatrix_index(tree, n.id, fam.point, anc).value;
        } catch (const InvalidArgument&) {
          break;  // the branch is singular from here on
        }
        record("blow-up decrement", child, here - FieldElement(1), below);
        below = here;
      }
    }
    if (n.cls.tag == SingularityClass::Tag::ReducedNonDegenerate) {
      FieldElement prod(1);
      for (const auto& [v, fam] : values) prod *= fam.level ? norm2(v, fam.level) : v;
      record("non-degenerate product", n.id, FieldElement(1), prod);
    }
  }
  return rep;
}

}  // namespace ttid
