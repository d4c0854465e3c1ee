#include "ttid/algebra/bipoly.hpp"

namespace ttid {

namespace {

LevelPtr coefficient_level(const Jet2& a) {
  LevelPtr l;
  for (const auto& [e, c] : a.terms()) l = deeper_level(l, c.level());
  return l;
}

// y^j -> polynomial in x
std::vector<Coeffs> y_slices(const Jet2& a) {
  std::vector<Coeffs> s;
  for (const auto& [e, c] : a.terms()) {
    if (static_cast<int>(s.size()) <= e.second) s.resize(e.second + 1);
    Coeffs& p = s[e.second];
    if (static_cast<int>(p.size()) <= e.first) p.resize(e.first + 1);
    p[e.first] = c;
  }
  for (auto& p : s) poly::trim(p);
  return s;
}

Coeffs content(const std::vector<Coeffs>& slices) {
  Coeffs g;
  for (const auto& p : slices) {
    if (p.empty()) continue;
    g = g.empty() ? poly::monic(p) : poly::gcd(g, p);
  }
  return g;
}

Jet2 from_slices(const std::vector<Coeffs>& slices) {
  Jet2 r;
  for (size_t j = 0; j < slices.size(); ++j)
    for (size_t i = 0; i < slices[j].size(); ++i) r.set(static_cast<int>(i), static_cast<int>(j), slices[j][i]);
  return r;
}

}  // namespace

Jet2 bipoly_normalize(const Jet2& a) {
  if (a.terms().empty()) return a;
  const FieldElement* lead = nullptr;
  Exponent best{-1, -1};
  for (const auto& [e, c] : a.terms())
    if (e.second > best.second || (e.second == best.second && e.first > best.first)) {
      best = e;
      lead = &c;
    }
  return a.scaled(lead->inverse());
}

bool bipoly_is_unit(const Jet2& a) { return a.max_degree() == 0; }

Jet2 bipoly_gcd(const Jet2& a, const Jet2& b) {
  if (!a.exact() || !b.exact()) throw InvalidArgument("bipoly_gcd needs exact polynomials");
  if (a.terms().empty()) return bipoly_normalize(b);
  if (b.terms().empty()) return bipoly_normalize(a);
  auto sa = y_slices(a), sb = y_slices(b);
  Coeffs ca = content(sa), cb = content(sb);
  Coeffs cont = poly::gcd(ca, cb);
  std::vector<Coeffs> g_slices;
  if (sa.size() > 1 && sb.size() > 1) {
    LevelPtr base = deeper_level(coefficient_level(a), coefficient_level(b));
    LevelPtr X = adjoin_transcendental(base, "_x");
    auto lift = [&](const std::vector<Coeffs>& s, const Coeffs& c) {
      Coeffs out;
      for (const auto& p : s) out.push_back(p.empty() ? FieldElement() : FieldElement::from_rep(X, poly::quo(p, c)));
      poly::trim(out);
      return out;
    };
    Coeffs g = poly::gcd(lift(sa, ca), lift(sb, cb));
    if (poly::degree(g) > 0) {
      // clear denominators, then drop the content in x
      Coeffs den{FieldElement(1)};
      for (const auto& c : g)
        if (c.level() == X && !c.den().empty()) {
          Coeffs d = c.den();
          den = poly::quo(poly::mul(den, d), poly::gcd(den, d));
        }
      FieldElement scale = FieldElement::from_rep(X, den);
      for (const auto& c : g) {
        FieldElement v = c * scale;
        if (v.level() == X)
          g_slices.push_back(v.num());
        else
          g_slices.push_back(v.rep_is_zero() ? Coeffs{} : Coeffs{v});
      }
      Coeffs gc = content(g_slices);
      for (auto& p : g_slices)
        if (!p.empty()) p = poly::quo(p, gc);
    }
  }
  Jet2 result;
  if (g_slices.empty()) {
    result = from_slices({cont});
  } else {
    for (auto& p : g_slices) p = poly::mul(p, cont);
    result = from_slices(g_slices);
  }
  return bipoly_normalize(result);
}

}  // namespace ttid
