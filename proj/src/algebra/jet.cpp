#include "ttid/algebra/jet.hpp"

#include <algorithm>

namespace ttid {

Jet2 Jet2::constant(const FieldElement& c, int prec) { return monomial(c, 0, 0, prec); }

Jet2 Jet2::monomial(const FieldElement& c, int i, int j, int prec) {
  Jet2 r(prec);
  r.set(i, j, c);
  return r;
}

FieldElement Jet2::coeff(int i, int j) const {
  if (i + j > prec_)
    throw InsufficientPrecision("coefficient of degree " + std::to_string(i + j) +
                                " requested from a jet certified to degree " + std::to_string(prec_));
  auto it = terms_.find({i, j});
  return it == terms_.end() ? FieldElement() : it->second;
}

void Jet2::set(int i, int j, const FieldElement& c) {
  if (i + j > prec_) return;
  if (c.rep_is_zero())
    terms_.erase({i, j});
  else
    terms_[{i, j}] = c;
}

void Jet2::add_term(int i, int j, const FieldElement& c) {
  if (i + j > prec_ || c.rep_is_zero()) return;
  auto [it, inserted] = terms_.emplace(Exponent{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.rep_is_zero()) terms_.erase(it);
  }
}

int Jet2::low_degree() const {
  if (terms_.empty()) return exact() ? kExact : prec_ + 1;
  int d = kExact;
  for (const auto& [e, c] : terms_) d = std::min(d, e.first + e.second);
  return d;
}

int Jet2::max_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

int Jet2::order() const {
  std::map<int, std::vector<const FieldElement*>> by_degree;
  for (const auto& [e, c] : terms_) by_degree[e.first + e.second].push_back(&c);
  for (const auto& [d, cs] : by_degree)
    for (const FieldElement* c : cs)
      if (!c->is_zero()) return d;
  if (exact()) return kExact;
  throw InsufficientPrecision("jet vanishes to its certified degree " + std::to_string(prec_));
}

bool Jet2::is_zero() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_zero()) return false;
  return true;
}

Jet2 Jet2::truncated(int p) const {
  Jet2 r(std::min(p, prec_));
  for (const auto& [e, c] : terms_)
    if (e.first + e.second <= r.prec_) r.terms_.emplace(e, c);
  return r;
}

Jet2 Jet2::with_prec(int p) const { return truncated(p); }

Jet2 Jet2::homogeneous_part(int d) const {
  if (d > prec_) throw InsufficientPrecision("homogeneous part of degree " + std::to_string(d));
  Jet2 r;
  for (const auto& [e, c] : terms_)
    if (e.first + e.second == d) r.terms_.emplace(e, c);
  return r;
}

Jet2 Jet2::operator-() const {
  Jet2 r(prec_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  if (o.prec_ < prec_) {
    prec_ = o.prec_;
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->first.first + it->first.second > prec_ ? terms_.erase(it) : std::next(it);
  }
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) { return *this += -o; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  int p;
  if (a.exact() && b.exact())
    p = Jet2::kExact;
  else
    p = prec_min(prec_add(a.prec_, b.low_degree()), prec_add(b.prec_, a.low_degree()));
  Jet2 r(p);
  for (const auto& [ea, ca] : a.terms_) {
    int da = ea.first + ea.second;
    for (const auto& [eb, cb] : b.terms_) {
      if (da + eb.first + eb.second > p) continue;
      r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    }
  }
  return r;
}

Jet2 Jet2::scaled(const FieldElement& s) const {
  Jet2 r(prec_);
  if (s.rep_is_zero()) return r;
  for (const auto& [e, c] : terms_) r.set(e.first, e.second, c * s);
  return r;
}

Jet2 Jet2::dx() const {
  Jet2 r(prec_add(prec_, -1));
  for (const auto& [e, c] : terms_)
    if (e.first > 0) r.set(e.first - 1, e.second, c * FieldElement(e.first));
  return r;
}

Jet2 Jet2::dy() const {
  Jet2 r(prec_add(prec_, -1));
  for (const auto& [e, c] : terms_)
    if (e.second > 0) r.set(e.first, e.second - 1, c * FieldElement(e.second));
  return r;
}

Jet2 Jet2::substitute(const Jet2& gx, const Jet2& gy) const {
  int m = std::min(gx.low_degree(), gy.low_degree());
  if (m < 1) throw InvalidArgument("substituted jets must vanish at the origin");
  int p;
  if (exact() && gx.exact() && gy.exact())
    p = kExact;
  else
    p = prec_min(exact() ? kExact : (prec_ + 1) * m - 1, prec_min(gx.prec(), gy.prec()));
  int maxd = max_degree();
  std::vector<Jet2> px{Jet2::constant(FieldElement(1))}, py{Jet2::constant(FieldElement(1))};
  for (int i = 1; i <= maxd; ++i) {
    px.push_back((px.back() * gx).truncated(p));
    py.push_back((py.back() * gy).truncated(p));
  }
  Jet2 r(p);
  for (const auto& [e, c] : terms_) {
    if ((e.first + e.second) * m > p) continue;
    Jet2 term = (px[e.first] * py[e.second]).truncated(p);
    for (const auto& [et, ct] : term.terms_) r.add_term(et.first, et.second, c * ct);
  }
  return r;
}

Jet2 Jet2::invert_unit(int prec) const {
  int p = std::min(prec, prec_);
  FieldElement c0 = coeff(0, 0);
  if (c0.is_zero()) throw DivisionByZero("jet is not a unit");
  FieldElement inv0 = c0.inverse();
  // u = c0 (1 - w), 1/u = inv0 * sum w^n
  Jet2 w = (Jet2::constant(FieldElement(1)) - scaled(inv0)).truncated(p);
  Jet2 result = Jet2::constant(FieldElement(1), p);
  Jet2 power = result;
  for (int n = 1; n <= p; ++n) {
    power = (power * w).truncated(p);
    if (power.terms_.empty()) break;
    result += power;
  }
  Jet2 out = result.scaled(inv0);
  out.prec_ = p;
  return out;
}

Coeffs homogeneous_to_univariate(const Jet2& h, int d) {
  Coeffs c(d + 1);
  for (const auto& [e, v] : h.terms())
    if (e.first + e.second == d) c[e.second] = v;
  poly::trim(c);
  return c;
}

Jet2 univariate_to_homogeneous(const Coeffs& c, int d) {
  Jet2 h;
  for (int j = 0; j < static_cast<int>(c.size()) && j <= d; ++j) h.set(d - j, j, c[j]);
  return h;
}

Jet2 Jet2::divide_exact(const Jet2& d) const {
  int m = d.order();
  if (m >= kExact) throw DivisionByZero("division by the zero jet");
  int p = (exact() && d.exact()) ? kExact : prec_min(prec_, d.prec()) - m;
  int last = p >= kExact ? max_degree() - m : p;
  Coeffs dm = homogeneous_to_univariate(d, m);
  Jet2 q(p);
  Jet2 rem = *this;
  for (int n = 0; n <= last; ++n) {
    Coeffs hn = homogeneous_to_univariate(rem.truncated(prec_min(rem.prec(), n + m)), n + m);
    if (hn.empty()) continue;
    Coeffs quo, r;
    poly::divmod(hn, dm, quo, r);
    for (const auto& c : r)
      if (!c.is_zero()) throw NotDivisible("jet is not divisible by " + d.str());
    Jet2 qn = univariate_to_homogeneous(quo, n);
    for (const auto& [e, c] : qn.terms_) q.set(e.first, e.second, c);
    rem -= (d * qn);
  }
  if (p >= kExact && !rem.is_zero()) throw NotDivisible("polynomial is not divisible by " + d.str());
  return q;
}

Jet2 Jet2::divide_monomial(int a, int b) const {
  Jet2 r(prec_add(prec_, -(a + b)));
  for (const auto& [e, c] : terms_) {
    if (e.first < a || e.second < b) {
      if (c.is_zero()) continue;
      throw NotDivisible("jet is not divisible by the monomial");
    }
    r.set(e.first - a, e.second - b, c);
  }
  return r;
}

Jet2 Jet2::swapped() const {
  Jet2 r(prec_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.second, e.first}, c);
  return r;
}

bool Jet2::operator==(const Jet2& o) const {
  if (prec_ != o.prec_ || terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [e, c] : terms_) {
    if (it->first != e || it->second != c) return false;
    ++it;
  }
  return true;
}

bool Jet2::agrees_with(const Jet2& o, int p) const {
  if (p > prec_ || p > o.prec_) throw InsufficientPrecision("comparison beyond certified degree");
  Jet2 diff = truncated(p) - o.truncated(p);
  return diff.is_zero();
}

std::string Jet2::str(const std::string& vx, const std::string& vy) const {
  // Highest degree first; inside a degree, descending powers of x.
  std::vector<std::pair<Exponent, FieldElement>> items(terms_.begin(), terms_.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da < db;
    return a.first.first > b.first.first;
  });
  std::vector<std::pair<FieldElement, std::string>> parts;
  for (const auto& [e, c] : items) {
    std::string mono;
    auto append = [&mono](const std::string& v, int k) {
      if (k == 0) return;
      if (!mono.empty()) mono += "*";
      mono += k == 1 ? v : v + "^" + std::to_string(k);
    };
    append(vx, e.first);
    append(vy, e.second);
    parts.emplace_back(c, mono);
  }
  std::string out = poly::format_terms(parts);
  if (!exact()) out += " + O(" + std::to_string(prec_ + 1) + ")";
  return out;
}

}  // namespace ttid
