#include "ttid/algebra/roots.hpp"

#include <algorithm>
#include <mutex>

#include "ttid/algebra/upoly.hpp"

namespace ttid {

ProjPoint::ProjPoint(const FieldElement& a, const FieldElement& b) {
  if (b.is_zero()) {
    if (a.is_zero()) throw InvalidArgument("[0:0] is not a projective point");
    a_ = FieldElement(1);
    b_ = FieldElement();
  } else {
    a_ = a / b;
    b_ = FieldElement(1);
  }
}

const FieldElement& ProjPoint::coordinate() const {
  if (at_infinity()) throw InvalidArgument("[1:0] has no affine coordinate");
  return a_;
}

std::string ProjPoint::str() const {
  if (at_infinity()) return "[1:0]";
  return "[" + a_.str() + ":1]";
}

namespace {

std::mutex split_mu;
std::map<std::uint64_t, std::pair<Coeffs, Coeffs>>& split_table() {
  static std::map<std::uint64_t, std::pair<Coeffs, Coeffs>> t;
  return t;
}

LevelPtr coefficient_level(const Coeffs& p) {
  LevelPtr l;
  for (const auto& c : p) l = deeper_level(l, c.level());
  return l;
}

void collect(const Coeffs& g0, int mult, std::vector<RootFamily>& out) {
  Coeffs g = poly::monic(g0);
  int deg = poly::degree(g);
  if (deg <= 0) return;
  auto push_single = [&](const FieldElement& r) {
    RootFamily f;
    f.point = ProjPoint::affine(r);
    f.multiplicity = mult;
    f.factor = {-r, FieldElement(1)};
    out.push_back(std::move(f));
  };
  if (deg == 1) {
    push_single(-g[0]);
    return;
  }
  if (g[0].is_zero()) {
    push_single(FieldElement());
    collect(poly::quo(g, {FieldElement(), FieldElement(1)}), mult, out);
    return;
  }
  if (has_rational_coefficients(g)) {
    auto rr = rational_roots_of(g);
    if (!rr.empty()) {
      for (const auto& q : rr) {
        push_single(FieldElement(q));
        g = poly::quo(g, {FieldElement(-q), FieldElement(1)});
      }
      collect(g, mult, out);
      return;
    }
  }
  if (deg == 2) {
    FieldElement disc = g[1] * g[1] - FieldElement(4) * g[0];
    if (auto sq = sqrt_exact(disc)) {
      FieldElement half = FieldElement::fraction(1, 2);
      push_single((-g[1] + *sq) * half);
      push_single((-g[1] - *sq) * half);
      return;
    }
  }
  LevelPtr level = adjoin_algebraic(coefficient_level(g), g);
  if (auto split = known_split(level)) {
    collect(split->first, mult, out);
    collect(split->second, mult, out);
    return;
  }
  RootFamily f;
  f.point = ProjPoint::affine(FieldElement::generator(level));
  f.multiplicity = mult;
  f.factor = level->modulus();
  f.level = level;
  out.push_back(std::move(f));
}

}  // namespace

void record_split(const ZeroDivisorSplit& split) {
  std::lock_guard<std::mutex> lock(split_mu);
  split_table()[split.level()->id()] = {split.factor(), split.cofactor()};
}

std::optional<std::pair<Coeffs, Coeffs>> known_split(const LevelPtr& level) {
  std::lock_guard<std::mutex> lock(split_mu);
  auto it = split_table().find(level->id());
  if (it == split_table().end()) return std::nullopt;
  return it->second;
}

void sort_families(std::vector<RootFamily>& families) {
  std::stable_sort(families.begin(), families.end(), [](const RootFamily& a, const RootFamily& b) {
    if (a.factor_degree() != b.factor_degree()) return a.factor_degree() < b.factor_degree();
    return a.point.str() < b.point.str();
  });
}

std::vector<RootFamily> root_decompose(const Coeffs& p) {
  std::vector<RootFamily> out;
  for (const auto& [f, mult] : squarefree_decomposition(p)) collect(f, mult, out);
  sort_families(out);
  return out;
}

std::vector<RootFamily> root_decompose(const Jet2& h, int d) {
  Coeffs c = homogeneous_to_univariate(h, d);
  c.resize(d + 1);
  int mu = 0;
  while (mu <= d && c[mu].is_zero()) ++mu;
  if (mu > d) throw InvalidArgument("root_decompose of the zero polynomial");
  std::vector<RootFamily> out;
  if (mu > 0) {
    RootFamily inf;
    inf.point = ProjPoint::infinity();
    inf.multiplicity = mu;
    out.push_back(std::move(inf));
  }
  // p(s) = h(s, 1) = sum c_j s^(d-j)
  Coeffs p(d - mu + 1);
  for (int j = mu; j <= d; ++j) p[d - j] = c[j];
  auto affine = root_decompose(p);
  out.insert(out.end(), affine.begin(), affine.end());
  sort_families(out);
  return out;
}

}  // namespace ttid
