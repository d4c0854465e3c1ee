#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttid/algebra/jet.hpp"

namespace ttid {

// Point [a:b] of the projective line, normalized to [a:1] or [1:0].
class ProjPoint {
 public:
  ProjPoint() : a_(1), b_(0) {}
  ProjPoint(const FieldElement& a, const FieldElement& b);
  static ProjPoint infinity() { return ProjPoint(); }
  static ProjPoint affine(const FieldElement& s) { return ProjPoint(s, FieldElement(1)); }

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  bool at_infinity() const { return b_.rep_is_zero(); }
  // Affine coordinate s with [s:1]; throws for [1:0].
  const FieldElement& coordinate() const;
  LevelPtr level() const { return deeper_level(a_.level(), b_.level()); }

  bool operator==(const ProjPoint& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  std::string str() const;

 private:
  FieldElement a_, b_;
};

// One Galois family of roots.  When `level` is set the point's coordinate is
// the generator of `level`, and the family stands for every root of `factor`.
struct RootFamily {
  ProjPoint point;
  int multiplicity = 1;
  Coeffs factor;  // monic defining factor over the base; {-s0, 1} for single roots, empty for [1:0]
  LevelPtr level;
  int factor_degree() const { return factor.empty() ? 1 : poly::degree(factor); }
};

// Linear-factor decomposition of a nonzero homogeneous polynomial of degree d.
std::vector<RootFamily> root_decompose(const Jet2& h, int d);
// Affine roots of a univariate polynomial, in the same format.
std::vector<RootFamily> root_decompose(const Coeffs& p);

void sort_families(std::vector<RootFamily>& families);

// Dynamic evaluation bookkeeping.  Splits discovered at a level are recorded;
// later decompositions that would adjoin that level use the two factors
// instead.  Process-wide and thread-safe.
void record_split(const ZeroDivisorSplit& split);
std::optional<std::pair<Coeffs, Coeffs>> known_split(const LevelPtr& level);

// Re-run `fn` until it completes without meeting a zero divisor.
template <class Fn>
auto with_dynamic_evaluation(Fn&& fn, int max_splits = 64) -> decltype(fn()) {
  for (int attempt = 0;; ++attempt) {
    try {
      return fn();
    } catch (const ZeroDivisorSplit& split) {
      if (attempt >= max_splits) throw;
      record_split(split);
    }
  }
}

}  // namespace ttid
