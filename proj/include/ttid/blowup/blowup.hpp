#pragma once

#include <optional>
#include <string>

#include "ttid/algebra/roots.hpp"
#include "ttid/germs/diffeo.hpp"

namespace ttid {

// A point of the exceptional divisor of the blow-up at the origin.
//   chart_t: (x, t) -> (x, (t + t0) x), used for [1:0] (t0 = 0)
//   chart_s: (s, y) -> ((s + s0) y, y), used for every [s0:1]
struct DivisorPoint {
  enum class Chart { T, S };
  Chart chart = Chart::T;
  FieldElement coordinate;
  bool corner = false;

  static DivisorPoint from_direction(const ProjPoint& v);
  static DivisorPoint chart_t(const FieldElement& t0) { return {Chart::T, t0, false}; }
  static DivisorPoint chart_s(const FieldElement& s0) { return {Chart::S, s0, false}; }
  ProjPoint direction() const;
  std::string str() const;
};

// P(x, (t + t0) x) / x^shift.  A jet certified to degree P gives a result
// certified to degree P - shift.
Jet2 chart_t_substitute(const Jet2& p, const FieldElement& t0, int shift);
// Same substitution in chart_s: P((s + s0) y, y) / y^shift, variables (s, y).
Jet2 chart_s_substitute(const Jet2& p, const FieldElement& s0, int shift);

struct Saturation {
  Jet2 f;  // common factor
  VectorField field;
  bool strictly_singular = false;
};

// X = f X-bar.  Exact fields use the bivariate gcd.  For truncated fields the
// factor is certified trivial from the lowest homogeneous parts, otherwise
// InsufficientPrecision is raised (use saturate_by for a known factor).
Saturation saturate(const VectorField& X);
Saturation saturate_by(const VectorField& X, const Jet2& f);

// The transform of X at p (no division by the chart factor).
VectorField blow_up_vf(const VectorField& X, const DivisorPoint& p);

struct StrictTransform {
  VectorField field;
  int power = 0;  // exponent of the chart factor divided out
  bool dicritical = false;
};

// Saturated transform of a saturated singular field: the transform divided by
// the largest power of the chart factor.
StrictTransform strict_transform(const VectorField& Xbar, const DivisorPoint& p);

Diffeo blow_up_diffeo(const Diffeo& F, const DivisorPoint& p);
Diffeo swapped(const Diffeo& F);

struct SingularityClass {
  enum class Tag { NonSingular, ReducedNonDegenerate, ReducedSaddleNode, NotReduced };
  Tag tag = Tag::NonSingular;
  FieldElement trace, det;
  std::optional<FieldElement> lambda1, lambda2;
  bool reduced() const { return tag == Tag::ReducedNonDegenerate || tag == Tag::ReducedSaddleNode; }
  std::string tag_name() const;
  std::string eigen_str() const;
};

SingularityClass classify_singularity(const VectorField& Xbar);

// Common projective roots of two homogeneous polynomials, as a homogeneous
// polynomial of degree *deg (either argument may be zero).
Jet2 homogeneous_gcd(const Jet2& h1, int d1, const Jet2& h2, int d2, int* deg);

}  // namespace ttid
