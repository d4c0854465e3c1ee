#pragma once

#include <vector>

#include "ttid/algebra/roots.hpp"
#include "ttid/germs/diffeo.hpp"

namespace ttid {

struct CharDirection {
  RootFamily family;
  bool degenerate = false;
  const ProjPoint& point() const { return family.point; }
};

// x q_{k+1} - y p_{k+1}
Jet2 characteristic_polynomial(const Diffeo& F);
std::vector<CharDirection> characteristic_directions(const Diffeo& F);
bool is_characteristic(const Diffeo& F, const ProjPoint& v);

struct FixedCurves {
  Jet2 g;              // reduced gcd of the components of F - id (normalized)
  Jet2 raw;            // the gcd itself, with multiplicities
  bool isolated = true;  // g does not vanish at the origin
  int order = 0;       // order of g at the origin
  std::vector<RootFamily> tangents;
};

FixedCurves fixed_curves(const Diffeo& F);

// Evaluate a homogeneous polynomial at a projective point representative.
FieldElement eval_homogeneous(const Jet2& h, const ProjPoint& v);

}  // namespace ttid
