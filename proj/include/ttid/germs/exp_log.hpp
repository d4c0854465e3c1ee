#pragma once

#include "ttid/germs/diffeo.hpp"

namespace ttid {

// Time-one map of X, certified to degree N.  Needs order(X) >= 2.
Diffeo exp(const VectorField& X, int N);
std::pair<Jet2, Jet2> exp_jets(const VectorField& X, int N);

// Infinitesimal generator of a tangent to the identity germ, to degree N.
VectorField log(const Diffeo& F, int N);
VectorField log_jets(const std::pair<Jet2, Jet2>& F, int N);

}  // namespace ttid
