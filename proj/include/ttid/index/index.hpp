#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ttid/algebra/residue.hpp"
#include "ttid/blowup/resolution.hpp"

namespace ttid {

// S = (y) or S = (x).
enum class Axis { Y, X };

struct IndexValue {
  FieldElement value;
  std::string separatrix;  // description of the curve
  std::string field;
};

// CS(X, S) for a coordinate axis.  Factors of X vanishing on S are removed
// first; S must be invariant.
IndexValue cs_index(const VectorField& X, Axis axis, int factor_power = -1);
// CS(X, S) for S = {y = psi(x)}, psi(0) = 0.
IndexValue cs_index_graph(const VectorField& X, const Series1& psi);

// Parametrized smooth curve (x(tau), y(tau)).
struct Branch {
  Series1 x, y;
};
// Formal separatrix of a reduced field tangent to the eigendirection v, up to order K.
Branch separatrix_branch(const VectorField& Xbar, const ProjPoint& v, int K);
// Image of a branch at node `id` in the coordinates of its ancestor `to`.
Branch push_down(const ResolutionTree& tree, int id, int to, Branch b);
IndexValue cs_index_branch(const VectorField& X, const Branch& b);
// CS at the ancestor `to` of the formal separatrix of the reduced leaf tangent
// to v; the branch order is raised until the residue is certified.
IndexValue separatrix_index(const ResolutionTree& tree, int leaf, const ProjPoint& v, int to);

// CS of the child transforms along the divisor created at `node`, summed over
// all its points (conjugate families through traces).  Non-dicritical nodes only.
FieldElement divisor_index_sum(const ResolutionTree& tree, int node);
// CS(X_q, D) for a child q of `node`, in the child's field.
FieldElement divisor_index(const ResolutionTree& tree, int child);

struct IndexTableEntry {
  int node = 0;   // blown-up node
  int child = 0;  // divisor point
  std::string point, factor;
  int weight = 1;
  FieldElement value;
};
// CS(X_q, D) for every point q of every invariant divisor of the tree.
std::vector<IndexTableEntry> divisor_index_table(const ResolutionTree& tree);

// iota(F, S) = CS(log F, S) with the generator computed adaptively.
IndexValue residual_index(const Diffeo& F, Axis axis, int start_order = 0);

struct PropertyCheck {
  std::string property;
  int node = -1;
  std::string expected, got;
  bool ok = true;
};

struct IndexReport {
  std::vector<PropertyCheck> checks;
  bool ok() const;
};

// Camacho-Sad properties over a resolution tree: integral curves, blow-up
// decrement along free branches, divisor sums, reduced-leaf rules.
IndexReport validate_index_properties(const ResolutionTree& tree, bool throw_on_failure = false);

// Series helpers.
Series1 series_mul(const Series1& a, const Series1& b);
Series1 series_compose(const Series1& a, const Series1& b);
Series1 series_reverse(const Series1& a, int K);
Series1 series_derivative(const Series1& a);
Series1 eval_on_branch(const Jet2& j, const Series1& x, const Series1& y);
int series_order(const Series1& a);

}  // namespace ttid
