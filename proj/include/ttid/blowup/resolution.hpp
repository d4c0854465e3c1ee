#pragma once

#include <string>
#include <vector>

#include "ttid/blowup/blowup.hpp"

namespace ttid {

struct ResolutionNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  DivisorPoint center;  // position on the parent's new divisor
  RootFamily family;    // root family of the parent's divisor restriction; degree = conjugate copies
  VectorField field;    // saturated transform, centered at the point
  int power = 0;        // chart-factor exponent divided out at this node
  // Local axes lying in the exceptional divisor, whether they are invariant,
  // and their multiplicity in the singular locus of the total transform.
  bool div_x = false, div_y = false;
  bool inv_x = true, inv_y = true;
  int mult_x = 0, mult_y = 0;
  char newest = 0;  // axis created by the last blow-up: 'x', 'y', or 0 at the root
  Jet2 factor;      // strict transform of the singular factor of the root field
  int order = 0;
  SingularityClass cls;
  bool blown_up = false;
  bool dicritical = false;  // the divisor created by blowing up this node is not invariant
  Jet2 tangency;            // P_X (or the dicritical gcd) of a blown-up node
  int tangency_degree = 0;
  bool restriction_ok = true;  // divisor restriction agrees with the parent's P_X
  std::vector<int> children;

  bool corner() const { return div_x && div_y; }
  bool leaf() const { return !blown_up; }
  int weight() const { return family.factor_degree(); }
};

struct ResolveOptions {
  int max_depth = 16;
  bool div_x = false, div_y = false;  // root axes already in the divisor
  int mult_x = 0, mult_y = 0;
  Jet2 factor = Jet2::constant(FieldElement(1));
  bool blow_up_root = false;  // blow up a reduced singular root as well
};

struct ResolutionTree {
  std::vector<ResolutionNode> nodes;
  int max_depth = 16;

  const ResolutionNode& root() const { return nodes.front(); }
  const ResolutionNode& node(int id) const { return nodes.at(id); }
  // Product of the family degrees from `from` (exclusive) down to `id`.
  int multiplicity(int id, int from = 0) const;
  // Nodes of the subtree at `from`, in discovery order.
  std::vector<int> subtree(int from) const;
  int child_at(int parent, const ProjPoint& direction) const;
  int depth_reached() const;
};

// Resolution of a saturated singular field (restarted on zero-divisor splits).
ResolutionTree resolve(const VectorField& Xbar, const ResolveOptions& opts = {});
// Saturate, then resolve; the saturating factor is tracked as opts.factor.
ResolutionTree resolve_field(const VectorField& X, int max_depth = 16);

struct SeparatrixDescriptor {
  enum class Kind { Strict, NonStrict };
  enum class Strength { Strong, Weak };
  int node = 0;  // leaf (or dicritical node) carrying the branch
  ProjPoint direction;  // tangent direction in the leaf's coordinates
  Kind kind = Kind::Strict;
  Strength strength = Strength::Strong;
  bool fixed = false;
  bool in_divisor = false;
  bool smooth = true;
  bool infinite = false;  // a dicritical component: infinitely many branches
  int count = 1;          // number of conjugate branches described
  int tangent_node = -1;  // first-level node of the path, -1 at the root
  int tangent_spread = 1; // number of distinct tangents the conjugates occupy

  std::string str() const;
};

// Separatrices of the transform at node `from` (0 = the whole field).
std::vector<SeparatrixDescriptor> enumerate_separatrices(const ResolutionTree& tree, int from = 0);

struct SeparatrixCount {
  bool infinite = false;
  int total = 0;      // free branches (not contained in the divisor)
  int smooth = 0;
  bool pairwise_transverse = true;
};
SeparatrixCount count_free_separatrices(const std::vector<SeparatrixDescriptor>& seps);

// Weak direction of a saddle-node (kernel of the linear part).
ProjPoint weak_direction(const VectorField& Xbar);
bool weak_in_divisor(const ResolutionNode& n);

std::vector<int> saddle_nodes(const ResolutionTree& tree, int from = 0);
inline bool contains_saddle_node(const ResolutionTree& tree, int from = 0) { return !saddle_nodes(tree, from).empty(); }
bool second_type(const ResolutionTree& tree, int from = 0);

std::string to_dot(const ResolutionTree& tree);
std::string to_json(const ResolutionTree& tree);

}  // namespace ttid
