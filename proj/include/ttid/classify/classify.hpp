#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ttid/germs/directions.hpp"
#include "ttid/index/index.hpp"

namespace ttid {

enum class Verdict { FixedCurve, SeparatrixCase, PureDomainCase, AbateCurves, AbateDomains };
std::string verdict_name(Verdict v);

// Constants of the normal shape
//   X_q = z^r u^m [ z(a + G) dz + (b z + H) du ],  H(0, u) = c u^{p+1} + ...
// at a saddle-node leaf whose weak separatrix {z = 0} lies in the divisor.
struct VivasShape {
  int node = -1;
  bool swapped = false;  // z is the leaf's y coordinate
  int r = 0, m = 0, p = 0;
  FieldElement a, b, c;
};

VivasShape vivas_shape(const ResolutionNode& leaf);

struct ClassifyOptions {
  int max_depth = 16;
  int order = 0;        // first generator order tried (0: 4(k+1))
  int max_order = 512;  // cap of the adaptive generator order
  bool fallback = false;  // classify_abate: run classify_direction when the index vanishes
};

struct ClassificationReport {
  std::string mode;  // "direction", "abate" or "divisor"
  std::string input;
  ProjPoint direction;
  int k = 0;
  Verdict verdict = Verdict::SeparatrixCase;
  bool parabolic_curve_guaranteed = false;
  bool foliated = false;  // domains are claimed to be foliated by parabolic curves
  std::string guaranteed_kind;
  int guaranteed_count = 0;

  Jet2 fixed_factor;  // gcd of F - id (reduced)
  bool isolated_fixed_point = true;
  std::optional<Jet2> tangent_fixed_curve;

  int generator_order = 0;
  ResolutionTree tree;
  int point_node = -1;  // node of the studied point q (or p)
  std::optional<SeparatrixDescriptor> separatrix;  // SeparatrixCase / AbateCurves evidence
  std::optional<VivasShape> shape;                 // domain cases
  std::vector<std::string> certificate;            // leaf dispositions below the studied point
  std::vector<IndexTableEntry> indices;
  std::optional<FieldElement> residual_index;
  std::vector<std::string> notes;
};

ClassificationReport classify_direction(const Diffeo& F, const ProjPoint& v, const ClassifyOptions& opts = {});
ClassificationReport classify_abate(const Diffeo& F, const ProjPoint& v, const ClassifyOptions& opts = {});
// F_p fixes the coordinate axis `divisor` pointwise; the origin is the point studied.
ClassificationReport classify_along_divisor(const Diffeo& Fp, Axis divisor, const ClassifyOptions& opts = {});

std::string to_json(const ClassificationReport& r);

// Resolution of the saturated generator of F (saturated by the fixed locus),
// with the generator order raised as needed.  order is 0 for exact generators.
struct GeneratorResolution {
  VectorField Xbar;
  int order = 0;
  ResolutionTree tree;
};
GeneratorResolution resolve_map(const Diffeo& F, const ClassifyOptions& opts = {});

}  // namespace ttid
