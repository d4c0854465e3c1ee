#include "ttid/blowup/resolution.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace ttid {

namespace {

const ProjPoint kVertical(FieldElement(0), FieldElement(1));  // the axis x = 0
const ProjPoint kHorizontal = ProjPoint::infinity();           // the axis y = 0

ProjPoint newest_axis(const ResolutionNode& n) { return n.newest == 'x' ? kVertical : kHorizontal; }

// Restriction of the child field to its new divisor, compared with P_X.
bool restriction_matches(const Jet2& tangency, int d, const DivisorPoint& dp, const VectorField& child) {
  Coeffs c = homogeneous_to_univariate(tangency, d);
  c.resize(d + 1);
  Coeffs expected(d + 1);
  const Jet2* comp;
  bool t_chart = dp.chart == DivisorPoint::Chart::T;
  if (t_chart) {
    for (int j = 0; j <= d; ++j) expected[j] = c[j];
    comp = &child.b;
  } else {
    for (int i = 0; i <= d; ++i) expected[i] = -c[d - i];
    comp = &child.a;
  }
  poly::trim(expected);
  expected = poly::taylor_shift(expected, dp.coordinate);
  int top = std::min(comp->prec(), d + 1);
  for (int k = 0; k <= top; ++k) {
    FieldElement have = t_chart ? comp->coeff(0, k) : comp->coeff(k, 0);
    FieldElement want = k < static_cast<int>(expected.size()) ? expected[k] : FieldElement();
    if (!(have - want).is_zero()) return false;
  }
  return true;
}

int exact_order(const Jet2& f) {
  int o = f.order();
  if (o >= Jet2::kExact) throw InvalidArgument("zero singular factor");
  return o;
}

ResolutionTree build(const VectorField& Xbar, const ResolveOptions& opts) {
  ResolutionTree tree;
  tree.max_depth = opts.max_depth;
  ResolutionNode root;
  root.field = Xbar;
  root.div_x = opts.div_x;
  root.div_y = opts.div_y;
  root.mult_x = opts.mult_x;
  root.mult_y = opts.mult_y;
  root.factor = opts.factor;
  tree.nodes.push_back(root);

  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    ResolutionNode n = tree.nodes[i];
    n.order = n.field.order();
    n.cls = classify_singularity(n.field);
    if (n.order == 0 || (n.cls.reduced() && !(i == 0 && opts.blow_up_root))) {
      tree.nodes[i] = n;
      continue;
    }
    if (n.depth >= opts.max_depth)
      throw DepthExceeded("resolution did not finish within depth " + std::to_string(opts.max_depth));
    int nu = n.order;
    n.blown_up = true;
    n.dicritical = is_dicritical(n.field);
    std::vector<RootFamily> families;
    if (!n.dicritical) {
      n.tangency = tangency_polynomial(n.field, nu);
      n.tangency_degree = nu + 1;
      families = root_decompose(n.tangency, nu + 1);
    } else {
      if (n.field.prec() < nu + 1) throw InsufficientPrecision("dicritical node needs the next jet");
      Jet2 h = n.field.a.homogeneous_part(nu).divide_monomial(1, 0);
      Jet2 p2 = tangency_polynomial(n.field, nu + 1);
      int dg = 0;
      n.tangency = homogeneous_gcd(h, nu - 1, p2, nu + 2, &dg);
      n.tangency_degree = dg;
      if (dg > 0) families = root_decompose(n.tangency, dg);
    }
    int ordf = exact_order(n.factor);
    for (const RootFamily& fam : families) {
      ResolutionNode c;
      c.parent = static_cast<int>(i);
      c.depth = n.depth + 1;
      c.family = fam;
      c.center = DivisorPoint::from_direction(fam.point);
      StrictTransform st = strict_transform(n.field, c.center);
      c.field = st.field;
      c.power = st.power;
      int mult = n.mult_x + n.mult_y + ordf + st.power;
      if (c.center.chart == DivisorPoint::Chart::T) {
        c.div_x = true;
        c.inv_x = !n.dicritical;
        c.mult_x = mult;
        c.div_y = n.div_y;
        c.inv_y = n.inv_y;
        c.mult_y = n.mult_y;
        c.newest = 'x';
        c.factor = chart_t_substitute(n.factor, c.center.coordinate, ordf);
      } else {
        bool at_zero = c.center.coordinate.is_zero();
        c.div_y = true;
        c.inv_y = !n.dicritical;
        c.mult_y = mult;
        c.div_x = at_zero && n.div_x;
        c.inv_x = at_zero ? n.inv_x : true;
        c.mult_x = at_zero ? n.mult_x : 0;
        c.newest = 'y';
        c.factor = chart_s_substitute(n.factor, c.center.coordinate, ordf);
      }
      c.center.corner = c.corner();
      if (!n.dicritical) c.restriction_ok = restriction_matches(n.tangency, nu + 1, c.center, c.field);
      c.id = static_cast<int>(tree.nodes.size());
      n.children.push_back(c.id);
      tree.nodes.push_back(std::move(c));
    }
    tree.nodes[i] = n;
  }
  return tree;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

int ResolutionTree::multiplicity(int id, int from) const {
  int m = 1;
  for (int k = id; k != from && k >= 0; k = nodes[k].parent) m *= nodes[k].weight();
  return m;
}

std::vector<int> ResolutionTree::subtree(int from) const {
  std::vector<int> out;
  for (const auto& n : nodes) {
    int k = n.id;
    while (k >= 0 && k != from) k = nodes[k].parent;
    if (k == from) out.push_back(n.id);
  }
  return out;
}

int ResolutionTree::child_at(int parent, const ProjPoint& direction) const {
  for (int c : nodes.at(parent).children)
    if (nodes[c].center.direction() == direction) return c;
  return -1;
}

int ResolutionTree::depth_reached() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

ResolutionTree resolve(const VectorField& Xbar, const ResolveOptions& opts) {
  return with_dynamic_evaluation([&] { return build(Xbar, opts); });
}

ResolutionTree resolve_field(const VectorField& X, int max_depth) {
  Saturation s = saturate(X);
  ResolveOptions opts;
  opts.max_depth = max_depth;
  opts.factor = s.f;
  return resolve(s.field, opts);
}

std::string SeparatrixDescriptor::str() const {
  std::ostringstream os;
  os << (infinite ? "infinitely many" : std::to_string(count)) << " "
     << (kind == Kind::Strict ? "strict" : "non-strict") << " "
     << (strength == Strength::Strong ? "strong" : "weak") << " at n" << node << " tangent " << direction.str();
  if (in_divisor) os << " (divisor)";
  if (fixed) os << " fixed";
  if (!smooth) os << " singular";
  return os.str();
}

std::vector<SeparatrixDescriptor> enumerate_separatrices(const ResolutionTree& tree, int from) {
  std::vector<SeparatrixDescriptor> out;
  const ResolutionNode& top = tree.node(from);

  auto path_smooth = [&](int id) {
    for (int k = id; k != from; k = tree.node(k).parent) {
      const ResolutionNode& q = tree.node(k);
      if (q.depth - top.depth >= 2 && q.center.direction() == newest_axis(tree.node(q.parent))) return false;
    }
    return true;
  };
  auto first_level = [&](int id) {
    int k = id;
    if (k == from) return -1;
    while (tree.node(k).parent != from) k = tree.node(k).parent;
    return k;
  };
  auto on_divisor = [](const ResolutionNode& n, const ProjPoint& v, bool* fixed) {
    if (v == kVertical && n.div_x && n.inv_x) {
      *fixed = n.mult_x > 0;
      return true;
    }
    if (v == kHorizontal && n.div_y && n.inv_y) {
      *fixed = n.mult_y > 0;
      return true;
    }
    *fixed = false;
    return false;
  };

  // components of the singular locus through the studied point
  if (top.factor.order() >= 1 && top.factor.order() < Jet2::kExact) {
    int o = top.factor.order();
    bool strict = false;
    if (top.field.exact()) {
      try {
        Jet2 xg = top.field.apply(top.factor, Jet2::kExact);
        xg.divide_exact(top.factor);
        strict = true;
      } catch (const NotDivisible&) {
      }
    }
    for (const RootFamily& fam : root_decompose(top.factor.homogeneous_part(o), o)) {
      SeparatrixDescriptor s;
      s.node = from;
      s.direction = fam.point;
      s.kind = strict ? SeparatrixDescriptor::Kind::Strict : SeparatrixDescriptor::Kind::NonStrict;
      s.fixed = true;
      s.smooth = o == 1;
      s.count = fam.factor_degree();
      s.tangent_spread = fam.factor_degree();
      out.push_back(s);
    }
  }

  for (int id : tree.subtree(from)) {
    const ResolutionNode& n = tree.node(id);
    int rel = n.depth - top.depth;
    int mult = tree.multiplicity(id, from);
    int tn = first_level(id);
    int spread = tn >= 0 ? tree.node(tn).weight() : 1;
    bool psmooth = path_smooth(id);
    if (n.dicritical) {
      SeparatrixDescriptor s;
      s.node = id;
      s.infinite = true;
      s.count = mult;
      s.smooth = psmooth;
      s.tangent_node = tn;
      s.tangent_spread = spread;
      out.push_back(s);
      continue;
    }
    if (!n.leaf()) continue;
    if (n.cls.tag == SingularityClass::Tag::NonSingular) {
      SeparatrixDescriptor s;
      s.node = id;
      bool fixed = false;
      if (on_divisor(n, kVertical, &fixed)) {
        s.direction = kVertical;
        s.in_divisor = true;
      } else if (on_divisor(n, kHorizontal, &fixed)) {
        s.direction = kHorizontal;
        s.in_divisor = true;
      } else {
        s.direction = ProjPoint(n.field.a.coeff(0, 0), n.field.b.coeff(0, 0));
      }
      s.fixed = fixed;
      s.count = mult;
      s.smooth = psmooth && !(rel >= 1 && !s.in_divisor && s.direction == newest_axis(n));
      s.tangent_node = tn;
      s.tangent_spread = spread;
      out.push_back(s);
      continue;
    }
    FieldElement ax = n.field.a.coeff(1, 0), bx = n.field.b.coeff(1, 0), by = n.field.b.coeff(0, 1);
    Jet2 q = tangency_polynomial(n.field.truncated(1), 1);
    for (const RootFamily& fam : root_decompose(q, 2)) {
      SeparatrixDescriptor s;
      s.node = id;
      s.direction = fam.point;
      FieldElement lambda = fam.point.at_infinity() ? ax : bx * fam.point.coordinate() + by;
      s.strength = lambda.is_zero() ? SeparatrixDescriptor::Strength::Weak : SeparatrixDescriptor::Strength::Strong;
      bool fixed = false;
      s.in_divisor = on_divisor(n, fam.point, &fixed);
      s.fixed = fixed;
      s.smooth = psmooth && !(rel >= 1 && !s.in_divisor && fam.point == newest_axis(n));
      s.count = mult * fam.factor_degree();
      s.tangent_node = tn;
      s.tangent_spread = tn >= 0 ? spread : fam.factor_degree();
      out.push_back(s);
    }
  }
  return out;
}

SeparatrixCount count_free_separatrices(const std::vector<SeparatrixDescriptor>& seps) {
  SeparatrixCount c;
  std::map<std::string, std::pair<int, int>> tangents;
  for (const auto& s : seps) {
    if (s.in_divisor || s.kind != SeparatrixDescriptor::Kind::Strict) continue;
    if (s.infinite) {
      c.infinite = true;
      continue;
    }
    c.total += s.count;
    if (s.smooth) c.smooth += s.count;
    std::string key = s.tangent_node >= 0 ? "n" + std::to_string(s.tangent_node) : "root " + s.direction.str();
    auto& [branches, spread] = tangents[key];
    branches += s.count;
    spread = s.tangent_spread;
  }
  for (const auto& [key, bs] : tangents)
    if (bs.first > bs.second) c.pairwise_transverse = false;
  return c;
}

ProjPoint weak_direction(const VectorField& Xbar) {
  FieldElement ax = Xbar.a.coeff(1, 0), ay = Xbar.a.coeff(0, 1);
  if (!ax.is_zero() || !ay.is_zero()) return ProjPoint(-ay, ax);
  return ProjPoint(-Xbar.b.coeff(0, 1), Xbar.b.coeff(1, 0));
}

bool weak_in_divisor(const ResolutionNode& n) {
  if (n.cls.tag != SingularityClass::Tag::ReducedSaddleNode) return false;
  ProjPoint v = weak_direction(n.field);
  return (v == kVertical && n.div_x && n.inv_x) || (v == kHorizontal && n.div_y && n.inv_y);
}

std::vector<int> saddle_nodes(const ResolutionTree& tree, int from) {
  std::vector<int> out;
  for (int id : tree.subtree(from))
    if (tree.node(id).leaf() && tree.node(id).cls.tag == SingularityClass::Tag::ReducedSaddleNode) out.push_back(id);
  return out;
}

bool second_type(const ResolutionTree& tree, int from) {
  for (int id : saddle_nodes(tree, from))
    if (weak_in_divisor(tree.node(id))) return false;
  return true;
}

std::string to_dot(const ResolutionTree& tree) {
  std::ostringstream os;
  os << "digraph resolution {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& n : tree.nodes) {
    std::string label = "n" + std::to_string(n.id);
    label += n.parent < 0 ? " root" : " " + std::string(n.center.chart == DivisorPoint::Chart::T ? "chart_t " : "chart_s ") +
                                          escape(n.center.str());
    if (n.weight() > 1) label += " (x" + std::to_string(n.weight()) + ")";
    if (n.corner()) label += " corner";
    label += "\\n" + n.cls.tag_name();
    if (n.cls.tag != SingularityClass::Tag::NonSingular) label += " " + escape(n.cls.eigen_str());
    if (n.dicritical) label += "\\ndicritical";
    os << "  n" << n.id << " [label=\"" << label << "\"];\n";
  }
  for (const auto& n : tree.nodes)
    for (int c : n.children)
      os << "  n" << n.id << " -> n" << c << " [label=\"" << escape(tree.node(c).family.point.str()) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_json(const ResolutionTree& tree) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["report"] = "tree";
  j["max_depth"] = tree.max_depth;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : tree.nodes) {
    nlohmann::ordered_json o;
    o["id"] = n.id;
    o["parent"] = n.parent;
    o["depth"] = n.depth;
    if (n.parent >= 0) {
      o["chart"] = n.center.chart == DivisorPoint::Chart::T ? "chart_t" : "chart_s";
      o["center"] = n.center.coordinate.str();
      o["direction"] = n.family.point.str();
      o["conjugates"] = n.weight();
      if (n.family.level) o["factor"] = poly::str(n.family.factor, "s");
    }
    o["corner"] = n.corner();
    o["divisor"] = {{"x", n.div_x}, {"y", n.div_y}};
    o["invariant"] = {{"x", n.inv_x}, {"y", n.inv_y}};
    o["multiplicity"] = {{"x", n.mult_x}, {"y", n.mult_y}};
    o["order"] = n.order;
    o["class"] = n.cls.tag_name();
    if (n.cls.tag != SingularityClass::Tag::NonSingular) o["eigenvalues"] = n.cls.eigen_str();
    o["field"] = n.field.str();
    o["blown_up"] = n.blown_up;
    o["dicritical"] = n.dicritical;
    o["restriction_ok"] = n.restriction_ok;
    o["children"] = n.children;
    j["nodes"].push_back(o);
  }
  return j.dump(2);
}

}  // namespace ttid
