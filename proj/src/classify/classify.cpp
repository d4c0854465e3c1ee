#include "ttid/classify/classify.hpp"

#include <json.hpp>

#include "ttid/algebra/residue.hpp"
#include "ttid/germs/exp_log.hpp"

namespace ttid {

namespace {

const ProjPoint kVerticalDir(FieldElement(0), FieldElement(1));

bool vanishes(const Series1& s) {
  for (const auto& c : s.c)
    if (!c.is_zero()) return false;
  return true;
}

int axis_power(Jet2 g, Axis axis) {
  if (g.terms().empty()) return 0;
  int n = 0;
  for (;;) {
    try {
      g = axis == Axis::X ? g.divide_monomial(1, 0) : g.divide_monomial(0, 1);
      ++n;
    } catch (const NotDivisible&) {
      return n;
    }
  }
}

void check_input(const Diffeo& F) {
  if (!F.exact()) throw InvalidArgument("classification needs an exact map");
  if (!F.tangent_to_identity()) throw InvalidArgument("the map is not tangent to the identity");
}

bool tangent_fixed_curve(const FixedCurves& fc, const ProjPoint& v) {
  if (fc.order < 1 || fc.order >= Jet2::kExact) return false;
  return eval_homogeneous(fc.g.homogeneous_part(fc.order), v).is_zero();
}

ClassificationReport base_report(const std::string& mode, const Diffeo& F, const ProjPoint& v, const FixedCurves& fc) {
  ClassificationReport r;
  r.mode = mode;
  r.input = F.str();
  r.direction = v;
  r.k = F.order() - 1;
  r.fixed_factor = fc.g;
  r.isolated_fixed_point = fc.isolated;
  return r;
}

void set_fixed_curve(ClassificationReport& r, const FixedCurves& fc) {
  r.verdict = Verdict::FixedCurve;
  r.tangent_fixed_curve = fc.g;
  r.guaranteed_kind = "fixed curve";
  r.guaranteed_count = 1;
}

int start_order(const Diffeo& F, const ClassifyOptions& o) { return o.order > 0 ? o.order : 4 * F.order(); }

template <class Fn>
ClassificationReport adaptive(const Diffeo& F, const ClassifyOptions& o, Fn&& fn) {
  for (int N = start_order(F, o);; N *= 2) {
    try {
      return fn(N);
    } catch (const InsufficientPrecision&) {
      if (F.kind() == Diffeo::Kind::Generator || 2 * N > o.max_order) throw;
    }
  }
}

// log F divided by the fixed locus with multiplicities
VectorField saturated_generator(const Diffeo& F, const FixedCurves& fc, int N, int* used) {
  VectorField X;
  if (F.kind() == Diffeo::Kind::Generator) {
    X = F.generator();
    *used = 0;
  } else {
    X = log(F, N);
    *used = N;
  }
  return saturate_by(X, fc.raw).field;
}

std::vector<std::string> certificate(const ResolutionTree& tree, int from, const std::vector<SeparatrixDescriptor>& seps) {
  std::vector<std::string> out;
  for (int id : tree.subtree(from)) {
    const ResolutionNode& n = tree.node(id);
    if (!n.leaf() && !n.dicritical) continue;
    std::string line = "n" + std::to_string(id) + " " + n.cls.tag_name() + ":";
    bool any = false;
    for (const auto& s : seps)
      if (s.node == id) {
        line += (any ? "; " : " ") + s.str();
        any = true;
      }
    if (!any) line += " no separatrix";
    out.push_back(line);
  }
  return out;
}

std::optional<int> weak_divisor_saddle_node(const ResolutionTree& tree, int from) {
  for (int id : saddle_nodes(tree, from))
    if (weak_in_divisor(tree.node(id))) return id;
  return std::nullopt;
}

void set_domains(ClassificationReport& r, Verdict v, const VivasShape& shape) {
  r.verdict = v;
  r.shape = shape;
  r.parabolic_curve_guaranteed = true;
  r.foliated = true;
  r.guaranteed_kind = "parabolic domains";
  r.guaranteed_count = shape.r * shape.p;
}

ResolutionTree resolve_generator(const VectorField& Xbar, const ResolveOptions& ro) {
  try {
    return resolve(Xbar, ro);
  } catch (const DepthExceeded& e) {
    throw CertificateIncomplete(std::string("resolution did not finish: ") + e.what());
  }
}

SeparatrixDescriptor integral_curve(const VectorField& Xbar) {
  SeparatrixDescriptor s;
  s.node = 0;
  s.direction = ProjPoint(Xbar.a.coeff(0, 0), Xbar.b.coeff(0, 0));
  return s;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FixedCurve:
      return "FixedCurve";
    case Verdict::SeparatrixCase:
      return "SeparatrixCase";
    case Verdict::PureDomainCase:
      return "PureDomainCase";
    case Verdict::AbateCurves:
      return "AbateCurves";
    case Verdict::AbateDomains:
      return "AbateDomains";
  }
  return {};
}

VivasShape vivas_shape(const ResolutionNode& leaf) {
  if (leaf.cls.tag != SingularityClass::Tag::ReducedSaddleNode) throw ShapeMismatch("leaf is not a saddle-node");
  VivasShape s;
  s.node = leaf.id;
  ProjPoint w = weak_direction(leaf.field);
  VectorField V = leaf.field;
  s.r = leaf.mult_x;
  s.m = leaf.mult_y;
  if (w == ProjPoint::infinity()) {
    V = V.swapped();
    s.swapped = true;
    std::swap(s.r, s.m);
  } else if (w != kVerticalDir) {
    throw ShapeMismatch("weak separatrix is not tangent to a coordinate axis");
  }
  if (!vanishes(restrict_to_y_axis(V.a))) throw ShapeMismatch("weak separatrix is not the axis z = 0");
  s.a = V.a.coeff(1, 0);
  s.b = V.b.coeff(1, 0);
  Series1 h = restrict_to_y_axis(V.b);
  int o = series_order(h);
  s.p = o - 1;
  s.c = h.at(o);
  if (s.a.is_zero() || s.p < 1) throw ShapeMismatch("saddle-node does not have the expected normal shape");
  return s;
}

ClassificationReport classify_direction(const Diffeo& F, const ProjPoint& v, const ClassifyOptions& opts) {
  check_input(F);
  if (!is_characteristic(F, v)) throw NotCharacteristic("direction " + v.str() + " is not characteristic");
  FixedCurves fc = fixed_curves(F);
  ClassificationReport base = base_report("direction", F, v, fc);
  if (tangent_fixed_curve(fc, v)) {
    set_fixed_curve(base, fc);
    return base;
  }
  return adaptive(F, opts, [&](int N) {
    ClassificationReport r = base;
    VectorField Xbar = saturated_generator(F, fc, N, &r.generator_order);
    r.parabolic_curve_guaranteed = true;
    r.guaranteed_kind = "invariant sets";
    r.guaranteed_count = r.k;
    r.verdict = Verdict::SeparatrixCase;
    if (Xbar.order() == 0) {
      r.separatrix = integral_curve(Xbar);
      r.notes.push_back("the saturated generator is non-singular; its integral curve is a separatrix");
      return r;
    }
    ResolveOptions ro;
    ro.max_depth = opts.max_depth;
    ro.factor = fc.raw;
    ro.blow_up_root = true;
    r.tree = resolve_generator(Xbar, ro);
    if (r.tree.root().dicritical) {
      SeparatrixDescriptor s;
      s.node = 0;
      s.infinite = true;
      r.separatrix = s;
      r.notes.push_back("the generator is dicritical");
      return r;
    }
    r.indices = divisor_index_table(r.tree);
    int q = r.tree.child_at(0, v);
    if (q < 0) throw CertificateIncomplete("the point over " + v.str() + " is not singular for the saturated generator");
    r.point_node = q;
    auto seps = enumerate_separatrices(r.tree, q);
    r.certificate = certificate(r.tree, q, seps);
    for (const auto& s : seps)
      if (!s.in_divisor) {
        r.separatrix = s;
        return r;
      }
    auto sn = weak_divisor_saddle_node(r.tree, q);
    if (!sn) throw CertificateIncomplete("no saddle-node with weak separatrix in the divisor below n" + std::to_string(q));
    set_domains(r, Verdict::PureDomainCase, vivas_shape(r.tree.node(*sn)));
    return r;
  });
}

ClassificationReport classify_abate(const Diffeo& F, const ProjPoint& v, const ClassifyOptions& opts) {
  check_input(F);
  if (!is_characteristic(F, v)) throw NotCharacteristic("direction " + v.str() + " is not characteristic");
  FixedCurves fc = fixed_curves(F);
  ClassificationReport base = base_report("abate", F, v, fc);
  if (tangent_fixed_curve(fc, v)) {
    set_fixed_curve(base, fc);
    return base;
  }
  DivisorPoint p = DivisorPoint::from_direction(v);
  Axis divisor = p.chart == DivisorPoint::Chart::T ? Axis::X : Axis::Y;
  FieldElement iota = residual_index(blow_up_diffeo(F, p), divisor).value;
  if (iota.is_zero()) {
    if (!opts.fallback) throw IndexZero("the residual index along the divisor vanishes at " + v.str());
    ClassificationReport r = classify_direction(F, v, opts);
    r.mode = "abate";
    r.residual_index = iota;
    r.notes.push_back("residual index vanishes; fell back to the main classification");
    return r;
  }
  return adaptive(F, opts, [&](int N) {
    ClassificationReport r = base;
    r.residual_index = iota;
    VectorField Xbar = saturated_generator(F, fc, N, &r.generator_order);
    if (Xbar.order() == 0) {
      r.verdict = Verdict::AbateCurves;
      r.separatrix = integral_curve(Xbar);
      r.parabolic_curve_guaranteed = true;
      r.guaranteed_kind = "parabolic curves";
      r.guaranteed_count = r.k;
      r.notes.push_back("the saturated generator is non-singular; its integral curve is a separatrix");
      return r;
    }
    if (is_dicritical(Xbar)) throw Dicritical("log F is dicritical");
    ResolveOptions ro;
    ro.max_depth = opts.max_depth;
    ro.factor = fc.raw;
    ro.blow_up_root = true;
    r.tree = resolve_generator(Xbar, ro);
    r.indices = divisor_index_table(r.tree);
    int q = r.tree.child_at(0, v);
    if (q < 0) throw CertificateIncomplete("the point over " + v.str() + " is not singular for the saturated generator");
    r.point_node = q;
    if (divisor_index(r.tree, q) != iota)
      throw PropertyViolation("residual index disagrees with the divisor index at n" + std::to_string(q));
    auto seps = enumerate_separatrices(r.tree, q);
    r.certificate = certificate(r.tree, q, seps);
    for (const auto& s : seps)
      if (!s.in_divisor && (s.infinite || s.strength == SeparatrixDescriptor::Strength::Strong)) {
        r.verdict = Verdict::AbateCurves;
        r.separatrix = s;
        r.parabolic_curve_guaranteed = true;
        r.guaranteed_kind = "parabolic curves";
        r.guaranteed_count = r.k;
        return r;
      }
    if (second_type(r.tree, q)) throw PropertyViolation("second-type transform with non-vanishing divisor index");
    auto sn = weak_divisor_saddle_node(r.tree, q);
    set_domains(r, Verdict::AbateDomains, vivas_shape(r.tree.node(*sn)));
    return r;
  });
}

ClassificationReport classify_along_divisor(const Diffeo& Fp, Axis divisor, const ClassifyOptions& opts) {
  check_input(Fp);
  FixedCurves fc = fixed_curves(Fp);
  Jet2 rest;
  try {
    rest = divisor == Axis::X ? fc.g.divide_monomial(1, 0) : fc.g.divide_monomial(0, 1);
  } catch (const NotDivisible&) {
    throw InvalidArgument("the divisor is not fixed pointwise");
  }
  if (!rest.terms().empty() && rest.order() >= 1) throw CornerPoint("another fixed curve passes through the point");
  ProjPoint along = divisor == Axis::X ? kVerticalDir : ProjPoint::infinity();
  ClassificationReport base = base_report("divisor", Fp, along, fc);
  return adaptive(Fp, opts, [&](int N) {
    ClassificationReport r = base;
    VectorField Xbar = saturated_generator(Fp, fc, N, &r.generator_order);
    Series1 normal = divisor == Axis::X ? restrict_to_y_axis(Xbar.a) : restrict_to_x_axis(Xbar.b);
    if (!vanishes(normal)) throw NotTangential();
    if (Xbar.order() == 0) throw InvalidArgument("the point is not singular for the saturated generator");
    ResolveOptions ro;
    ro.max_depth = opts.max_depth;
    ro.div_x = divisor == Axis::X;
    ro.div_y = divisor == Axis::Y;
    ro.mult_x = axis_power(fc.raw, Axis::X);
    ro.mult_y = axis_power(fc.raw, Axis::Y);
    r.tree = resolve_generator(Xbar, ro);
    r.point_node = 0;
    r.indices = divisor_index_table(r.tree);
    auto seps = enumerate_separatrices(r.tree, 0);
    r.certificate = certificate(r.tree, 0, seps);
    for (const auto& s : seps)
      if (!s.in_divisor) {
        r.verdict = Verdict::SeparatrixCase;
        r.separatrix = s;
        r.parabolic_curve_guaranteed = true;
        r.guaranteed_kind = "invariant sets";
        r.guaranteed_count = r.k;
        return r;
      }
    auto sn = weak_divisor_saddle_node(r.tree, 0);
    if (!sn) throw CertificateIncomplete("no saddle-node with weak separatrix in the divisor");
    set_domains(r, Verdict::PureDomainCase, vivas_shape(r.tree.node(*sn)));
    return r;
  });
}

std::string to_json(const ClassificationReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema"] = 1;
  j["report"] = "classification";
  j["mode"] = r.mode;
  j["input"] = r.input;
  j["direction"] = r.direction.str();
  j["k"] = r.k;
  j["verdict"] = verdict_name(r.verdict);
  j["parabolic_curve_guaranteed"] = r.parabolic_curve_guaranteed;
  j["foliated_by_parabolic_curves"] = r.foliated;
  j["guaranteed"] = {{"kind", r.guaranteed_kind}, {"count", r.guaranteed_count}};
  j["fixed_locus"] = {{"gcd", r.fixed_factor.str()}, {"isolated_fixed_point", r.isolated_fixed_point}};
  json ev = json::object();
  if (r.tangent_fixed_curve) ev["fixed_curve"] = r.tangent_fixed_curve->str();
  if (r.point_node >= 0) ev["point_node"] = r.point_node;
  if (r.separatrix) {
    const auto& s = *r.separatrix;
    ev["separatrix"] = {{"node", s.node},
                        {"direction", s.direction.str()},
                        {"kind", s.kind == SeparatrixDescriptor::Kind::Strict ? "strict" : "non-strict"},
                        {"strength", s.strength == SeparatrixDescriptor::Strength::Strong ? "strong" : "weak"},
                        {"in_divisor", s.in_divisor},
                        {"infinite", s.infinite},
                        {"smooth", s.smooth},
                        {"text", s.str()}};
  }
  if (r.shape) {
    const auto& s = *r.shape;
    ev["saddle_node"] = {{"node", s.node},      {"weak_in_divisor", true}, {"swapped", s.swapped},
                         {"r", s.r},            {"m", s.m},                {"p", s.p},
                         {"a", s.a.str()},      {"b", s.b.str()},          {"c", s.c.str()}};
  }
  ev["certificate"] = r.certificate;
  j["evidence"] = ev;
  json idx = json::array();
  for (const auto& e : r.indices)
    idx.push_back({{"node", e.node}, {"point", e.point}, {"factor", e.factor}, {"weight", e.weight}, {"index", e.value.str()}});
  j["indices"] = idx;
  if (r.residual_index) j["residual_index"] = r.residual_index->str();
  j["generator_order"] = r.generator_order;
  if (!r.tree.nodes.empty()) j["tree"] = json::parse(to_json(r.tree));
  j["notes"] = r.notes;
  return j.dump(2);
}

GeneratorResolution resolve_map(const Diffeo& F, const ClassifyOptions& opts) {
  check_input(F);
  FixedCurves fc = fixed_curves(F);
  for (int N = start_order(F, opts);; N *= 2) {
    try {
      GeneratorResolution g;
      g.Xbar = saturated_generator(F, fc, N, &g.order);
      ResolveOptions ro;
      ro.max_depth = opts.max_depth;
      ro.factor = fc.raw;
      g.tree = resolve(g.Xbar, ro);
      return g;
    } catch (const InsufficientPrecision&) {
      if (F.kind() == Diffeo::Kind::Generator || 2 * N > opts.max_order) throw;
    }
  }
}

}  // namespace ttid
