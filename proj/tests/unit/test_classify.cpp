#include <doctest.h>

#include <json.hpp>

#include "ttid/classify/classify.hpp"

using namespace ttid;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement::fraction(n, d); }
const Jet2 X = Jet2::var_x(), Y = Jet2::var_y(), ONE = Jet2::constant(FieldElement(1));

Jet2 xpow(int r) {
  Jet2 j = ONE;
  for (int i = 0; i < r; ++i) j = j * X;
  return j;
}

// x^r [x dx + (2y + x^2) dy]
Diffeo curated(int r) { return Diffeo::exp_of(VectorField(xpow(r + 1), xpow(r) * (Y.scaled(q(2)) + X * X))); }

const ProjPoint H = ProjPoint::infinity();
const ProjPoint V(FieldElement(0), FieldElement(1));

}  // namespace

TEST_CASE("fixed curve tangent to the direction") {
  auto r = classify_direction(Diffeo::polynomial(X, Y + X * X), V);
  CHECK(r.verdict == Verdict::FixedCurve);
  CHECK(r.tangent_fixed_curve.has_value());
  CHECK_FALSE(r.isolated_fixed_point);
  CHECK_THROWS_AS(classify_direction(Diffeo::polynomial(X, Y + X * X), H), NotCharacteristic);
}

TEST_CASE("example transform at the three directions") {
  FieldElement c = FieldElement::generator(adjoin_transcendental(nullptr, "c"));
  Diffeo P = Diffeo::polynomial(X + Y.scaled(c) + X * X, Y - Y * Y);
  Diffeo Pq = blow_up_diffeo(P, DivisorPoint::chart_t(FieldElement()));
  auto r = classify_direction(Pq, ProjPoint(-c, FieldElement(1)));
  CHECK(r.verdict != Verdict::FixedCurve);
  CHECK(r.isolated_fixed_point);
  CHECK(r.parabolic_curve_guaranteed);
  // the two non-degenerate directions give separatrices as well
  for (const ProjPoint& v : {H, V}) {
    auto rv = classify_direction(Pq, v);
    CHECK(rv.verdict == Verdict::SeparatrixCase);
  }
}

TEST_CASE("curated pure domain family") {
  for (int r = 1; r <= 3; ++r) {
    CAPTURE(r);
    auto rep = classify_direction(curated(r), H);
    REQUIRE(rep.verdict == Verdict::PureDomainCase);
    REQUIRE(rep.shape.has_value());
    const VivasShape& s = *rep.shape;
    CHECK(s.r == r);
    CHECK(s.m == r);
    CHECK(s.p == 1);
    CHECK(s.a == q(1));
    CHECK(s.b == FieldElement());
    CHECK(s.c == q(-1));
    CHECK(rep.guaranteed_count == r);
    CHECK(rep.guaranteed_count >= rep.k);
    CHECK(rep.foliated);
    // re-validate the evidence on the stored tree
    const ResolutionNode& leaf = rep.tree.node(s.node);
    CHECK(classify_singularity(leaf.field).tag == SingularityClass::Tag::ReducedSaddleNode);
    CHECK(weak_in_divisor(leaf));
    CHECK_FALSE(second_type(rep.tree, rep.point_node));
    for (const auto& line : rep.certificate) CHECK(line.find("free") == std::string::npos);
  }
}

TEST_CASE("separatrix case evidence is strict and not the divisor") {
  // generator x(x dx - y dy): t = 0 survives the blow-up
  Diffeo F = Diffeo::exp_of(VectorField(X * X, -(X * Y)));
  auto r = classify_direction(F, H);
  REQUIRE(r.verdict == Verdict::SeparatrixCase);
  REQUIRE(r.separatrix.has_value());
  CHECK_FALSE(r.separatrix->in_divisor);
  CHECK(r.separatrix->kind == SeparatrixDescriptor::Kind::Strict);
  CHECK_FALSE(r.foliated);
}

TEST_CASE("abate classifier") {
  // generator x(x dx + lambda y dy), lambda = -1/2
  Diffeo F = Diffeo::exp_of(VectorField(X * X, (X * Y).scaled(q(-1, 2))));
  auto r = classify_abate(F, H);
  CHECK(r.verdict == Verdict::AbateCurves);
  REQUIRE(r.residual_index.has_value());
  CHECK(*r.residual_index == q(-2, 3));
  CHECK(r.separatrix->strength == SeparatrixDescriptor::Strength::Strong);

  // second type with one strong separatrix: the index vanishes
  Diffeo G = Diffeo::exp_of(VectorField(xpow(3), X * Y * (ONE + X)));
  CHECK_THROWS_AS(classify_abate(G, H), IndexZero);
  ClassifyOptions fb;
  fb.fallback = true;
  auto rf = classify_abate(G, H, fb);
  CHECK(rf.verdict == Verdict::SeparatrixCase);
  CHECK(rf.residual_index == FieldElement());

  // curated family: index 1, only the divisor, so domains
  auto rd = classify_abate(curated(2), H);
  CHECK(rd.verdict == Verdict::AbateDomains);
  CHECK(*rd.residual_index == q(1));
  CHECK_FALSE(second_type(rd.tree, rd.point_node));

  // isolated fixed point: never a fixed curve
  auto ri = classify_abate(Diffeo::polynomial(X + X * X, Y - Y * Y.scaled(q(3))), H);
  CHECK(ri.verdict != Verdict::FixedCurve);
}

TEST_CASE("classification along a fixed divisor") {
  Diffeo F = Diffeo::polynomial(X + X * X, Y);
  Diffeo Fp = blow_up_diffeo(F, DivisorPoint::chart_t(FieldElement()));
  auto r = classify_along_divisor(Fp, Axis::X);
  CHECK(r.verdict == Verdict::SeparatrixCase);
  CHECK(r.parabolic_curve_guaranteed);

  for (int k = 1; k <= 2; ++k) {
    Diffeo C = Diffeo::exp_of(VectorField(xpow(k + 1), xpow(k) * (X + Y)));
    auto rc = classify_along_divisor(C, Axis::X);
    CHECK(rc.verdict == Verdict::PureDomainCase);
    CHECK(rc.foliated);
  }

  CHECK_THROWS_AS(classify_along_divisor(Diffeo::polynomial(X + X * X * Y, Y + X * Y * Y), Axis::X), CornerPoint);
  CHECK_THROWS_AS(classify_along_divisor(Diffeo::exp_of(VectorField(X * Y, X * X)), Axis::X), NotTangential);
}

TEST_CASE("json report") {
  auto r = classify_direction(curated(1), H);
  auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["schema"] == 1);
  CHECK(j["verdict"] == "PureDomainCase");
  CHECK(j["evidence"]["saddle_node"]["weak_in_divisor"] == true);
  CHECK(j["parabolic_curve_guaranteed"] == true);
  CHECK(j["tree"]["nodes"].size() == r.tree.nodes.size());
}
