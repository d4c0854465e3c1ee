#include <doctest.h>

#include <random>

#include "ttid/blowup/resolution.hpp"
#include "ttid/germs/exp_log.hpp"

using namespace ttid;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement::fraction(n, d); }
Jet2 m(const FieldElement& c, int i, int j) { return Jet2::monomial(c, i, j); }
const Jet2 X = Jet2::var_x(), Y = Jet2::var_y(), ONE = Jet2::constant(FieldElement(1));

FieldElement param_c() { return FieldElement::generator(adjoin_transcendental(nullptr, "c")); }

using Tag = SingularityClass::Tag;

Tag tag_of(const VectorField& V) { return classify_singularity(V).tag; }

void check_leaves(const ResolutionTree& t) {
  for (const auto& n : t.nodes) {
    if (n.leaf()) CHECK((n.cls.tag == Tag::NonSingular || n.cls.reduced()));
    // oracle: reclassify every stored field from scratch
    CHECK(classify_singularity(n.field).tag == n.cls.tag);
    if (n.depth == 1) CHECK(n.restriction_ok);
  }
  CHECK(t.depth_reached() <= 16);
}

}  // namespace

TEST_CASE("saturation") {
  auto s1 = saturate(VectorField(X * X, X * Y));
  CHECK(s1.f == X);
  CHECK(s1.field == VectorField(X, Y));
  auto s2 = saturate(VectorField(X * X * Y, X * Y * Y));
  CHECK(s2.f == X * Y);
  CHECK(s2.field == VectorField(X, Y));
  auto s3 = saturate(VectorField(X * X, Y * Y));
  CHECK(s3.f == ONE);
  CHECK(s3.strictly_singular);
  // truncated field, trivial factor certified from lowest parts
  auto s4 = saturate(VectorField((X * X).truncated(4), Y.truncated(4)));
  CHECK(s4.f == ONE);
  CHECK_THROWS_AS(saturate(VectorField((X * X).truncated(4), (X * Y).truncated(4))), InsufficientPrecision);
  auto s5 = saturate_by(VectorField((X * X).truncated(4), (X * Y).truncated(4)), X);
  CHECK(s5.field.a == X.truncated(3));
}

TEST_CASE("dicritical test") {
  CHECK(is_dicritical(VectorField(X, Y)));
  CHECK_FALSE(is_dicritical(VectorField(X * X, Y * Y)));
  CHECK(tangency_polynomial(VectorField(X * X, Y * Y), 2) == X * Y * Y - X * X * Y);
  CHECK(is_dicritical(VectorField(X * X + X * Y, X * Y + Y * Y)));
}

TEST_CASE("vector field transforms") {
  auto t0 = DivisorPoint::chart_t(FieldElement());
  CHECK(blow_up_vf(VectorField(X, Y.scaled(q(2))), t0) == VectorField(X, Y));
  auto st = strict_transform(VectorField(X * X, Y * Y), t0);
  CHECK(st.power == 1);
  CHECK(st.field == VectorField(X, Y * Y - Y));
  auto ss = strict_transform(VectorField(X * X, Y * Y), DivisorPoint::chart_s(FieldElement()));
  CHECK(ss.field == VectorField(X * X - X, Y));
  // translated center: s = 1 gives (s^2 + s) ds + y dy
  auto s1 = strict_transform(VectorField(X * X, Y * Y), DivisorPoint::chart_s(q(1)));
  CHECK(s1.field == VectorField(X * X + X, Y));
  // precision drops by the removed power plus one
  auto tr = strict_transform(VectorField((X * X).truncated(6), (Y * Y).truncated(6)), t0);
  CHECK(tr.field.prec() == 4);
  CHECK(tr.field.agrees_with(VectorField(X, Y * Y - Y).truncated(4), 4));
}

TEST_CASE("divisor restriction equals the tangency polynomial") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> coef(-4, 4);
  for (int it = 0; it < 20; ++it) {
    VectorField V;
    for (int i = 0; i <= 2; ++i) {
      V.a.set(i, 2 - i, FieldElement(coef(rng)));
      V.b.set(i, 2 - i, FieldElement(coef(rng)));
    }
    V.a.set(3, 0, FieldElement(coef(rng)));
    V.b.set(1, 2, FieldElement(coef(rng)));
    if (V.homogeneous_part(2).is_zero() || is_dicritical(V)) continue;
    Jet2 P = tangency_polynomial(V, 2);
    auto st = strict_transform(V, DivisorPoint::chart_t(FieldElement()));
    for (int k = 0; k <= 3; ++k) CHECK(st.field.b.coeff(0, k) == P.coeff(3 - k, k));
    auto ss = strict_transform(V, DivisorPoint::chart_s(FieldElement()));
    for (int k = 0; k <= 3; ++k) CHECK(ss.field.a.coeff(k, 0) == -P.coeff(k, 3 - k));
  }
}

TEST_CASE("diffeomorphism transforms") {
  FieldElement c = param_c();
  Diffeo P = Diffeo::polynomial(X + m(c, 0, 1) + X * X, Y - Y * Y);
  Diffeo Pq = blow_up_diffeo(P, DivisorPoint::chart_t(FieldElement()));
  auto jets = Pq.jets(2);
  CHECK(jets.first == (X + X * X + m(c, 1, 1)).truncated(2));
  CHECK(jets.second == (Y - X * Y - m(c, 0, 2)).truncated(2));
  CHECK(Pq.tangent_to_identity());
  CHECK_THROWS_AS(blow_up_diffeo(P, DivisorPoint::chart_s(FieldElement())), NotInvariantDirection);

  Diffeo F = Diffeo::polynomial(X + X * X, Y);
  Diffeo Fq = blow_up_diffeo(F, DivisorPoint::chart_t(FieldElement()));
  // t1 = t / (1 + x)
  CHECK(Fq.jets(5).second == (Y * (ONE + X).invert_unit(5)).truncated(5));
  CHECK(Fq.order() >= F.order());

  Diffeo I = blow_up_diffeo(Diffeo::polynomial(X, Y), DivisorPoint::chart_s(q(3)));
  CHECK(I.jets(4).first == X.truncated(4));
  CHECK(I.jets(4).second == Y.truncated(4));
}

TEST_CASE("blow-up commutes with the generator") {
  FieldElement c = param_c();
  Diffeo Pq = Diffeo::rational(X + X * X + m(c, 1, 1), ONE, Y - X * Y * Y, ONE + m(c, 0, 1) + X);
  std::vector<std::pair<Diffeo, ProjPoint>> cases = {
      {Diffeo::polynomial(X + X * X, Y), ProjPoint::infinity()},
      {Diffeo::polynomial(X + X * X, Y + Y * Y), ProjPoint(q(1), q(1))},
      {Diffeo::polynomial(X + X * Y, Y - X * X + Y * Y * Y), ProjPoint(q(0), q(1))},
      {Pq, ProjPoint(-c, q(1))},
      {Pq, ProjPoint::infinity()},
  };
  const int N = 7;
  for (const auto& [F, v] : cases) {
    auto p = DivisorPoint::from_direction(v);
    VectorField lhs = blow_up_vf(log(F, N), p);
    VectorField rhs = log(blow_up_diffeo(F, p), N - 1);
    CHECK(lhs.agrees_with(rhs, N - 1));
  }
  // generator kind stays exact
  Diffeo G = Diffeo::exp_of(VectorField(X * X, X * Y));
  Diffeo Gq = blow_up_diffeo(G, DivisorPoint::chart_t(FieldElement()));
  CHECK(Gq.kind() == Diffeo::Kind::Generator);
  CHECK(Gq.generator() == VectorField(X * X, Jet2()));
}

TEST_CASE("singularity classes") {
  CHECK(tag_of(VectorField(X, -Y)) == Tag::ReducedNonDegenerate);
  CHECK(tag_of(VectorField(X * X, Y)) == Tag::ReducedSaddleNode);
  CHECK(tag_of(VectorField(X, Y.scaled(q(2)))) == Tag::NotReduced);
  CHECK(tag_of(VectorField(X + Y, Y)) == Tag::NotReduced);
  CHECK(tag_of(VectorField(Y, -X)) == Tag::ReducedNonDegenerate);  // eigenvalues +-i
  CHECK(tag_of(VectorField(Y, Jet2())) == Tag::NotReduced);         // nilpotent
  CHECK(tag_of(VectorField(ONE, Jet2())) == Tag::NonSingular);
  FieldElement c = param_c();
  CHECK(tag_of(VectorField(X, Y.scaled(c))) == Tag::ReducedNonDegenerate);
  // ratio 3/2, irrational ratio sqrt 2
  CHECK(tag_of(VectorField(X.scaled(q(2)), Y.scaled(q(3)))) == Tag::NotReduced);
  CHECK(tag_of(VectorField(Y.scaled(q(2)), X)) == Tag::ReducedNonDegenerate);
  // oracle: sweep integer diagonal ratios
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) {
      if (a == 0 && b == 0) continue;
      Tag want = (a == 0 || b == 0) ? Tag::ReducedSaddleNode
                                    : ((a > 0) == (b > 0) ? Tag::NotReduced : Tag::ReducedNonDegenerate);
      // conjugate by (x, y) -> (x + y, y) to hide the diagonal form
      VectorField D(X.scaled(q(a)) + Y.scaled(q(b - a)), Y.scaled(q(b)));
      CHECK(tag_of(D) == want);
    }
}

TEST_CASE("resolution trees") {
  auto t1 = resolve_field(VectorField(X, -Y));
  CHECK(t1.nodes.size() == 1);
  CHECK(t1.root().cls.tag == Tag::ReducedNonDegenerate);

  auto t2 = resolve_field(VectorField(X * X, Y * Y));
  check_leaves(t2);
  REQUIRE(t2.root().children.size() == 3);
  CHECK(t2.depth_reached() == 1);
  int at_one = t2.child_at(0, ProjPoint(q(1), q(1)));
  REQUIRE(at_one > 0);
  CHECK(t2.node(at_one).dicritical);
  CHECK(t2.node(t2.child_at(0, ProjPoint::infinity())).cls.tag == Tag::ReducedNonDegenerate);

  // cusp-like field needs several blow-ups
  auto t3 = resolve_field(VectorField(Y.scaled(q(2)), X * X.scaled(q(3))));
  check_leaves(t3);
  CHECK(t3.depth_reached() >= 2);

  // algebraic points on the divisor: P_X = x^3 - 2 y^3
  auto t4 = resolve_field(VectorField(Y * Y.scaled(q(2)), X * X));
  REQUIRE(t4.root().children.size() == 1);
  check_leaves(t4);
  int copies = 0;
  for (int c : t4.root().children) copies += t4.node(c).weight();
  CHECK(copies == 3);

  // random order-2 fields
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int it = 0; it < 15; ++it) {
    VectorField V;
    for (int d = 2; d <= 3; ++d)
      for (int i = 0; i <= d; ++i) {
        V.a.set(i, d - i, FieldElement(coef(rng)));
        V.b.set(i, d - i, FieldElement(coef(rng)));
      }
    if (V.homogeneous_part(2).is_zero()) continue;
    check_leaves(resolve_field(V));
  }
  CHECK_THROWS_AS(resolve_field(VectorField(Y.scaled(q(2)), X * X.scaled(q(3))), 1), DepthExceeded);
}

TEST_CASE("separatrices") {
  auto s1 = enumerate_separatrices(resolve_field(VectorField(X, -Y)));
  REQUIRE(s1.size() == 2);
  for (const auto& s : s1) CHECK(s.strength == SeparatrixDescriptor::Strength::Strong);

  auto s2 = enumerate_separatrices(resolve_field(VectorField(X * X, Y)));
  REQUIRE(s2.size() == 2);
  for (const auto& s : s2) {
    if (s.direction == ProjPoint(q(0), q(1)))
      CHECK(s.strength == SeparatrixDescriptor::Strength::Strong);
    else
      CHECK(s.strength == SeparatrixDescriptor::Strength::Weak);
  }

  auto t3 = resolve_field(VectorField(X * X, Y * Y));
  auto s3 = enumerate_separatrices(t3);
  auto c3 = count_free_separatrices(s3);
  CHECK(c3.infinite);  // the pencil tangent to [1:1]
  CHECK(c3.total == 2);
  CHECK(c3.pairwise_transverse);

  // resonant node: only x = 0
  auto t4 = resolve_field(VectorField(X, X + Y));
  auto c4 = count_free_separatrices(enumerate_separatrices(t4));
  CHECK(c4.total == 1);
  CHECK(c4.smooth == 1);
  CHECK(contains_saddle_node(t4));

  // cusp y^2 = x^3 invariant: singular branch
  auto t5 = resolve_field(VectorField(Y.scaled(q(2)), X * X.scaled(q(3))));
  auto c5 = count_free_separatrices(enumerate_separatrices(t5));
  CHECK(c5.total == 1);
  CHECK(c5.smooth == 0);

  // fixed components of the singular locus are listed as fixed
  auto t6 = resolve_field(VectorField(X * X, X * Y.scaled(q(-1))));
  auto s6 = enumerate_separatrices(t6);
  bool has_fixed = false;
  for (const auto& s : s6) has_fixed = has_fixed || s.fixed;
  CHECK(has_fixed);
}

TEST_CASE("saddle-nodes and second type") {
  auto t1 = resolve_field(VectorField(X, -Y));
  CHECK_FALSE(contains_saddle_node(t1));
  CHECK(second_type(t1));
  auto t2 = resolve_field(VectorField(X * X, Y));
  CHECK(saddle_nodes(t2) == std::vector<int>{0});
  CHECK(second_type(t2));
  // x^r [x dx + (2y + x^2) dy] blown up at [1:0]: corner saddle-node, weak in the divisor
  for (int r = 1; r <= 3; ++r) {
    Jet2 xr = ONE;
    for (int i = 0; i < r; ++i) xr = xr * X;
    auto t = resolve_field(VectorField(xr * X, xr * (Y.scaled(q(2)) + X * X)));
    CHECK_FALSE(second_type(t));
    auto sn = saddle_nodes(t);
    REQUIRE(sn.size() == 1);
    const auto& n = t.node(sn[0]);
    CHECK(n.corner());
    CHECK(weak_in_divisor(n));
    CHECK(n.mult_x == r);
    CHECK(n.mult_y == r);
  }
}

TEST_CASE("dot and json output") {
  auto t = resolve_field(VectorField(X * X, Y * Y));
  std::string dot = to_dot(t);
  CHECK(dot.rfind("digraph resolution {", 0) == 0);
  CHECK(dot.find("n0 -> n1") != std::string::npos);
  std::string js = to_json(t);
  CHECK(js.find("\"schema\": 1") != std::string::npos);
}
