#include <doctest.h>

#include <random>

#include "ttid/germs/directions.hpp"
#include "ttid/germs/exp_log.hpp"

using namespace ttid;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement::fraction(n, d); }
Jet2 m(const FieldElement& c, int i, int j) { return Jet2::monomial(c, i, j); }
const Jet2 X = Jet2::var_x(), Y = Jet2::var_y(), ONE = Jet2::constant(FieldElement(1));

FieldElement param_c() { return FieldElement::generator(adjoin_transcendental(nullptr, "c")); }

Diffeo example_pq() {
  FieldElement c = param_c();
  return Diffeo::rational(X + X * X + m(c, 1, 1), ONE, Y - X * Y * Y, ONE + m(c, 0, 1) + X);
}

VectorField random_field(std::mt19937& rng) {
  std::uniform_int_distribution<long> coef(-5, 5);
  std::uniform_int_distribution<int> ord(2, 3);
  int o = ord(rng);
  VectorField V;
  for (int d = o; d <= 4; ++d)
    for (int i = 0; i <= d; ++i) {
      V.a.set(i, d - i, FieldElement(coef(rng)));
      V.b.set(i, d - i, FieldElement(coef(rng)));
    }
  for (int i = 0; i <= o; ++i)
    if (V.a.coeff(i, o - i).rep_is_zero() && V.b.coeff(i, o - i).rep_is_zero()) V.a.set(i, o - i, q(1));
  return V;
}

}  // namespace

TEST_CASE("order") {
  CHECK(VectorField(X * X, Jet2()).order() == 2);
  CHECK(Diffeo::polynomial(X + X * X, Y).order() == 2);
  CHECK(example_pq().order() == 2);
  CHECK(example_pq().tangent_to_identity());
}

TEST_CASE("exp of simple generators") {
  auto F = exp_jets(VectorField(X * X, Jet2()), 3);
  CHECK(F.first == (X + X * X + X * X * X).truncated(3));
  CHECK(F.second == Y.truncated(3));
  auto G = exp_jets(VectorField(X * Y, Jet2()), 3);
  CHECK(G.first == (X + X * Y + m(q(1, 2), 1, 2)).truncated(3));
  auto I = exp_jets(VectorField(Jet2(), Jet2()), 4);
  CHECK(I.first == X.truncated(4));
}

TEST_CASE("log order by order") {
  VectorField L = log(Diffeo::polynomial(X + X * X, Y), 4);
  CHECK(L.a == (X * X - X * X * X + m(q(3, 2), 4, 0)).truncated(4));
  CHECK(L.b.terms().empty());
  // oracle: exp of the answer reproduces F to degree 4
  auto E = exp_jets(L, 4);
  CHECK(E.first == (X + X * X).truncated(4));
  CHECK(log(Diffeo::polynomial(X, Y), 5).is_zero());
}

TEST_CASE("generator jet of the example") {
  FieldElement c = param_c();
  VectorField L = log(example_pq(), 4);
  CHECK(L.homogeneous_part(2).a == X * X + m(c, 1, 1));
  CHECK(L.homogeneous_part(2).b == -(X * Y) - m(c, 0, 2));
  CHECK(L.a.str("x", "t").rfind("x^2 + c*x*t", 0) == 0);
}

TEST_CASE("exp/log round trip on random fields") {
  std::mt19937 rng(2024);
  for (int it = 0; it < 8; ++it) {
    VectorField V = random_field(rng);
    VectorField L = log(exp(V, 8), 8);
    CHECK(L.agrees_with(V.truncated(8), 8));
  }
}

TEST_CASE("exp(X) o exp(X) == exp(2X)") {
  std::mt19937 rng(99);
  for (int it = 0; it < 4; ++it) {
    VectorField V = random_field(rng);
    auto F = exp_jets(V, 6);
    auto FF = compose(F, F, 6);
    auto F2 = exp_jets(V.scaled(q(2)), 6);
    CHECK(FF.first == F2.first);
    CHECK(FF.second == F2.second);
  }
}

TEST_CASE("characteristic directions") {
  auto dirs = characteristic_directions(example_pq());
  REQUIRE(dirs.size() == 3);
  CHECK(dirs[0].point().str() == "[-c:1]");
  CHECK(dirs[1].point().str() == "[0:1]");
  CHECK(dirs[2].point().str() == "[1:0]");
  for (const auto& d : dirs) CHECK(d.family.multiplicity == 1);

  auto d2 = characteristic_directions(Diffeo::polynomial(X + X * X, Y + Y * Y));
  REQUIRE(d2.size() == 3);
  for (const auto& d : d2) CHECK_FALSE(d.degenerate);
  CHECK(d2[0].point().str() == "[0:1]");
  CHECK(d2[1].point().str() == "[1:0]");
  CHECK(d2[2].point().str() == "[1:1]");

  auto d3 = characteristic_directions(Diffeo::polynomial(X, Y + X * X));
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].point().str() == "[0:1]");
  CHECK(d3[0].family.multiplicity == 3);
  CHECK(d3[0].degenerate);

  CHECK_THROWS_AS(characteristic_directions(Diffeo::polynomial(X + X * X, Y + X * Y)), DicriticalMap);
}

TEST_CASE("characteristic directions transform under diagonal conjugation") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> d(1, 5);
  Diffeo F = Diffeo::polynomial(X + X * X + m(q(3), 1, 1), Y + m(q(2), 0, 2) - X * Y);
  auto base = characteristic_directions(F);
  for (int it = 0; it < 10; ++it) {
    FieldElement al(d(rng)), be(d(rng));
    // G = D F D^-1, D = diag(al, be)
    Jet2 ux = X.scaled(al.inverse()), uy = Y.scaled(be.inverse());
    Jet2 gx = F.num_x().substitute(ux, uy).scaled(al), gy = F.num_y().substitute(ux, uy).scaled(be);
    auto conj = characteristic_directions(Diffeo::polynomial(gx, gy));
    REQUIRE(conj.size() == base.size());
    for (const auto& bd : base) {
      ProjPoint image(al * bd.point().a(), be * bd.point().b());
      bool found = false;
      for (const auto& cd : conj) found = found || cd.point() == image;
      CHECK(found);
    }
  }
}

TEST_CASE("fixed curves") {
  auto f1 = fixed_curves(Diffeo::polynomial(X + Y * Y, Y + Y * Y));
  CHECK(f1.g == Y);
  CHECK_FALSE(f1.isolated);
  REQUIRE(f1.tangents.size() == 1);
  CHECK(f1.tangents[0].point.str() == "[1:0]");

  CHECK(fixed_curves(example_pq()).isolated);
  FieldElement c = param_c();
  CHECK(fixed_curves(Diffeo::polynomial(X + m(c, 0, 1) + X * X, Y - Y * Y)).isolated);

  auto f3 = fixed_curves(Diffeo::polynomial(X * (ONE + X), Y * (ONE + X)));
  CHECK(f3.g == X);
  REQUIRE(f3.tangents.size() == 1);
  CHECK(f3.tangents[0].point.str() == "[0:1]");
}
