#include <doctest.h>

#include <sstream>

#include "ttid/dynamics/dynamics.hpp"
#include "ttid/germs/directions.hpp"

using namespace ttid;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement::fraction(n, d); }
const Jet2 X = Jet2::var_x(), Y = Jet2::var_y(), ONE = Jet2::constant(FieldElement(1));

Diffeo parabolic_x() { return Diffeo::rational(X, ONE - X, Y, ONE); }

// (x - x^2, y - 3xy) in the coordinates (x + y, y - x)
Diffeo conjugated() {
  Jet2 a = (X - Y).scaled(q(1, 2)), b = (X + Y).scaled(q(1, 2));
  Jet2 g1 = a - a * a, g2 = b - (a * b).scaled(q(3));
  return Diffeo::polynomial(g1 + g2, g2 - g1);
}

}  // namespace

TEST_CASE("closed-form parabolic orbit") {
  NumericMap F = NumericMap::compile(parabolic_x());
  const double x0 = -0.1;
  NumericOrbit o = iterate(F, {x0, 0.0}, 10000);
  REQUIRE(o.steps == 10000);
  double worst = 0;
  for (int n = 0; n <= 10000; ++n) {
    double exact = x0 / (1 - n * x0);
    worst = std::max(worst, std::abs(o.points[n].x - exact) / std::abs(exact));
    if (n > 0) CHECK(std::abs(o.points[n].x) < std::abs(o.points[n - 1].x));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("identity and escape") {
  NumericMap id = NumericMap::compile(Diffeo::polynomial(X, Y));
  NumericOrbit o = iterate(id, {0.3, cplx(0.1, 0.2)}, 50);
  for (const auto& p : o.points) {
    CHECK(p.x == cplx(0.3));
    CHECK(p.y == cplx(0.1, 0.2));
  }
  NumericMap dbl = NumericMap::compile(Diffeo::polynomial(X.scaled(q(2)), Y));
  NumericOrbit e = iterate(dbl, {1.0, 0.0}, 100);
  CHECK(e.escaped);
  CHECK(e.steps < 100);
  OrbitOptions strict;
  strict.throw_on_escape = true;
  CHECK_THROWS_AS(iterate(dbl, {1.0, 0.0}, 100, strict), Escape);
  CHECK_THROWS_AS(iterate(id, {0.0, 0.0}, 0), InvalidArgument);
}

TEST_CASE("tangent directions") {
  NumericMap F = NumericMap::compile(parabolic_x());
  auto t = tangent_direction(iterate(F, {-0.1, 0.0}, 200000));
  CHECK(projective_distance(t, ProjPoint::infinity()) < 1e-12);
  CHECK(t.residual < 1e-9);

  NumericMap G = NumericMap::compile(Diffeo::rational(X, ONE, Y, ONE - Y));
  auto tv = tangent_direction(iterate(G, {0.0, -0.1}, 200000));
  CHECK(projective_distance(tv, ProjPoint(FieldElement(), FieldElement(1))) < 1e-12);

  // a non-axis direction, compared with the symbolic list
  Diffeo C = conjugated();
  NumericMap Cn = NumericMap::compile(C);
  auto tc = tangent_direction(iterate(Cn, {0.06, -0.04}, 300000));
  double best = 1;
  for (const auto& d : characteristic_directions(C)) best = std::min(best, projective_distance(tc, d.point()));
  CHECK(best < 1e-6);
  CHECK(projective_distance(tc, ProjPoint(q(-1), FieldElement(1))) < 1e-6);

  // orbit of (x, y + x^2) drifts away in y
  NumericMap Fc = NumericMap::compile(Diffeo::polynomial(X, Y + X * X));
  CHECK_THROWS_AS(tangent_direction(iterate(Fc, {0.1, 0.1}, 1000)), NotConvergent);
}

TEST_CASE("iterated tangents") {
  NumericMap F = NumericMap::compile(parabolic_x());
  auto a = iterated_tangents(iterate(F, {-0.1, 0.0}, 200000), 3);
  auto b = iterated_tangents(iterate(F, {-0.05, 0.0}, 200000), 3);
  REQUIRE(a.size() == 3);
  for (const auto& c : a) {
    CHECK(c.chart == 't');
    CHECK(std::abs(c.coordinate) < 1e-12);
  }
  CHECK(mutually_asymptotic(a, b));
  CHECK(mutually_asymptotic(b, a));
  CHECK(mutually_asymptotic(a, a));
  NumericMap Fc = NumericMap::compile(Diffeo::polynomial(X, Y + X * X));
  CHECK_THROWS_AS(iterated_tangents(iterate(Fc, {0.1, 0.0}, 1000), 2), NotConvergent);
}

TEST_CASE("batch orbits match the serial loop") {
  NumericMap F = NumericMap::compile(conjugated());
  std::vector<Point2> starts;
  for (int i = 1; i <= 40; ++i) starts.push_back({0.002 * i, -0.001 * i});
  auto par = iterate_batch(F, starts, 500, {}, true);
  auto ser = iterate_batch(F, starts, 500, {}, false);
  for (size_t i = 0; i < starts.size(); ++i) {
    REQUIRE(par[i].points.size() == ser[i].points.size());
    CHECK(par[i].points.back().x == ser[i].points.back().x);
  }
}

TEST_CASE("vivas checks on the curated shape") {
  NumericMap Fq = NumericMap::compile(curated_vivas_map());
  VivasDomain dom;
  VivasOptions opts;
  auto rep = vivas_checks(Fq, dom, opts);
  CHECK_FALSE(rep.empty);
  CHECK(rep.sampled == 1000);
  CHECK(rep.invariance_rate >= 0.99);
  CHECK(rep.drift_rate >= 0.99);
  CHECK(rep.exponent_ok);
  CHECK(rep.slope >= 3);
  // deterministic regardless of threads
  opts.parallel = false;
  auto ser = vivas_checks(Fq, dom, opts);
  CHECK(ser.invariant == rep.invariant);
  CHECK(ser.drift_ok == rep.drift_ok);
  CHECK(ser.n0 == rep.n0);
  // every sample really lies in the domain
  for (int i = 0; i < 50; ++i) {
    auto p = vivas_sample(dom, 7, i, 200);
    REQUIRE(p.has_value());
    CHECK(dom.contains(*p));
  }
  VivasDomain empty = dom;
  empty.M = 1000;
  auto er = vivas_checks(Fq, empty, opts);
  CHECK(er.empty);
  CHECK(er.invariance_rate == 0);
  VivasDomain bad = dom;
  bad.M = 1;
  CHECK_THROWS_AS(vivas_checks(Fq, bad, opts), ShapeMismatch);
}

TEST_CASE("csv output") {
  NumericMap F = NumericMap::compile(parabolic_x());
  std::ostringstream os;
  write_orbit_csv(os, iterate(F, {-0.1, 0.0}, 3));
  std::string s = os.str();
  CHECK(s.rfind("n,re_x,im_x,re_y,im_y\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);
}
