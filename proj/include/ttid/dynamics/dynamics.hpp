#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ttid/algebra/roots.hpp"
#include "ttid/germs/diffeo.hpp"
#include "ttid/germs/directions.hpp"

namespace ttid {

using cplx = std::complex<double>;

struct Point2 {
  cplx x, y;
  double norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }
};

// Polynomial with complex coefficients, evaluated term by term.
struct NumPoly {
  struct Term {
    int i, j;
    cplx c;
  };
  std::vector<Term> terms;
  int max_i = 0, max_j = 0;

  static NumPoly compile(const Jet2& p, const NumericBindings& b);
  cplx operator()(cplx x, cplx y) const;
};

class NumericMap {
 public:
  NumericMap() = default;
  // Rational maps are evaluated exactly; generators through their exp jet of
  // degree `jet_order`; jets as polynomials.
  static NumericMap compile(const Diffeo& F, const NumericBindings& b = {}, int jet_order = 16);
  static NumericMap from_function(std::function<Point2(const Point2&)> f);

  Point2 operator()(const Point2& p) const;

 private:
  NumPoly nx_, dx_, ny_, dy_;
  bool rational_ = false;
  std::function<Point2(const Point2&)> fn_;
};

struct NumericOrbit {
  Point2 start;
  std::vector<Point2> points;  // points[0] = start
  int steps = 0;
  bool escaped = false;
};

struct OrbitOptions {
  double escape_radius = 10.0;
  bool throw_on_escape = false;
};

NumericOrbit iterate(const NumericMap& F, const Point2& z0, int n, const OrbitOptions& opts = {});
// Independent orbits; OpenMP-parallel when `parallel` is set.
std::vector<NumericOrbit> iterate_batch(const NumericMap& F, const std::vector<Point2>& starts, int n,
                                        const OrbitOptions& opts = {}, bool parallel = true);

struct ConvergenceOptions {
  int tail = 50;
  double ratio = 1e-4;  // tail norms below ratio * |start|
};
bool converges(const NumericOrbit& orbit, const ConvergenceOptions& opts = {});

struct TangentEstimate {
  cplx a, b;  // representative of [a:b] with max(|a|,|b|) = 1
  double residual = 0;
  std::string str() const;
};

// Limit of z_n/|z_n| (extrapolated affine coordinate).
TangentEstimate tangent_direction(const NumericOrbit& orbit, const ConvergenceOptions& opts = {});
// Sine of the angle between [a1:b1] and [a2:b2].
double projective_distance(cplx a1, cplx b1, cplx a2, cplx b2);
double projective_distance(const TangentEstimate& e, const ProjPoint& v, const NumericBindings& b = {});

// Every complex direction [a:b] of the families, conjugates included
// (roots of algebraic factors found numerically).
std::vector<std::pair<cplx, cplx>> numeric_directions(const std::vector<CharDirection>& dirs,
                                                      const NumericBindings& b = {});
// Distance to the nearest of `dirs`.
double nearest_direction(const TangentEstimate& e, const std::vector<std::pair<cplx, cplx>>& dirs);

struct ChartPoint {
  char chart = 't';  // 't': (x, y/x - t), 's': (x/y - s, y)
  cplx coordinate;
  double residual = 0;
  std::string str() const;
};

std::vector<ChartPoint> iterated_tangents(const NumericOrbit& orbit, int depth, const ConvergenceOptions& opts = {});
bool mutually_asymptotic(const std::vector<ChartPoint>& a, const std::vector<ChartPoint>& b, double tol = 1e-6);

struct VivasDomain {
  double eps = 0.1, delta = 0.1, eta = 0.3;
  int M = 2;
  int r = 1, m = 0, p = 1;
  bool contains(const Point2& q) const;
  // Smallest slack of the four defining inequalities (negative outside).
  double slack(const Point2& q) const;
};

struct VivasOptions {
  int samples = 1000;
  std::uint64_t seed = 1;
  int drift_steps = 200;
  int exponent = 3;         // N in |z_n| <= C |u_n|^N
  int exponent_steps = 20000;
  int max_tries = 200;      // rejection attempts per sample
  bool parallel = true;
};

struct VivasReport {
  int requested = 0, sampled = 0;
  bool empty = false;  // no point of the domain was found
  int invariant = 0;
  double invariance_rate = 0;
  double min_margin = 0;  // smallest slack of an image among invariant samples
  int drift_ok = 0;
  double drift_rate = 0;
  bool exponent_ok = false;
  int n0 = -1;  // first step from which the local slope stays >= exponent
  double slope = 0, constant = 0;
  std::string json() const;
};

// z' = -z^2, u' = -z u^2 as exact generator (the curated normalized shape).
Diffeo curated_vivas_map();

VivasReport vivas_checks(const NumericMap& Fq, const VivasDomain& dom, const VivasOptions& opts = {});
// Sample i of the domain with a counter-based seed; nullopt when rejection fails.
std::optional<Point2> vivas_sample(const VivasDomain& dom, std::uint64_t seed, std::uint64_t index, int max_tries);

void write_orbit_csv(std::ostream& os, const NumericOrbit& orbit);

}  // namespace ttid
