#include "ttid/dynamics/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ttid/germs/exp_log.hpp"

namespace ttid {

NumPoly NumPoly::compile(const Jet2& p, const NumericBindings& b) {
  NumPoly out;
  for (const auto& [e, c] : p.terms()) {
    out.terms.push_back({e.first, e.second, evaluate(c, b)});
    out.max_i = std::max(out.max_i, e.first);
    out.max_j = std::max(out.max_j, e.second);
  }
  return out;
}

cplx NumPoly::operator()(cplx x, cplx y) const {
  // small degrees: powers on the stack
  cplx px[64], py[64];
  int ni = std::min(max_i, 63), nj = std::min(max_j, 63);
  px[0] = py[0] = 1.0;
  for (int i = 1; i <= ni; ++i) px[i] = px[i - 1] * x;
  for (int j = 1; j <= nj; ++j) py[j] = py[j - 1] * y;
  cplx s = 0.0;
  for (const Term& t : terms) {
    cplx xi = t.i <= 63 ? px[t.i] : std::pow(x, t.i);
    cplx yj = t.j <= 63 ? py[t.j] : std::pow(y, t.j);
    s += t.c * xi * yj;
  }
  return s;
}

NumericMap NumericMap::compile(const Diffeo& F, const NumericBindings& b, int jet_order) {
  NumericMap m;
  switch (F.kind()) {
    case Diffeo::Kind::Rational:
      m.rational_ = true;
      m.nx_ = NumPoly::compile(F.num_x(), b);
      m.dx_ = NumPoly::compile(F.den_x(), b);
      m.ny_ = NumPoly::compile(F.num_y(), b);
      m.dy_ = NumPoly::compile(F.den_y(), b);
      break;
    case Diffeo::Kind::Generator: {
      auto j = F.jets(jet_order);
      m.nx_ = NumPoly::compile(j.first, b);
      m.ny_ = NumPoly::compile(j.second, b);
      break;
    }
    case Diffeo::Kind::Jet:
      m.nx_ = NumPoly::compile(F.num_x(), b);
      m.ny_ = NumPoly::compile(F.num_y(), b);
      break;
  }
  return m;
}

NumericMap NumericMap::from_function(std::function<Point2(const Point2&)> f) {
  NumericMap m;
  m.fn_ = std::move(f);
  return m;
}

Point2 NumericMap::operator()(const Point2& p) const {
  if (fn_) return fn_(p);
  if (rational_) return {nx_(p.x, p.y) / dx_(p.x, p.y), ny_(p.x, p.y) / dy_(p.x, p.y)};
  return {nx_(p.x, p.y), ny_(p.x, p.y)};
}

NumericOrbit iterate(const NumericMap& F, const Point2& z0, int n, const OrbitOptions& opts) {
  if (n < 1) throw InvalidArgument("orbit length must be positive");
  NumericOrbit o;
  o.start = z0;
  o.points.reserve(n + 1);
  o.points.push_back(z0);
  Point2 z = z0;
  for (int k = 0; k < n; ++k) {
    z = F(z);
    double r = z.norm();
    if (!std::isfinite(r) || r > opts.escape_radius) {
      o.escaped = true;
      if (opts.throw_on_escape) throw Escape("orbit left the ball of radius " + std::to_string(opts.escape_radius) +
                                             " after " + std::to_string(k + 1) + " steps");
      break;
    }
    o.points.push_back(z);
    ++o.steps;
  }
  return o;
}

std::vector<NumericOrbit> iterate_batch(const NumericMap& F, const std::vector<Point2>& starts, int n,
                                        const OrbitOptions& opts, bool parallel) {
  std::vector<NumericOrbit> out(starts.size());
  OrbitOptions o = opts;
  o.throw_on_escape = false;
  const long count = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long i = 0; i < count; ++i) out[i] = iterate(F, starts[i], n, o);
  return out;
}

bool converges(const NumericOrbit& orbit, const ConvergenceOptions& opts) {
  if (orbit.escaped) return false;
  int n = static_cast<int>(orbit.points.size());
  if (n < opts.tail + 1) return false;
  for (int k = n - opts.tail; k < n; ++k)
    if (!(orbit.points[k].norm() <= orbit.points[k - 1].norm())) return false;
  return orbit.points.back().norm() < opts.ratio * orbit.start.norm();
}

namespace {

// affine coordinate of the orbit in the chart of its dominant coordinate
struct Affine {
  bool t_chart;
  std::vector<cplx> w;
};

Affine affine_coordinates(const std::vector<Point2>& pts) {
  const Point2& last = pts.back();
  Affine a;
  a.t_chart = std::abs(last.x) >= std::abs(last.y);
  a.w.reserve(pts.size());
  for (const auto& p : pts) a.w.push_back(a.t_chart ? p.y / p.x : p.x / p.y);
  return a;
}

cplx aitken(cplx a, cplx b, cplx c) {
  cplx den = (c - b) - (b - a);
  if (den == cplx(0)) return c;
  cplx r = c - (c - b) * (c - b) / den;
  return std::isfinite(std::abs(r)) ? r : c;
}

// Iterated Aitken on w at n, n/2, ..., n/2^(levels-1+shift): removes error
// terms in n^-b and most of the log(n)/n terms seen near saddle-nodes.
cplx extrapolate(const std::vector<cplx>& w, size_t n, int shift, int levels) {
  std::vector<cplx> s;
  for (int k = 0; k < levels; ++k) s.push_back(w[n >> (k + shift)]);
  while (s.size() >= 3) {
    std::vector<cplx> t;
    for (size_t i = 0; i + 2 < s.size(); ++i) t.push_back(aitken(s[i + 2], s[i + 1], s[i]));
    s = std::move(t);
  }
  return s.front();
}

TangentEstimate estimate(const std::vector<Point2>& pts) {
  size_t n = pts.size() - 1;
  Affine a = affine_coordinates(pts);
  for (size_t k = n >= 1024 ? n / 256 : n / 64; k <= n; ++k)
    if (!std::isfinite(std::abs(a.w[k]))) throw NotConvergent("orbit passes through a chart singularity");
  cplx best;
  double residual;
  if (n >= 32) {
    best = extrapolate(a.w, n, 0, 5);
    residual = std::abs(best - extrapolate(a.w, n, 1, 5));
    if (n >= 1024) {
      cplx deep = extrapolate(a.w, n, 0, 7);
      double r = std::abs(deep - extrapolate(a.w, n, 1, 7));
      if (r < residual) best = deep, residual = r;
    }
  } else {
    best = n >= 2 ? 2.0 * a.w[n] - a.w[n / 2] : a.w[n];
    residual = std::abs(best - a.w[n / 2]);
  }
  TangentEstimate e;
  e.residual = residual;
  if (a.t_chart) {
    e.a = 1.0;
    e.b = best;
  } else {
    e.a = best;
    e.b = 1.0;
  }
  double s = std::max(std::abs(e.a), std::abs(e.b));
  e.a /= s;
  e.b /= s;
  return e;
}

std::string cplx_str(cplx z) {
  std::ostringstream os;
  z += cplx(0.0, 0.0);
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::string TangentEstimate::str() const { return "[" + cplx_str(a) + ":" + cplx_str(b) + "]"; }

TangentEstimate tangent_direction(const NumericOrbit& orbit, const ConvergenceOptions& opts) {
  if (!converges(orbit, opts)) throw NotConvergent("orbit does not converge to the origin");
  return estimate(orbit.points);
}

double projective_distance(cplx a1, cplx b1, cplx a2, cplx b2) {
  double n1 = std::sqrt(std::norm(a1) + std::norm(b1)), n2 = std::sqrt(std::norm(a2) + std::norm(b2));
  return std::abs(a1 * b2 - a2 * b1) / (n1 * n2);
}

double projective_distance(const TangentEstimate& e, const ProjPoint& v, const NumericBindings& b) {
  return projective_distance(e.a, e.b, evaluate(v.a(), b), evaluate(v.b(), b));
}

namespace {

std::vector<cplx> complex_roots(std::vector<cplx> c) {
  while (!c.empty() && c.back() == cplx(0)) c.pop_back();
  int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  cplx lead = c.back();
  for (auto& v : c) v /= lead;
  double bound = 1;
  for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(c[i]));
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::polar(0.5 * bound, 2.0 * M_PI * i / n + 0.4);
  for (int it = 0; it < 1000; ++it) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      cplx v = 1;
      for (int k = n - 1; k >= 0; --k) v = v * z[i] + c[k];
      cplx d = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) d *= z[i] - z[j];
      cplx step = v / d;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15 * bound) break;
  }
  return z;
}

}  // namespace

std::vector<std::pair<cplx, cplx>> numeric_directions(const std::vector<CharDirection>& dirs, const NumericBindings& b) {
  std::vector<std::pair<cplx, cplx>> out;
  for (const auto& d : dirs) {
    const RootFamily& f = d.family;
    if (f.factor_degree() <= 1 || !f.level) {
      out.emplace_back(evaluate(f.point.a(), b), evaluate(f.point.b(), b));
      continue;
    }
    std::vector<cplx> c;
    for (const auto& e : f.factor) c.push_back(evaluate(e, b));
    for (cplx s : complex_roots(c)) out.emplace_back(s, cplx(1));
  }
  return out;
}

double nearest_direction(const TangentEstimate& e, const std::vector<std::pair<cplx, cplx>>& dirs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : dirs) best = std::min(best, projective_distance(e.a, e.b, a, b));
  return best;
}

std::string ChartPoint::str() const { return std::string(1, chart) + "=" + cplx_str(coordinate); }

std::vector<ChartPoint> iterated_tangents(const NumericOrbit& orbit, int depth, const ConvergenceOptions& opts) {
  if (depth < 1) throw InvalidArgument("depth must be at least 1");
  if (!converges(orbit, opts)) throw NotConvergent("orbit does not converge to the origin");
  std::vector<Point2> pts = orbit.points;
  std::vector<ChartPoint> out;
  for (int level = 0; level < depth; ++level) {
    TangentEstimate e = estimate(pts);
    ChartPoint cp;
    cp.residual = e.residual;
    bool t = std::abs(e.a) >= std::abs(e.b);
    cp.chart = t ? 't' : 's';
    cp.coordinate = t ? e.b / e.a : e.a / e.b;
    if (!std::isfinite(std::abs(cp.coordinate)))
      throw NotConvergent("no limit at level " + std::to_string(level + 1));
    out.push_back(cp);
    for (auto& p : pts) {
      if (t)
        p = {p.x, p.y / p.x - cp.coordinate};
      else
        p = {p.x / p.y - cp.coordinate, p.y};
    }
  }
  return out;
}

bool mutually_asymptotic(const std::vector<ChartPoint>& a, const std::vector<ChartPoint>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].chart != b[i].chart || std::abs(a[i].coordinate - b[i].coordinate) > tol) return false;
  return true;
}

namespace {

double arg_of(const VivasDomain& d, const Point2& q) { return std::arg(std::pow(q.x, d.r) * std::pow(q.y, d.m)); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double VivasDomain::slack(const Point2& q) const {
  cplx w = std::pow(q.x, r) * std::pow(q.y, m);
  cplx up = std::pow(q.y, p);
  double s1 = eps - std::abs(w - eps);
  double s2 = eta - std::abs(std::arg(w));
  double s3 = delta - std::abs(up - delta);
  double s4 = std::pow(std::abs(q.y), M) - std::abs(q.x);
  return std::min({s1, s2, s3, s4});
}

bool VivasDomain::contains(const Point2& q) const {
  double s = slack(q);
  return std::isfinite(s) && s > 0;
}

std::optional<Point2> vivas_sample(const VivasDomain& dom, std::uint64_t seed, std::uint64_t index, int max_tries) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double two_pi = 2 * std::numbers::pi;
  for (int t = 0; t < max_tries; ++t) {
    cplx up = dom.delta * (1.0 + std::sqrt(U(rng)) * std::polar(1.0, two_pi * U(rng)));
    int k = static_cast<int>(U(rng) * dom.p) % dom.p;
    cplx u = std::pow(up, 1.0 / dom.p) * std::polar(1.0, two_pi * k / dom.p);
    double cap = std::min(2 * dom.eps, std::pow(std::abs(u), dom.M * dom.r + dom.m));
    cplx w = std::polar(cap * U(rng), dom.eta * (2 * U(rng) - 1));
    int j = static_cast<int>(U(rng) * dom.r) % dom.r;
    cplx z = std::pow(w / std::pow(u, dom.m), 1.0 / dom.r) * std::polar(1.0, two_pi * j / dom.r);
    Point2 q{z, u};
    if (dom.contains(q)) return q;
  }
  return std::nullopt;
}

Diffeo curated_vivas_map() {
  Jet2 x = Jet2::var_x(), y = Jet2::var_y();
  return Diffeo::exp_of(VectorField(-(x * x), -(x * y * y)));
}

VivasReport vivas_checks(const NumericMap& Fq, const VivasDomain& dom, const VivasOptions& opts) {
  if (dom.r < 1 || dom.m < 0 || dom.p < 1 || dom.M < 2 || dom.eps <= 0 || dom.delta <= 0 || dom.eta <= 0)
    throw ShapeMismatch("domain parameters out of range");
  VivasReport rep;
  rep.requested = opts.samples;
  int sampled = 0, invariant = 0, drift = 0;
  double margin = std::numeric_limits<double>::infinity();
  std::vector<std::optional<Point2>> pts(opts.samples);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : sampled, invariant, drift) reduction(min : margin) if (opts.parallel)
  for (int i = 0; i < opts.samples; ++i) {
    auto q = vivas_sample(dom, opts.seed, static_cast<std::uint64_t>(i), opts.max_tries);
    pts[i] = q;
    if (!q) continue;
    ++sampled;
    Point2 img = Fq(*q);
    double s = dom.slack(img);
    if (std::isfinite(s) && s > 0) {
      ++invariant;
      margin = std::min(margin, s);
    }
    double a0 = std::abs(arg_of(dom, *q));
    Point2 z = *q;
    bool ok = true;
    for (int k = 0; k < opts.drift_steps && ok; ++k) {
      z = Fq(z);
      ok = std::isfinite(z.norm()) && z.norm() < 10;
    }
    if (ok && std::abs(arg_of(dom, z)) <= a0 + 1e-12) ++drift;
  }
  rep.sampled = sampled;
  rep.invariant = invariant;
  rep.drift_ok = drift;
  rep.empty = sampled == 0;
  if (rep.empty) return rep;
  rep.invariance_rate = static_cast<double>(invariant) / sampled;
  rep.drift_rate = static_cast<double>(drift) / sampled;
  rep.min_margin = std::isfinite(margin) ? margin : 0;

  // exponent check along the orbit of the first sample
  Point2 z0;
  for (const auto& q : pts)
    if (q) {
      z0 = *q;
      break;
    }
  NumericOrbit o = iterate(Fq, z0, opts.exponent_steps);
  std::vector<double> lz, lu;
  for (const auto& p : o.points) {
    lz.push_back(std::log(std::abs(p.x)));
    lu.push_back(std::log(std::abs(p.y)));
  }
  // least-squares slopes of log|z| against log|u| over windows [n, 2n]
  std::vector<std::pair<int, double>> slopes;
  int last = static_cast<int>(o.points.size()) - 1;
  for (int n = 1; 2 * n <= last; n *= 2) {
    double su = 0, sz = 0, suu = 0, suz = 0;
    int cnt = 0;
    for (int k = n; k <= 2 * n; ++k) {
      su += lu[k];
      sz += lz[k];
      suu += lu[k] * lu[k];
      suz += lu[k] * lz[k];
      ++cnt;
    }
    double den = cnt * suu - su * su;
    double slope = den != 0 ? (cnt * suz - su * sz) / den : 0;
    slopes.emplace_back(n, slope);
  }
  if (!slopes.empty()) {
    rep.slope = slopes.back().second;
    for (size_t i = slopes.size(); i-- > 0;) {
      if (slopes[i].second < opts.exponent) break;
      rep.n0 = slopes[i].first;
    }
  }
  rep.exponent_ok = rep.n0 >= 0;
  if (rep.exponent_ok) {
    double C = 0;
    for (int k = rep.n0; k <= last; ++k) C = std::max(C, std::exp(lz[k] - opts.exponent * lu[k]));
    rep.constant = C;
  }
  return rep;
}

std::string VivasReport::json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["report"] = "vivas";
  j["samples"] = {{"requested", requested}, {"found", sampled}, {"empty", empty}};
  j["invariance"] = {{"passed", invariant}, {"rate", invariance_rate}, {"min_margin", min_margin}};
  j["drift"] = {{"passed", drift_ok}, {"rate", drift_rate}};
  j["exponent"] = {{"ok", exponent_ok}, {"n0", n0}, {"slope", slope}, {"C", constant}};
  return j.dump(2);
}

void write_orbit_csv(std::ostream& os, const NumericOrbit& orbit) {
  os << "n,re_x,im_x,re_y,im_y\n" << std::setprecision(17);
  for (size_t n = 0; n < orbit.points.size(); ++n) {
    const auto& p = orbit.points[n];
    os << n << ',' << p.x.real() << ',' << p.x.imag() << ',' << p.y.real() << ',' << p.y.imag() << '\n';
  }
}

}  // namespace ttid
