#include "ttid/algebra/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ttid {

UniPoly gcd(const UniPoly& p, const UniPoly& q) { return UniPoly(poly::gcd(p.coeffs, q.coeffs), p.var); }

std::vector<std::pair<Coeffs, int>> squarefree_decomposition(const Coeffs& p) {
  std::vector<std::pair<Coeffs, int>> out;
  Coeffs f = poly::monic(p);
  if (poly::degree(f) < 1) return out;
  Coeffs df = poly::derivative(f);
  Coeffs a = poly::gcd(f, df);
  Coeffs b = poly::quo(f, a);
  Coeffs c = poly::quo(df, a);
  Coeffs d = poly::sub(c, poly::derivative(b));
  for (int i = 1; poly::degree(b) > 0; ++i) {
    Coeffs ai = poly::gcd(b, d);
    Coeffs bn = poly::quo(b, ai);
    Coeffs cn = poly::quo(d, ai);
    if (poly::degree(ai) > 0) out.emplace_back(ai, i);
    b = std::move(bn);
    d = poly::sub(cn, poly::derivative(b));
  }
  return out;
}

bool has_rational_coefficients(const Coeffs& p) {
  return std::all_of(p.begin(), p.end(), [](const FieldElement& c) { return c.is_rational(); });
}

namespace {

using cld = std::complex<long double>;

std::vector<cld> numeric_roots(const std::vector<long double>& monic_coeffs) {
  int n = static_cast<int>(monic_coeffs.size()) - 1;
  std::vector<cld> z(n);
  long double bound = 1;
  for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(monic_coeffs[i]));
  for (int i = 0; i < n; ++i) z[i] = std::polar(bound * 0.5L, 2.0L * M_PI * i / n + 0.4L);
  auto eval = [&](cld x, cld& deriv) {
    cld v = 1, d = 0;
    for (int k = n - 1; k >= 0; --k) {
      d = d * x + v;
      v = v * x + monic_coeffs[k];
    }
    deriv = d;
    return v;
  };
  // Aberth iteration
  for (int it = 0; it < 800; ++it) {
    long double moved = 0;
    for (int i = 0; i < n; ++i) {
      cld d;
      cld v = eval(z[i], d);
      if (v == cld(0)) continue;
      cld ratio = v / d;
      cld s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      cld step = ratio / (1.0L - ratio * s);
      z[i] -= step;
      moved = std::max(moved, std::abs(step) / (1 + std::abs(z[i])));
    }
    if (moved < 1e-18L) break;
  }
  return z;
}

mpq_class eval_q(const std::vector<mpq_class>& c, const mpq_class& x) {
  mpq_class r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

}  // namespace

std::vector<mpq_class> rational_roots_of(const Coeffs& p0) {
  Coeffs p = p0;
  poly::trim(p);
  std::vector<mpq_class> roots;
  if (poly::degree(p) < 1) return roots;
  if (!has_rational_coefficients(p)) throw InvalidArgument("rational_roots_of needs rational coefficients");
  std::vector<mpq_class> c;
  for (const auto& e : p) c.push_back(e.rational());
  size_t lead_zero = 0;
  while (lead_zero < c.size() && sgn(c[lead_zero]) == 0) ++lead_zero;
  if (lead_zero > 0) {
    roots.emplace_back(0);
    c.erase(c.begin(), c.begin() + static_cast<long>(lead_zero));
  }
  if (c.size() < 2) return roots;
  // Integer leading coefficient of the primitive integer multiple.
  mpz_class den_lcm = 1;
  for (const auto& q : c) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  mpz_class lead = abs(mpz_class(c.back() * den_lcm));
  std::vector<long double> m;
  for (const auto& q : c) m.push_back(static_cast<long double>(mpq_class(q / c.back()).get_d()));
  std::vector<mpq_class> found;
  auto try_candidate = [&](const mpq_class& cand) {
    if (std::find(found.begin(), found.end(), cand) != found.end()) return;
    if (sgn(eval_q(c, cand)) == 0) found.push_back(cand);
  };
  for (const cld& z : numeric_roots(m)) {
    long double re = z.real();
    if (std::fabs(z.imag()) > 1e-6L * (1 + std::fabs(re))) continue;
    if (!std::isfinite(static_cast<double>(re))) continue;
    // candidate with denominator dividing the leading coefficient
    if (lead.get_d() < 1e15) {
      mpz_class num(static_cast<double>(std::llround(re * lead.get_d())));
      mpq_class cand(num, lead);
      cand.canonicalize();
      try_candidate(cand);
    }
    // continued-fraction convergents
    long double x = re;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    for (int it = 0; it < 40; ++it) {
      long double a = std::floor(x);
      if (std::fabs(a) > 1e18L) break;
      mpz_class ai(static_cast<double>(a));
      mpz_class h = ai * h0 + h1, k = ai * k0 + k1;
      h1 = h0;
      h0 = h;
      k1 = k0;
      k0 = k;
      mpq_class cand(h0, k0);
      cand.canonicalize();
      if (mpz_divisible_p(lead.get_mpz_t(), cand.get_den_mpz_t())) try_candidate(cand);
      long double frac = x - a;
      if (frac < 1e-15L) break;
      x = 1 / frac;
    }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

FieldElement trace(const FieldElement& value, const LevelPtr& level) {
  int d = level->degree();
  if (value.level() != level) {
    if (!is_ancestor_or_self(value.level(), level)) throw IncompatibleTower("trace of an element above the level");
    return value * FieldElement(d);
  }
  FieldElement tr;
  Coeffs basis{FieldElement(1)};
  for (int j = 0; j < d; ++j) {
    Coeffs col = poly::rem(poly::mul(value.num(), basis), level->modulus());
    if (j < static_cast<int>(col.size())) tr += col[j];
    basis.insert(basis.begin(), FieldElement());
  }
  return tr;
}

}  // namespace ttid
