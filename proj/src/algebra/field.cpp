#include "ttid/algebra/field.hpp"

#include "ttid/algebra/upoly.hpp"

#include <mutex>
#include <sstream>

namespace ttid {

// ---------------------------------------------------------------------------
// Levels and registry

Level::Level(Kind kind, std::string name, LevelPtr parent, Coeffs modulus, std::uint64_t id)
    : kind_(kind),
      name_(std::move(name)),
      parent_(std::move(parent)),
      depth_(parent_ ? parent_->depth() + 1 : 1),
      modulus_(std::move(modulus)),
      id_(id) {}

namespace {

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint64_t, std::string>, LevelPtr> levels;
  std::uint64_t next_id = 1;
};

Registry& registry() {
  static Registry r;
  return r;
}

int algebraic_ancestors(const LevelPtr& l) {
  int n = 0;
  for (const Level* p = l.get(); p; p = p->parent().get()) n += p->algebraic() ? 1 : 0;
  return n;
}

}  // namespace

LevelPtr adjoin_transcendental(const LevelPtr& parent, const std::string& name) {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(parent ? parent->id() : 0, "T:" + name);
  if (auto it = reg.levels.find(key); it != reg.levels.end()) return it->second;
  auto level = std::make_shared<const Level>(Level::Kind::Transcendental, name, parent, Coeffs{},
                                             reg.next_id++);
  reg.levels.emplace(key, level);
  return level;
}

LevelPtr adjoin_algebraic(const LevelPtr& parent, Coeffs modulus) {
  poly::trim(modulus);
  if (poly::degree(modulus) < 1) throw InvalidArgument("defining polynomial must have degree >= 1");
  modulus = poly::monic(modulus);
  if (poly::degree(poly::gcd(modulus, poly::derivative(modulus))) > 0)
    throw NotSquarefree("defining polynomial " + poly::str(modulus, "t") + " is not squarefree");
  auto key = std::make_pair(parent ? parent->id() : 0, "A:" + poly::str(modulus, "t"));
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  if (auto it = reg.levels.find(key); it != reg.levels.end()) return it->second;
  std::string name = "a" + std::to_string(algebraic_ancestors(parent) + 1);
  auto level = std::make_shared<const Level>(Level::Kind::Algebraic, name, parent, std::move(modulus),
                                             reg.next_id++);
  reg.levels.emplace(key, level);
  return level;
}

bool is_ancestor_or_self(const LevelPtr& ancestor, const LevelPtr& level) {
  if (!ancestor) return true;
  for (const Level* p = level.get(); p; p = p->parent().get())
    if (p == ancestor.get()) return true;
  return false;
}

LevelPtr deeper_level(const LevelPtr& a, const LevelPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  const LevelPtr& deep = a->depth() >= b->depth() ? a : b;
  const LevelPtr& shallow = a->depth() >= b->depth() ? b : a;
  if (!is_ancestor_or_self(shallow, deep))
    throw IncompatibleTower("generators " + a->name() + " and " + b->name() + " are unrelated");
  return deep;
}

ZeroDivisorSplit::ZeroDivisorSplit(LevelPtr level, Coeffs factor, Coeffs cofactor)
    : Error("ZeroDivisorSplit", "zero divisor at generator " + level->name() + ": " +
                                    poly::str(factor, "t") + " | " + poly::str(level->modulus(), "t")),
      level_(std::move(level)),
      factor_(std::move(factor)),
      cofactor_(std::move(cofactor)) {}

// ---------------------------------------------------------------------------
// Polynomial kernels

namespace poly {

void trim(Coeffs& a) {
  while (!a.empty() && a.back().rep_is_zero()) a.pop_back();
}

int degree(const Coeffs& a) {
  int d = static_cast<int>(a.size()) - 1;
  while (d >= 0 && a[d].rep_is_zero()) --d;
  return d;
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = a[i] + b[i];
    else
      r[i] = i < a.size() ? a[i] : b[i];
  }
  trim(r);
  return r;
}

Coeffs neg(const Coeffs& a) {
  Coeffs r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(-c);
  return r;
}

Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = a[i] - b[i];
    else
      r[i] = i < a.size() ? a[i] : -b[i];
  }
  trim(r);
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].rep_is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].rep_is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

Coeffs scale(const Coeffs& a, const FieldElement& s) {
  if (s.rep_is_zero()) return {};
  if (s.rep_is_one()) return a;
  Coeffs r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(c * s);
  trim(r);
  return r;
}

void divmod(const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r) {
  int db = degree(b);
  if (db < 0) throw DivisionByZero("polynomial division by zero");
  r = a;
  trim(r);
  int da = degree(r);
  q.assign(da >= db ? da - db + 1 : 0, FieldElement());
  if (da < db) return;
  FieldElement inv_lc = b[db].inverse();
  for (int i = da - db; i >= 0; --i) {
    if (r[i + db].rep_is_zero()) continue;
    FieldElement coef = r[i + db] * inv_lc;
    q[i] = coef;
    for (int j = 0; j < db; ++j)
      if (!b[j].rep_is_zero()) r[i + j] -= coef * b[j];
    r[i + db] = FieldElement();
  }
  trim(q);
  trim(r);
}

Coeffs rem(const Coeffs& a, const Coeffs& b) {
  Coeffs q, r;
  divmod(a, b, q, r);
  return r;
}

Coeffs quo(const Coeffs& a, const Coeffs& b) {
  Coeffs q, r;
  divmod(a, b, q, r);
  return q;
}

Coeffs monic(const Coeffs& a) {
  Coeffs r = a;
  trim(r);
  if (r.empty() || r.back().rep_is_one()) return r;
  FieldElement inv = r.back().inverse();
  for (auto& c : r) c *= inv;
  r.back() = FieldElement(1);
  return r;
}

Coeffs gcd(const Coeffs& a0, const Coeffs& b0) {
  Coeffs a = a0, b = b0;
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Coeffs ext_gcd(const Coeffs& a, const Coeffs& b, Coeffs& s) {
  Coeffs r0 = a, r1 = b;
  trim(r0);
  trim(r1);
  Coeffs s0{FieldElement(1)}, s1;
  while (!r1.empty()) {
    Coeffs q, r;
    divmod(r0, r1, q, r);
    Coeffs s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.empty()) {
    s.clear();
    return r0;
  }
  FieldElement inv = r0.back().inverse();
  s = scale(s0, inv);
  if (degree(b) > 0) s = rem(s, b);
  return scale(r0, inv);
}

Coeffs derivative(const Coeffs& a) {
  Coeffs r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * FieldElement(static_cast<long>(i)));
  trim(r);
  return r;
}

FieldElement eval(const Coeffs& a, const FieldElement& x) {
  FieldElement r;
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

Coeffs taylor_shift(const Coeffs& a, const FieldElement& shift) {
  if (shift.rep_is_zero()) return a;
  Coeffs r;
  Coeffs lin{shift, FieldElement(1)};
  for (size_t i = a.size(); i-- > 0;) {
    r = mul(r, lin);
    if (r.empty()) r.resize(1);
    r[0] += a[i];
    trim(r);
  }
  return r;
}

bool equal(const Coeffs& a, const Coeffs& b) {
  int da = degree(a), db = degree(b);
  if (da != db) return false;
  for (int i = 0; i <= da; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::string format_terms(const std::vector<std::pair<FieldElement, std::string>>& terms) {
  std::string out;
  for (const auto& [c, mono] : terms) {
    if (c.rep_is_zero()) continue;
    bool negative = false;
    std::string coef;
    if (c.is_rational()) {
      negative = sgn(c.rational()) < 0;
      mpq_class mag = abs(c.rational());
      if (mag != 1 || mono.empty()) coef = mag.get_str();
    } else if (!c.compound()) {
      coef = c.str();
    } else if (FieldElement n = -c; !n.compound()) {
      negative = true;
      coef = n.str();
    } else {
      coef = mono.empty() ? c.str() : "(" + c.str() + ")";
    }
    std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string str(const Coeffs& a, const std::string& var) {
  std::vector<std::pair<FieldElement, std::string>> terms;
  for (int k = degree(a); k >= 0; --k)
    terms.emplace_back(a[k], k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k)));
  return format_terms(terms);
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Field elements

namespace {

// Trim and collapse an already reduced representation.
FieldElement make_reduced(const LevelPtr& level, Coeffs num, Coeffs den) {
  poly::trim(num);
  poly::trim(den);
  if (num.empty()) return FieldElement();
  if (den.size() == 1) {  // constant denominator: fold into numerator
    num = poly::scale(num, den[0].inverse());
    den.clear();
  }
  if (den.empty() && num.size() == 1) return num[0];
  return FieldElement::from_rep(level, std::move(num), std::move(den));
}

}  // namespace

FieldElement FieldElement::fraction(long num, long den) {
  if (den == 0) throw DivisionByZero();
  mpq_class q(num, den);
  q.canonicalize();
  return FieldElement(q);
}

FieldElement FieldElement::generator(const LevelPtr& level) {
  if (!level) throw InvalidArgument("Q has no generator");
  if (level->algebraic() && level->degree() == 1) return -level->modulus()[0];
  return from_rep(level, Coeffs{FieldElement(), FieldElement(1)});
}

FieldElement FieldElement::from_rep(const LevelPtr& level, Coeffs num, Coeffs den) {
  poly::trim(num);
  poly::trim(den);
  if (!level) return num.empty() ? FieldElement() : num[0];
  if (num.empty()) return FieldElement();
  if (level->algebraic()) {
    if (poly::degree(num) >= level->degree()) num = poly::rem(num, level->modulus());
    if (num.empty()) return FieldElement();
    if (num.size() == 1) return num[0];
  } else {
    if (den.size() == 1) {
      num = poly::scale(num, den[0].inverse());
      den.clear();
    }
    if (!den.empty()) {
      Coeffs g = poly::gcd(num, den);
      if (poly::degree(g) > 0) {
        num = poly::quo(num, g);
        den = poly::quo(den, g);
      }
      if (!den.back().rep_is_one()) {
        FieldElement inv = den.back().inverse();
        num = poly::scale(num, inv);
        den = poly::scale(den, inv);
        den.back() = FieldElement(1);
      }
      if (den.size() == 1) den.clear();
    }
    if (den.empty() && num.size() == 1) return num[0];
  }
  FieldElement e;
  e.level_ = level;
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  return e;
}

bool FieldElement::is_zero() const {
  if (!level_) return sgn(q_) == 0;
  if (level_->algebraic()) {
    Coeffs g = poly::gcd(num_, level_->modulus());
    if (poly::degree(g) <= 0) return false;
    throw ZeroDivisorSplit(level_, g, poly::quo(level_->modulus(), g));
  }
  // Rational-function level: zero iff every numerator coefficient vanishes.
  for (const auto& c : num_)
    if (c.is_rational() && !c.rep_is_zero()) return false;
  for (const auto& c : num_)
    if (!c.rep_is_zero() && !c.is_zero()) return false;
  return true;
}

FieldElement FieldElement::inverse() const {
  if (!level_) {
    if (sgn(q_) == 0) throw DivisionByZero();
    return FieldElement(mpq_class(1) / q_);
  }
  if (level_->algebraic()) {
    Coeffs s;
    Coeffs g = poly::ext_gcd(num_, level_->modulus(), s);
    if (poly::degree(g) > 0) throw ZeroDivisorSplit(level_, g, poly::quo(level_->modulus(), g));
    return make_reduced(level_, std::move(s), {});
  }
  Coeffs den = den_.empty() ? Coeffs{FieldElement(1)} : den_;
  FieldElement inv_lc = num_.back().inverse();
  Coeffs new_den = poly::scale(num_, inv_lc);
  new_den.back() = FieldElement(1);
  return make_reduced(level_, poly::scale(den, inv_lc), std::move(new_den));
}

FieldElement FieldElement::operator-() const {
  if (!level_) return FieldElement(mpq_class(-q_));
  FieldElement e = *this;
  for (auto& c : e.num_) c = -c;
  return e;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (!level_ && !o.level_) {
    q_ += o.q_;
    return *this;
  }
  if (o.rep_is_zero()) return *this;
  if (rep_is_zero()) return *this = o;
  LevelPtr L = deeper_level(level_, o.level_);
  if (level_ == L && o.level_ == L) {
    if (L->algebraic()) {
      *this = make_reduced(L, poly::add(num_, o.num_), {});
    } else if (poly::equal(den_, o.den_)) {
      *this = from_rep(L, poly::add(num_, o.num_), den_);
    } else {
      Coeffs da = den_.empty() ? Coeffs{FieldElement(1)} : den_;
      Coeffs db = o.den_.empty() ? Coeffs{FieldElement(1)} : o.den_;
      *this = from_rep(L, poly::add(poly::mul(num_, db), poly::mul(o.num_, da)), poly::mul(da, db));
    }
    return *this;
  }
  const FieldElement& deep = level_ == L ? *this : o;
  const FieldElement& c = level_ == L ? o : *this;
  Coeffs num = deep.num_;
  if (deep.den_.empty()) {
    if (num.empty()) num.resize(1);
    num[0] += c;
  } else {
    num = poly::add(num, poly::scale(deep.den_, c));
  }
  Coeffs den = deep.den_;
  *this = make_reduced(L, std::move(num), std::move(den));
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  if (!level_ && !o.level_) {
    q_ -= o.q_;
    return *this;
  }
  return *this += -o;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  if (!level_ && !o.level_) {
    q_ *= o.q_;
    return *this;
  }
  if (rep_is_zero() || o.rep_is_zero()) return *this = FieldElement();
  if (o.rep_is_one()) return *this;
  if (rep_is_one()) return *this = o;
  LevelPtr L = deeper_level(level_, o.level_);
  if (level_ == L && o.level_ == L) {
    if (L->algebraic()) {
      *this = from_rep(L, poly::mul(num_, o.num_));
      return *this;
    }
    Coeffs na = num_, nb = o.num_, da = den_, db = o.den_;
    if (!db.empty()) {
      Coeffs g = poly::gcd(na, db);
      if (poly::degree(g) > 0) {
        na = poly::quo(na, g);
        db = poly::quo(db, g);
      }
    }
    if (!da.empty()) {
      Coeffs g = poly::gcd(nb, da);
      if (poly::degree(g) > 0) {
        nb = poly::quo(nb, g);
        da = poly::quo(da, g);
      }
    }
    Coeffs den;
    if (da.empty())
      den = db;
    else if (db.empty())
      den = da;
    else
      den = poly::mul(da, db);
    *this = make_reduced(L, poly::mul(na, nb), std::move(den));
    return *this;
  }
  const FieldElement& deep = level_ == L ? *this : o;
  const FieldElement& c = level_ == L ? o : *this;
  *this = make_reduced(L, poly::scale(deep.num_, c), deep.den_);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  if (!level_ && !o.level_) {
    if (sgn(o.q_) == 0) throw DivisionByZero();
    q_ /= o.q_;
    return *this;
  }
  return *this *= o.inverse();
}

FieldElement FieldElement::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  FieldElement result(1), base = *this;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (level_ != o.level_) return false;
  if (!level_) return q_ == o.q_;
  return poly::equal(num_, o.num_) && poly::equal(den_, o.den_);
}

std::string FieldElement::str() const {
  if (!level_) return q_.get_str();
  std::string n = poly::str(num_, level_->name());
  if (den_.empty()) return n;
  return "(" + n + ")/(" + poly::str(den_, level_->name()) + ")";
}

bool FieldElement::compound() const {
  if (!level_) return false;
  if (!den_.empty()) return true;
  int nonzero = 0;
  for (const auto& c : num_) nonzero += c.rep_is_zero() ? 0 : 1;
  return nonzero > 1 || !num_.back().rep_is_one();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.str(); }

// ---------------------------------------------------------------------------
// Square roots, rationality, numeric evaluation

namespace {

std::optional<Coeffs> monic_poly_sqrt(const Coeffs& p) {
  int d = poly::degree(p);
  if (d < 0) return Coeffs{};
  if (d % 2) return std::nullopt;
  int n = d / 2;
  Coeffs s(n + 1);
  s[n] = FieldElement(1);
  FieldElement half = FieldElement::fraction(1, 2);
  for (int k = n - 1; k >= 0; --k) {
    FieldElement acc = p[n + k];
    for (int i = k + 1; i <= n; ++i) {
      int j = n + k - i;
      if (j > k && j <= n) acc -= s[i] * s[j];
    }
    s[k] = acc * half;
  }
  if (!poly::equal(poly::mul(s, s), p)) return std::nullopt;
  return s;
}

std::optional<Coeffs> poly_sqrt(const Coeffs& p) {
  Coeffs q = p;
  poly::trim(q);
  if (q.empty()) return Coeffs{};
  auto root_lc = sqrt_exact(q.back());
  if (!root_lc) return std::nullopt;
  auto s = monic_poly_sqrt(poly::monic(q));
  if (!s) return std::nullopt;
  return poly::scale(*s, *root_lc);
}

// Characteristic polynomial of multiplication by `e` on K[t]/(m).
Coeffs charpoly(const Coeffs& e, const Coeffs& m) {
  int d = poly::degree(m);
  using Matrix = std::vector<std::vector<FieldElement>>;
  Matrix M(d, std::vector<FieldElement>(d));
  Coeffs basis{FieldElement(1)};
  for (int j = 0; j < d; ++j) {
    Coeffs col = poly::rem(poly::mul(e, basis), m);
    for (int i = 0; i < d && i < static_cast<int>(col.size()); ++i) M[i][j] = col[i];
    basis.insert(basis.begin(), FieldElement());
  }
  auto matmul = [d](const Matrix& A, const Matrix& B) {
    Matrix C(d, std::vector<FieldElement>(d));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        if (A[i][k].rep_is_zero()) continue;
        for (int j = 0; j < d; ++j) C[i][j] += A[i][k] * B[k][j];
      }
    return C;
  };
  // Faddeev-LeVerrier
  Coeffs c(d + 1);
  c[d] = FieldElement(1);
  Matrix Mk(d, std::vector<FieldElement>(d));
  for (int k = 1; k <= d; ++k) {
    Matrix next = matmul(M, Mk);
    for (int i = 0; i < d; ++i) next[i][i] += c[d - k + 1];
    Mk = std::move(next);
    Matrix AM = matmul(M, Mk);
    FieldElement tr;
    for (int i = 0; i < d; ++i) tr += AM[i][i];
    c[d - k] = -tr / FieldElement(static_cast<long>(k));
  }
  return c;
}

}  // namespace

std::optional<FieldElement> sqrt_exact(const FieldElement& e) {
  if (e.is_rational()) {
    const mpq_class& q = e.rational();
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return FieldElement();
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
      return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return FieldElement(mpq_class(n, d));
  }
  if (e.level()->algebraic()) return std::nullopt;
  auto n = poly_sqrt(e.num());
  if (!n) return std::nullopt;
  Coeffs den = e.den().empty() ? Coeffs{FieldElement(1)} : e.den();
  auto d = poly_sqrt(den);
  if (!d) return std::nullopt;
  return FieldElement::from_rep(e.level(), *n, *d);
}

std::optional<mpq_class> rational_value(const FieldElement& e) {
  if (e.is_rational()) return e.rational();
  const LevelPtr& L = e.level();
  if (!L->algebraic()) return std::nullopt;
  Coeffs chi = charpoly(e.num(), L->modulus());
  for (const auto& c : chi)
    if (!c.is_rational()) return std::nullopt;
  for (const mpq_class& q : rational_roots_of(chi)) {
    Coeffs shifted = e.num();
    shifted[0] -= FieldElement(q);
    Coeffs g = poly::gcd(shifted, L->modulus());
    int dg = poly::degree(g);
    if (dg <= 0) continue;
    if (dg == L->degree()) return q;
    throw ZeroDivisorSplit(L, g, poly::quo(L->modulus(), g));
  }
  return std::nullopt;
}

std::complex<double> evaluate(const FieldElement& e, const NumericBindings& bindings) {
  if (e.is_rational()) return {e.rational().get_d(), 0.0};
  const LevelPtr& L = e.level();
  auto it = bindings.find(L->name());
  if (it == bindings.end()) throw InvalidArgument("no numeric binding for generator " + L->name());
  auto horner = [&](const Coeffs& p) {
    std::complex<double> r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * it->second + evaluate(p[i], bindings);
    return r;
  };
  std::complex<double> v = horner(e.num());
  if (!e.den().empty()) v /= horner(e.den());
  return v;
}

}  // namespace ttid
