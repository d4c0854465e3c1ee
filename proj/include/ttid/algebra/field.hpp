#pragma once

// Exact coefficient tower: Q, then transcendental generators (rational
// function fields), then algebraic generators given by squarefree defining
// polynomials.  Algebraic levels are handled by dynamic evaluation: a zero
// divisor met during an inversion or a zero test raises ZeroDivisorSplit with
// the two coprime factors of the defining polynomial, and the caller reruns on
// each branch.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttid/algebra/errors.hpp"

namespace ttid {

class FieldElement;
class Level;
using LevelPtr = std::shared_ptr<const Level>;

// Dense coefficient vector, index = degree.  Entries may live at any level of
// one tower chain; arithmetic lifts them as needed.
using Coeffs = std::vector<FieldElement>;

class Level {
 public:
  enum class Kind { Transcendental, Algebraic };

  Kind kind() const { return kind_; }
  bool algebraic() const { return kind_ == Kind::Algebraic; }
  const std::string& name() const { return name_; }
  const LevelPtr& parent() const { return parent_; }
  int depth() const { return depth_; }
  std::uint64_t id() const { return id_; }
  // Monic defining polynomial over the parent field (algebraic levels only).
  const Coeffs& modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(modulus_.size()) - 1; }

  Level(Kind kind, std::string name, LevelPtr parent, Coeffs modulus, std::uint64_t id);

 private:
  Kind kind_;
  std::string name_;
  LevelPtr parent_;
  int depth_;
  Coeffs modulus_;
  std::uint64_t id_;
};

// Registry of tower levels.  Levels are interned: asking twice for the same
// extension of the same parent returns the same object, which keeps reruns
// after a branch split deterministic.  Thread-safe.
LevelPtr adjoin_transcendental(const LevelPtr& parent, const std::string& name);
// `modulus` must be squarefree over the parent field; it is made monic.
LevelPtr adjoin_algebraic(const LevelPtr& parent, Coeffs modulus);

bool is_ancestor_or_self(const LevelPtr& ancestor, const LevelPtr& level);
// The deeper of two levels on one chain.  Throws IncompatibleTower otherwise.
LevelPtr deeper_level(const LevelPtr& a, const LevelPtr& b);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  FieldElement(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  FieldElement(const mpq_class& q) : q_(q) { q_.canonicalize(); }  // NOLINT
  static FieldElement fraction(long num, long den);
  static FieldElement generator(const LevelPtr& level);
  // Canonicalizing constructor from a raw representation at `level`.
  static FieldElement from_rep(const LevelPtr& level, Coeffs num, Coeffs den = {});

  const LevelPtr& level() const { return level_; }
  bool is_rational() const { return !level_; }
  const mpq_class& rational() const { return q_; }
  const Coeffs& num() const { return num_; }
  const Coeffs& den() const { return den_; }

  // Structural test on the canonical representation.
  bool rep_is_zero() const { return !level_ && sgn(q_) == 0; }
  bool rep_is_one() const { return !level_ && q_ == 1; }
  // Exact zero test.  At an algebraic level with a reducible modulus a nonzero
  // zero divisor raises ZeroDivisorSplit.
  bool is_zero() const;

  FieldElement inverse() const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement pow(int n) const;

  // Structural equality of canonical forms, i.e. equality in the ring.
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string str() const;
  // True when str() needs parentheses as a factor.
  bool compound() const;

 private:
  LevelPtr level_;
  mpq_class q_;
  Coeffs num_;
  Coeffs den_;  // transcendental levels only; empty means 1
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

// Thrown when dynamic evaluation meets a zero divisor.  `factor` and
// `cofactor` are monic, coprime, and multiply to the level's modulus.
class ZeroDivisorSplit : public Error {
 public:
  ZeroDivisorSplit(LevelPtr level, Coeffs factor, Coeffs cofactor);
  const LevelPtr& level() const { return level_; }
  const Coeffs& factor() const { return factor_; }
  const Coeffs& cofactor() const { return cofactor_; }

 private:
  LevelPtr level_;
  Coeffs factor_;
  Coeffs cofactor_;
};

// Dense univariate polynomial kernels over the tower.
namespace poly {
void trim(Coeffs& a);
int degree(const Coeffs& a);  // -1 for zero
Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs sub(const Coeffs& a, const Coeffs& b);
Coeffs mul(const Coeffs& a, const Coeffs& b);
Coeffs scale(const Coeffs& a, const FieldElement& s);
Coeffs neg(const Coeffs& a);
// a = q*b + r with deg r < deg b.  Inverts lc(b).
void divmod(const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r);
Coeffs rem(const Coeffs& a, const Coeffs& b);
Coeffs quo(const Coeffs& a, const Coeffs& b);
Coeffs monic(const Coeffs& a);
Coeffs gcd(const Coeffs& a, const Coeffs& b);
// Returns monic g = gcd(a, b) and s with s*a == g (mod b).
Coeffs ext_gcd(const Coeffs& a, const Coeffs& b, Coeffs& s);
Coeffs derivative(const Coeffs& a);
FieldElement eval(const Coeffs& a, const FieldElement& x);
// a(x + shift)
Coeffs taylor_shift(const Coeffs& a, const FieldElement& shift);
bool equal(const Coeffs& a, const Coeffs& b);
std::string str(const Coeffs& a, const std::string& var);
// Join (coefficient, monomial) pairs in display order into canonical text.
std::string format_terms(const std::vector<std::pair<FieldElement, std::string>>& terms);
}  // namespace poly

// Exact square root inside the tower, when one exists at a non-algebraic level.
std::optional<FieldElement> sqrt_exact(const FieldElement& e);

// Rational value of `e` if it has one.  Elements carrying a transcendental
// generator are treated as non-rational (generic parameters).  For algebraic
// levels over rational data, a value that is rational on some branches only
// raises ZeroDivisorSplit.
std::optional<mpq_class> rational_value(const FieldElement& e);

// Numeric evaluation with generator bindings (by generator name).
using NumericBindings = std::map<std::string, std::complex<double>>;
std::complex<double> evaluate(const FieldElement& e, const NumericBindings& bindings);

}  // namespace ttid
