#pragma once

#include <string>

#include "ttid/algebra/jet.hpp"

namespace ttid {

// X = a ∂x + b ∂y
struct VectorField {
  Jet2 a, b;

  VectorField() = default;
  VectorField(Jet2 ax, Jet2 by) : a(std::move(ax)), b(std::move(by)) {}

  int prec() const { return prec_min(a.prec(), b.prec()); }
  bool exact() const { return a.exact() && b.exact(); }
  // Minimal order of the components (exact zero tests).
  int order() const;
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  VectorField truncated(int p) const { return {a.truncated(p), b.truncated(p)}; }
  VectorField homogeneous_part(int d) const { return {a.homogeneous_part(d), b.homogeneous_part(d)}; }
  VectorField swapped() const { return {b.swapped(), a.swapped()}; }
  VectorField scaled(const FieldElement& s) const { return {a.scaled(s), b.scaled(s)}; }
  // Lie derivative X(g), truncated at degree p.
  Jet2 apply(const Jet2& g, int p) const;

  VectorField operator+(const VectorField& o) const { return {a + o.a, b + o.b}; }
  VectorField operator-(const VectorField& o) const { return {a - o.a, b - o.b}; }
  bool operator==(const VectorField& o) const { return a == o.a && b == o.b; }
  bool agrees_with(const VectorField& o, int p) const { return a.agrees_with(o.a, p) && b.agrees_with(o.b, p); }

  std::string str(const std::string& vx = "x", const std::string& vy = "y") const;
};

// P_X = x B_{k+1} - y A_{k+1} for the first nonzero jet of degree k+1 = d.
Jet2 tangency_polynomial(const VectorField& X, int d);
bool is_dicritical(const VectorField& X);

}  // namespace ttid
