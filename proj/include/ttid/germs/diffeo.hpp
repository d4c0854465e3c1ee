#pragma once

#include <array>
#include <string>
#include <utility>

#include "ttid/germs/vector_field.hpp"

namespace ttid {

// Germ of a map of (K^2, 0).  Three carriers:
//   Rational   exact components Nx/Dx, Ny/Dy (polynomial maps have D = 1)
//   Generator  exp(X) for an exact polynomial vector field X
//   Jet        truncated components only
class Diffeo {
 public:
  enum class Kind { Rational, Generator, Jet };

  Diffeo() = default;
  static Diffeo rational(Jet2 nx, Jet2 dx, Jet2 ny, Jet2 dy);
  static Diffeo polynomial(Jet2 fx, Jet2 fy);
  static Diffeo exp_of(VectorField X);
  static Diffeo jet(Jet2 fx, Jet2 fy);

  Kind kind() const { return kind_; }
  bool exact() const { return kind_ != Kind::Jet; }
  const Jet2& num_x() const { return nx_; }
  const Jet2& den_x() const { return dx_; }
  const Jet2& num_y() const { return ny_; }
  const Jet2& den_y() const { return dy_; }
  const VectorField& generator() const { return gen_; }
  int prec() const;

  // Components certified to degree N.
  std::pair<Jet2, Jet2> jets(int N) const;
  // Rows of the linear part: x' = l[0] x + l[1] y, y' = l[2] x + l[3] y.
  std::array<FieldElement, 4> linear_part() const;
  bool tangent_to_identity() const;
  // Order of F - id (k + 1 for a tangent to the identity germ).
  int order() const;

  std::string str(const std::string& vx = "x", const std::string& vy = "y") const;

 private:
  Kind kind_ = Kind::Jet;
  Jet2 nx_, dx_, ny_, dy_;
  VectorField gen_;
};

// F o G to degree N (G without constant term).
std::pair<Jet2, Jet2> compose(const std::pair<Jet2, Jet2>& F, const std::pair<Jet2, Jet2>& G, int N);

}  // namespace ttid
