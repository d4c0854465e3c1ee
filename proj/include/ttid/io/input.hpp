#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttid/algebra/roots.hpp"
#include "ttid/germs/diffeo.hpp"

namespace ttid {

// Text input:
//   # comment
//   param c            (transcendental parameter, repeatable)
//   vars x t           (names of the two coordinates, default x y)
//   F.x = x + c*y + x^2
//   F.y = y - y^2      (rational expressions allowed: x/(1-x))
//   X.dx = x^2
//   X.dy = y^2
//   F = exp(X)         (the map is the time-1 flow of the field)
struct ParsedInput {
  std::vector<std::string> params;
  std::map<std::string, FieldElement> param_values;
  LevelPtr level;  // top of the parameter tower
  std::string vx = "x", vy = "y";
  std::optional<Diffeo> map;
  std::optional<VectorField> field;
};

ParsedInput parse_input(const std::string& text);
ParsedInput parse_input_file(const std::string& path);

// Constant expression in the declared parameters ("-c", "3/4").
FieldElement parse_constant(const std::string& text, const ParsedInput& ctx);
// Projective literal "[a:b]".
ProjPoint parse_direction(const std::string& text, const ParsedInput& ctx);
// "NAME=FLOAT" pairs.
NumericBindings parse_bindings(const std::vector<std::string>& items);

}  // namespace ttid
