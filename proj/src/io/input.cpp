#include "ttid/io/input.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ttid/algebra/bipoly.hpp"

namespace ttid {

namespace {

struct RatFun {
  Jet2 num, den;
};

Jet2 one() { return Jet2::constant(FieldElement(1)); }

RatFun normalize(RatFun r) {
  if (r.den.is_zero()) throw DivisionByZero("division by zero in expression");
  if (r.den.max_degree() <= 0) {
    FieldElement d = r.den.coeff(0, 0);
    return {r.num.scaled(d.inverse()), one()};
  }
  if (r.num.is_zero()) return {Jet2(), one()};
  Jet2 g = bipoly_gcd(r.num, r.den);
  if (g.max_degree() > 0) {
    r.num = r.num.divide_exact(g);
    r.den = r.den.divide_exact(g);
  }
  return r;
}

class Parser {
 public:
  Parser(const std::string& s, int line, int col0, const ParsedInput& ctx, bool constants_only)
      : s_(s), line_(line), col0_(col0), ctx_(ctx), constants_only_(constants_only) {}

  RatFun parse_all() {
    RatFun r = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + static_cast<int>(pos_) + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFun expr() {
    RatFun r = term();
    for (;;) {
      if (eat('+')) {
        RatFun t = term();
        r = normalize({r.num * t.den + t.num * r.den, r.den * t.den});
      } else if (eat('-')) {
        RatFun t = term();
        r = normalize({r.num * t.den - t.num * r.den, r.den * t.den});
      } else {
        return r;
      }
    }
  }

  RatFun term() {
    RatFun r = unary();
    for (;;) {
      if (eat('*')) {
        RatFun t = unary();
        r = normalize({r.num * t.num, r.den * t.den});
      } else if (eat('/')) {
        size_t at = pos_;
        RatFun t = unary();
        if (t.num.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        r = normalize({r.num * t.den, r.den * t.num});
      } else {
        return r;
      }
    }
  }

  RatFun unary() {
    if (eat('-')) {
      RatFun r = unary();
      return {-r.num, r.den};
    }
    if (eat('+')) return unary();
    return power();
  }

  RatFun power() {
    RatFun base = atom();
    if (!eat('^')) return base;
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    if (pos_ - start > 4) {
      pos_ = start;
      fail("exponent too large");
    }
    int e = std::stoi(s_.substr(start, pos_ - start));
    RatFun r{one(), one()};
    for (int i = 0; i < e; ++i) r = {r.num * base.num, r.den * base.den};
    return normalize(r);
  }

  RatFun atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) fail("floating literals are not allowed");
      mpq_class v(s_.substr(start, pos_ - start));
      return {Jet2::constant(FieldElement(v)), one()};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (!constants_only_ && id == ctx_.vx) return {Jet2::var_x(), one()};
      if (!constants_only_ && id == ctx_.vy) return {Jet2::var_y(), one()};
      auto it = ctx_.param_values.find(id);
      if (it != ctx_.param_values.end()) return {Jet2::constant(it->second), one()};
      pos_ = start;
      fail("unknown name '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_, col0_;
  const ParsedInput& ctx_;
  bool constants_only_;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

ParsedInput parse_input(const std::string& text) {
  ParsedInput in;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  std::optional<RatFun> fx, fy;
  std::optional<Jet2> dx, dy;
  bool exp_map = false;
  int exp_line = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    int indent = static_cast<int>(line.find_first_not_of(" \t"));
    std::string body = trim(line);
    std::istringstream ws(body);
    std::string head;
    ws >> head;
    if (head == "param" || head == "vars") {
      std::vector<std::string> names;
      for (std::string n; ws >> n;) {
        if (!valid_name(n)) throw ParseError("invalid name '" + n + "'", lineno, indent + static_cast<int>(body.find(n)) + 1);
        names.push_back(n);
      }
      if (head == "param") {
        if (names.empty()) throw ParseError("param needs a name", lineno, indent + 1);
        for (const auto& n : names) {
          if (in.param_values.count(n) || n == in.vx || n == in.vy)
            throw ParseError("name '" + n + "' already declared", lineno, indent + static_cast<int>(body.find(n)) + 1);
          in.level = adjoin_transcendental(in.level, n);
          in.params.push_back(n);
          in.param_values[n] = FieldElement::generator(in.level);
        }
      } else {
        if (names.size() != 2) throw ParseError("vars needs exactly two names", lineno, indent + 1);
        if (names[0] == names[1]) throw ParseError("coordinate names must differ", lineno, indent + 1);
        for (const auto& n : names)
          if (in.param_values.count(n)) throw ParseError("name '" + n + "' is a parameter", lineno, indent + 1);
        in.vx = names[0];
        in.vy = names[1];
      }
      continue;
    }
    size_t eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = expression'", lineno, indent + 1);
    std::string lhs = trim(body.substr(0, eq));
    std::string rhs = body.substr(eq + 1);
    int col0 = indent + static_cast<int>(eq) + 1;
    if (lhs == "F" && trim(rhs) == "exp(X)") {
      exp_map = true;
      exp_line = lineno;
      continue;
    }
    auto parse_rhs = [&] { return Parser(rhs, lineno, col0, in, false).parse_all(); };
    auto polynomial = [&](const RatFun& r) {
      if (r.den.max_degree() > 0) throw ParseError("vector field components must be polynomial", lineno,
                         col0 + 1 + static_cast<int>(rhs.find_first_not_of(" \t")));
      return r.num;
    };
    if (lhs == "F.x") {
      fx = parse_rhs();
    } else if (lhs == "F.y") {
      fy = parse_rhs();
    } else if (lhs == "X.dx") {
      dx = polynomial(parse_rhs());
    } else if (lhs == "X.dy") {
      dy = polynomial(parse_rhs());
    } else {
      throw ParseError("unknown target '" + lhs + "'", lineno, indent + 1);
    }
  }
  if (dx.has_value() != dy.has_value()) throw ParseError("vector field needs both X.dx and X.dy", lineno, 1);
  if (fx.has_value() != fy.has_value()) throw ParseError("map needs both F.x and F.y", lineno, 1);
  if (dx) in.field = VectorField(*dx, *dy);
  if (exp_map) {
    if (fx) throw ParseError("F given twice", exp_line, 1);
    if (!in.field) throw ParseError("F = exp(X) needs X.dx and X.dy", exp_line, 1);
    in.map = Diffeo::exp_of(*in.field);
  } else if (fx) {
    bool poly = fx->den.max_degree() <= 0 && fy->den.max_degree() <= 0;
    in.map = poly ? Diffeo::polynomial(fx->num, fy->num) : Diffeo::rational(fx->num, fx->den, fy->num, fy->den);
  }
  if (!in.map && !in.field) throw ParseError("input defines neither a map nor a vector field", lineno, 1);
  return in;
}

ParsedInput parse_input_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_input(ss.str());
}

FieldElement parse_constant(const std::string& text, const ParsedInput& ctx) {
  RatFun r = Parser(text, 1, 0, ctx, true).parse_all();
  return r.num.coeff(0, 0) / r.den.coeff(0, 0);
}

ProjPoint parse_direction(const std::string& text, const ParsedInput& ctx) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ParseError("direction must look like [a:b]", 1, 1);
  size_t colon = t.find(':');
  if (colon == std::string::npos) throw ParseError("direction must look like [a:b]", 1, 1);
  FieldElement a = Parser(t.substr(1, colon - 1), 1, 1, ctx, true).parse_all().num.coeff(0, 0);
  std::string bs = t.substr(colon + 1, t.size() - colon - 2);
  FieldElement b = Parser(bs, 1, static_cast<int>(colon) + 1, ctx, true).parse_all().num.coeff(0, 0);
  if (a.is_zero() && b.is_zero()) throw ParseError("[0:0] is not a direction", 1, 1);
  if (b.is_zero()) return ProjPoint::infinity();
  return ProjPoint(a / b, FieldElement(1));
}

NumericBindings parse_bindings(const std::vector<std::string>& items) {
  NumericBindings b;
  for (const auto& it : items) {
    size_t eq = it.find('=');
    if (eq == std::string::npos) throw InvalidArgument("binding must be NAME=FLOAT: " + it);
    std::string name = trim(it.substr(0, eq));
    try {
      size_t used = 0;
      std::string v = trim(it.substr(eq + 1));
      double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      b[name] = d;
    } catch (const std::logic_error&) {
      throw InvalidArgument("binding must be NAME=FLOAT: " + it);
    }
  }
  return b;
}

}  // namespace ttid
