#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>
#include <sstream>

#include "ttid/blowup/blowup.hpp"
#include "ttid/classify/classify.hpp"
#include "ttid/io/input.hpp"
#include "ttid/io/report_schema.hpp"

using namespace ttid;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const Jet2 X = Jet2::var_x(), Y = Jet2::var_y(), ONE = Jet2::constant(FieldElement(1));

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(TTID_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string corpus(const std::string& name) { return std::string(TTID_CORPUS_DIR) + "/" + name; }

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("ttid_test_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

void expect_parse_error(const std::string& text, int line, int column) {
  CAPTURE(text);
  try {
    parse_input(text);
    FAIL("no ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("parser builds polynomial, rational and exponential maps") {
  ParsedInput p = parse_input("# comment\nF.x = x + x^2\nF.y = y - 3*y^2  # tail\n");
  REQUIRE(p.map.has_value());
  CHECK(p.map->kind() == Diffeo::Kind::Rational);
  CHECK(p.map->num_x() == X + X * X);
  CHECK(p.map->num_y() == Y - (Y * Y).scaled(FieldElement(3)));
  CHECK(p.map->den_x() == ONE);

  ParsedInput r = parse_input("F.x = x/(1 - x)\nF.y = (y + x*y)/(1 + x)\n");
  REQUIRE(r.map.has_value());
  // (y + xy)/(1 + x) cancels to y
  CHECK(r.map->num_y() == Y);
  CHECK(r.map->den_y() == ONE);
  CHECK(r.map->num_x() == X);
  CHECK(r.map->den_x() == ONE - X);

  ParsedInput g = parse_input("X.dx = x^2\nX.dy = -1/2*x*y\nF = exp(X)\n");
  REQUIRE(g.map.has_value());
  REQUIRE(g.field.has_value());
  CHECK(g.map->kind() == Diffeo::Kind::Generator);
  CHECK(g.field->b == (X * Y).scaled(FieldElement::fraction(-1, 2)));

  ParsedInput f = parse_input("vars u v\nX.dx = u^2\nX.dy = v^2\n");
  CHECK_FALSE(f.map.has_value());
  REQUIRE(f.field.has_value());
  CHECK(f.field->a == X * X);
  CHECK(f.field->b == Y * Y);
}

TEST_CASE("blown-up example file agrees with the blow-up of the polynomial map") {
  ParsedInput p = parse_input_file(corpus("example_p.germ"));
  REQUIRE(p.map.has_value());
  FieldElement cp = p.param_values.at("c");
  CHECK(p.map->num_x() == X + Y.scaled(cp) + X * X);
  CHECK(p.map->num_y() == Y - Y * Y);

  ParsedInput q = parse_input_file(corpus("example_pq.germ"));
  REQUIRE(q.map.has_value());
  CHECK(q.vy == "t");
  FieldElement c = q.param_values.at("c");
  Diffeo P = Diffeo::polynomial(X + Y.scaled(c) + X * X, Y - Y * Y);
  Diffeo Pq = blow_up_diffeo(P, DivisorPoint::chart_t(FieldElement()));
  auto [ax, ay] = Pq.jets(8);
  auto [bx, by] = q.map->jets(8);
  CHECK(ax.truncated(8) == bx.truncated(8));
  CHECK(ay.truncated(8) == by.truncated(8));
}

TEST_CASE("parse errors carry line and column") {
  expect_parse_error("F.x = x + 1.5\nF.y = y\n", 1, 12);
  expect_parse_error("F.x = x\nF.y = y + z\n", 2, 11);
  expect_parse_error("# header\n  F.x = q\nF.y = y\n", 2, 9);
  expect_parse_error("F.x = (x + y\nF.y = y\n", 1, 13);
  expect_parse_error("F.x = x\nF.y = y/(x - x)\n", 2, 9);
  expect_parse_error("F.x = x\n", 1, 1);
  expect_parse_error("X.dx = x^2\nX.dy = y/(1 - x)\n", 2, 8);
  expect_parse_error("param c\nparam c\nF.x = x\nF.y = y\n", 2, 7);
  expect_parse_error("G.x = x\n", 1, 1);
  expect_parse_error("F = exp(X)\n", 1, 1);
  expect_parse_error("", 0, 1);
}

TEST_CASE("directions, constants and bindings") {
  ParsedInput in = parse_input("param c\nF.x = x + c*x^2\nF.y = y\n");
  FieldElement c = in.param_values.at("c");
  CHECK(parse_direction("[-c:1]", in) == ProjPoint(-c, FieldElement(1)));
  CHECK(parse_direction(" [1:0] ", in) == ProjPoint::infinity());
  CHECK(parse_direction("[2:4]", in) == ProjPoint::affine(FieldElement::fraction(1, 2)));
  CHECK(parse_direction("[c/(c + 1):1]", in).coordinate() == c / (c + FieldElement(1)));
  CHECK_THROWS_AS(parse_direction("[0:0]", in), ParseError);
  CHECK_THROWS_AS(parse_direction("1:0", in), ParseError);
  CHECK_THROWS_AS(parse_direction("[x:1]", in), ParseError);
  CHECK(parse_constant("3/4 - c", in) == FieldElement::fraction(3, 4) - c);

  NumericBindings b = parse_bindings({"c=2.4674011002723397", "a = -0.5"});
  CHECK(b.at("c").real() == doctest::Approx(2.4674011002723397));
  CHECK(b.at("a").real() == -0.5);
  CHECK_THROWS_AS(parse_bindings({"c"}), InvalidArgument);
  CHECK_THROWS_AS(parse_bindings({"c=2.5x"}), InvalidArgument);
}

TEST_CASE("report validator accepts library output and rejects damage") {
  ParsedInput in = parse_input_file(corpus("curated_r1.germ"));
  auto rep = classify_direction(*in.map, ProjPoint::infinity());
  json j = json::parse(to_json(rep));
  CHECK(validate_report(j).empty());
  CHECK(validate_report(j, ReportKind::Classification).empty());
  // round trip through text
  CHECK(json::parse(j.dump()) == j);

  json t = json::parse(to_json(rep.tree));
  CHECK(validate_report(t).empty());
  CHECK(validate_dot(to_dot(rep.tree)).empty());

  json bad = j;
  bad.erase("verdict");
  CHECK_FALSE(validate_report(bad).empty());
  bad = j;
  bad["schema"] = 2;
  CHECK_FALSE(validate_report(bad).empty());
  bad = j;
  bad["evidence"].erase("saddle_node");
  CHECK_FALSE(validate_report(bad).empty());
  bad = j;
  bad["verdict"] = "SeparatrixCase";
  CHECK_FALSE(validate_report(bad).empty());
  bad = t;
  bad["nodes"][0]["children"] = json::array({0});
  CHECK_FALSE(validate_report(bad).empty());
  CHECK_FALSE(validate_report(json{{"schema", 1}, {"report", "nope"}}).empty());

  CHECK_FALSE(validate_dot("graph g {\n}\n").empty());
  CHECK_FALSE(validate_dot("digraph g {\n  a [label=\"x\"];\n  a -> b;\n}\n").empty());
  CHECK_FALSE(validate_dot("digraph g {\n  a [label=\"x\"];\n").empty());
  CHECK(validate_dot("digraph g {\n  a [label=\"x\\\"y\"];\n  a -> a [label=\"[1:0]\"];\n}\n").empty());
}

TEST_CASE("cli: example transform") {
  Run cd = run_cli("chardirs " + corpus("example_pq.germ"));
  CHECK(cd.status == 0);
  json j = json::parse(cd.out);
  CHECK(validate_report(j).empty());
  std::vector<std::string> dirs;
  for (const auto& d : j["directions"]) dirs.push_back(d["direction"]);
  CHECK(dirs == std::vector<std::string>{"[-c:1]", "[0:1]", "[1:0]"});

  Run viap = run_cli("chardirs " + corpus("example_p.germ") + " --blow-up \"[1:0]\"");
  CHECK(viap.status == 0);
  CHECK(json::parse(viap.out)["directions"] == j["directions"]);

  Run cl = run_cli("classify " + corpus("example_pq.germ") + " --direction \"[-c:1]\"");
  CHECK(cl.status == 0);
  json c = json::parse(cl.out);
  CHECK(validate_report(c).empty());
  CHECK(c["parabolic_curve_guaranteed"] == true);
  CHECK(c["verdict"] != "FixedCurve");
  CHECK(c["fixed_locus"]["gcd"] == "1");
}

TEST_CASE("cli: resolve writes a valid DOT tree") {
  fs::path dot = fs::temp_directory_path() / ("ttid_test_" + std::to_string(::getpid()) + ".dot");
  Run r = run_cli("resolve " + corpus("quadratic_diag.germ") + " --dot " + dot.string());
  CHECK(r.status == 0);
  json t = json::parse(r.out);
  CHECK(validate_report(t).empty());
  for (const auto& n : t["nodes"])
    if (!n["blown_up"].get<bool>()) CHECK(n["class"] != "NotReduced");
  std::string text = read_file(dot);
  CHECK(validate_dot(text).empty());
  CHECK(text.find("n0 -> n1") != std::string::npos);
  fs::remove(dot);
}

TEST_CASE("cli: errors and exit codes") {
  fs::path bad = temp_file("bad.germ", "F.x = x + 0.5*y\nF.y = y\n");
  Run r = run_cli("chardirs " + bad.string());
  CHECK(r.status == 2);
  json e = json::parse(r.out);
  CHECK(validate_report(e).empty());
  CHECK(e["error"] == "ParseError");
  CHECK(e["message"].get<std::string>().rfind("1:12:", 0) == 0);
  fs::remove(bad);

  CHECK(run_cli("classify " + corpus("fixed_curve.germ") + " --direction \"[1:0]\"").status == 2);
  CHECK(run_cli("abate " + corpus("index_zero.germ") + " --direction \"[1:0]\"").status == 2);
  Run fb = run_cli("abate " + corpus("index_zero.germ") + " --direction \"[1:0]\" --fallback");
  CHECK(fb.status == 0);
  CHECK(json::parse(fb.out)["verdict"] == "SeparatrixCase");
  CHECK(run_cli("vivas --curated --M 1").status == 2);
}

TEST_CASE("cli: every report validates and output is deterministic") {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(TTID_CORPUS_DIR))
    if (e.path().extension() == ".germ") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  REQUIRE(files.size() >= 10);
  std::string all;
  for (const auto& f : files) all += " " + f;
  for (const char* cmd : {"chardirs", "resolve", "index", "classify", "abate", "log --order 6"}) {
    CAPTURE(cmd);
    Run a = run_cli(std::string(cmd) + all + " --jobs 1");
    Run b = run_cli(std::string(cmd) + all + " --jobs 4");
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["files"].size() == files.size());
    auto problems = validate_report(j);
    for (const auto& p : problems) INFO(p);
    CHECK(problems.empty());
  }
  Run o = run_cli("orbit " + corpus("leau.germ") + " --start=-0.1,0,0,0");
  CHECK(o.status == 0);
  json oj = json::parse(o.out);
  CHECK(validate_report(oj).empty());
  CHECK(oj["converges"] == true);
  CHECK(oj["tangent"]["direction"] == "[1:0]");
  Run v = run_cli("vivas --curated --samples 200");
  CHECK(v.status == 0);
  CHECK(validate_report(json::parse(v.out)).empty());
}
