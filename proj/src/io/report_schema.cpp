#include "ttid/io/report_schema.hpp"

#include <regex>
#include <set>
#include <sstream>

namespace ttid {

namespace {

using json = nlohmann::json;

enum class T { Int, Num, Str, Bool, Arr, Obj };

bool has_type(const json& v, T t) {
  switch (t) {
    case T::Int:
      return v.is_number_integer();
    case T::Num:
      return v.is_number();
    case T::Str:
      return v.is_string();
    case T::Bool:
      return v.is_boolean();
    case T::Arr:
      return v.is_array();
    case T::Obj:
      return v.is_object();
  }
  return false;
}

struct Checker {
  std::vector<std::string> problems;

  void need(const json& j, const std::string& path, const std::string& key, T t) {
    if (!j.is_object() || !j.contains(key)) {
      problems.push_back(path + "." + key + " is missing");
      return;
    }
    if (!has_type(j.at(key), t)) problems.push_back(path + "." + key + " has the wrong type");
  }

  void header(const json& j) {
    need(j, "$", "schema", T::Int);
    if (j.contains("schema") && j["schema"] != 1) problems.push_back("$.schema must be 1");
  }

  void tree(const json& j, const std::string& path) {
    need(j, path, "nodes", T::Arr);
    if (!j.contains("nodes") || !j["nodes"].is_array()) return;
    const json& nodes = j["nodes"];
    for (size_t i = 0; i < nodes.size(); ++i) {
      const json& n = nodes[i];
      std::string p = path + ".nodes[" + std::to_string(i) + "]";
      need(n, p, "id", T::Int);
      need(n, p, "parent", T::Int);
      need(n, p, "depth", T::Int);
      need(n, p, "class", T::Str);
      need(n, p, "children", T::Arr);
      if (n.contains("id") && n["id"] != static_cast<int>(i)) problems.push_back(p + ".id out of order");
      if (n.contains("class") && n["class"].is_string()) {
        static const std::set<std::string> tags{"NonSingular", "ReducedNonDegenerate", "ReducedSaddleNode", "NotReduced"};
        if (!tags.count(n["class"].get<std::string>())) problems.push_back(p + ".class is unknown");
      }
      if (n.contains("children") && n["children"].is_array())
        for (const auto& c : n["children"])
          if (!c.is_number_integer() || c.get<long>() <= static_cast<long>(i) || c.get<size_t>() >= nodes.size())
            problems.push_back(p + ".children refers to an invalid node");
    }
  }

  void classification(const json& j) {
    header(j);
    need(j, "$", "mode", T::Str);
    need(j, "$", "direction", T::Str);
    need(j, "$", "k", T::Int);
    need(j, "$", "verdict", T::Str);
    need(j, "$", "parabolic_curve_guaranteed", T::Bool);
    need(j, "$", "foliated_by_parabolic_curves", T::Bool);
    need(j, "$", "guaranteed", T::Obj);
    need(j, "$", "evidence", T::Obj);
    need(j, "$", "indices", T::Arr);
    if (j.contains("verdict") && j["verdict"].is_string()) {
      static const std::set<std::string> verdicts{"FixedCurve", "SeparatrixCase", "PureDomainCase", "AbateCurves",
                                                  "AbateDomains"};
      std::string v = j["verdict"];
      if (!verdicts.count(v)) problems.push_back("$.verdict is unknown");
      const json& ev = j.value("evidence", json::object());
      if (v == "FixedCurve" && !ev.contains("fixed_curve")) problems.push_back("FixedCurve without fixed_curve evidence");
      if ((v == "PureDomainCase" || v == "AbateDomains") && !ev.contains("saddle_node"))
        problems.push_back(v + " without saddle_node evidence");
      if (v == "SeparatrixCase" && j.value("foliated_by_parabolic_curves", false))
        problems.push_back("SeparatrixCase must not claim foliated domains");
    }
    if (j.contains("tree")) tree(j["tree"], "$.tree");
  }

  void index(const json& j) {
    header(j);
    need(j, "$", "indices", T::Arr);
    need(j, "$", "properties", T::Arr);
    need(j, "$", "ok", T::Bool);
    if (j.contains("indices") && j["indices"].is_array())
      for (const auto& e : j["indices"]) {
        need(e, "$.indices[]", "point", T::Str);
        need(e, "$.indices[]", "index", T::Str);
      }
  }

  void vivas(const json& j) {
    header(j);
    need(j, "$", "samples", T::Obj);
    need(j, "$", "invariance", T::Obj);
    need(j, "$", "drift", T::Obj);
    need(j, "$", "exponent", T::Obj);
  }

  void chardirs(const json& j) {
    header(j);
    need(j, "$", "directions", T::Arr);
    if (j.contains("directions") && j["directions"].is_array())
      for (const auto& d : j["directions"]) {
        need(d, "$.directions[]", "direction", T::Str);
        need(d, "$.directions[]", "degenerate", T::Bool);
      }
  }

  void log(const json& j) {
    header(j);
    need(j, "$", "order", T::Int);
    need(j, "$", "dx", T::Str);
    need(j, "$", "dy", T::Str);
  }

  void orbit(const json& j) {
    header(j);
    need(j, "$", "steps", T::Int);
    need(j, "$", "escaped", T::Bool);
  }

  void error(const json& j) {
    header(j);
    need(j, "$", "error", T::Str);
    need(j, "$", "message", T::Str);
  }
};

}  // namespace

std::vector<std::string> validate_report(const json& j, ReportKind kind) {
  Checker c;
  if (!j.is_object()) return {"document is not an object"};
  switch (kind) {
    case ReportKind::Tree:
      c.header(j);
      c.tree(j, "$");
      break;
    case ReportKind::Classification:
      c.classification(j);
      break;
    case ReportKind::Index:
      c.index(j);
      break;
    case ReportKind::Vivas:
      c.vivas(j);
      break;
    case ReportKind::Chardirs:
      c.chardirs(j);
      break;
    case ReportKind::Log:
      c.log(j);
      break;
    case ReportKind::Orbit:
      c.orbit(j);
      break;
    case ReportKind::Error:
      c.error(j);
      break;
  }
  return c.problems;
}

std::vector<std::string> validate_report(const json& j) {
  if (!j.is_object()) return {"document is not an object"};
  std::string kind = j.value("report", "");
  for (const char* key : {"reports", "files"})
    if (j.contains(key) && j[key].is_array()) {
      std::vector<std::string> all;
      if (j.value("schema", 0) != 1) all.push_back("$.schema must be 1");
      for (const auto& r : j[key])
        for (auto& p : validate_report(std::string(key) == "files" ? r.value("result", json()) : r)) all.push_back(std::move(p));
      return all;
    }
  if (kind == "tree") return validate_report(j, ReportKind::Tree);
  if (kind == "classification") return validate_report(j, ReportKind::Classification);
  if (kind == "index") return validate_report(j, ReportKind::Index);
  if (kind == "vivas") return validate_report(j, ReportKind::Vivas);
  if (kind == "chardirs") return validate_report(j, ReportKind::Chardirs);
  if (kind == "log") return validate_report(j, ReportKind::Log);
  if (kind == "orbit") return validate_report(j, ReportKind::Orbit);
  if (kind == "error") return validate_report(j, ReportKind::Error);
  return {"unknown report kind '" + kind + "'"};
}

std::vector<std::string> validate_dot(const std::string& text) {
  std::vector<std::string> problems;
  static const std::regex header(R"re(^\s*digraph\s+[A-Za-z_][A-Za-z0-9_]*\s*\{\s*$)re");
  static const std::regex attr(R"re(^\s*(node|edge|graph)\s*\[.*\];\s*$)re");
  static const std::regex node(R"re(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\[label="((?:[^"\\]|\\.)*)"\];\s*$)re");
  static const std::regex edge(
      R"re(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*->\s*([A-Za-z_][A-Za-z0-9_]*)\s*(\[label="((?:[^"\\]|\\.)*)"\])?;\s*$)re");
  std::istringstream is(text);
  std::string line;
  std::set<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  int lineno = 0;
  bool opened = false, closed = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::string where = "line " + std::to_string(lineno);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::smatch m;
    if (closed) {
      problems.push_back(where + ": content after the closing brace");
    } else if (!opened) {
      if (std::regex_match(line, header))
        opened = true;
      else
        problems.push_back(where + ": expected 'digraph NAME {'");
    } else if (std::regex_match(line, std::regex(R"re(^\s*\}\s*$)re"))) {
      closed = true;
    } else if (std::regex_match(line, attr)) {
    } else if (std::regex_match(line, m, edge)) {
      edges.emplace_back(m[1], m[2]);
    } else if (std::regex_match(line, m, node)) {
      if (!nodes.insert(m[1]).second) problems.push_back(where + ": node " + m[1].str() + " declared twice");
    } else {
      problems.push_back(where + ": unrecognized statement");
    }
  }
  if (!opened) problems.push_back("missing digraph header");
  if (opened && !closed) problems.push_back("missing closing brace");
  for (const auto& [a, b] : edges)
    if (!nodes.count(a) || !nodes.count(b)) problems.push_back("edge " + a + " -> " + b + " uses an undeclared node");
  return problems;
}

}  // namespace ttid
