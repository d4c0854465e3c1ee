#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "ttid/blowup/blowup.hpp"
#include "ttid/classify/classify.hpp"
#include "ttid/dynamics/dynamics.hpp"
#include "ttid/germs/directions.hpp"
#include "ttid/germs/exp_log.hpp"
#include "ttid/index/index.hpp"
#include "ttid/io/input.hpp"

using json = nlohmann::ordered_json;
using namespace ttid;

namespace {

struct Job {
  std::string command;
  std::vector<std::string> files;
  std::string json_out, dot_out, csv_out;
  std::string direction, blow_up, divisor;
  std::vector<std::string> binds;
  int order = 0, max_order = 512, max_depth = 16, jobs = 1;
  bool fallback = false;

  // orbit
  std::vector<double> start{0.1, 0.0, 0.05, 0.0};
  int steps = 100000, depth = 3, jet_order = 16;
  double escape_radius = 10.0;
  bool strict_escape = false;
  int tail = 50;
  double ratio = 1e-4;

  // vivas
  bool curated = false, serial = false;
  VivasDomain dom;
  VivasOptions vopt;
  double min_invariance = 0.99, min_drift = 0.99;
};

struct Outcome {
  json doc;
  int status = 0;
};

json error_doc(const std::string& code, const std::string& message) {
  return json{{"schema", 1}, {"report", "error"}, {"error", code}, {"message", message}};
}

Diffeo map_of(const ParsedInput& in, const Job& job) {
  Diffeo F;
  if (in.map)
    F = *in.map;
  else if (in.field)
    F = Diffeo::exp_of(*in.field);
  if (!job.blow_up.empty()) F = blow_up_diffeo(F, DivisorPoint::from_direction(parse_direction(job.blow_up, in)));
  return F;
}

ClassifyOptions classify_options(const Job& job) {
  ClassifyOptions o;
  o.max_depth = job.max_depth;
  o.order = job.order;
  o.max_order = job.max_order;
  o.fallback = job.fallback;
  return o;
}

ResolutionTree tree_of(const ParsedInput& in, const Job& job) {
  if (!in.map && job.blow_up.empty()) return resolve_field(*in.field, job.max_depth);
  return resolve_map(map_of(in, job), classify_options(job)).tree;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

json cmd_log(const ParsedInput& in, const Job& job) {
  Diffeo F = map_of(in, job);
  int N = job.order > 0 ? job.order : 4 * F.order();
  VectorField X = log(F, N);
  return json{{"schema", 1},          {"report", "log"},
              {"input", F.str(in.vx, in.vy)}, {"order", N},
              {"k", F.order() - 1},   {"dx", X.a.truncated(N).str(in.vx, in.vy)},
              {"dy", X.b.truncated(N).str(in.vx, in.vy)}};
}

json cmd_chardirs(const ParsedInput& in, const Job& job) {
  Diffeo F = map_of(in, job);
  json dirs = json::array();
  for (const auto& d : characteristic_directions(F)) {
    json e{{"direction", d.point().str()},
           {"degenerate", d.degenerate},
           {"multiplicity", d.family.multiplicity},
           {"conjugates", d.family.factor_degree()}};
    if (d.family.factor_degree() > 1) e["factor"] = poly::str(d.family.factor, "s");
    dirs.push_back(e);
  }
  return json{{"schema", 1}, {"report", "chardirs"}, {"input", F.str(in.vx, in.vy)}, {"k", F.order() - 1}, {"directions", dirs}};
}

json cmd_resolve(const ParsedInput& in, const Job& job) {
  ResolutionTree tree = tree_of(in, job);
  if (!job.dot_out.empty()) write_file(job.dot_out, to_dot(tree));
  return json::parse(to_json(tree));
}

Outcome cmd_index(const ParsedInput& in, const Job& job) {
  ResolutionTree tree = tree_of(in, job);
  if (!job.dot_out.empty()) write_file(job.dot_out, to_dot(tree));
  json idx = json::array();
  for (const auto& e : divisor_index_table(tree))
    idx.push_back({{"node", e.node}, {"child", e.child}, {"point", e.point}, {"factor", e.factor}, {"weight", e.weight},
                   {"index", e.value.str()}});
  IndexReport rep = validate_index_properties(tree);
  json props = json::array();
  for (const auto& c : rep.checks)
    props.push_back({{"property", c.property}, {"node", c.node}, {"expected", c.expected}, {"got", c.got}, {"ok", c.ok}});
  json doc{{"schema", 1}, {"report", "index"}, {"indices", idx}, {"properties", props}, {"ok", rep.ok()}};
  return {doc, rep.ok() ? 0 : 1};
}

Outcome cmd_classify(const ParsedInput& in, const Job& job, bool abate) {
  Diffeo F = map_of(in, job);
  ClassifyOptions o = classify_options(job);
  if (!job.divisor.empty()) {
    if (abate) throw InvalidArgument("--divisor applies to classify only");
    if (job.divisor != "x" && job.divisor != "y") throw InvalidArgument("--divisor must be x or y");
    ClassificationReport r = classify_along_divisor(F, job.divisor == "x" ? Axis::X : Axis::Y, o);
    r.input = F.str(in.vx, in.vy);
    return {json::parse(to_json(r)), 0};
  }
  auto one = [&](const ProjPoint& v) {
    ClassificationReport r = abate ? classify_abate(F, v, o) : classify_direction(F, v, o);
    r.input = F.str(in.vx, in.vy);
    return json::parse(to_json(r));
  };
  if (!job.direction.empty()) return {one(parse_direction(job.direction, in)), 0};
  json reports = json::array();
  int status = 0;
  for (const auto& d : characteristic_directions(F)) {
    try {
      reports.push_back(one(d.point()));
    } catch (const Error& e) {
      json err = error_doc(e.code(), e.what());
      err["direction"] = d.point().str();
      reports.push_back(err);
      status = 2;
    }
  }
  return {json{{"schema", 1}, {"report", "classifications"}, {"reports", reports}}, status};
}

json cmd_orbit(const ParsedInput& in, const Job& job) {
  Diffeo F = map_of(in, job);
  NumericBindings b = parse_bindings(job.binds);
  NumericMap Fn = NumericMap::compile(F, b, job.jet_order);
  if (job.start.size() != 4) throw InvalidArgument("--start needs four numbers");
  Point2 z0{cplx(job.start[0], job.start[1]), cplx(job.start[2], job.start[3])};
  OrbitOptions oo;
  oo.escape_radius = job.escape_radius;
  oo.throw_on_escape = job.strict_escape;
  NumericOrbit orbit = iterate(Fn, z0, job.steps, oo);
  if (!job.csv_out.empty()) {
    std::ofstream f(job.csv_out);
    if (!f) throw InvalidArgument("cannot write " + job.csv_out);
    write_orbit_csv(f, orbit);
  }
  ConvergenceOptions co{job.tail, job.ratio};
  const Point2& last = orbit.points.back();
  json doc{{"schema", 1},
           {"report", "orbit"},
           {"input", F.str(in.vx, in.vy)},
           {"start", {job.start[0], job.start[1], job.start[2], job.start[3]}},
           {"steps", orbit.steps},
           {"escaped", orbit.escaped},
           {"final", {last.x.real(), last.x.imag(), last.y.real(), last.y.imag()}},
           {"converges", converges(orbit, co)}};
  if (converges(orbit, co)) {
    TangentEstimate t = tangent_direction(orbit, co);
    json tj{{"direction", t.str()}, {"residual", t.residual}};
    try {
      tj["nearest_characteristic"] = nearest_direction(t, numeric_directions(characteristic_directions(F), b));
    } catch (const Error& e) {
      tj["nearest_characteristic"] = nullptr;
      tj["note"] = e.what();
    }
    doc["tangent"] = tj;
    json its = json::array();
    for (const auto& p : iterated_tangents(orbit, job.depth, co))
      its.push_back({{"chart", std::string(1, p.chart)}, {"coordinate", p.str()}, {"residual", p.residual}});
    doc["iterated_tangents"] = its;
  }
  return doc;
}

Outcome cmd_vivas(const ParsedInput* in, const Job& job) {
  NumericMap Fn;
  if (job.curated) {
    Fn = NumericMap::compile(curated_vivas_map(), {}, job.jet_order);
  } else {
    Fn = NumericMap::compile(map_of(*in, job), parse_bindings(job.binds), job.jet_order);
  }
  VivasOptions vo = job.vopt;
  vo.parallel = !job.serial;
  VivasReport rep = vivas_checks(Fn, job.dom, vo);
  json doc = json::parse(rep.json());
  bool passed = !rep.empty && rep.invariance_rate >= job.min_invariance && rep.drift_rate >= job.min_drift && rep.exponent_ok;
  doc["domain"] = {{"eps", job.dom.eps}, {"delta", job.dom.delta}, {"eta", job.dom.eta}, {"M", job.dom.M},
                   {"r", job.dom.r},     {"m", job.dom.m},         {"p", job.dom.p}};
  doc["thresholds"] = {{"min_invariance", job.min_invariance}, {"min_drift", job.min_drift}, {"exponent", vo.exponent}};
  doc["passed"] = passed;
  return {doc, passed ? 0 : 1};
}

Outcome run_file(const Job& job, const std::string* file) {
  try {
    if (job.command == "vivas" && !file) return cmd_vivas(nullptr, job);
    ParsedInput in = parse_input_file(*file);
    const std::string& c = job.command;
    if (c == "log") return {cmd_log(in, job), 0};
    if (c == "chardirs") return {cmd_chardirs(in, job), 0};
    if (c == "resolve") return {cmd_resolve(in, job), 0};
    if (c == "index") return cmd_index(in, job);
    if (c == "classify") return cmd_classify(in, job, false);
    if (c == "abate") return cmd_classify(in, job, true);
    if (c == "orbit") return {cmd_orbit(in, job), 0};
    if (c == "vivas") return cmd_vivas(&in, job);
    throw InvalidArgument("unknown command " + c);
  } catch (const Error& e) {
    std::cerr << "error[" << e.code() << "]: " << (file ? *file + ": " : "") << e.what() << "\n";
    return {error_doc(e.code(), e.what()), 2};
  }
}

int run(const Job& job) {
  if (job.files.size() > 1 && (!job.dot_out.empty() || !job.csv_out.empty()))
    throw InvalidArgument("--dot and --csv need a single input file");
  std::vector<Outcome> out(std::max<size_t>(job.files.size(), 1));
  if (job.files.empty()) {
    out[0] = run_file(job, nullptr);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i; (i = next++) < job.files.size();) out[i] = run_file(job, &job.files[i]);
    };
    int n = std::clamp<int>(job.jobs, 1, static_cast<int>(job.files.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }
  json doc;
  int status = 0;
  for (const auto& o : out) status = std::max(status, o.status);
  if (job.files.size() <= 1) {
    doc = out[0].doc;
  } else {
    json files = json::array();
    for (size_t i = 0; i < out.size(); ++i) files.push_back({{"file", job.files[i]}, {"result", out[i].doc}});
    doc = json{{"schema", 1}, {"files", files}};
  }
  std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!job.json_out.empty()) write_file(job.json_out, text);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangent-to-the-identity germs: generators, resolutions, indices and parabolic sets"};
  app.require_subcommand(1);
  Job job;

  auto common = [&](CLI::App* sub, bool files_required = true) {
    auto* f = sub->add_option("files", job.files, "Input files")->check(CLI::ExistingFile);
    if (files_required) f->required();
    sub->add_option("--json", job.json_out, "Also write the JSON report to this path");
    sub->add_option("--jobs", job.jobs, "Input files processed in parallel")->check(CLI::PositiveNumber);
    sub->add_option("--blow-up", job.blow_up, "Replace the map by its blow-up at this direction, e.g. \"[1:0]\"");
  };
  auto symbolic = [&](CLI::App* sub) {
    sub->add_option("--order", job.order, "Generator order (default 4(k+1), raised adaptively)");
    sub->add_option("--max-order", job.max_order, "Cap of the adaptive generator order");
    sub->add_option("--max-depth", job.max_depth, "Resolution depth limit");
  };
  auto numeric = [&](CLI::App* sub) {
    sub->add_option("--bind", job.binds, "Numeric value of a parameter, NAME=FLOAT");
    sub->add_option("--jet-order", job.jet_order, "Jet degree used to evaluate exp(X) numerically");
  };

  auto* log_cmd = app.add_subcommand("log", "Print the infinitesimal generator jet");
  common(log_cmd);
  log_cmd->add_option("--order", job.order, "Jet degree");

  auto* chardirs = app.add_subcommand("chardirs", "List characteristic directions");
  common(chardirs);

  auto* resolve_cmd = app.add_subcommand("resolve", "Resolve the (saturated) generator");
  common(resolve_cmd);
  symbolic(resolve_cmd);
  resolve_cmd->add_option("--dot", job.dot_out, "Write the resolution tree as DOT");

  auto* index_cmd = app.add_subcommand("index", "Divisor indices and index property checks");
  common(index_cmd);
  symbolic(index_cmd);
  index_cmd->add_option("--dot", job.dot_out, "Write the resolution tree as DOT");

  auto* classify_cmd = app.add_subcommand("classify", "Classify characteristic directions");
  common(classify_cmd);
  symbolic(classify_cmd);
  classify_cmd->add_option("--direction", job.direction, "Direction such as \"[-c:1]\" (default: all)");
  classify_cmd->add_option("--divisor", job.divisor, "Classify along a fixed divisor axis (x or y) at the origin");

  auto* abate_cmd = app.add_subcommand("abate", "Residual-index classification");
  common(abate_cmd);
  symbolic(abate_cmd);
  abate_cmd->add_option("--direction", job.direction, "Direction such as \"[1:0]\" (default: all)");
  abate_cmd->add_flag("--fallback", job.fallback, "Use the main classification when the residual index vanishes");

  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate numerically and estimate tangents");
  common(orbit_cmd);
  numeric(orbit_cmd);
  orbit_cmd->add_option("--start", job.start, "Start point re_x,im_x,re_y,im_y")->delimiter(',')->expected(4);
  orbit_cmd->add_option("--steps", job.steps, "Number of iterations")->check(CLI::PositiveNumber);
  orbit_cmd->add_option("--escape-radius", job.escape_radius, "Stop when the orbit leaves this ball");
  orbit_cmd->add_flag("--strict-escape", job.strict_escape, "Treat an escape as an error");
  orbit_cmd->add_option("--tail", job.tail, "Convergence tail length");
  orbit_cmd->add_option("--ratio", job.ratio, "Convergence ratio of tail norms to the start norm");
  orbit_cmd->add_option("--depth", job.depth, "Levels of iterated tangents");
  orbit_cmd->add_option("--csv", job.csv_out, "Write the orbit as CSV");

  auto* vivas_cmd = app.add_subcommand("vivas", "Sampled checks of the normal-shape domain");
  common(vivas_cmd, false);
  numeric(vivas_cmd);
  vivas_cmd->add_flag("--curated", job.curated, "Use the built-in normalized map instead of an input file");
  vivas_cmd->add_option("--eps", job.dom.eps);
  vivas_cmd->add_option("--delta", job.dom.delta);
  vivas_cmd->add_option("--eta", job.dom.eta);
  vivas_cmd->add_option("--M", job.dom.M);
  vivas_cmd->add_option("--r", job.dom.r);
  vivas_cmd->add_option("--m", job.dom.m);
  vivas_cmd->add_option("--p", job.dom.p);
  vivas_cmd->add_option("--samples", job.vopt.samples);
  vivas_cmd->add_option("--seed", job.vopt.seed);
  vivas_cmd->add_option("--drift-steps", job.vopt.drift_steps);
  vivas_cmd->add_option("--exponent", job.vopt.exponent);
  vivas_cmd->add_option("--exponent-steps", job.vopt.exponent_steps);
  vivas_cmd->add_option("--max-tries", job.vopt.max_tries);
  vivas_cmd->add_option("--min-invariance", job.min_invariance);
  vivas_cmd->add_option("--min-drift", job.min_drift);
  vivas_cmd->add_flag("--serial", job.serial, "Disable the OpenMP sampling loop");

  CLI11_PARSE(app, argc, argv);
  job.command = app.get_subcommands().front()->get_name();
  if (job.command == "vivas" && job.files.empty() && !job.curated) {
    std::cerr << "error: vivas needs an input file or --curated\n";
    return 2;
  }
  try {
    return run(job);
  } catch (const Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
    return 2;
  }
}
