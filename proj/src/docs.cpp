#include "udg/docs.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace udg {

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 14695981039346656037ull;
  for (char c : bytes) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return h;
}

std::string hex64(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, value);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json graph_doc(const Graph& g, const std::string& name) {
  Json doc;
  if (!name.empty()) doc["name"] = name;
  doc["hash"] = hex64(graph_hash(g));
  doc["labels"] = g.labels();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({g.label(e.u), g.label(e.v)});
  doc["edges"] = edges;
  return doc;
}

namespace {

Graph graph_from_doc(const Json& doc) {
  std::vector<std::string> labels = doc.at("labels").get<std::vector<std::string>>();
  Graph tmp(labels, {});
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : doc.at("edges"))
    edges.push_back({tmp.require(e.at(0).get<std::string>()),
                     tmp.require(e.at(1).get<std::string>())});
  return Graph(std::move(labels), edges);
}

Json options_json(const SolveOptions& opts) {
  return Json{{"restarts", opts.restarts},
              {"residualTol", opts.residualTol},
              {"separationFloor", opts.separationFloor},
              {"maxIterations", opts.maxIterations},
              {"seed", opts.seed},
              {"initBox", opts.initBox}};
}

}  // namespace

Json embedding_doc(const Embedding& emb, const SolveOptions& opts, bool candidate,
                   const std::string& note) {
  Json doc;
  doc["type"] = "embedding";
  doc["graph"] = graph_doc(emb.graph);
  Json coords = Json::array();
  for (int v = 0; v < emb.graph.vertex_count(); ++v)
    coords.push_back({emb.graph.label(v), emb.coords[v][0], emb.coords[v][1]});
  doc["coords"] = coords;
  doc["metrics"] = {{"maxEdgeDeviation", emb.maxEdgeDeviation},
                    {"minSeparation", emb.minSeparation}};
  doc["solver"] = options_json(opts);
  doc["candidate"] = candidate;
  if (!note.empty()) doc["note"] = note;
  return doc;
}

ParsedEmbedding parse_embedding_doc(const Json& doc) {
  if (doc.at("type") != "embedding") throw std::invalid_argument("not an embedding document");
  ParsedEmbedding out;
  out.graph = graph_from_doc(doc.at("graph"));
  out.coords.assign(out.graph.vertex_count(), {0.0, 0.0});
  for (const auto& c : doc.at("coords")) {
    int v = out.graph.require(c.at(0).get<std::string>());
    out.coords[v] = {c.at(1).get<double>(), c.at(2).get<double>()};
  }
  return out;
}

Json constraint_doc(const ConstraintSystem& sys) {
  Json doc;
  doc["type"] = "constraints";
  doc["graph"] = graph_doc(sys.graph);
  Json vars = Json::array();
  for (const VarInfo& v : sys.vars.vars) vars.push_back(v.name);
  doc["variables"] = vars;
  Json pins;
  for (const auto& [label, xy] : sys.pins)
    pins[label] = {to_string(xy.first), to_string(xy.second)};
  doc["pins"] = pins;
  Json polys = Json::array();
  for (const Polynomial& p : sys.polys) polys.push_back(poly_to_string(p, sys.vars));
  doc["polynomials"] = polys;
  doc["distancePolyCount"] = sys.distance_poly_count;
  return doc;
}

namespace {

const char* status_name(GroebnerStatus s) {
  switch (s) {
    case GroebnerStatus::Feasible:
      return "feasible";
    case GroebnerStatus::Infeasible:
      return "infeasible";
    case GroebnerStatus::LimitExceeded:
      return "limit_exceeded";
  }
  return "?";
}

}  // namespace

Json groebner_doc(const ConstraintSystem& sys, const GroebnerResult& result,
                  const MonomialOrder& order) {
  Json doc;
  doc["type"] = "groebner";
  doc["graph"] = graph_doc(sys.graph);
  Json vars = Json::array();
  for (const VarInfo& v : sys.vars.vars) vars.push_back(v.name);
  doc["variables"] = vars;
  doc["order"] = order.kind == MonomialOrder::Kind::Lex ? "lex" : "grevlex";
  Json pins;
  for (const auto& [label, xy] : sys.pins)
    pins[label] = {to_string(xy.first), to_string(xy.second)};
  doc["pins"] = pins;
  Json basis = Json::array();
  for (const Polynomial& p : result.basis) basis.push_back(poly_to_string(p, sys.vars, &order));
  doc["basis"] = basis;
  doc["status"] = status_name(result.status);
  doc["stats"] = {{"pairsProcessed", result.stats.pairsProcessed},
                  {"reductionsToZero", result.stats.reductionsToZero},
                  {"workUnits", result.stats.workUnits},
                  {"maxIntermediateDegree", result.stats.maxIntermediateDegree}};
  return doc;
}

namespace {

Json sample_json(const SweepSample& s) {
  Json j;
  j["t"] = s.t;
  if (s.failStep >= 0) {
    j["status"] = "fail";
    j["failStep"] = s.failStep;
  } else {
    j["status"] = "ok";
    j["d"] = s.targetDistance;
    j["minSeparation"] = s.minSeparation;
  }
  return j;
}

Json bracket_json(const Bracket& b) {
  return Json{{"lo", b.lo}, {"hi", b.hi}, {"dLo", b.dLo}, {"dHi", b.dHi}};
}

}  // namespace

Json sweep_doc(const ConstructionPlan& plan, const SweepResult& result) {
  Json doc;
  doc["type"] = "sweep";
  doc["plan"] = plan.name;
  doc["axis"] = result.axis;
  doc["fixedParams"] = result.fixedParams;
  Json samples = Json::array();
  for (const SweepSample& s : result.samples) samples.push_back(sample_json(s));
  doc["samples"] = samples;
  Json brackets = Json::array();
  for (const Bracket& b : result.brackets) brackets.push_back(bracket_json(b));
  doc["brackets"] = brackets;
  return doc;
}

Json grid_sweep_doc(const ConstructionPlan& plan, const GridSweepResult& result) {
  Json doc;
  doc["type"] = "grid_sweep";
  doc["plan"] = plan.name;
  doc["axisA"] = result.axisA;
  doc["axisB"] = result.axisB;
  doc["valuesA"] = result.valuesA;
  doc["valuesB"] = result.valuesB;
  doc["executedCount"] = result.executedCount;
  Json samples = Json::array();
  for (const SweepSample& s : result.samples) samples.push_back(sample_json(s));
  doc["samples"] = samples;
  Json brackets = Json::array();
  for (const GridBracket& b : result.brackets) {
    Json j = bracket_json(b.bracket);
    j["axis"] = b.axis;
    j["fixedValue"] = b.fixedValue;
    brackets.push_back(j);
  }
  doc["brackets"] = brackets;
  return doc;
}

Json plan_doc(const ConstructionPlan& plan) {
  Json doc;
  doc["type"] = "plan";
  doc["name"] = plan.name;
  doc["graph"] = graph_doc(plan.graph);
  doc["targetPair"] = {plan.graph.label(plan.targetPair.first),
                       plan.graph.label(plan.targetPair.second)};
  Json params = Json::array();
  for (const ParamSpec& p : plan.params)
    params.push_back({{"name", p.name}, {"lo", p.lo}, {"hi", p.hi}, {"default", p.def}});
  doc["parameters"] = params;
  Json steps = Json::array();
  for (const PlacementStep& s : plan.steps) {
    Json j;
    if (const auto* f = std::get_if<FixPointStep>(&s)) {
      j = {{"op", "fix"}, {"vertex", plan.graph.label(f->vertex)}, {"x", f->x}, {"y", f->y}};
    } else if (const auto* p = std::get_if<PolarFromStep>(&s)) {
      j = {{"op", "polar"},
           {"vertex", plan.graph.label(p->vertex)},
           {"anchor", plan.graph.label(p->anchor)}};
      if (p->angleParam >= 0)
        j["angleParam"] = plan.params[p->angleParam].name;
      else
        j["angle"] = p->constAngle;
    } else {
      const auto& c = std::get<CircleCircleStep>(s);
      j = {{"op", "circle_circle"},
           {"vertex", plan.graph.label(c.vertex)},
           {"anchorA", plan.graph.label(c.anchorA)},
           {"anchorB", plan.graph.label(c.anchorB)},
           {"branch", c.branch > 0 ? "+" : "-"}};
    }
    steps.push_back(j);
  }
  doc["steps"] = steps;
  return doc;
}

Json run_manifest(const std::vector<std::string>& argv,
                  const std::map<std::string, std::string>& inputHashes, const Json& options,
                  const std::string& outcome) {
  Json doc;
  doc["type"] = "run_manifest";
  doc["version"] = kToolVersion;
  doc["command"] = argv;
  doc["inputs"] = inputHashes;
  doc["options"] = options;
  doc["outcome"] = outcome;
  return doc;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace udg
