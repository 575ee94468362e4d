// udg: unit-distance graph toolkit.
//
// Subcommands wire the library together: graph construction and queries,
// exact constraint systems, Groebner feasibility, numerical embedding
// search, the Heawood fold construction, parameter sweeps, bisection, and
// SVG rendering.
//
// Exit codes: 0 success/feasible, 1 usage or input error, 2 proven
// infeasible (basis {1}), 3 search failure (not a nonexistence proof),
// 4 work limit exceeded.

#include <CLI11.hpp>

#include "udg/constraints.hpp"
#include "udg/docs.hpp"
#include "udg/embed.hpp"
#include "udg/graph.hpp"
#include "udg/groebner.hpp"
#include "udg/plan.hpp"
#include "udg/svg.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace udg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSearchFailed = 3;
constexpr int kExitLimit = 4;

struct GraphInput {
  std::string catalogName;
  std::string lcf;
  std::string diffset;
  int modulus = 0;
  std::string edgeFile;

  void add_options(CLI::App* cmd) {
    auto* g = cmd->add_option("--graph", catalogName, "catalog graph name");
    auto* l = cmd->add_option("--lcf", lcf, "LCF spec, e.g. \"(5,-5)^7\"");
    auto* d = cmd->add_option("--diffset", diffset, "difference set residues, e.g. 1,2,4");
    cmd->add_option("--mod", modulus, "difference set modulus");
    auto* e = cmd->add_option("--edges", edgeFile, "edge list file (u v per line)");
    g->excludes(l)->excludes(d)->excludes(e);
    l->excludes(d)->excludes(e);
    d->excludes(e)->needs("--mod");
  }

  bool provided() const {
    return !catalogName.empty() || !lcf.empty() || !diffset.empty() || !edgeFile.empty();
  }

  Graph load(std::map<std::string, std::string>& inputHashes, std::string* name) const {
    if (!catalogName.empty()) {
      if (name) *name = catalogName;
      return catalog(catalogName);
    }
    if (!lcf.empty()) {
      if (name) *name = "lcf " + lcf;
      return graph_from_lcf(parse_lcf(lcf));
    }
    if (!diffset.empty()) {
      std::vector<int> residues;
      std::stringstream ss(diffset);
      std::string tok;
      while (std::getline(ss, tok, ',')) residues.push_back(std::stoi(tok));
      if (name) *name = "diffset {" + diffset + "} mod " + std::to_string(modulus);
      return graph_from_difference_set(residues, modulus);
    }
    if (!edgeFile.empty()) {
      std::string text = read_text_file(edgeFile);
      inputHashes[edgeFile] = hex64(fnv1a64(text));
      std::istringstream in(text);
      if (name) *name = edgeFile;
      return parse_edge_list(in);
    }
    throw CLI::ValidationError("no graph input given (--graph/--lcf/--diffset/--edges)");
  }
};

// "name or spec": catalog name, then LCF, then file path.
Graph load_graph_spec(const std::string& spec, std::map<std::string, std::string>& hashes) {
  try {
    return catalog(spec);
  } catch (const GraphError&) {
  }
  try {
    return graph_from_lcf(parse_lcf(spec));
  } catch (const LcfError&) {
  }
  std::string text = read_text_file(spec);
  hashes[spec] = hex64(fnv1a64(text));
  std::istringstream in(text);
  return parse_edge_list(in);
}

PinMap parse_pins(const std::string& pinSpec, const Graph& g) {
  if (pinSpec == "auto") return auto_pin(g);
  if (pinSpec.empty() || pinSpec == "none") return {};
  PinMap pins;
  std::stringstream ss(pinSpec);
  std::string entry;
  while (std::getline(ss, entry, ';')) {
    auto eq = entry.find('=');
    auto comma = entry.find(',', eq);
    if (eq == std::string::npos || comma == std::string::npos)
      throw CLI::ValidationError("pin entry must look like label=x,y");
    std::string label = entry.substr(0, eq);
    g.require(label);
    pins[label] = {parse_rational(entry.substr(eq + 1, comma - eq - 1)),
                   parse_rational(entry.substr(comma + 1))};
  }
  return pins;
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& spec,
                                                             const Graph& g) {
  if (spec == "same-part") return same_part_pairs(g);
  if (spec == "all") return all_vertex_pairs(g);
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(spec);
  std::string entry;
  while (std::getline(ss, entry, ';')) {
    auto colon = entry.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("distinctness pair must look like u:v");
    out.push_back({entry.substr(0, colon), entry.substr(colon + 1)});
  }
  return out;
}

struct OutputSink {
  std::string outPath;
  std::string svgPath;
  std::vector<std::string> argv;
  std::map<std::string, std::string> inputHashes;

  void add_options(CLI::App* cmd, bool withSvg = false) {
    cmd->add_option("--out", outPath, "write the structured result document here");
    if (withSvg) cmd->add_option("--svg", svgPath, "write an SVG rendering here");
  }

  void write_doc(const Json& doc, const Json& options, const std::string& outcome) const {
    if (outPath.empty()) return;
    write_text_file(outPath, doc.dump(2) + "\n");
    Json manifest = run_manifest(argv, inputHashes, options, outcome);
    write_text_file(outPath + ".manifest.json", manifest.dump(2) + "\n");
  }

  void write_svg(const Graph& g, std::span<const Vec2> coords, const Json& options,
                 const std::string& outcome, double tol = 1e-9) const {
    if (svgPath.empty()) return;
    SvgStyle style;
    style.deviationTol = tol;
    write_text_file(svgPath, render_svg(g, coords, style));
    if (outPath.empty()) {
      // The SVG is the only artifact of this run; it still gets a manifest.
      Json manifest = run_manifest(argv, inputHashes, options, outcome);
      write_text_file(svgPath + ".manifest.json", manifest.dump(2) + "\n");
    }
  }
};

struct SolveFlags {
  SolveOptions opts;
  void add_options(CLI::App* cmd) {
    cmd->add_option("--restarts", opts.restarts, "random restarts")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "rng seed")->capture_default_str();
    cmd->add_option("--residual-tol", opts.residualTol, "success threshold on the squared residual sum")
        ->capture_default_str();
    cmd->add_option("--separation-floor", opts.separationFloor, "minimum vertex separation")
        ->capture_default_str();
    cmd->add_option("--max-iterations", opts.maxIterations, "iterations per restart")
        ->capture_default_str();
    cmd->add_option("--init-box", opts.initBox, "random init half-width (0 = n/2)")
        ->capture_default_str();
  }
  Json to_json() const {
    return Json{{"restarts", opts.restarts},       {"residualTol", opts.residualTol},
                {"separationFloor", opts.separationFloor}, {"maxIterations", opts.maxIterations},
                {"seed", opts.seed},               {"initBox", opts.initBox}};
  }
};

kern::Impl parse_impl(const std::string& s) {
  if (s == "auto") return kern::Impl::Auto;
  if (s == "scalar") return kern::Impl::Scalar;
  if (s == "avx2") return kern::Impl::Avx2;
  throw CLI::ValidationError("--kernel must be auto, scalar, or avx2");
}

void print_verify(const VerifyReport& rep) {
  std::cout << "maxEdgeDeviation = " << format_double(rep.maxEdgeDeviation)
            << "\nminSeparation    = " << format_double(rep.minSeparation) << "\nverify: "
            << (rep.pass ? "PASS" : "FAIL") << " (tolerances " << rep.tolDeviation << ", "
            << rep.tolSeparation << ")\n";
}

const char* kFeasibleCaveat =
    "note: feasible certifies a nonempty complex variety only; it does NOT certify a real\n"
    "      unit-distance embedding (coincident vertices may be forced, as for K2,3).\n";

int cmd_graph(const GraphInput& in, const std::string& isoSpec, const OutputSink& sink) {
  std::map<std::string, std::string> hashes = sink.inputHashes;
  std::string name;
  auto mutableHashes = hashes;
  Graph g = in.load(mutableHashes, &name);
  std::cout << name << ": " << g.vertex_count() << " vertices, " << g.edge_count()
            << " edges\n";
  auto deg = degree_sequence(g);
  std::cout << "degree sequence:";
  for (int d : deg) std::cout << " " << d;
  std::cout << "\n";
  auto gi = girth(g);
  std::cout << "girth: " << (gi ? std::to_string(*gi) : std::string("infinity")) << "\n";
  std::cout << "bipartite: " << (is_bipartite(g) ? "yes" : "no") << "\n";
  std::cout << "connected: " << (is_connected(g) ? "yes" : "no") << "\n";
  std::cout << "hash: " << hex64(graph_hash(g)) << "\n";

  if (!isoSpec.empty()) {
    Graph other = load_graph_spec(isoSpec, mutableHashes);
    bool iso = isomorphic(g, other);
    std::cout << "isomorphic to " << isoSpec << ": " << (iso ? "yes" : "no") << "\n";
  }

  OutputSink out = sink;
  out.inputHashes = mutableHashes;
  out.write_doc(graph_doc(g, name), Json::object(), "ok");
  if (!out.outPath.empty()) std::cout << "wrote " << out.outPath << "\n";
  return kExitOk;
}

ConstraintSystem build_system(const GraphInput& in, const std::string& pinSpec,
                              const std::string& saturate,
                              std::map<std::string, std::string>& hashes, std::string* name) {
  Graph g = in.load(hashes, name);
  ConstraintSystem sys = distance_constraints(g, parse_pins(pinSpec, g));
  if (!saturate.empty()) sys = saturate_distinctness(sys, parse_pairs(saturate, g));
  return sys;
}

int cmd_constraints(const GraphInput& in, const std::string& pinSpec,
                    const std::string& saturate, const OutputSink& sink) {
  OutputSink out = sink;
  std::string name;
  ConstraintSystem sys = build_system(in, pinSpec, saturate, out.inputHashes, &name);
  std::cout << "variables:";
  for (const VarInfo& v : sys.vars.vars) std::cout << " " << v.name;
  std::cout << "\npins:";
  for (const auto& [label, xy] : sys.pins)
    std::cout << " " << label << "=(" << to_string(xy.first) << "," << to_string(xy.second)
              << ")";
  std::cout << "\npolynomials (" << sys.polys.size() << "):\n";
  for (const Polynomial& p : sys.polys) std::cout << "  " << poly_to_string(p, sys.vars)
                                                  << " = 0\n";
  out.write_doc(constraint_doc(sys), Json{{"pin", pinSpec}, {"saturate", saturate}}, "ok");
  return kExitOk;
}

int cmd_groebner(const GraphInput& in, const std::string& pinSpec, const std::string& saturate,
                 const std::string& orderName, const BuchbergerLimits& limits, bool solutions,
                 const OutputSink& sink) {
  OutputSink out = sink;
  std::string name;
  ConstraintSystem sys = build_system(in, pinSpec, saturate, out.inputHashes, &name);
  MonomialOrder order = default_order(
      sys, orderName == "grevlex" ? MonomialOrder::Kind::Grevlex : MonomialOrder::Kind::Lex);

  GroebnerResult result = buchberger(sys, order, limits);
  Json options{{"pin", pinSpec},           {"saturate", saturate},
               {"order", orderName},       {"maxPairs", limits.maxPairs},
               {"maxDegree", limits.maxTotalDegree}, {"maxWork", limits.maxWork}};

  std::cout << "system: " << sys.polys.size() << " polynomials in " << sys.vars.size()
            << " variables (" << name << ")\n";
  std::cout << "pinned relations:";
  for (const auto& [label, xy] : sys.pins)
    std::cout << " x" << label << " = " << to_string(xy.first) << ", y" << label << " = "
              << to_string(xy.second) << ";";
  std::cout << "\n";

  if (result.status == GroebnerStatus::LimitExceeded) {
    std::cout << "status: LIMIT EXCEEDED after " << result.stats.pairsProcessed
              << " pairs (partial basis of " << result.basis.size() << " elements)\n";
    out.write_doc(groebner_doc(sys, result, order), options, "limit_exceeded");
    return kExitLimit;
  }

  std::cout << "reduced basis (" << result.basis.size() << " elements):\n";
  for (const Polynomial& p : result.basis)
    std::cout << "  " << poly_to_string(p, sys.vars, &order) << " = 0\n";
  std::cout << "stats: " << result.stats.pairsProcessed << " pairs, "
            << result.stats.reductionsToZero << " zero reductions, max degree "
            << result.stats.maxIntermediateDegree << "\n";

  if (result.status == GroebnerStatus::Infeasible) {
    std::cout << "status: INFEASIBLE (basis is {1}; no embedding exists, even over the "
                 "complex numbers)\n";
    out.write_doc(groebner_doc(sys, result, order), options, "infeasible");
    return kExitInfeasible;
  }

  std::cout << "status: FEASIBLE\n" << kFeasibleCaveat;

  if (solutions) {
    SolutionSet sols = extract_solutions(result, sys);
    if (sols.status == ExtractionStatus::NonTriangular) {
      std::cout << "extraction: basis is not triangular; no back-substitution performed\n";
    } else {
      auto reports = check_distinct(sols, sys);
      std::cout << "extraction: " << sols.assignments.size() << " real solution(s)\n";
      for (size_t i = 0; i < reports.size(); ++i) {
        std::cout << "  solution " << i << ":";
        for (int v = 0; v < sys.graph.vertex_count(); ++v)
          std::cout << " " << sys.graph.label(v) << "=(" << format_double(reports[i].coords[v][0])
                    << ", " << format_double(reports[i].coords[v][1]) << ")";
        if (reports[i].pass) {
          std::cout << "  [distinct]\n";
        } else {
          std::cout << "  [duplicates:";
          for (auto [u, v] : reports[i].duplicates)
            std::cout << " " << sys.graph.label(u) << "~" << sys.graph.label(v);
          std::cout << "]\n";
        }
      }
    }
  }
  out.write_doc(groebner_doc(sys, result, order), options, "feasible");
  return kExitOk;
}

int cmd_solve(const GraphInput& in, const SolveFlags& flags, const OutputSink& sink) {
  OutputSink out = sink;
  std::string name;
  Graph g = in.load(out.inputHashes, &name);
  SolveOutcome res = solve(g, flags.opts);
  if (!res.embedding) {
    std::cout << "no embedding found after " << res.failure.restartsUsed
              << " restarts (best residual " << format_double(res.failure.bestResidual)
              << ", best separation " << format_double(res.failure.bestSeparation) << ")\n";
    std::cout << "this is a search failure, not a nonexistence proof\n";
    return kExitSearchFailed;
  }
  const Embedding& emb = *res.embedding;
  std::cout << "embedding found (restart " << res.restartUsed << ", residual "
            << format_double(res.residual) << ")\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    std::cout << "  " << g.label(v) << " = (" << format_double(emb.coords[v][0]) << ", "
              << format_double(emb.coords[v][1]) << ")\n";
  std::cout << "maxEdgeDeviation = " << format_double(emb.maxEdgeDeviation)
            << "\nminSeparation    = " << format_double(emb.minSeparation) << "\n";
  out.write_doc(embedding_doc(emb, flags.opts), flags.to_json(), "ok");
  out.write_svg(g, emb.coords, flags.to_json(), "ok");
  return kExitOk;
}

ParsedEmbedding load_embedding(const std::string& path,
                               std::map<std::string, std::string>& hashes) {
  std::string text = read_text_file(path);
  hashes[path] = hex64(fnv1a64(text));
  return parse_embedding_doc(Json::parse(text));
}

int cmd_verify(const std::string& inPath, double tolDev, double tolSep,
               const OutputSink& sink) {
  OutputSink out = sink;
  ParsedEmbedding pe = load_embedding(inPath, out.inputHashes);
  VerifyReport rep = verify(pe.graph, pe.coords, tolDev, tolSep);
  print_verify(rep);
  Json doc{{"type", "verify"},
           {"graph", graph_doc(pe.graph)},
           {"maxEdgeDeviation", rep.maxEdgeDeviation},
           {"minSeparation", rep.minSeparation},
           {"tolDeviation", rep.tolDeviation},
           {"tolSeparation", rep.tolSeparation},
           {"pass", rep.pass}};
  out.write_doc(doc, Json{{"tolDev", tolDev}, {"tolSep", tolSep}},
                rep.pass ? "pass" : "fail");
  return rep.pass ? kExitOk : kExitSearchFailed;
}

int cmd_refine(const std::string& inPath, bool allowSimilarity, const SolveFlags& flags,
               const OutputSink& sink) {
  OutputSink out = sink;
  ParsedEmbedding pe = load_embedding(inPath, out.inputHashes);
  RefineResult r = refine(pe.graph, pe.coords, allowSimilarity, flags.opts);
  std::cout << "refine: residual " << format_double(r.residual)
            << (r.converged ? "" : " (did not reach the residual tolerance)") << "\n";
  if (allowSimilarity) std::cout << "similarity scale applied: " << format_double(r.scaleApplied)
                                 << "\n";
  std::cout << "maxEdgeDeviation = " << format_double(r.embedding.maxEdgeDeviation)
            << "\nminSeparation    = " << format_double(r.embedding.minSeparation) << "\n";
  out.write_doc(embedding_doc(r.embedding, flags.opts), flags.to_json(),
                r.converged ? "ok" : "not_converged");
  out.write_svg(r.embedding.graph, r.embedding.coords, flags.to_json(),
                r.converged ? "ok" : "not_converged");
  return r.converged ? kExitOk : kExitSearchFailed;
}

int cmd_rigidity(const std::string& inPath, const OutputSink& sink) {
  OutputSink out = sink;
  ParsedEmbedding pe = load_embedding(inPath, out.inputHashes);
  VerifyReport rep = verify(pe.graph, pe.coords, 1e-6, 1e-6);
  if (!rep.pass) {
    std::cerr << "embedding does not verify at tolerance 1e-6; refusing rigidity analysis\n";
    return kExitSearchFailed;
  }
  Embedding emb{pe.graph, pe.coords, rep.maxEdgeDeviation, rep.minSeparation};
  RigidityReport r = rigidity_report(pe.graph, emb);
  std::cout << "jacobian rank: " << r.jacobianRank << " (threshold " << r.rankTolerance
            << ")\nflex count: " << r.flexCount << "\nrigid: " << (r.rigid ? "yes" : "no")
            << "\n";
  return kExitOk;
}

std::map<std::string, double> parse_param_list(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("parameter must look like name=value");
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

int cmd_plan(const std::string& planName, int variant,
             const std::vector<std::string>& paramKvs, const OutputSink& sink) {
  ConstructionPlan plan = plan_by_name(planName, variant);
  std::cout << describe_plan(plan);
  auto params = plan.default_params();
  for (auto& [k, v] : parse_param_list(paramKvs)) params[k] = v;

  ExecResult r = execute(plan, params);
  if (!r.ok()) {
    std::cout << "execution fails at step " << r.failure->stepIndex << " (vertex "
              << plan.graph.label(r.failure->vertex) << ", anchor distance "
              << format_double(r.failure->anchorDistance) << ")\n";
    return kExitSearchFailed;
  }
  std::cout << "execution ok: " << plan.realizedEdges.size()
            << " realized unit edges (max deviation " << format_double(r.maxRealizedEdgeDev)
            << ")\n";
  std::cout << "d(" << plan.graph.label(plan.targetPair.first) << ", "
            << plan.graph.label(plan.targetPair.second)
            << ") = " << format_double(r.targetDistance) << "\n";
  for (int v = 0; v < plan.graph.vertex_count(); ++v)
    std::cout << "  " << plan.graph.label(v) << " = (" << format_double((*r.coords)[v][0])
              << ", " << format_double((*r.coords)[v][1]) << ")\n";

  OutputSink out = sink;
  Json doc = plan_doc(plan);
  doc["execution"] = {{"params", params},
                      {"targetDistance", r.targetDistance},
                      {"maxRealizedEdgeDev", r.maxRealizedEdgeDev}};
  out.write_doc(doc, Json{{"variant", variant}, {"params", params}}, "ok");
  out.write_svg(plan.graph, *r.coords, Json{{"variant", variant}, {"params", params}}, "ok");
  return kExitOk;
}

int cmd_sweep(const std::string& planName, int variant, const std::string& axis,
              const std::string& range, int samples, const std::string& axis2,
              const std::string& range2, int samples2,
              const std::vector<std::string>& fixKvs, const std::string& kernel,
              const OutputSink& sink) {
  ConstructionPlan plan = plan_by_name(planName, variant);
  auto fixed = parse_param_list(fixKvs);
  kern::Impl impl = parse_impl(kernel);

  auto parse_range = [&](const std::string& r) {
    auto colon = r.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("range must look like lo:hi");
    return std::make_pair(std::stod(r.substr(0, colon)), std::stod(r.substr(colon + 1)));
  };
  auto [lo, hi] = parse_range(range);

  OutputSink out = sink;
  Json options{{"plan", planName},   {"variant", variant}, {"axis", axis},
               {"range", range},     {"samples", samples}, {"fixed", fixed},
               {"kernel", kernel}};

  if (!axis2.empty()) {
    auto [lo2, hi2] = parse_range(range2);
    GridSweepResult grid =
        sweep_grid(plan, axis, lo, hi, samples, axis2, lo2, hi2, samples2, fixed, impl);
    std::cout << "grid sweep " << axis << " x " << axis2 << ": " << grid.samples.size()
              << " samples, " << grid.executedCount << " executable\n";
    if (grid.brackets.empty()) {
      std::cout << "NO_BRACKET: target distance never straddles 1 on any executable grid "
                   "line\n";
    } else {
      std::cout << "brackets (" << grid.brackets.size() << "):\n";
      for (const GridBracket& b : grid.brackets)
        std::cout << "  along " << b.axis << " at " << (b.axis == axis ? axis2 : axis) << " = "
                  << format_double(b.fixedValue) << ": [" << format_double(b.bracket.lo) << ", "
                  << format_double(b.bracket.hi) << "] d: " << format_double(b.bracket.dLo)
                  << " -> " << format_double(b.bracket.dHi) << "\n";
    }
    options["axis2"] = axis2;
    options["range2"] = range2;
    options["samples2"] = samples2;
    out.write_doc(grid_sweep_doc(plan, grid), options,
                  grid.brackets.empty() ? "no_bracket" : "brackets_found");
    return kExitOk;
  }

  SweepResult sw = sweep(plan, axis, lo, hi, samples, fixed, impl);
  std::cout << "# " << axis << "  d(target)  minSeparation  status\n";
  for (const SweepSample& s : sw.samples) {
    if (s.failStep < 0)
      std::cout << format_double(s.t) << "  " << format_double(s.targetDistance) << "  "
                << format_double(s.minSeparation) << "  ok\n";
    else
      std::cout << format_double(s.t) << "  -  -  fail@step" << s.failStep << "\n";
  }
  if (sw.brackets.empty()) {
    std::cout << "NO_BRACKET\n";
  } else {
    for (const Bracket& b : sw.brackets)
      std::cout << "bracket [" << format_double(b.lo) << ", " << format_double(b.hi)
                << "] d: " << format_double(b.dLo) << " -> " << format_double(b.dHi) << "\n";
  }
  out.write_doc(sweep_doc(plan, sw), options,
                sw.brackets.empty() ? "no_bracket" : "brackets_found");
  return kExitOk;
}

int cmd_bisect(const std::string& planName, int variant, const std::string& axis, double lo,
               double hi, const std::vector<std::string>& fixKvs, double tol,
               const SolveFlags& flags, const OutputSink& sink) {
  ConstructionPlan plan = plan_by_name(planName, variant);
  auto fixed = parse_param_list(fixKvs);

  auto endpoint = [&](double t) {
    auto params = plan.default_params();
    for (auto& [k, v] : fixed) params[k] = v;
    params[axis] = t;
    return execute(plan, params);
  };
  ExecResult elo = endpoint(lo), ehi = endpoint(hi);
  if (!elo.ok() || !ehi.ok()) {
    std::cerr << "bracket endpoint does not execute\n";
    return kExitUsage;
  }
  Bracket bracket{lo, hi, elo.targetDistance, ehi.targetDistance};

  BisectResult b = bisect_bracket(plan, axis, bracket, fixed, tol);
  if (b.failedInterval) {
    std::cout << "bracket invalidated: execution fails inside ["
              << format_double(b.failedInterval->first) << ", "
              << format_double(b.failedInterval->second) << "]\n";
    return kExitSearchFailed;
  }
  std::cout << "bisection: " << axis << "* = " << format_double(b.paramStar) << " after "
            << b.iterations << " iterations, d(target) = " << format_double(b.targetDistance)
            << "\n";
  if (!b.converged) {
    std::cout << "did not reach |d - 1| < " << tol << "\n";
    return kExitSearchFailed;
  }

  // Polish the candidate and verify the full graph, monitored edge included.
  RefineResult polish = refine(plan.graph, b.coords, false, flags.opts);
  VerifyReport rep = verify(plan.graph, polish.embedding.coords, 1e-9, 1e-6);
  std::cout << "candidate after refine:\n";
  print_verify(rep);
  for (int v = 0; v < plan.graph.vertex_count(); ++v)
    std::cout << "  " << plan.graph.label(v) << " = ("
              << format_double(polish.embedding.coords[v][0]) << ", "
              << format_double(polish.embedding.coords[v][1]) << ")\n";

  OutputSink out = sink;
  Json options{{"plan", planName}, {"variant", variant}, {"axis", axis},
               {"lo", lo},         {"hi", hi},           {"tol", tol},
               {"fixed", fixed}};
  out.write_doc(embedding_doc(polish.embedding, flags.opts, /*candidate=*/true,
                              "bisection candidate; numerical evidence, not a proof"),
                options, rep.pass ? "candidate_verified" : "candidate_failed_verify");
  out.write_svg(plan.graph, polish.embedding.coords, options,
                rep.pass ? "candidate_verified" : "candidate_failed_verify");
  return rep.pass ? kExitOk : kExitSearchFailed;
}

int cmd_render(const std::string& inPath, const std::string& outPath, double tol) {
  std::map<std::string, std::string> hashes;
  ParsedEmbedding pe = load_embedding(inPath, hashes);
  SvgStyle style;
  style.deviationTol = tol;
  write_text_file(outPath, render_svg(pe.graph, pe.coords, style));
  std::cout << "wrote " << outPath << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unit-distance graph toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", udg::kToolVersion);

  std::vector<std::string> argvCopy(argv, argv + argc);

  // graph
  auto* graphCmd = app.add_subcommand("graph", "construct a graph and print its properties");
  GraphInput graphIn;
  graphIn.add_options(graphCmd);
  std::string isoSpec;
  graphCmd->add_option("--isomorphic-to", isoSpec,
                       "second graph (catalog name, LCF spec, or edge list file)");
  OutputSink graphSink;
  graphSink.add_options(graphCmd);

  // constraints
  auto* consCmd = app.add_subcommand("constraints", "emit the unit-distance polynomial system");
  GraphInput consIn;
  consIn.add_options(consCmd);
  std::string consPins = "auto", consSat;
  consCmd->add_option("--pin", consPins, "auto | none | \"label=x,y;...\" (exact rationals)")
      ->capture_default_str();
  consCmd->add_option("--saturate", consSat, "same-part | all | \"u:v;...\" distinctness pairs");
  OutputSink consSink;
  consSink.add_options(consCmd);

  // groebner
  auto* grbCmd = app.add_subcommand("groebner", "decide feasibility by Buchberger completion");
  GraphInput grbIn;
  grbIn.add_options(grbCmd);
  std::string grbPins = "auto", grbSat, grbOrder = "lex";
  bool grbSolutions = false;
  BuchbergerLimits grbLimits;
  grbCmd->add_option("--pin", grbPins, "auto | none | explicit pins")->capture_default_str();
  grbCmd->add_option("--saturate", grbSat, "distinctness saturation pairs");
  grbCmd->add_option("--order", grbOrder, "lex | grevlex")->capture_default_str();
  grbCmd->add_option("--max-pairs", grbLimits.maxPairs, "pair budget")->capture_default_str();
  grbCmd->add_option("--max-degree", grbLimits.maxTotalDegree, "intermediate degree cap")
      ->capture_default_str();
  grbCmd->add_option("--max-work", grbLimits.maxWork, "cancellation budget")
      ->capture_default_str();
  grbCmd->add_flag("--solutions", grbSolutions,
                   "back-substitute a triangular basis and check distinctness");
  OutputSink grbSink;
  grbSink.add_options(grbCmd);

  // solve
  auto* solveCmd = app.add_subcommand("solve", "numerical embedding search");
  GraphInput solveIn;
  solveIn.add_options(solveCmd);
  SolveFlags solveFlags;
  solveFlags.add_options(solveCmd);
  OutputSink solveSink;
  solveSink.add_options(solveCmd, true);

  // verify
  auto* verifyCmd = app.add_subcommand("verify", "measure an embedding document");
  std::string verifyIn;
  double verifyTolDev = 1e-9, verifyTolSep = 1e-6;
  verifyCmd->add_option("--in", verifyIn, "embedding document")->required();
  verifyCmd->add_option("--tol-dev", verifyTolDev, "edge deviation tolerance")
      ->capture_default_str();
  verifyCmd->add_option("--tol-sep", verifyTolSep, "separation tolerance")
      ->capture_default_str();
  OutputSink verifySink;
  verifySink.add_options(verifyCmd);

  // refine
  auto* refineCmd = app.add_subcommand("refine", "polish an embedding document");
  std::string refineIn;
  bool refineSim = false;
  refineCmd->add_option("--in", refineIn, "embedding document")->required();
  refineCmd->add_flag("--allow-similarity", refineSim, "rescale before polishing");
  SolveFlags refineFlags;
  refineFlags.add_options(refineCmd);
  OutputSink refineSink;
  refineSink.add_options(refineCmd, true);

  // rigidity
  auto* rigCmd = app.add_subcommand("rigidity", "rigidity Jacobian rank and flex count");
  std::string rigIn;
  rigCmd->add_option("--in", rigIn, "embedding document")->required();
  OutputSink rigSink;

  // plan
  auto* planCmd = app.add_subcommand("plan", "describe and execute a construction plan");
  std::string planName = "heawood";
  int planVariant = 0;
  std::vector<std::string> planParams;
  planCmd->add_option("--plan", planName, "heawood | four_bar")->capture_default_str();
  planCmd->add_option("--variant", planVariant, "branch variant (heawood: 0..15)")
      ->capture_default_str();
  planCmd->add_option("--param", planParams, "override parameter, name=value");
  OutputSink planSink;
  planSink.add_options(planCmd, true);

  // sweep
  auto* sweepCmd = app.add_subcommand("sweep", "sample a plan parameter and find brackets");
  std::string swPlan = "heawood", swAxis, swRange, swAxis2, swRange2, swKernel = "auto";
  int swVariant = 0, swSamples = 100, swSamples2 = 0;
  std::vector<std::string> swFix;
  sweepCmd->add_option("--plan", swPlan, "plan name")->capture_default_str();
  sweepCmd->add_option("--variant", swVariant, "branch variant")->capture_default_str();
  sweepCmd->add_option("--axis", swAxis, "parameter to sweep")->required();
  sweepCmd->add_option("--range", swRange, "lo:hi")->required();
  sweepCmd->add_option("--samples", swSamples, "sample count")->capture_default_str();
  sweepCmd->add_option("--axis2", swAxis2, "second axis (grid sweep)");
  sweepCmd->add_option("--range2", swRange2, "second axis range lo:hi");
  sweepCmd->add_option("--samples2", swSamples2, "second axis sample count");
  sweepCmd->add_option("--fix", swFix, "fix another parameter, name=value");
  sweepCmd->add_option("--kernel", swKernel, "auto | scalar | avx2")->capture_default_str();
  OutputSink sweepSink;
  sweepSink.add_options(sweepCmd);

  // bisect
  auto* bisCmd = app.add_subcommand("bisect", "bisect a bracket to a unit target distance");
  std::string bisPlan = "heawood", bisAxis;
  int bisVariant = 0;
  double bisLo = 0, bisHi = 0, bisTol = 1e-12;
  std::vector<std::string> bisFix;
  bisCmd->add_option("--plan", bisPlan, "plan name")->capture_default_str();
  bisCmd->add_option("--variant", bisVariant, "branch variant")->capture_default_str();
  bisCmd->add_option("--axis", bisAxis, "bracketed parameter")->required();
  bisCmd->add_option("--lo", bisLo, "bracket low endpoint")->required();
  bisCmd->add_option("--hi", bisHi, "bracket high endpoint")->required();
  bisCmd->add_option("--fix", bisFix, "fix another parameter, name=value");
  bisCmd->add_option("--tol", bisTol, "target |d-1| tolerance")->capture_default_str();
  SolveFlags bisFlags;
  OutputSink bisSink;
  bisSink.add_options(bisCmd, true);

  // render
  auto* renderCmd = app.add_subcommand("render", "render an embedding document as SVG");
  std::string renderIn, renderOut;
  double renderTol = 1e-9;
  renderCmd->add_option("--in", renderIn, "embedding document")->required();
  renderCmd->add_option("--out", renderOut, "output SVG path")->required();
  renderCmd->add_option("--tol", renderTol, "deviation tolerance for dashed edges")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    for (OutputSink* sink : {&graphSink, &consSink, &grbSink, &solveSink, &verifySink,
                             &refineSink, &planSink, &sweepSink, &bisSink})
      sink->argv = argvCopy;

    if (graphCmd->parsed()) return cmd_graph(graphIn, isoSpec, graphSink);
    if (consCmd->parsed()) return cmd_constraints(consIn, consPins, consSat, consSink);
    if (grbCmd->parsed())
      return cmd_groebner(grbIn, grbPins, grbSat, grbOrder, grbLimits, grbSolutions, grbSink);
    if (solveCmd->parsed()) return cmd_solve(solveIn, solveFlags, solveSink);
    if (verifyCmd->parsed()) return cmd_verify(verifyIn, verifyTolDev, verifyTolSep, verifySink);
    if (refineCmd->parsed()) return cmd_refine(refineIn, refineSim, refineFlags, refineSink);
    if (rigCmd->parsed()) return cmd_rigidity(rigIn, rigSink);
    if (planCmd->parsed()) return cmd_plan(planName, planVariant, planParams, planSink);
    if (sweepCmd->parsed())
      return cmd_sweep(swPlan, swVariant, swAxis, swRange, swSamples, swAxis2, swRange2,
                       swSamples2, swFix, swKernel, sweepSink);
    if (bisCmd->parsed())
      return cmd_bisect(bisPlan, bisVariant, bisAxis, bisLo, bisHi, bisFix, bisTol, bisFlags,
                        bisSink);
    if (renderCmd->parsed()) return cmd_render(renderIn, renderOut, renderTol);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
