#include "udg/plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace udg {

namespace {

struct StepView {
  int vertex;
  std::vector<int> anchors;
};

StepView view_of(const PlacementStep& step) {
  if (const auto* f = std::get_if<FixPointStep>(&step)) return {f->vertex, {}};
  if (const auto* p = std::get_if<PolarFromStep>(&step)) return {p->vertex, {p->anchor}};
  const auto& c = std::get<CircleCircleStep>(step);
  return {c.vertex, {c.anchorA, c.anchorB}};
}

}  // namespace

int ConstructionPlan::param_index(std::string_view name) const {
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i].name == name) return static_cast<int>(i);
  return -1;
}

std::map<std::string, double> ConstructionPlan::default_params() const {
  std::map<std::string, double> out;
  for (const ParamSpec& p : params) out[p.name] = p.def;
  return out;
}

kern::PlanProgram ConstructionPlan::compile() const {
  kern::PlanProgram prog;
  prog.vertexCount = graph.vertex_count();
  prog.paramCount = static_cast<int32_t>(params.size());
  for (const PlacementStep& step : steps) {
    kern::PlanProgram::Step s;
    if (const auto* f = std::get_if<FixPointStep>(&step)) {
      s.kind = kern::PlanProgram::FixPoint;
      s.vertex = f->vertex;
      s.x = f->x;
      s.y = f->y;
    } else if (const auto* p = std::get_if<PolarFromStep>(&step)) {
      s.kind = kern::PlanProgram::PolarFrom;
      s.vertex = p->vertex;
      s.anchorA = p->anchor;
      s.param = p->angleParam;
      s.x = p->constAngle;
    } else {
      const auto& c = std::get<CircleCircleStep>(step);
      s.kind = kern::PlanProgram::CircleCircle;
      s.vertex = c.vertex;
      s.anchorA = c.anchorA;
      s.anchorB = c.anchorB;
      s.branch = c.branch > 0 ? 1.0 : -1.0;
    }
    prog.steps.push_back(s);
  }
  return prog;
}

ConstructionPlan make_plan(std::string name, Graph graph, std::vector<PlacementStep> steps,
                           std::vector<ParamSpec> params, std::pair<int, int> targetPair) {
  ConstructionPlan plan;
  plan.name = std::move(name);
  plan.graph = std::move(graph);
  plan.steps = std::move(steps);
  plan.params = std::move(params);
  plan.targetPair = targetPair;

  const int n = plan.graph.vertex_count();
  std::vector<char> placed(n, 0);
  std::vector<Vec2> fixed(n, {0, 0});
  std::vector<char> isFixed(n, 0);
  std::set<std::pair<int, int>> realized;
  auto realize = [&](int u, int v) {
    if (!plan.graph.has_edge(u, v))
      throw PlanError("step realizes a non-edge {" + plan.graph.label(u) + "," +
                      plan.graph.label(v) + "}");
    realized.insert({std::min(u, v), std::max(u, v)});
  };

  for (const PlacementStep& step : plan.steps) {
    StepView v = view_of(step);
    if (v.vertex < 0 || v.vertex >= n) throw PlanError("step vertex out of range");
    if (placed[v.vertex])
      throw PlanError("vertex '" + plan.graph.label(v.vertex) + "' placed twice");
    for (int a : v.anchors) {
      if (a < 0 || a >= n || !placed[a])
        throw PlanError("step anchor not placed before use");
      realize(v.vertex, a);
    }
    if (const auto* f = std::get_if<FixPointStep>(&step)) {
      fixed[v.vertex] = {f->x, f->y};
      isFixed[v.vertex] = 1;
    }
    if (const auto* p = std::get_if<PolarFromStep>(&step)) {
      if (p->angleParam >= static_cast<int>(plan.params.size()))
        throw PlanError("angle parameter out of range");
    }
    placed[v.vertex] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!placed[i]) throw PlanError("vertex '" + plan.graph.label(i) + "' never placed");

  // Frame edges between fixed points must already be unit length; they are
  // realized by construction rather than by a step.
  for (const Edge& e : plan.graph.edges()) {
    if (isFixed[e.u] && isFixed[e.v]) {
      double dx = fixed[e.u][0] - fixed[e.v][0], dy = fixed[e.u][1] - fixed[e.v][1];
      if (std::abs(std::sqrt(dx * dx + dy * dy) - 1.0) > 1e-12)
        throw PlanError("fixed frame edge {" + plan.graph.label(e.u) + "," +
                        plan.graph.label(e.v) + "} is not unit length");
      realized.insert({e.u, e.v});
    }
  }

  std::pair<int, int> target{std::min(targetPair.first, targetPair.second),
                             std::max(targetPair.first, targetPair.second)};
  for (const Edge& e : plan.graph.edges()) {
    if (std::make_pair(e.u, e.v) == target) continue;
    if (!realized.count({e.u, e.v}))
      throw PlanError("edge {" + plan.graph.label(e.u) + "," + plan.graph.label(e.v) +
                      "} is not realized by any step");
    plan.realizedEdges.push_back(e);
  }
  return plan;
}

namespace {

void check_param_values(const ConstructionPlan& plan,
                        const std::map<std::string, double>& values) {
  for (const ParamSpec& p : plan.params) {
    auto it = values.find(p.name);
    if (it == values.end()) throw PlanError("missing parameter '" + p.name + "'");
    if (it->second < p.lo || it->second > p.hi)
      throw PlanError("parameter '" + p.name + "' outside its range");
  }
}

}  // namespace

ExecResult execute(const ConstructionPlan& plan, const std::map<std::string, double>& paramValues,
                   kern::Impl impl) {
  check_param_values(plan, paramValues);
  kern::PlanProgram prog = plan.compile();
  const int n = plan.graph.vertex_count();

  std::vector<double> paramStore(plan.params.size());
  std::vector<const double*> paramPtrs(plan.params.size());
  for (size_t p = 0; p < plan.params.size(); ++p) {
    paramStore[p] = paramValues.at(plan.params[p].name);
    paramPtrs[p] = &paramStore[p];
  }
  std::vector<double> xs(n), ys(n);
  int32_t failStep = -1;
  double failDist = 0.0;
  kern::run_plan_batch(prog, paramPtrs.data(), 1, xs.data(), ys.data(), &failStep, &failDist,
                       impl);

  ExecResult out;
  if (failStep >= 0) {
    out.failure = StepFailure{failStep, prog.steps[failStep].vertex, failDist};
    return out;
  }
  std::vector<Vec2> coords(n);
  for (int i = 0; i < n; ++i) coords[i] = {xs[i], ys[i]};

  double maxDev = 0.0;
  for (const Edge& e : plan.realizedEdges) {
    double dx = coords[e.u][0] - coords[e.v][0], dy = coords[e.u][1] - coords[e.v][1];
    maxDev = std::max(maxDev, std::abs(std::sqrt(dx * dx + dy * dy) - 1.0));
  }
  if (maxDev > 1e-12)
    throw std::logic_error("plan execution produced a non-unit realized edge");

  auto [tu, tv] = plan.targetPair;
  double dx = coords[tu][0] - coords[tv][0], dy = coords[tu][1] - coords[tv][1];
  out.targetDistance = std::sqrt(dx * dx + dy * dy);
  out.maxRealizedEdgeDev = maxDev;
  out.coords = std::move(coords);
  return out;
}

ConstructionPlan heawood_plan(int variant) {
  if (variant < 0 || variant >= kHeawoodPlanVariants)
    throw PlanError("heawood plan variant must lie in [0, 16)");
  Graph g = catalog("heawood");
  auto id = [&](const char* l) { return g.require(l); };

  // Default branch signs reproduce the folded pose; variant bits flip the
  // free choices for 2, 6, a, 1.
  int b2 = (variant & 1) ? -1 : +1;
  int b6 = (variant & 2) ? +1 : -1;
  int ba = (variant & 4) ? +1 : -1;
  int b1 = (variant & 8) ? +1 : -1;

  std::vector<PlacementStep> steps = {
      FixPointStep{id("7"), 0.5, 1.0},
      FixPointStep{id("b"), -0.5, 1.0},
      FixPointStep{id("3"), -0.5, 0.0},
      FixPointStep{id("e"), -0.5, -1.0},
      FixPointStep{id("5"), 0.5, -1.0},
      FixPointStep{id("g"), 0.5, 0.0},
      PolarFromStep{id("d"), id("5"), 0, 0.0},
      PolarFromStep{id("4"), id("d"), 1, 0.0},
      CircleCircleStep{id("f"), id("4"), id("7"), +1},
      CircleCircleStep{id("c"), id("3"), id("4"), -1},
      CircleCircleStep{id("2"), id("b"), id("d"), b2},
      CircleCircleStep{id("6"), id("e"), id("f"), b6},
      CircleCircleStep{id("a"), id("6"), id("2"), ba},
      CircleCircleStep{id("1"), id("g"), id("c"), b1},
  };
  std::vector<ParamSpec> params = {
      {"alpha", 2.2, 3.9, 3.052408642},
      {"beta", 0.5, 2.9, 1.996074531},
  };
  std::string name = "heawood";
  if (variant != 0) name += "_v" + std::to_string(variant);
  return make_plan(name, std::move(g), std::move(steps), std::move(params),
                   {id("1"), id("a")});
}

ConstructionPlan four_bar_plan() {
  Graph g({"A", "B", "C", "D"},
          {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});  // A-B, A-C, A-D, B-D, C-D
  std::vector<PlacementStep> steps = {
      FixPointStep{0, 0.0, 0.0},
      FixPointStep{1, 1.0, 0.0},
      PolarFromStep{2, 0, 0, 0.0},          // C on the unit circle about A
      CircleCircleStep{3, 2, 1, +1},        // D closes C-D and B-D
  };
  std::vector<ParamSpec> params = {{"theta", 0.2, 3.0, 1.5}};
  return make_plan("four_bar", std::move(g), std::move(steps), std::move(params), {0, 3});
}

ConstructionPlan plan_by_name(std::string_view name, int variant) {
  if (name == "heawood") return heawood_plan(variant);
  if (name == "four_bar") return four_bar_plan();
  throw PlanError("unknown plan '" + std::string(name) + "'");
}

namespace {

struct BatchRun {
  std::vector<double> xs, ys;
  std::vector<int32_t> failStep;
  std::vector<double> failDist;
  std::vector<double> minDist2;
  std::vector<double> targetDist2;
};

// One kernel pass over n samples of a single varying axis (the other
// parameters broadcast), producing target distances and separations.
BatchRun run_axis_batch(const ConstructionPlan& plan, const kern::PlanProgram& prog,
                        int axisIdx, const std::vector<double>& axisValues,
                        const std::map<std::string, double>& fixedParams, kern::Impl impl) {
  const size_t n = axisValues.size();
  const int nv = plan.graph.vertex_count();
  BatchRun run;
  run.xs.resize(static_cast<size_t>(nv) * n);
  run.ys.resize(static_cast<size_t>(nv) * n);
  run.failStep.resize(n);
  run.failDist.resize(n);
  run.minDist2.resize(n);
  run.targetDist2.resize(n);

  std::vector<std::vector<double>> paramCols(plan.params.size());
  std::vector<const double*> paramPtrs(plan.params.size());
  for (size_t p = 0; p < plan.params.size(); ++p) {
    if (static_cast<int>(p) == axisIdx) {
      paramCols[p] = axisValues;
    } else {
      auto it = fixedParams.find(plan.params[p].name);
      double v = it != fixedParams.end() ? it->second : plan.params[p].def;
      paramCols[p].assign(n, v);
    }
    paramPtrs[p] = paramCols[p].data();
  }

  kern::run_plan_batch(prog, paramPtrs.data(), n, run.xs.data(), run.ys.data(),
                       run.failStep.data(), run.failDist.data(), impl);
  kern::min_pair_dist2_batch(run.xs.data(), run.ys.data(), nv, n, run.minDist2.data(), impl);
  kern::pair_dist2_batch(run.xs.data(), run.ys.data(), nv, n, plan.targetPair.first,
                         plan.targetPair.second, run.targetDist2.data(), impl);
  return run;
}

std::vector<double> linspace(double lo, double hi, int samples) {
  std::vector<double> v(samples);
  for (int i = 0; i < samples; ++i)
    v[i] = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1);
  return v;
}

void collect_brackets(const std::vector<SweepSample>& samples, std::vector<Bracket>& out) {
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const SweepSample& a = samples[i];
    const SweepSample& b = samples[i + 1];
    if (a.failStep >= 0 || b.failStep >= 0) continue;
    double fa = a.targetDistance - 1.0, fb = b.targetDistance - 1.0;
    if (fa == 0.0) out.push_back({a.t, a.t, a.targetDistance, a.targetDistance});
    if ((fa < 0) != (fb < 0) && fa != 0.0 && fb != 0.0)
      out.push_back({a.t, b.t, a.targetDistance, b.targetDistance});
    if (i + 2 == samples.size() && fb == 0.0)
      out.push_back({b.t, b.t, b.targetDistance, b.targetDistance});
  }
}

}  // namespace

SweepResult sweep(const ConstructionPlan& plan, const std::string& axis, double lo, double hi,
                  int samples, const std::map<std::string, double>& fixedParams,
                  kern::Impl impl) {
  if (samples < 2) throw PlanError("sweep needs at least 2 samples");
  int axisIdx = plan.param_index(axis);
  if (axisIdx < 0) throw PlanError("unknown sweep axis '" + axis + "'");
  {
    const ParamSpec& spec = plan.params[axisIdx];
    if (lo > hi || lo < spec.lo || hi > spec.hi)
      throw PlanError("sweep range outside parameter range of '" + axis + "'");
    auto probe = fixedParams;
    probe[axis] = lo;
    for (const ParamSpec& p : plan.params)
      if (!probe.count(p.name)) probe[p.name] = p.def;
    check_param_values(plan, probe);
  }

  kern::PlanProgram prog = plan.compile();
  std::vector<double> values = linspace(lo, hi, samples);
  BatchRun run = run_axis_batch(plan, prog, axisIdx, values, fixedParams, impl);

  SweepResult out;
  out.axis = axis;
  out.fixedParams = fixedParams;
  out.samples.resize(samples);
  for (int i = 0; i < samples; ++i) {
    SweepSample& s = out.samples[i];
    s.t = values[i];
    s.failStep = run.failStep[i];
    if (s.failStep < 0) {
      s.targetDistance = std::sqrt(run.targetDist2[i]);
      s.minSeparation = std::sqrt(run.minDist2[i]);
    }
  }
  collect_brackets(out.samples, out.brackets);
  return out;
}

GridSweepResult sweep_grid(const ConstructionPlan& plan, const std::string& axisA, double loA,
                           double hiA, int samplesA, const std::string& axisB, double loB,
                           double hiB, int samplesB,
                           const std::map<std::string, double>& fixedParams, kern::Impl impl) {
  if (samplesA < 2 || samplesB < 2) throw PlanError("grid sweep needs at least 2x2 samples");
  if (axisA == axisB) throw PlanError("grid sweep axes must differ");

  GridSweepResult out;
  out.axisA = axisA;
  out.axisB = axisB;
  out.valuesA = linspace(loA, hiA, samplesA);
  out.valuesB = linspace(loB, hiB, samplesB);
  out.samples.resize(static_cast<size_t>(samplesA) * samplesB);

  // Rows: sweep along B for each fixed A value.
  for (int ia = 0; ia < samplesA; ++ia) {
    auto fixed = fixedParams;
    fixed[axisA] = out.valuesA[ia];
    SweepResult row = sweep(plan, axisB, loB, hiB, samplesB, fixed, impl);
    for (int ib = 0; ib < samplesB; ++ib)
      out.samples[static_cast<size_t>(ia) * samplesB + ib] = row.samples[ib];
    for (const Bracket& b : row.brackets)
      out.brackets.push_back({axisB, out.valuesA[ia], b});
  }
  // Columns: reuse the grid samples along A for each fixed B value.
  for (int ib = 0; ib < samplesB; ++ib) {
    std::vector<SweepSample> col(samplesA);
    for (int ia = 0; ia < samplesA; ++ia) {
      col[ia] = out.samples[static_cast<size_t>(ia) * samplesB + ib];
      col[ia].t = out.valuesA[ia];
    }
    std::vector<Bracket> colBrackets;
    collect_brackets(col, colBrackets);
    for (const Bracket& b : colBrackets) out.brackets.push_back({axisA, out.valuesB[ib], b});
  }
  for (const SweepSample& s : out.samples)
    if (s.failStep < 0) out.executedCount++;
  return out;
}

BisectResult bisect_bracket(const ConstructionPlan& plan, const std::string& axis,
                            const Bracket& bracket,
                            const std::map<std::string, double>& fixedParams, double tol,
                            kern::Impl impl) {
  BisectResult out;
  auto evalAt = [&](double t) {
    auto params = fixedParams;
    for (const ParamSpec& p : plan.params)
      if (!params.count(p.name)) params[p.name] = p.def;
    params[axis] = t;
    return execute(plan, params, impl);
  };

  double lo = bracket.lo, hi = bracket.hi;
  ExecResult elo = evalAt(lo);
  if (!elo.ok()) {
    out.failedInterval = {lo, hi};
    return out;
  }
  if (lo == hi || std::abs(elo.targetDistance - 1.0) < tol) {
    out.converged = std::abs(elo.targetDistance - 1.0) < tol || lo == hi;
    out.paramStar = lo;
    out.coords = *elo.coords;
    out.targetDistance = elo.targetDistance;
    return out;
  }
  ExecResult ehi = evalAt(hi);
  if (!ehi.ok()) {
    out.failedInterval = {lo, hi};
    return out;
  }
  double flo = elo.targetDistance - 1.0;
  double fhi = ehi.targetDistance - 1.0;
  if ((flo < 0) == (fhi < 0))
    throw PlanError("bracket endpoints do not straddle the unit distance");

  ExecResult best = elo;
  double bestT = lo;
  for (int it = 0; it < 200; ++it) {
    out.iterations = it + 1;
    double mid = 0.5 * (lo + hi);
    ExecResult emid = evalAt(mid);
    if (!emid.ok()) {
      out.failedInterval = {lo, hi};
      return out;
    }
    double fmid = emid.targetDistance - 1.0;
    if (std::abs(fmid) < std::abs(best.targetDistance - 1.0)) {
      best = emid;
      bestT = mid;
    }
    if (std::abs(fmid) < tol || hi - lo < 1e-15) {
      out.converged = true;
      out.paramStar = mid;
      out.coords = *emid.coords;
      out.targetDistance = emid.targetDistance;
      return out;
    }
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  out.converged = std::abs(best.targetDistance - 1.0) < tol;
  out.paramStar = bestT;
  out.coords = *best.coords;
  out.targetDistance = best.targetDistance;
  return out;
}

std::string describe_plan(const ConstructionPlan& plan) {
  std::ostringstream out;
  out << "plan " << plan.name << ": " << plan.graph.vertex_count() << " vertices, target pair ("
      << plan.graph.label(plan.targetPair.first) << ", "
      << plan.graph.label(plan.targetPair.second) << ")\n";
  out << "parameters:\n";
  for (const ParamSpec& p : plan.params)
    out << "  " << p.name << " in [" << p.lo << ", " << p.hi << "], default " << p.def << "\n";
  out << "steps:\n";
  for (size_t i = 0; i < plan.steps.size(); ++i) {
    out << "  " << i << ": ";
    const PlacementStep& s = plan.steps[i];
    if (const auto* f = std::get_if<FixPointStep>(&s)) {
      out << "fix " << plan.graph.label(f->vertex) << " at (" << f->x << ", " << f->y << ")";
    } else if (const auto* p = std::get_if<PolarFromStep>(&s)) {
      out << "polar " << plan.graph.label(p->vertex) << " from "
          << plan.graph.label(p->anchor) << " angle ";
      if (p->angleParam >= 0)
        out << plan.params[p->angleParam].name;
      else
        out << p->constAngle;
    } else {
      const auto& c = std::get<CircleCircleStep>(s);
      out << "circle-circle " << plan.graph.label(c.vertex) << " about "
          << plan.graph.label(c.anchorA) << ", " << plan.graph.label(c.anchorB) << " branch "
          << (c.branch > 0 ? "+" : "-");
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace udg
