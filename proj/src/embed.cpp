#include "udg/embed.hpp"

#include "udg/constraints.hpp"
#include "udg/kern/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace udg {

namespace {

std::vector<int32_t> flat_edges(const Graph& g) {
  std::vector<int32_t> e;
  e.reserve(g.edges().size() * 2);
  for (const Edge& ed : g.edges()) {
    e.push_back(ed.u);
    e.push_back(ed.v);
  }
  return e;
}

kern::EmbeddingMetrics metrics_of(const Graph& g, std::span<const Vec2> coords) {
  auto edges = flat_edges(g);
  return kern::embedding_metrics(reinterpret_cast<const double*>(coords.data()),
                                 g.vertex_count(), edges.data(),
                                 static_cast<int32_t>(edges.size() / 2));
}

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct LsqProblem {
  const Graph& g;
  std::vector<int> pinnedCoords;  // flat coordinate indices held fixed
  double separationFloor = 0.0;   // 0 disables the repulsion rows
};

// Residual vector and Jacobian at x: one row per edge, (|pu-pv|^2 - 1),
// plus a short-range repulsion row for every vertex pair currently below
// the separation floor.
void residuals(const LsqProblem& prob, const Eigen::VectorXd& x, Eigen::VectorXd& r,
               Eigen::MatrixXd& J, double* edgeResidual) {
  const int n = prob.g.vertex_count();
  std::vector<std::array<int, 2>> reps;
  if (prob.separationFloor > 0) {
    const double floor2 = prob.separationFloor * prob.separationFloor;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        double dx = x[2 * u] - x[2 * v], dy = x[2 * u + 1] - x[2 * v + 1];
        if (dx * dx + dy * dy < floor2) reps.push_back({u, v});
      }
  }
  const int rows = prob.g.edge_count() + static_cast<int>(reps.size());
  r.resize(rows);
  J.setZero(rows, x.size());
  int row = 0;
  double fe = 0.0;
  for (const Edge& e : prob.g.edges()) {
    double dx = x[2 * e.u] - x[2 * e.v], dy = x[2 * e.u + 1] - x[2 * e.v + 1];
    double res = dx * dx + dy * dy - 1.0;
    r[row] = res;
    fe += res * res;
    J(row, 2 * e.u) = 2 * dx;
    J(row, 2 * e.u + 1) = 2 * dy;
    J(row, 2 * e.v) = -2 * dx;
    J(row, 2 * e.v + 1) = -2 * dy;
    ++row;
  }
  const double floor2 = prob.separationFloor * prob.separationFloor;
  constexpr double kRepulsionWeight = 10.0;
  for (auto [u, v] : reps) {
    double dx = x[2 * u] - x[2 * v], dy = x[2 * u + 1] - x[2 * v + 1];
    r[row] = kRepulsionWeight * (floor2 - (dx * dx + dy * dy));
    J(row, 2 * u) = -2 * kRepulsionWeight * dx;
    J(row, 2 * u + 1) = -2 * kRepulsionWeight * dy;
    J(row, 2 * v) = 2 * kRepulsionWeight * dx;
    J(row, 2 * v + 1) = 2 * kRepulsionWeight * dy;
    ++row;
  }
  for (int c : prob.pinnedCoords) J.col(c).setZero();
  if (edgeResidual) *edgeResidual = fe;
}

struct LsqResult {
  Eigen::VectorXd x;
  double edgeResidual = 0.0;
  int iterations = 0;
};

// Damped normal-equations steps: damping up on non-decrease, down on
// success. Objective is the full residual; convergence is tracked on the
// edge part alone.
LsqResult levenberg(const LsqProblem& prob, Eigen::VectorXd x, int maxIterations) {
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  double fe = 0.0;
  residuals(prob, x, r, J, &fe);
  double F = r.squaredNorm();
  double lambda = 1e-3;
  int stall = 0;
  int it = 0;
  for (; it < maxIterations; ++it) {
    Eigen::MatrixXd A = J.transpose() * J;
    A.diagonal().array() += lambda;
    Eigen::VectorXd g = J.transpose() * r;
    Eigen::VectorXd dx = A.ldlt().solve(-g);
    Eigen::VectorXd xn = x + dx;
    Eigen::VectorXd rn;
    Eigen::MatrixXd Jn;
    double fen = 0.0;
    residuals(prob, xn, rn, Jn, &fen);
    double Fn = rn.squaredNorm();
    if (Fn < F) {
      x = std::move(xn);
      r = std::move(rn);
      J = std::move(Jn);
      F = Fn;
      fe = fen;
      lambda = std::max(lambda / 3.0, 1e-14);
      stall = 0;
    } else {
      lambda = std::min(lambda * 3.0, 1e9);
      if (++stall > 40) break;
    }
    if (F < 1e-30) break;
  }
  return {std::move(x), fe, it};
}

// First unpinned vertex (label order) clearly off the pinned axis decides
// the reflection sign, making the gauge fully deterministic.
void fix_reflection(const Graph& g, const std::vector<int>& pinned, Eigen::VectorXd& x) {
  std::vector<int> order(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g.label(a) < g.label(b); });
  for (int v : order) {
    if (std::find(pinned.begin(), pinned.end(), 2 * v + 1) != pinned.end()) continue;
    if (std::abs(x[2 * v + 1]) > 1e-6) {
      if (x[2 * v + 1] < 0)
        for (int i = 0; i < g.vertex_count(); ++i) x[2 * i + 1] = -x[2 * i + 1];
      return;
    }
  }
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
  std::vector<std::string> labels;
  std::vector<int> remap(g.vertex_count(), -1);
  for (size_t i = 0; i < verts.size(); ++i) {
    remap[verts[i]] = static_cast<int>(i);
    labels.push_back(g.label(verts[i]));
  }
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges())
    if (remap[e.u] >= 0 && remap[e.v] >= 0) edges.push_back({remap[e.u], remap[e.v]});
  return Graph(std::move(labels), edges);
}

struct ComponentSolve {
  bool success = false;
  std::vector<Vec2> coords;
  double residual = std::numeric_limits<double>::infinity();
  double separation = 0.0;
  int restartUsed = -1;
};

ComponentSolve solve_component(const Graph& g, const SolveOptions& opts) {
  ComponentSolve best;
  const int n = g.vertex_count();
  if (n == 1) {
    best = {true, {{0.0, 0.0}}, 0.0, std::numeric_limits<double>::infinity(), 0};
    return best;
  }

  LsqProblem prob{g, {}, opts.separationFloor};
  Eigen::VectorXd base = Eigen::VectorXd::Zero(2 * n);
  if (g.edge_count() > 0) {
    PinMap pins = auto_pin(g);
    auto it = pins.begin();
    int p0 = g.require(it->first);
    ++it;
    int p1 = g.require(it->first);
    prob.pinnedCoords = {2 * p0, 2 * p0 + 1, 2 * p1, 2 * p1 + 1};
    base[2 * p1] = 1.0;
  }

  const double halfWidth = opts.initBox > 0 ? opts.initBox : n / 2.0;
  double bestF = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::mt19937_64 rng(mix_seed(opts.seed, restart));
    std::uniform_real_distribution<double> box(-halfWidth, halfWidth);
    Eigen::VectorXd x = base;
    for (int i = 0; i < 2 * n; ++i)
      if (std::find(prob.pinnedCoords.begin(), prob.pinnedCoords.end(), i) ==
          prob.pinnedCoords.end())
        x[i] = box(rng);

    LsqResult res = levenberg(prob, std::move(x), opts.maxIterations);
    fix_reflection(g, prob.pinnedCoords, res.x);

    std::vector<Vec2> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = {res.x[2 * i], res.x[2 * i + 1]};
    auto m = metrics_of(g, coords);

    if (res.edgeResidual < opts.residualTol && m.minSeparation > opts.separationFloor) {
      best = {true, std::move(coords), res.edgeResidual, m.minSeparation, restart};
      return best;  // ties broken by restart index: first hit wins
    }
    if (res.edgeResidual < bestF) {
      bestF = res.edgeResidual;
      best = {false, std::move(coords), res.edgeResidual, m.minSeparation, restart};
    }
  }
  return best;
}

}  // namespace

VerifyReport verify(const Graph& g, std::span<const Vec2> coords, double tolDeviation,
                    double tolSeparation) {
  if (static_cast<int>(coords.size()) != g.vertex_count())
    throw std::invalid_argument("verify: coordinate count does not match vertex count");
  auto m = metrics_of(g, coords);
  VerifyReport rep;
  rep.maxEdgeDeviation = m.maxEdgeDeviation;
  rep.minSeparation = m.minSeparation;
  rep.tolDeviation = tolDeviation;
  rep.tolSeparation = tolSeparation;
  rep.pass = m.maxEdgeDeviation <= tolDeviation && m.minSeparation >= tolSeparation;
  return rep;
}

SolveOutcome solve(const Graph& g, const SolveOptions& opts) {
  SolveOutcome outcome;
  const int n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("solve: empty graph");

  auto comps = connected_components(g);
  std::vector<Vec2> coords(n, {0.0, 0.0});
  bool allOk = true;
  double worstResidual = 0.0, worstSeparation = std::numeric_limits<double>::infinity();
  int lastRestart = 0;
  double xOffset = 0.0;
  for (const auto& comp : comps) {
    Graph sub = induced_subgraph(g, comp);
    ComponentSolve cs = solve_component(sub, opts);
    allOk = allOk && cs.success;
    worstResidual = std::max(worstResidual, cs.residual);
    worstSeparation = std::min(worstSeparation, cs.separation);
    lastRestart = std::max(lastRestart, cs.restartUsed);

    double minX = 0, maxX = 0;
    for (const Vec2& p : cs.coords) {
      minX = std::min(minX, p[0]);
      maxX = std::max(maxX, p[0]);
    }
    double shift = xOffset - minX;
    for (size_t i = 0; i < comp.size(); ++i)
      coords[comp[i]] = {cs.coords[i][0] + shift, cs.coords[i][1]};
    xOffset += (maxX - minX) + 1.5;  // keeps components clearly separated
  }

  auto m = metrics_of(g, coords);
  if (allOk) {
    Embedding emb{g, std::move(coords), m.maxEdgeDeviation, m.minSeparation};
    outcome.embedding = std::move(emb);
    outcome.residual = worstResidual;
    outcome.restartUsed = lastRestart;
  } else {
    outcome.failure = {worstResidual, worstSeparation, opts.restarts};
    outcome.residual = worstResidual;
  }
  return outcome;
}

RefineResult refine(const Graph& g, std::span<const Vec2> coords, bool allowSimilarity,
                    const SolveOptions& opts) {
  if (static_cast<int>(coords.size()) != g.vertex_count())
    throw std::invalid_argument("refine: coordinate count does not match vertex count");
  RefineResult out;
  Eigen::VectorXd x(2 * g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) {
    x[2 * i] = coords[i][0];
    x[2 * i + 1] = coords[i][1];
  }

  if (allowSimilarity && g.edge_count() > 0) {
    // Scale minimizing sum (s^2 d^2 - 1)^2: s^2 = sum d^2 / sum d^4.
    double sum2 = 0, sum4 = 0;
    for (const Edge& e : g.edges()) {
      double dx = x[2 * e.u] - x[2 * e.v], dy = x[2 * e.u + 1] - x[2 * e.v + 1];
      double d2 = dx * dx + dy * dy;
      sum2 += d2;
      sum4 += d2 * d2;
    }
    if (sum4 > 0) {
      out.scaleApplied = std::sqrt(sum2 / sum4);
      x *= out.scaleApplied;
    }
  }

  LsqProblem prob{g, {}, 0.0};
  LsqResult res = levenberg(prob, std::move(x), opts.maxIterations);
  out.residual = res.edgeResidual;
  out.converged = res.edgeResidual < opts.residualTol;

  std::vector<Vec2> polished(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) polished[i] = {res.x[2 * i], res.x[2 * i + 1]};
  auto m = metrics_of(g, polished);
  out.embedding = Embedding{g, std::move(polished), m.maxEdgeDeviation, m.minSeparation};
  return out;
}

RigidityReport rigidity_report(const Graph& g, const Embedding& emb) {
  VerifyReport check = verify(g, emb.coords, 1e-6, 1e-6);
  if (!check.pass)
    throw std::invalid_argument("rigidity_report: embedding does not verify at 1e-6");

  const int n = g.vertex_count();
  Eigen::MatrixXd J(g.edge_count(), 2 * n);
  J.setZero();
  int row = 0;
  for (const Edge& e : g.edges()) {
    double dx = emb.coords[e.u][0] - emb.coords[e.v][0];
    double dy = emb.coords[e.u][1] - emb.coords[e.v][1];
    J(row, 2 * e.u) = 2 * dx;
    J(row, 2 * e.u + 1) = 2 * dy;
    J(row, 2 * e.v) = -2 * dx;
    J(row, 2 * e.v + 1) = -2 * dy;
    ++row;
  }

  RigidityReport rep;
  rep.rankTolerance = 1e-8;
  if (g.edge_count() == 0) {
    rep.jacobianRank = 0;
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    lu.setThreshold(rep.rankTolerance);
    rep.jacobianRank = static_cast<int>(lu.rank());
  }
  rep.flexCount = std::max(0, 2 * n - 3 - rep.jacobianRank);
  rep.rigid = rep.flexCount == 0;
  return rep;
}

}  // namespace udg
