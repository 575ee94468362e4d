#pragma once

#include "udg/graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace udg {

using Vec2 = std::array<double, 2>;

struct SolveOptions {
  int restarts = 200;
  double residualTol = 1e-12;     // on the sum of squared edge residuals
  double separationFloor = 1e-3;  // minimum accepted vertex separation
  int maxIterations = 500;        // per restart
  uint64_t seed = 0;
  double initBox = 0.0;           // half-width of random init box; 0 => n/2
};

struct Embedding {
  Graph graph;
  std::vector<Vec2> coords;
  double maxEdgeDeviation = 0.0;  // max over edges of ||p_u - p_v| - 1|
  double minSeparation = 0.0;     // min over all vertex pairs of |p_u - p_v|
};

struct VerifyReport {
  double maxEdgeDeviation = 0.0;
  double minSeparation = 0.0;
  double tolDeviation = 0.0;
  double tolSeparation = 0.0;
  bool pass = false;
};

// Pure measurement; never caches.
VerifyReport verify(const Graph& g, std::span<const Vec2> coords, double tolDeviation = 1e-9,
                    double tolSeparation = 1e-6);

struct SolveFailure {
  double bestResidual = 0.0;
  double bestSeparation = 0.0;
  int restartsUsed = 0;
};

// embedding set on success; failure diagnostics otherwise. A failure means
// "no embedding found", never a nonexistence proof.
struct SolveOutcome {
  std::optional<Embedding> embedding;
  SolveFailure failure;
  double residual = 0.0;
  int restartUsed = -1;
};

// Damped least squares on sum_edges(|p_u - p_v|^2 - 1)^2 from seeded random
// starts; gauge fixed by pinning the first edge to (0,0)-(1,0) plus a
// reflection sign. Deterministic given (graph, options.seed). Disconnected
// graphs are solved per component and laid out side by side.
SolveOutcome solve(const Graph& g, const SolveOptions& opts = {});

struct RefineResult {
  Embedding embedding;
  bool converged = false;
  double residual = 0.0;
  double scaleApplied = 1.0;
};

// Polish given coordinates; with allowSimilarity the coordinates are first
// rescaled by the least-squares-optimal similarity factor.
RefineResult refine(const Graph& g, std::span<const Vec2> coords, bool allowSimilarity,
                    const SolveOptions& opts = {});

struct RigidityReport {
  int jacobianRank = 0;
  int flexCount = 0;  // max(0, 2n - 3 - rank)
  bool rigid = false;
  double rankTolerance = 0.0;
};

// Rank of the |E| x 2n rigidity Jacobian (row per edge, gradient of
// |p_u - p_v|^2) via full pivoting, threshold 1e-8 relative to the largest
// pivot. Requires the embedding to pass verify at 1e-6.
RigidityReport rigidity_report(const Graph& g, const Embedding& emb);

}  // namespace udg
