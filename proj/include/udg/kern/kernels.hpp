#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Data-parallel inner loops behind the sweep executor and the embedding
// metrics. Every kernel has a scalar reference implementation and an AVX2
// variant selected at runtime; the two are equivalence-tested bit for bit,
// so arithmetic must stay in the exactly-rounded set (+, -, *, /, sqrt,
// min/max) with identical operation order. Trig is evaluated through libm
// per lane in both variants.

namespace udg::kern {

enum class Impl { Auto, Scalar, Avx2 };

bool avx2_available();
Impl select_impl(Impl requested);  // resolves Auto; falls back to Scalar
std::string impl_name(Impl impl);

// Flattened placement program: one step per vertex, anchors referring to
// earlier steps. Batch layout is structure-of-arrays over samples:
// xs[v * n + i] is the x coordinate of vertex v in sample i.
struct PlanProgram {
  enum StepKind : int32_t { FixPoint = 0, PolarFrom = 1, CircleCircle = 2 };
  struct Step {
    int32_t kind = FixPoint;
    int32_t vertex = 0;
    int32_t anchorA = -1;
    int32_t anchorB = -1;
    int32_t param = -1;      // PolarFrom angle parameter slot, -1 = constant
    double branch = 1.0;     // CircleCircle: +1 left of anchorA->anchorB, -1 right
    double x = 0.0, y = 0.0; // FixPoint coordinates / PolarFrom constant angle in x
  };
  int32_t vertexCount = 0;
  int32_t paramCount = 0;
  std::vector<Step> steps;
};

// CircleCircle fails when the anchors are farther apart than 2 (unit circles
// disjoint) or closer than this floor (coincident anchors).
inline constexpr double kCoincidentAnchorTol = 1e-12;

// Executes the program for n parameter samples. params[p] points at n values
// for parameter slot p. failStep[i] is the first failing step index or -1;
// failDist[i] is that step's anchor distance (squared distance is what the
// kernel tests; the reported value is the distance). Coordinates of failed
// lanes are unspecified past the failing step.
void run_plan_batch(const PlanProgram& prog, const double* const* params, size_t n,
                    double* xs, double* ys, int32_t* failStep, double* failDist,
                    Impl impl = Impl::Auto);

// Per-sample minimum squared distance over all vertex pairs, same SoA layout.
void min_pair_dist2_batch(const double* xs, const double* ys, int32_t vertexCount, size_t n,
                          double* outMinDist2, Impl impl = Impl::Auto);

// Per-sample squared distance between two chosen vertices.
void pair_dist2_batch(const double* xs, const double* ys, int32_t vertexCount, size_t n,
                      int32_t u, int32_t v, double* outDist2, Impl impl = Impl::Auto);

// Single-embedding metrics over interleaved xy coordinates: max over the
// edge list of |dist^2 - 1| proxyed via exact dist, and min pair distance.
// Edges are (u, v) index pairs packed flat.
struct EmbeddingMetrics {
  double maxEdgeDeviation = 0.0;
  double minSeparation = 0.0;
};
EmbeddingMetrics embedding_metrics(const double* xy, int32_t vertexCount,
                                   const int32_t* edgePairs, int32_t edgeCount,
                                   Impl impl = Impl::Auto);

// Internal dispatch table; each variant translation unit fills one slot.
struct KernelOps {
  void (*run_plan)(const PlanProgram&, const double* const*, size_t, double*, double*,
                   int32_t*, double*) = nullptr;
  void (*min_pair)(const double*, const double*, int32_t, size_t, double*) = nullptr;
  void (*pair_dist2)(const double*, const double*, int32_t, size_t, int32_t, int32_t,
                     double*) = nullptr;
  EmbeddingMetrics (*metrics)(const double*, int32_t, const int32_t*, int32_t) = nullptr;
};

const KernelOps& scalar_ops();
const KernelOps& avx2_ops();  // valid only when avx2_available()

}  // namespace udg::kern
