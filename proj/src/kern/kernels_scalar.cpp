#include "udg/kern/kernels.hpp"

#include <cmath>
#include <limits>

// Reference kernels. The arithmetic here defines the exact operation
// sequence the SIMD variants must reproduce: +, -, *, /, sqrt, min, max
// only, with trig routed through libm per lane.

namespace udg::kern {
namespace {

void run_plan_scalar(const PlanProgram& prog, const double* const* params, size_t n, double* xs,
                     double* ys, int32_t* failStep, double* failDist) {
  constexpr double tol2 = kCoincidentAnchorTol * kCoincidentAnchorTol;
  for (size_t i = 0; i < n; ++i) {
    failStep[i] = -1;
    failDist[i] = 0.0;
    for (size_t s = 0; s < prog.steps.size(); ++s) {
      const PlanProgram::Step& st = prog.steps[s];
      const size_t v = static_cast<size_t>(st.vertex) * n + i;
      switch (st.kind) {
        case PlanProgram::FixPoint:
          xs[v] = st.x;
          ys[v] = st.y;
          break;
        case PlanProgram::PolarFrom: {
          const double theta = st.param >= 0 ? params[st.param][i] : st.x;
          const size_t a = static_cast<size_t>(st.anchorA) * n + i;
          xs[v] = xs[a] + std::cos(theta);
          ys[v] = ys[a] + std::sin(theta);
          break;
        }
        case PlanProgram::CircleCircle: {
          const size_t a = static_cast<size_t>(st.anchorA) * n + i;
          const size_t b = static_cast<size_t>(st.anchorB) * n + i;
          const double dx = xs[b] - xs[a];
          const double dy = ys[b] - ys[a];
          const double d2 = dx * dx + dy * dy;
          if (d2 > 4.0 || d2 < tol2) {
            failStep[i] = static_cast<int32_t>(s);
            failDist[i] = std::sqrt(d2);
            break;
          }
          const double d = std::sqrt(d2);
          const double h = std::sqrt(std::max(1.0 - 0.25 * d2, 0.0));
          const double mx = 0.5 * (xs[a] + xs[b]);
          const double my = 0.5 * (ys[a] + ys[b]);
          const double t = st.branch * h;
          xs[v] = mx - (t * dy) / d;
          ys[v] = my + (t * dx) / d;
          break;
        }
      }
      if (failStep[i] >= 0) break;
    }
  }
}

void min_pair_scalar(const double* xs, const double* ys, int32_t vertexCount, size_t n,
                     double* outMinDist2) {
  for (size_t i = 0; i < n; ++i) outMinDist2[i] = std::numeric_limits<double>::infinity();
  for (int32_t u = 0; u < vertexCount; ++u) {
    for (int32_t v = u + 1; v < vertexCount; ++v) {
      const double* ux = xs + static_cast<size_t>(u) * n;
      const double* uy = ys + static_cast<size_t>(u) * n;
      const double* vx = xs + static_cast<size_t>(v) * n;
      const double* vy = ys + static_cast<size_t>(v) * n;
      for (size_t i = 0; i < n; ++i) {
        const double dx = ux[i] - vx[i];
        const double dy = uy[i] - vy[i];
        const double d2 = dx * dx + dy * dy;
        outMinDist2[i] = std::min(outMinDist2[i], d2);
      }
    }
  }
}

void pair_dist2_scalar(const double* xs, const double* ys, int32_t /*vertexCount*/, size_t n,
                       int32_t u, int32_t v, double* outDist2) {
  const double* ux = xs + static_cast<size_t>(u) * n;
  const double* uy = ys + static_cast<size_t>(u) * n;
  const double* vx = xs + static_cast<size_t>(v) * n;
  const double* vy = ys + static_cast<size_t>(v) * n;
  for (size_t i = 0; i < n; ++i) {
    const double dx = ux[i] - vx[i];
    const double dy = uy[i] - vy[i];
    outDist2[i] = dx * dx + dy * dy;
  }
}

EmbeddingMetrics metrics_scalar(const double* xy, int32_t vertexCount, const int32_t* edgePairs,
                                int32_t edgeCount) {
  EmbeddingMetrics m;
  m.maxEdgeDeviation = 0.0;
  m.minSeparation = std::numeric_limits<double>::infinity();
  for (int32_t e = 0; e < edgeCount; ++e) {
    const int32_t u = edgePairs[2 * e], v = edgePairs[2 * e + 1];
    const double dx = xy[2 * u] - xy[2 * v];
    const double dy = xy[2 * u + 1] - xy[2 * v + 1];
    const double dev = std::abs(std::sqrt(dx * dx + dy * dy) - 1.0);
    m.maxEdgeDeviation = std::max(m.maxEdgeDeviation, dev);
  }
  double min2 = std::numeric_limits<double>::infinity();
  for (int32_t u = 0; u < vertexCount; ++u)
    for (int32_t v = u + 1; v < vertexCount; ++v) {
      const double dx = xy[2 * u] - xy[2 * v];
      const double dy = xy[2 * u + 1] - xy[2 * v + 1];
      min2 = std::min(min2, dx * dx + dy * dy);
    }
  m.minSeparation = vertexCount > 1 ? std::sqrt(min2) : std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace

const KernelOps& scalar_ops() {
  static const KernelOps ops{run_plan_scalar, min_pair_scalar, pair_dist2_scalar,
                             metrics_scalar};
  return ops;
}

}  // namespace udg::kern
