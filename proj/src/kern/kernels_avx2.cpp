#include "udg/kern/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define UDG_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define UDG_HAVE_AVX2_BUILD 0
#endif

#include <cmath>
#include <limits>
#include <vector>

// AVX2 variants: four samples per lane block, bit-identical to the scalar
// reference (same operation order, no FMA, libm trig per lane). Lanes that
// fail a CircleCircle step keep computing garbage; callers only read
// coordinates of lanes whose failStep stayed -1.

namespace udg::kern {

#if UDG_HAVE_AVX2_BUILD

namespace {

constexpr size_t kW = 4;

void run_plan_avx2(const PlanProgram& prog, const double* const* params, size_t n, double* xs,
                   double* ys, int32_t* failStep, double* failDist) {
  constexpr double tol2 = kCoincidentAnchorTol * kCoincidentAnchorTol;
  const __m256d vFour = _mm256_set1_pd(4.0);
  const __m256d vTol2 = _mm256_set1_pd(tol2);
  const __m256d vHalf = _mm256_set1_pd(0.5);
  const __m256d vQuarter = _mm256_set1_pd(0.25);
  const __m256d vOne = _mm256_set1_pd(1.0);
  const __m256d vZero = _mm256_setzero_pd();

  size_t i = 0;
  for (; i + kW <= n; i += kW) {
    for (size_t l = 0; l < kW; ++l) {
      failStep[i + l] = -1;
      failDist[i + l] = 0.0;
    }
    for (size_t s = 0; s < prog.steps.size(); ++s) {
      const PlanProgram::Step& st = prog.steps[s];
      double* vx = xs + static_cast<size_t>(st.vertex) * n + i;
      double* vy = ys + static_cast<size_t>(st.vertex) * n + i;
      switch (st.kind) {
        case PlanProgram::FixPoint:
          _mm256_storeu_pd(vx, _mm256_set1_pd(st.x));
          _mm256_storeu_pd(vy, _mm256_set1_pd(st.y));
          break;
        case PlanProgram::PolarFrom: {
          const double* ax = xs + static_cast<size_t>(st.anchorA) * n + i;
          const double* ay = ys + static_cast<size_t>(st.anchorA) * n + i;
          alignas(32) double c[kW], sn[kW];
          for (size_t l = 0; l < kW; ++l) {
            const double theta = st.param >= 0 ? params[st.param][i + l] : st.x;
            c[l] = std::cos(theta);
            sn[l] = std::sin(theta);
          }
          _mm256_storeu_pd(vx, _mm256_add_pd(_mm256_loadu_pd(ax), _mm256_load_pd(c)));
          _mm256_storeu_pd(vy, _mm256_add_pd(_mm256_loadu_pd(ay), _mm256_load_pd(sn)));
          break;
        }
        case PlanProgram::CircleCircle: {
          const double* axp = xs + static_cast<size_t>(st.anchorA) * n + i;
          const double* ayp = ys + static_cast<size_t>(st.anchorA) * n + i;
          const double* bxp = xs + static_cast<size_t>(st.anchorB) * n + i;
          const double* byp = ys + static_cast<size_t>(st.anchorB) * n + i;
          const __m256d ax = _mm256_loadu_pd(axp), ay = _mm256_loadu_pd(ayp);
          const __m256d bx = _mm256_loadu_pd(bxp), by = _mm256_loadu_pd(byp);
          const __m256d dx = _mm256_sub_pd(bx, ax);
          const __m256d dy = _mm256_sub_pd(by, ay);
          const __m256d d2 =
              _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
          const __m256d bad = _mm256_or_pd(_mm256_cmp_pd(d2, vFour, _CMP_GT_OQ),
                                           _mm256_cmp_pd(d2, vTol2, _CMP_LT_OQ));
          const int mask = _mm256_movemask_pd(bad);
          if (mask) {
            alignas(32) double d2s[kW];
            _mm256_store_pd(d2s, d2);
            for (size_t l = 0; l < kW; ++l)
              if ((mask >> l) & 1 && failStep[i + l] < 0) {
                failStep[i + l] = static_cast<int32_t>(s);
                failDist[i + l] = std::sqrt(d2s[l]);
              }
          }
          const __m256d d = _mm256_sqrt_pd(d2);
          const __m256d h = _mm256_sqrt_pd(
              _mm256_max_pd(_mm256_sub_pd(vOne, _mm256_mul_pd(vQuarter, d2)), vZero));
          const __m256d mx = _mm256_mul_pd(vHalf, _mm256_add_pd(ax, bx));
          const __m256d my = _mm256_mul_pd(vHalf, _mm256_add_pd(ay, by));
          const __m256d t = _mm256_mul_pd(_mm256_set1_pd(st.branch), h);
          _mm256_storeu_pd(vx, _mm256_sub_pd(mx, _mm256_div_pd(_mm256_mul_pd(t, dy), d)));
          _mm256_storeu_pd(vy, _mm256_add_pd(my, _mm256_div_pd(_mm256_mul_pd(t, dx), d)));
          break;
        }
      }
    }
  }
  if (i < n) {
    // Tail lanes go through the reference path on shifted views.
    std::vector<const double*> tailParams(prog.paramCount);
    for (int32_t p = 0; p < prog.paramCount; ++p) tailParams[p] = params[p] + i;
    const size_t rem = n - i;
    std::vector<double> txs(static_cast<size_t>(prog.vertexCount) * rem);
    std::vector<double> tys(static_cast<size_t>(prog.vertexCount) * rem);
    scalar_ops().run_plan(prog, tailParams.data(), rem, txs.data(), tys.data(), failStep + i,
                          failDist + i);
    for (int32_t v = 0; v < prog.vertexCount; ++v)
      for (size_t l = 0; l < rem; ++l) {
        xs[static_cast<size_t>(v) * n + i + l] = txs[static_cast<size_t>(v) * rem + l];
        ys[static_cast<size_t>(v) * n + i + l] = tys[static_cast<size_t>(v) * rem + l];
      }
  }
}

void min_pair_avx2(const double* xs, const double* ys, int32_t vertexCount, size_t n,
                   double* outMinDist2) {
  const double inf = std::numeric_limits<double>::infinity();
  size_t i = 0;
  for (; i + kW <= n; i += kW) _mm256_storeu_pd(outMinDist2 + i, _mm256_set1_pd(inf));
  for (; i < n; ++i) outMinDist2[i] = inf;

  for (int32_t u = 0; u < vertexCount; ++u) {
    for (int32_t v = u + 1; v < vertexCount; ++v) {
      const double* ux = xs + static_cast<size_t>(u) * n;
      const double* uy = ys + static_cast<size_t>(u) * n;
      const double* vx = xs + static_cast<size_t>(v) * n;
      const double* vy = ys + static_cast<size_t>(v) * n;
      size_t k = 0;
      for (; k + kW <= n; k += kW) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(ux + k), _mm256_loadu_pd(vx + k));
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(uy + k), _mm256_loadu_pd(vy + k));
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(outMinDist2 + k,
                         _mm256_min_pd(_mm256_loadu_pd(outMinDist2 + k), d2));
      }
      for (; k < n; ++k) {
        const double dx = ux[k] - vx[k];
        const double dy = uy[k] - vy[k];
        outMinDist2[k] = std::min(outMinDist2[k], dx * dx + dy * dy);
      }
    }
  }
}

void pair_dist2_avx2(const double* xs, const double* ys, int32_t /*vertexCount*/, size_t n,
                     int32_t u, int32_t v, double* outDist2) {
  const double* ux = xs + static_cast<size_t>(u) * n;
  const double* uy = ys + static_cast<size_t>(u) * n;
  const double* vx = xs + static_cast<size_t>(v) * n;
  const double* vy = ys + static_cast<size_t>(v) * n;
  size_t k = 0;
  for (; k + kW <= n; k += kW) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(ux + k), _mm256_loadu_pd(vx + k));
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(uy + k), _mm256_loadu_pd(vy + k));
    _mm256_storeu_pd(outDist2 + k,
                     _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  for (; k < n; ++k) {
    const double dx = ux[k] - vx[k];
    const double dy = uy[k] - vy[k];
    outDist2[k] = dx * dx + dy * dy;
  }
}

EmbeddingMetrics metrics_avx2(const double* xy, int32_t vertexCount, const int32_t* edgePairs,
                              int32_t edgeCount) {
  EmbeddingMetrics m;
  m.maxEdgeDeviation = 0.0;
  // Edge deviations, four edges per block via packed scalar loads. max is
  // exact, so the different reduction order still matches the reference.
  __m256d vmax = _mm256_setzero_pd();
  const __m256d vOne = _mm256_set1_pd(1.0);
  const __m256d signMask = _mm256_set1_pd(-0.0);
  int32_t e = 0;
  for (; e + 4 <= edgeCount; e += 4) {
    alignas(32) double dxs[4], dys[4];
    for (int l = 0; l < 4; ++l) {
      const int32_t u = edgePairs[2 * (e + l)], v = edgePairs[2 * (e + l) + 1];
      dxs[l] = xy[2 * u] - xy[2 * v];
      dys[l] = xy[2 * u + 1] - xy[2 * v + 1];
    }
    const __m256d dx = _mm256_load_pd(dxs), dy = _mm256_load_pd(dys);
    const __m256d d = _mm256_sqrt_pd(
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    const __m256d dev = _mm256_andnot_pd(signMask, _mm256_sub_pd(d, vOne));
    vmax = _mm256_max_pd(vmax, dev);
  }
  alignas(32) double maxs[4];
  _mm256_store_pd(maxs, vmax);
  for (int l = 0; l < 4; ++l) m.maxEdgeDeviation = std::max(m.maxEdgeDeviation, maxs[l]);
  for (; e < edgeCount; ++e) {
    const int32_t u = edgePairs[2 * e], v = edgePairs[2 * e + 1];
    const double dx = xy[2 * u] - xy[2 * v];
    const double dy = xy[2 * u + 1] - xy[2 * v + 1];
    m.maxEdgeDeviation =
        std::max(m.maxEdgeDeviation, std::abs(std::sqrt(dx * dx + dy * dy) - 1.0));
  }

  double min2 = std::numeric_limits<double>::infinity();
  __m256d vmin = _mm256_set1_pd(min2);
  int32_t count = 0;
  alignas(32) double pdx[4], pdy[4];
  for (int32_t u = 0; u < vertexCount; ++u)
    for (int32_t v = u + 1; v < vertexCount; ++v) {
      pdx[count] = xy[2 * u] - xy[2 * v];
      pdy[count] = xy[2 * u + 1] - xy[2 * v + 1];
      if (++count == 4) {
        const __m256d dx = _mm256_load_pd(pdx), dy = _mm256_load_pd(pdy);
        vmin = _mm256_min_pd(vmin,
                             _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
        count = 0;
      }
    }
  alignas(32) double mins[4];
  _mm256_store_pd(mins, vmin);
  for (int l = 0; l < 4; ++l) min2 = std::min(min2, mins[l]);
  for (int l = 0; l < count; ++l) min2 = std::min(min2, pdx[l] * pdx[l] + pdy[l] * pdy[l]);
  m.minSeparation = vertexCount > 1 ? std::sqrt(min2) : std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace

const KernelOps& avx2_ops() {
  static const KernelOps ops{run_plan_avx2, min_pair_avx2, pair_dist2_avx2, metrics_avx2};
  return ops;
}

#else  // !UDG_HAVE_AVX2_BUILD

const KernelOps& avx2_ops() { return scalar_ops(); }

#endif

}  // namespace udg::kern
