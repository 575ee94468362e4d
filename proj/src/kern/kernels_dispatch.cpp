#include "udg/kern/kernels.hpp"

#include <stdexcept>

namespace udg::kern {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Impl select_impl(Impl requested) {
  switch (requested) {
    case Impl::Scalar:
      return Impl::Scalar;
    case Impl::Avx2:
      if (!avx2_available()) throw std::runtime_error("avx2 kernels not supported on this CPU");
      return Impl::Avx2;
    case Impl::Auto:
      return avx2_available() ? Impl::Avx2 : Impl::Scalar;
  }
  return Impl::Scalar;
}

std::string impl_name(Impl impl) {
  switch (impl) {
    case Impl::Auto:
      return "auto";
    case Impl::Scalar:
      return "scalar";
    case Impl::Avx2:
      return "avx2";
  }
  return "?";
}

namespace {
const KernelOps& ops_for(Impl impl) {
  return select_impl(impl) == Impl::Avx2 ? avx2_ops() : scalar_ops();
}
}  // namespace

void run_plan_batch(const PlanProgram& prog, const double* const* params, size_t n, double* xs,
                    double* ys, int32_t* failStep, double* failDist, Impl impl) {
  if (n == 0) return;
  ops_for(impl).run_plan(prog, params, n, xs, ys, failStep, failDist);
}

void min_pair_dist2_batch(const double* xs, const double* ys, int32_t vertexCount, size_t n,
                          double* outMinDist2, Impl impl) {
  if (n == 0) return;
  ops_for(impl).min_pair(xs, ys, vertexCount, n, outMinDist2);
}

void pair_dist2_batch(const double* xs, const double* ys, int32_t vertexCount, size_t n,
                      int32_t u, int32_t v, double* outDist2, Impl impl) {
  if (n == 0) return;
  ops_for(impl).pair_dist2(xs, ys, vertexCount, n, u, v, outDist2);
}

EmbeddingMetrics embedding_metrics(const double* xy, int32_t vertexCount,
                                   const int32_t* edgePairs, int32_t edgeCount, Impl impl) {
  return ops_for(impl).metrics(xy, vertexCount, edgePairs, edgeCount);
}

}  // namespace udg::kern
