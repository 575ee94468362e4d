#pragma once

#include "udg/embed.hpp"
#include "udg/graph.hpp"
#include "udg/kern/kernels.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace udg {

// Ordered geometric placement steps. Anchors must be placed by earlier
// steps; every vertex is placed exactly once.
struct FixPointStep {
  int vertex;
  double x, y;
};
struct PolarFromStep {
  int vertex;
  int anchor;
  int angleParam;     // index into ConstructionPlan::params, -1 = constant
  double constAngle;  // radians, used when angleParam < 0
};
struct CircleCircleStep {
  int vertex;
  int anchorA, anchorB;
  int branch;  // +1 = left of the directed line anchorA->anchorB, -1 = right
};
using PlacementStep = std::variant<FixPointStep, PolarFromStep, CircleCircleStep>;

struct ParamSpec {
  std::string name;
  double lo, hi;
  double def;
};

class PlanError : public std::runtime_error {
 public:
  explicit PlanError(const std::string& msg) : std::runtime_error(msg) {}
};

// A placement program for a reference graph. Construction validates that
// every graph edge except the target edge is realized at unit length by
// some step (fixed frame edges are length-checked at build time).
struct ConstructionPlan {
  std::string name;
  Graph graph;
  std::vector<PlacementStep> steps;
  std::vector<ParamSpec> params;
  std::pair<int, int> targetPair;          // vertex indices whose distance is monitored
  std::vector<Edge> realizedEdges;

  int param_index(std::string_view name) const;  // -1 if absent
  std::map<std::string, double> default_params() const;
  kern::PlanProgram compile() const;
};

// Validates step ordering, single placement, and edge bookkeeping.
ConstructionPlan make_plan(std::string name, Graph graph, std::vector<PlacementStep> steps,
                           std::vector<ParamSpec> params, std::pair<int, int> targetPair);

struct StepFailure {
  int stepIndex;
  int vertex;
  double anchorDistance;
};

struct ExecResult {
  std::optional<std::vector<Vec2>> coords;
  std::optional<StepFailure> failure;
  double targetDistance = 0.0;       // valid when coords is set
  double maxRealizedEdgeDev = 0.0;   // valid when coords is set
  bool ok() const { return coords.has_value(); }
};

// Places vertices in step order. Parameter values must lie inside the
// declared ranges. A StepFailure marks the parameter region invalid; it is
// data, not an error.
ExecResult execute(const ConstructionPlan& plan, const std::map<std::string, double>& paramValues,
                   kern::Impl impl = kern::Impl::Auto);

// The Heawood fold construction: square frame 7,b,3,e,5,g fixed; folded
// chain d,4 on angles alpha,beta; f,c and then 2,6,a,1 by circle-circle
// intersections; target pair (1,a). `variant` is a 4-bit code flipping the
// branch choices for 2,6,a,1 away from the defaults (0 = defaults).
ConstructionPlan heawood_plan(int variant = 0);
inline constexpr int kHeawoodPlanVariants = 16;

// All-unit-length four-bar linkage on K4-e shaped bookkeeping: fixed base
// A-B, hinge angle theta places C, D closes the loop; target pair (A,D).
// |AD| = 1 exactly at theta = 2*pi/3 (the equilateral pose), which tests
// bracket bisection against a closed-form root.
ConstructionPlan four_bar_plan();

ConstructionPlan plan_by_name(std::string_view name, int variant = 0);

struct SweepSample {
  double t = 0.0;          // swept axis value
  int failStep = -1;       // -1 = executed
  double targetDistance = 0.0;
  double minSeparation = 0.0;
};

struct Bracket {
  double lo = 0.0, hi = 0.0;
  double dLo = 0.0, dHi = 0.0;  // target distances at the endpoints
};

struct SweepResult {
  std::string axis;
  std::map<std::string, double> fixedParams;
  std::vector<SweepSample> samples;
  std::vector<Bracket> brackets;  // adjacent executable samples straddling 1
};

// Executes the plan at `samples` evenly spaced axis values (endpoints
// inclusive). Failures are recorded per sample; brackets are emitted for
// every adjacent executable pair whose targetDistance - 1 changes sign.
SweepResult sweep(const ConstructionPlan& plan, const std::string& axis, double lo, double hi,
                  int samples, const std::map<std::string, double>& fixedParams,
                  kern::Impl impl = kern::Impl::Auto);

struct GridBracket {
  std::string axis;   // axis the bracket runs along
  double fixedValue;  // value of the other axis on that grid line
  Bracket bracket;
};

struct GridSweepResult {
  std::string axisA, axisB;
  std::vector<double> valuesA, valuesB;
  // Row-major over (ia, ib): sample(ia, ib) = samples[ia * valuesB.size() + ib].
  std::vector<SweepSample> samples;
  std::vector<GridBracket> brackets;  // searched along both axis directions
  size_t executedCount = 0;
};

GridSweepResult sweep_grid(const ConstructionPlan& plan, const std::string& axisA, double loA,
                           double hiA, int samplesA, const std::string& axisB, double loB,
                           double hiB, int samplesB,
                           const std::map<std::string, double>& fixedParams,
                           kern::Impl impl = kern::Impl::Auto);

struct BisectResult {
  bool converged = false;
  double paramStar = 0.0;
  std::vector<Vec2> coords;
  double targetDistance = 0.0;
  int iterations = 0;
  // Set when the bracket became invalid mid-bisection: the failing subinterval.
  std::optional<std::pair<double, double>> failedInterval;
};

// Bisection on targetDistance - 1 over [bracket.lo, bracket.hi] until
// |d - 1| < tol or the interval is narrower than 1e-15.
BisectResult bisect_bracket(const ConstructionPlan& plan, const std::string& axis,
                            const Bracket& bracket,
                            const std::map<std::string, double>& fixedParams, double tol = 1e-12,
                            kern::Impl impl = kern::Impl::Auto);

// Step/parameter listing used by the CLI and the plan document.
std::string describe_plan(const ConstructionPlan& plan);

}  // namespace udg
