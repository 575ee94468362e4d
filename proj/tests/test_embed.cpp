#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "udg/embed.hpp"
#include "udg/graph.hpp"

#include <cmath>
#include <random>

using namespace udg;

namespace {

const double kS32 = std::sqrt(3.0) / 2.0;

std::vector<Vec2> moser_figure_coords() {
  return {{0.0, 1.0},  {-0.728714, 0.32}, {-0.228714, 0.0}, {0.228714, 0.0},
          {0.728714, 0.32}, {-0.5, -0.68},    {0.5, -0.68}};
}

std::vector<Vec2> petersen_figure_coords() {
  return {{0.0, 0.911},  {0.866, 0.282},  {0.534, -0.737}, {-0.534, -0.737},
          {-0.866, 0.282}, {0.563, 0.0},    {0.174, -0.536}, {-0.455, -0.331},
          {-0.455, 0.331}, {0.174, 0.536}};
}

Graph triangle() { return Graph({"1", "2", "3"}, {{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_CASE("solve k2 is exactly the pinned edge") {
  Graph k2({"u", "v"}, {{0, 1}});
  SolveOutcome out = solve(k2, {});
  REQUIRE(out.embedding.has_value());
  CHECK(out.embedding->coords[0][0] == 0.0);
  CHECK(out.embedding->coords[0][1] == 0.0);
  CHECK(out.embedding->coords[1][0] == 1.0);
  CHECK(out.embedding->coords[1][1] == 0.0);
  CHECK(out.embedding->maxEdgeDeviation < 1e-15);
}

TEST_CASE("solve k4 minus e lands on the closed-form embedding") {
  SolveOptions opts;
  opts.seed = 1;
  SolveOutcome out = solve(catalog("k4_minus_e"), opts);
  REQUIRE(out.embedding.has_value());
  const Embedding& e = *out.embedding;
  CHECK(e.maxEdgeDeviation < 1e-7);
  CHECK(e.minSeparation > 0.5);
  CHECK(verify(e.graph, e.coords).pass);  // solve success implies verify
  // Gauge: 1 at the origin, 2 at (1,0), first off-axis vertex above the axis.
  CHECK(e.coords[0][0] == doctest::Approx(0.0).scale(1).epsilon(1e-9));
  CHECK(e.coords[1][0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e.coords[2][0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(e.coords[2][1] == doctest::Approx(kS32).epsilon(1e-6));
  CHECK(e.coords[3][0] == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(e.coords[3][1] == doctest::Approx(kS32).epsilon(1e-6));
}

TEST_CASE("solve is deterministic given the seed") {
  SolveOptions opts;
  opts.seed = 42;
  opts.restarts = 5;
  SolveOutcome a = solve(catalog("k4_minus_e"), opts);
  SolveOutcome b = solve(catalog("k4_minus_e"), opts);
  REQUIRE(a.embedding.has_value());
  REQUIRE(b.embedding.has_value());
  for (int v = 0; v < 4; ++v) {
    CHECK(a.embedding->coords[v][0] == b.embedding->coords[v][0]);
    CHECK(a.embedding->coords[v][1] == b.embedding->coords[v][1]);
  }
}

TEST_CASE("solve k2_3 fails on distinctness") {
  SolveOptions opts;
  opts.seed = 7;
  opts.restarts = 200;
  SolveOutcome out = solve(catalog("k2_3"), opts);
  CHECK_FALSE(out.embedding.has_value());
  CHECK(out.failure.restartsUsed == 200);
  CHECK(out.failure.bestSeparation < 1e-3);
}

TEST_CASE("solve k4 fails for every seed in the battery") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    SolveOptions opts;
    opts.seed = seed;
    opts.restarts = 40;
    SolveOutcome out = solve(catalog("k4"), opts);
    CHECK_FALSE(out.embedding.has_value());
    CHECK(out.failure.bestResidual > 1e-9);
  }
}

TEST_CASE("verify measures deviations and separations") {
  Graph k2({"u", "v"}, {{0, 1}});
  std::vector<Vec2> zeros{{0, 0}, {0, 0}};
  VerifyReport bad = verify(k2, zeros);
  CHECK_FALSE(bad.pass);
  CHECK(bad.maxEdgeDeviation == doctest::Approx(1.0));
  CHECK(bad.minSeparation == doctest::Approx(0.0).scale(1));

  std::vector<Vec2> good{{0, 0}, {1, 0}};
  CHECK(verify(k2, good).pass);

  std::vector<Vec2> wrongCount{{0, 0}};
  CHECK_THROWS_AS(verify(k2, wrongCount), std::invalid_argument);
}

TEST_CASE("refine recovers the moser spindle from the figure coordinates") {
  Graph g = catalog("moser_spindle");
  RefineResult r = refine(g, moser_figure_coords(), true);
  CHECK(r.converged);
  CHECK(r.embedding.maxEdgeDeviation < 1e-12);
  CHECK(r.embedding.minSeparation > 0.1);
  CHECK(r.scaleApplied == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("refine recovers the petersen embedding after similarity rescale") {
  Graph g = catalog("petersen");
  // Raw figure coordinates are uniformly scaled and must fail as-is.
  CHECK_FALSE(verify(g, petersen_figure_coords()).pass);
  RefineResult r = refine(g, petersen_figure_coords(), true);
  CHECK(r.converged);
  CHECK(r.embedding.maxEdgeDeviation < 1e-12);
  CHECK(r.embedding.minSeparation > 0.1);
}

TEST_CASE("refine leaves an exact solution unchanged") {
  Graph g = catalog("k4_minus_e");
  std::vector<Vec2> exact{{0, 0}, {1, 0}, {0.5, kS32}, {1.5, kS32}};
  RefineResult r = refine(g, exact, false);
  CHECK(r.converged);
  for (int v = 0; v < 4; ++v) {
    CHECK(r.embedding.coords[v][0] == doctest::Approx(exact[v][0]).scale(1).epsilon(1e-12));
    CHECK(r.embedding.coords[v][1] == doctest::Approx(exact[v][1]).scale(1).epsilon(1e-12));
  }
}

TEST_CASE("rigidity of the triangle and the path") {
  Graph tri = triangle();
  std::vector<Vec2> triCoords{{0, 0}, {1, 0}, {0.5, kS32}};
  Embedding triEmb{tri, triCoords, 0.0, 1.0};
  RigidityReport r = rigidity_report(tri, triEmb);
  CHECK(r.jacobianRank == 3);
  CHECK(r.flexCount == 0);
  CHECK(r.rigid);

  Graph path({"1", "2", "3"}, {{0, 1}, {1, 2}});
  std::vector<Vec2> bent{{0, 0}, {1, 0}, {1.5, kS32}};
  Embedding pathEmb{path, bent, 0.0, 1.0};
  RigidityReport pr = rigidity_report(path, pathEmb);
  CHECK(pr.jacobianRank == 2);
  CHECK(pr.flexCount == 1);
  CHECK_FALSE(pr.rigid);

  std::vector<Vec2> broken{{0, 0}, {2, 0}, {2.5, kS32}};
  Embedding bad{path, broken, 0.0, 1.0};
  CHECK_THROWS_AS(rigidity_report(path, bad), std::invalid_argument);
}

TEST_CASE("edge gradients match central finite differences") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(-2, 2);
  const double step = 1e-6;
  for (int rep = 0; rep < 100; ++rep) {
    Vec2 u{unif(rng), unif(rng)}, v{unif(rng), unif(rng)};
    auto f = [&](double ux, double uy, double vx, double vy) {
      double dx = ux - vx, dy = uy - vy;
      return dx * dx + dy * dy;
    };
    double g[4] = {2 * (u[0] - v[0]), 2 * (u[1] - v[1]), -2 * (u[0] - v[0]),
                   -2 * (u[1] - v[1])};
    double fd[4] = {
        (f(u[0] + step, u[1], v[0], v[1]) - f(u[0] - step, u[1], v[0], v[1])) / (2 * step),
        (f(u[0], u[1] + step, v[0], v[1]) - f(u[0], u[1] - step, v[0], v[1])) / (2 * step),
        (f(u[0], u[1], v[0] + step, v[1]) - f(u[0], u[1], v[0] - step, v[1])) / (2 * step),
        (f(u[0], u[1], v[0], v[1] + step) - f(u[0], u[1], v[0], v[1] - step)) / (2 * step),
    };
    for (int k = 0; k < 4; ++k) {
      double denom = std::max(1.0, std::abs(g[k]));
      CHECK(std::abs(g[k] - fd[k]) / denom < 1e-6);
    }
  }
}

TEST_CASE("verify is invariant under rotation and translation") {
  Graph g = catalog("k4_minus_e");
  std::vector<Vec2> exact{{0, 0}, {1, 0}, {0.5, kS32}, {1.5, kS32}};
  VerifyReport base = verify(g, exact);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI), shift(-5, 5);
  for (int rep = 0; rep < 100; ++rep) {
    double th = angle(rng), tx = shift(rng), ty = shift(rng);
    double c = std::cos(th), s = std::sin(th);
    std::vector<Vec2> moved(exact.size());
    for (size_t i = 0; i < exact.size(); ++i)
      moved[i] = {c * exact[i][0] - s * exact[i][1] + tx,
                  s * exact[i][0] + c * exact[i][1] + ty};
    VerifyReport rep2 = verify(g, moved);
    CHECK(std::abs(rep2.maxEdgeDeviation - base.maxEdgeDeviation) < 1e-12);
    CHECK(std::abs(rep2.minSeparation - base.minSeparation) < 1e-12);
  }
}

TEST_CASE("disconnected graphs are laid out per component") {
  Graph two({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
  SolveOutcome out = solve(two, {});
  REQUIRE(out.embedding.has_value());
  CHECK(out.embedding->maxEdgeDeviation < 1e-10);
  CHECK(out.embedding->minSeparation > 0.9);
}
