#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "udg/docs.hpp"
#include "udg/svg.hpp"

#include <cmath>

using namespace udg;

TEST_CASE("embedding document round trips exactly") {
  Graph g = catalog("k4_minus_e");
  const double s32 = std::sqrt(3.0) / 2.0;
  std::vector<Vec2> coords{{0, 0}, {1, 0}, {0.5, s32}, {1.5, s32}};
  VerifyReport rep = verify(g, coords);
  Embedding emb{g, coords, rep.maxEdgeDeviation, rep.minSeparation};

  Json doc = embedding_doc(emb, SolveOptions{});
  std::string text = doc.dump(2);
  ParsedEmbedding back = parse_embedding_doc(Json::parse(text));

  CHECK(isomorphic(back.graph, g));
  CHECK(graph_hash(back.graph) == graph_hash(g));
  for (int v = 0; v < g.vertex_count(); ++v) {
    CHECK(back.coords[v][0] == coords[v][0]);
    CHECK(back.coords[v][1] == coords[v][1]);
  }
  // Metrics recomputed from the parsed coordinates are identical.
  VerifyReport rep2 = verify(back.graph, back.coords);
  CHECK(rep2.maxEdgeDeviation == rep.maxEdgeDeviation);
  CHECK(rep2.minSeparation == rep.minSeparation);
}

TEST_CASE("awkward doubles survive the document format") {
  Graph g({"u", "v"}, {{0, 1}});
  std::vector<Vec2> coords{{0.1 + 0.2, -1.0 / 3.0}, {1e-17, 12345.678901234567}};
  Embedding emb{g, coords, 0.0, 1.0};
  Json doc = embedding_doc(emb, SolveOptions{});
  ParsedEmbedding back = parse_embedding_doc(Json::parse(doc.dump()));
  for (int v = 0; v < 2; ++v)
    for (int k = 0; k < 2; ++k) CHECK(back.coords[v][k] == coords[v][k]);
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(format_double(1.0) == "1");
  std::string s = format_double(1.0 / 3.0);
  CHECK(s == "0.33333333333333331");
}

TEST_CASE("manifest carries command, hashes, options, outcome") {
  Json m = run_manifest({"udg", "solve", "--graph", "k2"}, {{"file", "abc"}},
                        Json{{"seed", 0}}, "ok");
  CHECK(m["type"] == "run_manifest");
  CHECK(m["version"] == kToolVersion);
  CHECK(m["command"].size() == 4);
  CHECK(m["inputs"]["file"] == "abc");
  CHECK(m["outcome"] == "ok");
}

TEST_CASE("svg output is deterministic and marks off-unit edges") {
  Graph g = catalog("k4_minus_e");
  const double s32 = std::sqrt(3.0) / 2.0;
  std::vector<Vec2> good{{0, 0}, {1, 0}, {0.5, s32}, {1.5, s32}};
  std::string a = render_svg(g, good);
  std::string b = render_svg(g, good);
  CHECK(a == b);
  CHECK(a.find("<svg") == 0);
  CHECK(a.find("stroke-dasharray") == std::string::npos);
  // Count vertex circles and edge lines.
  size_t circles = 0, lines = 0, pos = 0;
  while ((pos = a.find("<circle", pos)) != std::string::npos) ++circles, ++pos;
  pos = 0;
  while ((pos = a.find("<line", pos)) != std::string::npos) ++lines, ++pos;
  CHECK(circles == 4);
  CHECK(lines == 5);

  std::vector<Vec2> stretched{{0, 0}, {1.2, 0}, {0.5, s32}, {1.5, s32}};
  std::string c = render_svg(g, stretched);
  CHECK(c.find("stroke-dasharray") != std::string::npos);
  CHECK(c != a);
}

TEST_CASE("svg renders an edgeless graph") {
  Graph g({"solo"}, {});
  std::vector<Vec2> coords{{0, 0}};
  std::string s = render_svg(g, coords);
  CHECK(s.find("<circle") != std::string::npos);
  CHECK(s.find("<line") == std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
}

TEST_CASE("groebner document lists basis strings and status") {
  Graph g = catalog("k4");
  ConstraintSystem sys = distance_constraints(g, auto_pin(g));
  MonomialOrder ord = default_order(sys);
  GroebnerResult r = buchberger(sys, ord);
  Json doc = groebner_doc(sys, r, ord);
  CHECK(doc["status"] == "infeasible");
  CHECK(doc["basis"].size() == 1);
  CHECK(doc["basis"][0] == "1");
  CHECK(doc["order"] == "lex");
  CHECK(doc["pins"].size() == 2);
}
