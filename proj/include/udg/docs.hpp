#pragma once

#include "udg/constraints.hpp"
#include "udg/embed.hpp"
#include "udg/groebner.hpp"
#include "udg/plan.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace udg {

inline constexpr const char* kToolVersion = "0.1.0";

uint64_t fnv1a64(std::string_view bytes);
std::string hex64(uint64_t value);

// Human-facing float formatting: 17 significant digits, exact round-trip.
std::string format_double(double v);

using Json = nlohmann::json;

// Embedding document: graph, per-vertex coordinates, recomputed metrics,
// and the options that produced it. Reading one back recomputes nothing.
Json embedding_doc(const Embedding& emb, const SolveOptions& opts, bool candidate = false,
                   const std::string& note = "");
struct ParsedEmbedding {
  Graph graph;
  std::vector<Vec2> coords;
};
ParsedEmbedding parse_embedding_doc(const Json& doc);

Json graph_doc(const Graph& g, const std::string& name = "");

Json constraint_doc(const ConstraintSystem& sys);

Json groebner_doc(const ConstraintSystem& sys, const GroebnerResult& result,
                  const MonomialOrder& order);

Json sweep_doc(const ConstructionPlan& plan, const SweepResult& result);
Json grid_sweep_doc(const ConstructionPlan& plan, const GridSweepResult& result);

Json plan_doc(const ConstructionPlan& plan);

// Every invocation that writes results also writes one of these next to it.
Json run_manifest(const std::vector<std::string>& argv,
                  const std::map<std::string, std::string>& inputHashes, const Json& options,
                  const std::string& outcome);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace udg
