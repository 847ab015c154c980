#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "spmine/graph.hpp"
#include "spmine/transactions.hpp"

namespace spmine {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Shortest-path tree from one source. parent[source] and parent of
// unreachable vertices are kNoVertex; dist of unreachable vertices is
// kUnreachable.
struct SsspResult {
  VertexId source = 0;
  std::vector<double> dist;
  std::vector<VertexId> parent;

  bool reachable(VertexId v) const { return dist[v] != kUnreachable; }
};

// Dijkstra (binary heap, lazy deletion), or BFS on unweighted graphs.
//
// Among equal-cost alternatives the tree encodes, for every target, the
// lexicographically smallest vertex sequence of all minimum-cost paths from
// the source. Results depend only on (graph, source).
SsspResult sssp(const Graph& g, VertexId source);

// Vertex sequence [source, ..., target]; nullopt when target is unreachable.
std::optional<std::vector<VertexId>> reconstruct_path(const SsspResult& result, VertexId target);

struct SourceSample {
  std::vector<VertexId> sources;
  std::uint64_t seed = 0;
  std::size_t k = 0;
};

// k distinct vertices by partial Fisher-Yates driven by mt19937_64 with an
// explicit unbiased bounded draw, so the output is identical on every
// platform for the same (seed, k, vertex_count).
SourceSample sample_sources(const Graph& g, std::size_t k, std::uint64_t seed);

// All vertices in ascending order (exhaustive mode).
std::vector<VertexId> all_sources(const Graph& g);

// One transaction per (source, reachable target != source), ordered by source
// position then ascending target. threads > 1 runs sources concurrently; the
// result is identical for every thread count.
TransactionDb run_traversals(const Graph& g, std::span<const VertexId> sources, unsigned threads = 1);

}  // namespace spmine
