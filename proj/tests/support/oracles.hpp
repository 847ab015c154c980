#pragma once
// Independent reference computations used only by tests. Nothing here calls
// the traversal, mining or clustering code it is used to check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "spmine/graph.hpp"
#include "spmine/transactions.hpp"

namespace spmine::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Deterministic integer draw in [lo, hi] that does not depend on the
// standard library's distribution implementation.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

// Random spanning tree plus extra random edges; integer weights in
// [1, max_weight] when weighted.
inline Graph random_connected_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra_edges, bool weighted,
                                    std::uint64_t max_weight = 10) {
  std::vector<InputEdge> edges;
  for (VertexId v = 1; v < n; ++v) {
    const auto u = static_cast<VertexId>(draw(rng, 0, v - 1));
    edges.push_back({u, v, static_cast<double>(draw(rng, 1, max_weight))});
  }
  for (std::size_t i = 0; i < extra_edges && n > 1; ++i) {
    const auto u = static_cast<VertexId>(draw(rng, 0, n - 1));
    const auto v = static_cast<VertexId>(draw(rng, 0, n - 1));
    edges.push_back({u, v, static_cast<double>(draw(rng, 1, max_weight))});
  }
  return Graph::from_edges(n, edges, false, weighted);
}

// G(n, p) style graph, possibly disconnected.
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p, bool weighted = false,
                          std::uint64_t max_weight = 10) {
  std::vector<InputEdge> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.push_back({u, v, static_cast<double>(draw(rng, 1, max_weight))});
  return Graph::from_edges(n, edges, false, weighted);
}

inline std::vector<std::vector<double>> floyd_warshall(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (VertexId u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (VertexId v : g.neighbors(u)) d[u][v] = std::min(d[u][v], *g.edge_weight(u, v));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Hop counts by plain queue BFS; -1 when unreachable.
inline std::vector<long> bfs_levels(const Graph& g, VertexId s) {
  std::vector<long> level(g.vertex_count(), -1);
  std::vector<VertexId> q{s};
  level[s] = 0;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (VertexId v : g.neighbors(q[h]))
      if (level[v] < 0) {
        level[v] = level[q[h]] + 1;
        q.push_back(v);
      }
  return level;
}

// Triangles through each vertex by scanning every vertex triple.
inline std::vector<double> brute_force_clustering(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> tri(n, 0);
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (VertexId c = b + 1; c < n; ++c)
        if (g.has_edge(a, c) && g.has_edge(b, c)) {
          ++tri[a];
          ++tri[b];
          ++tri[c];
        }
    }
  std::vector<double> local(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d >= 2) local[v] = 2.0 * static_cast<double>(tri[v]) / (d * (d - 1));
  }
  return local;
}

inline double path_cost(const Graph& g, const std::vector<VertexId>& path) {
  double c = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) c += *g.edge_weight(path[i], path[i + 1]);
  return c;
}

// Every simple s-t path of cost exactly `target_cost`, by exhaustive DFS
// with cost pruning (weights are positive).
inline std::vector<std::vector<VertexId>> all_optimal_paths(const Graph& g, VertexId s, VertexId t,
                                                             double target_cost) {
  std::vector<std::vector<VertexId>> found;
  std::vector<VertexId> path{s};
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[s] = 1;
  auto dfs = [&](auto&& self, VertexId u, double cost) -> void {
    if (cost > target_cost) return;
    if (u == t) {
      if (cost == target_cost) found.push_back(path);
      return;
    }
    for (VertexId v : g.neighbors(u)) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      path.push_back(v);
      self(self, v, cost + *g.edge_weight(u, v));
      path.pop_back();
      on_path[v] = 0;
    }
  };
  dfs(dfs, s, 0.0);
  return found;
}

// Transactions of an exhaustive run, rebuilt from the DFS enumeration: the
// lexicographically smallest optimal path for every ordered reachable pair.
inline std::vector<std::vector<VertexId>> lexmin_exhaustive_paths(const Graph& g) {
  const auto d = floyd_warshall(g);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s = 0; s < g.vertex_count(); ++s)
    for (VertexId t = 0; t < g.vertex_count(); ++t) {
      if (s == t || d[s][t] == kInf) continue;
      auto paths = all_optimal_paths(g, s, t, d[s][t]);
      out.push_back(*std::min_element(paths.begin(), paths.end()));
    }
  return out;
}

inline TransactionDb random_db(std::mt19937_64& rng, std::size_t max_transactions, std::size_t item_count) {
  TransactionDb db;
  const auto count = draw(rng, 0, max_transactions);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<VertexId> items(item_count);
    for (VertexId v = 0; v < item_count; ++v) items[v] = v;
    std::shuffle(items.begin(), items.end(), rng);
    items.resize(draw(rng, 2, std::min<std::size_t>(item_count, 6)));
    db.transactions.emplace_back(std::move(items));
  }
  db.source_count = 1;
  return db;
}

// Exact support of every subset, by checking each transaction.
inline std::map<std::vector<VertexId>, std::uint64_t> all_subset_supports(const TransactionDb& db,
                                                                          std::size_t item_count,
                                                                          std::uint64_t min_support,
                                                                          std::size_t max_size) {
  std::map<std::vector<VertexId>, std::uint64_t> out;
  for (std::uint64_t mask = 1; mask < (1ULL << item_count); ++mask) {
    std::vector<VertexId> items;
    for (VertexId v = 0; v < item_count; ++v)
      if (mask & (1ULL << v)) items.push_back(v);
    if (max_size && items.size() > max_size) continue;
    std::uint64_t s = 0;
    for (const auto& t : db.transactions) {
      std::set<VertexId> set(t.vertices().begin(), t.vertices().end());
      if (std::all_of(items.begin(), items.end(), [&](VertexId v) { return set.count(v); })) ++s;
    }
    if (s >= min_support) out[items] = s;
  }
  return out;
}

}  // namespace spmine::testing
