#include "spmine/traversal.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <thread>

#include "spmine/error.hpp"

namespace spmine {

namespace {

void check_source(const Graph& g, VertexId source) {
  if (source >= g.vertex_count())
    throw BoundsError("source " + std::to_string(source) + " out of range [0, " +
                      std::to_string(g.vertex_count()) + ")");
}

// BFS with ascending neighbors and first-discovery parents. Queue order inside
// a level equals lexicographic order of the discovery paths, so every parent
// pointer yields the lexicographically smallest shortest path.
void bfs(const Graph& g, SsspResult& r) {
  std::vector<VertexId> queue;
  queue.reserve(g.vertex_count());
  queue.push_back(r.source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    const double next = r.dist[u] + 1.0;
    for (VertexId v : g.neighbors(u)) {
      if (r.dist[v] != kUnreachable) continue;
      r.dist[v] = next;
      r.parent[v] = u;
      queue.push_back(v);
    }
  }
}

void dijkstra_distances(const Graph& g, SsspResult& r) {
  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0.0, r.source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > r.dist[u]) continue;  // stale
    const auto nbrs = g.neighbors(u);
    const auto ws = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const double nd = d + ws[i];
      if (nd < r.dist[nbrs[i]]) {
        r.dist[nbrs[i]] = nd;
        heap.emplace(nd, nbrs[i]);
      }
    }
  }
}

// Ascending-order DFS over the shortest-path DAG (arcs with
// dist[u] + w == dist[v]). The first visit of every vertex happens along its
// lexicographically smallest optimal path.
void lexmin_parents(const Graph& g, SsspResult& r) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::pair<VertexId, std::size_t>> stack;
  seen[r.source] = 1;
  stack.emplace_back(r.source, 0);
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const auto nbrs = g.neighbors(u);
    const auto ws = g.neighbor_weights(u);
    bool descended = false;
    while (next < nbrs.size()) {
      const std::size_t i = next++;
      const VertexId v = nbrs[i];
      if (seen[v] || r.dist[u] + ws[i] != r.dist[v]) continue;
      seen[v] = 1;
      r.parent[v] = u;
      stack.emplace_back(v, 0);
      descended = true;
      break;
    }
    if (!descended) stack.pop_back();
  }
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t excess = (max % range + 1) % range;
  const std::uint64_t limit = max - excess;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % range;
}

struct SourceOutput {
  std::vector<std::vector<VertexId>> paths;
  std::size_t unreachable = 0;
};

SourceOutput paths_from(const Graph& g, VertexId source) {
  const auto tree = sssp(g, source);
  SourceOutput out;
  for (VertexId t = 0; t < g.vertex_count(); ++t) {
    if (t == source) continue;
    auto path = reconstruct_path(tree, t);
    if (!path) {
      ++out.unreachable;
      continue;
    }
    out.paths.push_back(std::move(*path));
  }
  return out;
}

}  // namespace

SsspResult sssp(const Graph& g, VertexId source) {
  check_source(g, source);
  SsspResult r;
  r.source = source;
  r.dist.assign(g.vertex_count(), kUnreachable);
  r.parent.assign(g.vertex_count(), kNoVertex);
  r.dist[source] = 0.0;
  if (!g.weighted()) {
    bfs(g, r);
  } else {
    dijkstra_distances(g, r);
    lexmin_parents(g, r);
  }
  return r;
}

std::optional<std::vector<VertexId>> reconstruct_path(const SsspResult& result, VertexId target) {
  if (target >= result.dist.size())
    throw BoundsError("target " + std::to_string(target) + " out of range [0, " +
                      std::to_string(result.dist.size()) + ")");
  if (!result.reachable(target)) return std::nullopt;
  std::vector<VertexId> path;
  for (VertexId v = target; v != kNoVertex; v = result.parent[v]) {
    path.push_back(v);
    if (path.size() > result.dist.size()) throw Error("parent chain contains a cycle");
  }
  std::reverse(path.begin(), path.end());
  return path;
}

SourceSample sample_sources(const Graph& g, std::size_t k, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (k == 0 || k > n)
    throw ValidationError("sample size k=" + std::to_string(k) + " must be in [1, " + std::to_string(n) + "]");
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(bounded_draw(rng, n - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  return {std::move(ids), seed, k};
}

std::vector<VertexId> all_sources(const Graph& g) {
  std::vector<VertexId> ids(g.vertex_count());
  std::iota(ids.begin(), ids.end(), VertexId{0});
  return ids;
}

TransactionDb run_traversals(const Graph& g, std::span<const VertexId> sources, unsigned threads) {
  if (sources.empty()) throw ValidationError("no traversal sources");
  for (VertexId s : sources) check_source(g, s);

  std::vector<SourceOutput> outputs(sources.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sources.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < sources.size(); ++i) outputs[i] = paths_from(g, sources[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < sources.size(); i = next++) outputs[i] = paths_from(g, sources[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  TransactionDb db;
  db.source_count = sources.size();
  db.graph_fingerprint = g.fingerprint();
  std::size_t total = 0;
  for (const auto& o : outputs) total += o.paths.size();
  db.transactions.reserve(total);
  for (auto& o : outputs) {
    db.unreachable_pairs += o.unreachable;
    for (auto& p : o.paths) db.transactions.push_back(PathTransaction::on_graph(g, std::move(p)));
  }
  return db;
}

}  // namespace spmine
