#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spmine {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct InputEdge {
  VertexId u;
  VertexId v;
  double weight = 1.0;
};

struct ParseOptions {
  bool directed = false;
  bool weighted = false;
};

// Immutable compressed-sparse-row graph. Neighbor slices are strictly
// increasing; undirected edges are stored in both endpoints' slices.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list. Self-loops are dropped and duplicates collapse
  // to the first occurrence. Throws BoundsError for ids >= vertex_count and
  // ValidationError for non-positive weights.
  static Graph from_edges(std::size_t vertex_count, std::span<const InputEdge> edges,
                          bool directed = false, bool weighted = false);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  // Undirected edges are counted once, arcs once each in directed mode.
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool directed() const noexcept { return directed_; }
  bool weighted() const noexcept { return weighted_; }

  std::size_t degree(VertexId v) const;
  std::span<const VertexId> neighbors(VertexId v) const;
  // Empty span for unweighted graphs.
  std::span<const double> neighbor_weights(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;
  // Weight of arc u->v (1.0 on unweighted graphs), nullopt when absent.
  std::optional<double> edge_weight(VertexId u, VertexId v) const;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> adjacency() const noexcept { return adjacency_; }
  std::span<const double> weights() const noexcept { return weights_; }

  // FNV-1a over the full structure; stable across runs and platforms.
  std::uint64_t fingerprint() const noexcept;

  bool operator==(const Graph&) const = default;

 private:
  void check_vertex(VertexId v) const;

  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::vector<double> weights_;
  std::size_t edge_count_ = 0;
  bool directed_ = false;
  bool weighted_ = false;
};

// Whitespace separated "u v" or "u v w" lines, '#' comments, LF or CRLF.
Graph parse_edge_list(std::istream& input, ParseOptions options = {});
Graph parse_edge_list(const std::string& text, ParseOptions options = {});
// Throws IoError naming the path when the file cannot be opened.
Graph read_edge_list(const std::filesystem::path& path, ParseOptions options = {});

// Canonical edge list: each edge once (u < v when undirected), ascending.
void write_edge_list(std::ostream& out, const Graph& g);

std::string fingerprint_hex(std::uint64_t fingerprint);

struct DegreeHistogram {
  std::map<std::size_t, std::size_t> entries;
  bool operator==(const DegreeHistogram&) const = default;
};

DegreeHistogram degree_histogram(const Graph& g);

struct ClusteringStats {
  std::vector<double> local;
  double average = 0.0;
};

// Local clustering C_v = 2 T_v / (d_v (d_v - 1)), 0 when d_v < 2.
// Throws UnsupportedError on directed graphs.
ClusteringStats clustering(const Graph& g);

using EdgeSet = std::set<std::pair<VertexId, VertexId>>;

// Graphviz output. Highlighted edges get a color/penwidth attribute. When the
// graph has more than max_vertices vertices (0 = no cap), only the
// max_vertices highest-degree vertices (ties to lower id) and their induced
// edges are kept.
std::string export_dot(const Graph& g, const EdgeSet* highlight = nullptr,
                       std::size_t max_vertices = 0);

}  // namespace spmine
