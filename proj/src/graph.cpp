#include "spmine/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "spmine/error.hpp"

namespace spmine {

namespace {

struct Arc {
  VertexId from;
  VertexId to;
  double weight;
  std::size_t order;  // input position, first one wins on duplicates
};

class Fnv1a {
 public:
  void add_bytes(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash_ ^= bytes[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(std::uint64_t value) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(value >> (8 * i));
    add_bytes(buf, sizeof buf);
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

VertexId parse_vertex(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("invalid vertex id '" + std::string(token) + "'", line);
  if (value >= kNoVertex) throw ParseError("vertex id too large '" + std::string(token) + "'", line);
  return static_cast<VertexId>(value);
}

double parse_weight(std::string_view token, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("invalid weight '" + std::string(token) + "'", line);
  return value;
}

void append_number(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

}  // namespace

Graph Graph::from_edges(std::size_t vertex_count, std::span<const InputEdge> edges, bool directed,
                        bool weighted) {
  if (vertex_count >= kNoVertex) throw ValidationError("vertex count exceeds id range");

  std::vector<Arc> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.u >= vertex_count || e.v >= vertex_count)
      throw BoundsError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        ") outside vertex range " + std::to_string(vertex_count));
    const double w = weighted ? e.weight : 1.0;
    if (!(w > 0.0) || !std::isfinite(w))
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") has non-positive weight");
    if (e.u == e.v) continue;
    arcs.push_back({e.u, e.v, w, i});
    if (!directed) arcs.push_back({e.v, e.u, w, i});
  }

  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.from, a.to, a.order) < std::tie(b.from, b.to, b.order);
  });
  arcs.erase(std::unique(arcs.begin(), arcs.end(),
                         [](const Arc& a, const Arc& b) { return a.from == b.from && a.to == b.to; }),
             arcs.end());

  Graph g;
  g.directed_ = directed;
  g.weighted_ = weighted;
  g.offsets_.assign(vertex_count + 1, 0);
  g.adjacency_.reserve(arcs.size());
  if (weighted) g.weights_.reserve(arcs.size());
  for (const auto& a : arcs) {
    ++g.offsets_[a.from + 1];
    g.adjacency_.push_back(a.to);
    if (weighted) g.weights_.push_back(a.weight);
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.edge_count_ = directed ? arcs.size() : arcs.size() / 2;
  return g;
}

void Graph::check_vertex(VertexId v) const {
  if (v >= vertex_count())
    throw BoundsError("vertex " + std::to_string(v) + " out of range [0, " +
                      std::to_string(vertex_count()) + ")");
}

std::size_t Graph::degree(VertexId v) const {
  check_vertex(v);
  return offsets_[v + 1] - offsets_[v];
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  check_vertex(v);
  return std::span<const VertexId>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::span<const double> Graph::neighbor_weights(VertexId v) const {
  check_vertex(v);
  if (!weighted_) return {};
  return std::span<const double>(weights_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::optional<double> Graph::edge_weight(VertexId u, VertexId v) const {
  const auto slice = neighbors(u);
  const auto it = std::lower_bound(slice.begin(), slice.end(), v);
  if (it == slice.end() || *it != v) return std::nullopt;
  if (!weighted_) return 1.0;
  return weights_[offsets_[u] + static_cast<std::size_t>(it - slice.begin())];
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (v >= vertex_count()) return false;
  return edge_weight(u, v).has_value();
}

std::uint64_t Graph::fingerprint() const noexcept {
  Fnv1a h;
  h.add(directed_ ? 1 : 0);
  h.add(weighted_ ? 1 : 0);
  h.add(vertex_count());
  h.add(edge_count_);
  for (auto o : offsets_) h.add(o);
  for (auto a : adjacency_) h.add(a);
  for (auto w : weights_) h.add(std::bit_cast<std::uint64_t>(w));
  return h.value();
}

std::string fingerprint_hex(std::uint64_t fingerprint) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[fingerprint & 0xf];
    fingerprint >>= 4;
  }
  return out;
}

Graph parse_edge_list(std::istream& input, ParseOptions options) {
  std::vector<InputEdge> edges;
  std::size_t vertex_count = 0;
  bool saw_edge_line = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_ws(body);
    if (tokens.size() < 2) throw ParseError("missing endpoint", line_no);
    if (tokens.size() > 3) throw ParseError("too many fields", line_no);
    InputEdge e{parse_vertex(tokens[0], line_no), parse_vertex(tokens[1], line_no), 1.0};
    if (options.weighted) {
      if (tokens.size() < 3) throw ParseError("missing weight", line_no);
      e.weight = parse_weight(tokens[2], line_no);
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw ValidationError("line " + std::to_string(line_no) + ": non-positive weight");
    } else if (tokens.size() == 3) {
      parse_weight(tokens[2], line_no);  // validated, then ignored
    }
    vertex_count = std::max<std::size_t>(vertex_count, std::max(e.u, e.v) + std::size_t{1});
    saw_edge_line = true;
    edges.push_back(e);
  }
  if (input.bad()) throw IoError("read failure after line " + std::to_string(line_no));
  if (!saw_edge_line) throw ValidationError("empty edge list");
  return Graph::from_edges(vertex_count, edges, options.directed, options.weighted);
}

Graph parse_edge_list(const std::string& text, ParseOptions options) {
  std::istringstream in(text);
  return parse_edge_list(in, options);
}

Graph read_edge_list(const std::filesystem::path& path, ParseOptions options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file '" + path.string() + "'");
  return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  std::string buf;
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    const auto nbrs = g.neighbors(u);
    const auto ws = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!g.directed() && nbrs[i] < u) continue;
      buf += std::to_string(u);
      buf += ' ';
      buf += std::to_string(nbrs[i]);
      if (g.weighted()) {
        buf += ' ';
        append_number(buf, ws[i]);
      }
      buf += '\n';
    }
  }
  // An isolated highest vertex would otherwise be lost on re-parse; the
  // parser drops self-loops but still counts their ids.
  if (n > 0 && g.degree(n - 1) == 0) {
    bool has_in_arc = false;
    if (g.directed())
      has_in_arc = std::find(g.adjacency().begin(), g.adjacency().end(), n - 1) != g.adjacency().end();
    if (!has_in_arc) {
      buf += std::to_string(n - 1) + ' ' + std::to_string(n - 1);
      if (g.weighted()) buf += " 1";
      buf += '\n';
    }
  }
  out << buf;
}

DegreeHistogram degree_histogram(const Graph& g) {
  DegreeHistogram h;
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++h.entries[g.degree(v)];
  return h;
}

ClusteringStats clustering(const Graph& g) {
  if (g.directed()) throw UnsupportedError("clustering coefficient requires an undirected graph");
  const auto n = g.vertex_count();
  ClusteringStats stats;
  stats.local.assign(n, 0.0);
  double sum = 0.0;
  for (VertexId v = 0; v < n; ++v) {
    const auto nv = g.neighbors(v);
    const auto d = nv.size();
    if (d < 2) continue;
    // Each edge among neighbors is seen from both endpoints.
    std::size_t twice_links = 0;
    for (VertexId u : nv) {
      const auto nu = g.neighbors(u);
      auto a = nv.begin();
      auto b = nu.begin();
      while (a != nv.end() && b != nu.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++twice_links;
          ++a;
          ++b;
        }
      }
    }
    stats.local[v] = static_cast<double>(twice_links) / (static_cast<double>(d) * static_cast<double>(d - 1));
    sum += stats.local[v];
  }
  stats.average = n ? sum / static_cast<double>(n) : 0.0;
  return stats;
}

std::string export_dot(const Graph& g, const EdgeSet* highlight, std::size_t max_vertices) {
  const auto n = g.vertex_count();
  std::vector<char> keep(n, 1);
  const bool truncated = max_vertices != 0 && n > max_vertices;
  if (truncated) {
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), VertexId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
    std::fill(keep.begin(), keep.end(), 0);
    for (std::size_t i = 0; i < max_vertices; ++i) keep[order[i]] = 1;
  }

  const bool directed = g.directed();
  const char* arrow = directed ? " -> " : " -- ";
  std::ostringstream out;
  out << (directed ? "digraph" : "graph") << " G {\n";
  if (truncated)
    out << "  // truncated: " << max_vertices << " of " << n
        << " vertices kept (highest degree), induced edges only\n";
  for (VertexId v = 0; v < n; ++v)
    if (keep[v]) out << "  " << v << ";\n";
  for (VertexId u = 0; u < n; ++u) {
    if (!keep[u]) continue;
    const auto nbrs = g.neighbors(u);
    const auto ws = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId v = nbrs[i];
      if (!keep[v] || (!directed && v < u)) continue;
      out << "  " << u << arrow << v;
      std::vector<std::string> attrs;
      if (g.weighted()) {
        std::string w;
        append_number(w, ws[i]);
        attrs.push_back("weight=" + w);
      }
      if (highlight) {
        const bool hit = highlight->count({u, v}) || (!directed && highlight->count({v, u}));
        if (hit) attrs.emplace_back("color=red, penwidth=2");
      }
      if (!attrs.empty()) {
        out << " [";
        for (std::size_t a = 0; a < attrs.size(); ++a) out << (a ? ", " : "") << attrs[a];
        out << "]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace spmine
