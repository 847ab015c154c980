#include "spmine/transactions.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "spmine/error.hpp"

namespace spmine {

namespace {

bool has_repeat(const std::vector<VertexId>& vs) {
  if (vs.size() < 16) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (vs[i] == vs[j]) return true;
    return false;
  }
  std::unordered_set<VertexId> seen;
  for (auto v : vs)
    if (!seen.insert(v).second) return true;
  return false;
}

template <typename T>
T parse_uint(std::string_view token, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line);
  return value;
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

PathTransaction::PathTransaction(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw ValidationError("transaction needs at least two vertices");
  if (has_repeat(vertices_)) throw ValidationError("transaction repeats a vertex");
}

PathTransaction PathTransaction::on_graph(const Graph& g, std::vector<VertexId> vertices) {
  PathTransaction t(std::move(vertices));
  const auto& vs = t.vertices();
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    if (vs[i] >= g.vertex_count() || !g.has_edge(vs[i], vs[i + 1]))
      throw ValidationError("transaction step " + std::to_string(vs[i]) + "->" + std::to_string(vs[i + 1]) +
                            " is not an edge");
  return t;
}

std::size_t TransactionDb::total_length() const noexcept {
  std::size_t total = 0;
  for (const auto& t : transactions) total += t.size();
  return total;
}

void check_against(const TransactionDb& db, const Graph& g) {
  if (db.graph_fingerprint != g.fingerprint())
    throw ValidationError("transaction fingerprint " + fingerprint_hex(db.graph_fingerprint) +
                          " does not match graph " + fingerprint_hex(g.fingerprint()));
  for (const auto& t : db.transactions)
    for (auto v : t.vertices())
      if (v >= g.vertex_count()) throw ValidationError("transaction vertex " + std::to_string(v) + " out of range");
}

std::uint64_t NGramCounts::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& [_, c] : entries) sum += c;
  return sum;
}

VertexTuple canonical_tuple(VertexTuple tuple) {
  if (std::lexicographical_compare(tuple.rbegin(), tuple.rend(), tuple.begin(), tuple.end()))
    std::reverse(tuple.begin(), tuple.end());
  return tuple;
}

NGramCounts count_ngrams(const TransactionDb& db, std::size_t n, bool canonicalize) {
  if (n == 0) throw ValidationError("n-gram size must be at least 1");
  NGramCounts counts;
  counts.n = n;
  VertexTuple window(n);
  for (const auto& t : db.transactions) {
    const auto& vs = t.vertices();
    if (vs.size() < n) continue;
    for (std::size_t i = 0; i + n <= vs.size(); ++i) {
      std::copy_n(vs.begin() + static_cast<std::ptrdiff_t>(i), n, window.begin());
      if (canonicalize) {
        ++counts.entries[canonical_tuple(window)];
      } else {
        ++counts.entries[window];
      }
    }
  }
  return counts;
}

std::map<VertexId, std::uint64_t> vertex_frequency(const TransactionDb& db) {
  std::map<VertexId, std::uint64_t> freq;
  for (const auto& t : db.transactions)
    for (auto v : t.vertices()) ++freq[v];
  return freq;
}

void write_db(std::ostream& out, const TransactionDb& db) {
  out << "%sources " << db.source_count << '\n'
      << "%unreachable " << db.unreachable_pairs << '\n'
      << "%fp " << fingerprint_hex(db.graph_fingerprint) << '\n';
  std::string line;
  for (const auto& t : db.transactions) {
    line.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) line += ' ';
      line += std::to_string(t.vertices()[i]);
    }
    line += '\n';
    out << line;
  }
}

std::string serialize_db(const TransactionDb& db) {
  std::ostringstream out;
  write_db(out, db);
  return out.str();
}

TransactionDb parse_db(std::istream& in, std::optional<std::uint64_t> expected_fingerprint) {
  TransactionDb db;
  bool have_sources = false, have_unreachable = false, have_fp = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body(line);
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (!body.empty() && body.front() == '%') {
      if (!db.transactions.empty()) throw ParseError("header after transactions", line_no);
      const auto tokens = split_spaces(body.substr(1));
      if (tokens.size() != 2) throw ParseError("malformed header", line_no);
      if (tokens[0] == "sources") {
        db.source_count = parse_uint<std::size_t>(tokens[1], line_no, "source count");
        have_sources = true;
      } else if (tokens[0] == "unreachable") {
        db.unreachable_pairs = parse_uint<std::size_t>(tokens[1], line_no, "unreachable count");
        have_unreachable = true;
      } else if (tokens[0] == "fp") {
        if (tokens[1].size() != 16) throw ParseError("fingerprint must be 16 hex digits", line_no);
        std::uint64_t fp = 0;
        auto [ptr, ec] = std::from_chars(tokens[1].data(), tokens[1].data() + 16, fp, 16);
        if (ec != std::errc{} || ptr != tokens[1].data() + 16) throw ParseError("invalid fingerprint", line_no);
        db.graph_fingerprint = fp;
        have_fp = true;
      } else {
        throw ParseError("unknown header '" + std::string(tokens[0]) + "'", line_no);
      }
      continue;
    }
    const auto tokens = split_spaces(body);
    if (tokens.empty()) throw ParseError("empty transaction line", line_no);
    std::vector<VertexId> vs;
    vs.reserve(tokens.size());
    for (auto tok : tokens) {
      const auto v = parse_uint<std::uint64_t>(tok, line_no, "vertex id");
      if (v >= kNoVertex) throw ParseError("vertex id too large", line_no);
      vs.push_back(static_cast<VertexId>(v));
    }
    try {
      db.transactions.emplace_back(std::move(vs));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_sources || !have_unreachable || !have_fp) throw ParseError("missing header line");
  if (expected_fingerprint && *expected_fingerprint != db.graph_fingerprint)
    throw ParseError("fingerprint mismatch: file has " + fingerprint_hex(db.graph_fingerprint) +
                     ", graph is " + fingerprint_hex(*expected_fingerprint));
  return db;
}

TransactionDb parse_db(const std::string& text, std::optional<std::uint64_t> expected_fingerprint) {
  std::istringstream in(text);
  return parse_db(in, expected_fingerprint);
}

std::string join_items(const VertexTuple& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(items[i]);
  }
  return out;
}

std::string ngram_csv(const NGramCounts& counts) {
  std::vector<const std::pair<const VertexTuple, std::uint64_t>*> rows;
  rows.reserve(counts.entries.size());
  for (const auto& e : counts.entries) rows.push_back(&e);
  // std::map iteration is already items-ascending; stable sort keeps it for ties.
  std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->second > b->second; });
  std::string out = "n,items,count\n";
  for (auto* r : rows) {
    out += std::to_string(counts.n);
    out += ',';
    out += join_items(r->first);
    out += ',';
    out += std::to_string(r->second);
    out += '\n';
  }
  return out;
}

}  // namespace spmine
