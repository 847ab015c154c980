#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spmine/graph.hpp"

namespace spmine {

// A shortest path as an ordered vertex sequence of length >= 2 with no
// repeated vertex.
class PathTransaction {
 public:
  // Throws ValidationError on length < 2 or a repeated vertex.
  explicit PathTransaction(std::vector<VertexId> vertices);
  // Additionally requires every consecutive pair to be an edge of g.
  static PathTransaction on_graph(const Graph& g, std::vector<VertexId> vertices);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  bool operator==(const PathTransaction&) const = default;

 private:
  std::vector<VertexId> vertices_;
};

struct TransactionDb {
  std::vector<PathTransaction> transactions;
  std::size_t source_count = 0;
  std::size_t unreachable_pairs = 0;
  std::uint64_t graph_fingerprint = 0;

  std::size_t size() const noexcept { return transactions.size(); }
  bool empty() const noexcept { return transactions.empty(); }
  // Sum of transaction lengths.
  std::size_t total_length() const noexcept;

  bool operator==(const TransactionDb&) const = default;
};

// Throws ValidationError when the fingerprint differs or an id is out of range.
void check_against(const TransactionDb& db, const Graph& g);

using VertexTuple = std::vector<VertexId>;

struct NGramCounts {
  std::size_t n = 0;
  std::map<VertexTuple, std::uint64_t> entries;

  std::uint64_t total() const noexcept;
  bool operator==(const NGramCounts&) const = default;
};

// Reversal when it is lexicographically smaller, identity otherwise.
VertexTuple canonical_tuple(VertexTuple tuple);

// Consecutive windows of length n over every transaction. Throws
// ValidationError when n == 0.
NGramCounts count_ngrams(const TransactionDb& db, std::size_t n, bool canonicalize = true);

std::map<VertexId, std::uint64_t> vertex_frequency(const TransactionDb& db);

// Text format: '%sources N', '%unreachable N', '%fp <16 hex>' header lines,
// then one space separated transaction per line.
std::string serialize_db(const TransactionDb& db);
void write_db(std::ostream& out, const TransactionDb& db);
// Throws ParseError on malformed input, or when expected_fingerprint is given
// and does not match the header.
TransactionDb parse_db(std::istream& in, std::optional<std::uint64_t> expected_fingerprint = std::nullopt);
TransactionDb parse_db(const std::string& text, std::optional<std::uint64_t> expected_fingerprint = std::nullopt);

// CSV with columns n,items,count; rows by count descending then items.
std::string ngram_csv(const NGramCounts& counts);

// "a|b|c"
std::string join_items(const VertexTuple& items);

}  // namespace spmine
