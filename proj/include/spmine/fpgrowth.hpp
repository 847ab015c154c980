#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spmine/transactions.hpp"

namespace spmine {

// Frequent-pattern prefix tree over support-ordered transactions.
class FpTree {
 public:
  static constexpr std::size_t kRoot = 0;

  struct Node {
    VertexId item = kNoVertex;  // kNoVertex on the root
    std::uint64_t count = 0;
    std::size_t parent = kRoot;
    std::map<VertexId, std::size_t> children;
  };

  struct HeaderEntry {
    std::uint64_t support = 0;
    std::vector<std::size_t> nodes;  // insertion order
  };

  // Item sets with a multiplicity; transactions are treated as sets.
  struct WeightedItems {
    std::vector<VertexId> items;
    std::uint64_t weight = 1;
  };

  // Two passes: item supports, then insertion of each transaction's frequent
  // items in item_order. Throws ValidationError when min_support == 0.
  static FpTree build(std::span<const WeightedItems> transactions, std::uint64_t min_support);

  std::uint64_t min_support() const noexcept { return min_support_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::map<VertexId, HeaderEntry>& header() const noexcept { return header_; }
  // Frequent items by descending support, ties by ascending id.
  const std::vector<VertexId>& item_order() const noexcept { return item_order_; }
  bool empty() const noexcept { return nodes_.size() == 1; }

 private:
  explicit FpTree(std::uint64_t min_support);

  std::uint64_t min_support_;
  std::vector<Node> nodes_;
  std::map<VertexId, HeaderEntry> header_;
  std::vector<VertexId> item_order_;
};

struct FrequentPattern {
  std::vector<VertexId> items;  // ascending
  std::uint64_t support = 0;

  bool operator==(const FrequentPattern&) const = default;
};

FpTree build_fptree(const TransactionDb& db, std::uint64_t min_support);

// FP-Growth over conditional pattern bases. Output sorted by size ascending,
// support descending, items ascending. max_size = nullopt mines without a
// size bound. Throws ValidationError when min_support differs from the
// tree's construction threshold.
std::vector<FrequentPattern> mine(const FpTree& tree, std::uint64_t min_support,
                                  std::optional<std::size_t> max_size = std::nullopt);

// Level-wise enumeration with exact support counting; a test oracle for mine.
inline constexpr std::size_t kBruteForceItemLimit = 16;
std::vector<FrequentPattern> brute_force_frequent(const TransactionDb& db, std::uint64_t min_support,
                                                  std::size_t max_size);

void sort_patterns(std::vector<FrequentPattern>& patterns);

// CSV with columns support,size,items.
std::string patterns_csv(std::span<const FrequentPattern> patterns);

}  // namespace spmine
