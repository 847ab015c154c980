#include "spmine/fpgrowth.hpp"

#include <algorithm>
#include <unordered_map>

#include "spmine/error.hpp"

namespace spmine {

FpTree::FpTree(std::uint64_t min_support) : min_support_(min_support), nodes_(1) {}

FpTree FpTree::build(std::span<const WeightedItems> transactions, std::uint64_t min_support) {
  if (min_support == 0) throw ValidationError("min_support must be at least 1");
  FpTree tree(min_support);

  std::unordered_map<VertexId, std::uint64_t> support;
  for (const auto& t : transactions)
    for (auto item : t.items) support[item] += t.weight;

  for (const auto& [item, s] : support)
    if (s >= min_support) tree.item_order_.push_back(item);
  std::sort(tree.item_order_.begin(), tree.item_order_.end(), [&](VertexId a, VertexId b) {
    const auto sa = support[a], sb = support[b];
    return sa != sb ? sa > sb : a < b;
  });
  std::unordered_map<VertexId, std::size_t> rank;
  for (std::size_t i = 0; i < tree.item_order_.size(); ++i) {
    rank[tree.item_order_[i]] = i;
    tree.header_[tree.item_order_[i]].support = support[tree.item_order_[i]];
  }

  std::vector<VertexId> ordered;
  for (const auto& t : transactions) {
    ordered.clear();
    for (auto item : t.items)
      if (rank.count(item)) ordered.push_back(item);
    std::sort(ordered.begin(), ordered.end(), [&](VertexId a, VertexId b) { return rank[a] < rank[b]; });
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

    std::size_t cur = kRoot;
    for (auto item : ordered) {
      auto& children = tree.nodes_[cur].children;
      auto it = children.find(item);
      if (it == children.end()) {
        const std::size_t idx = tree.nodes_.size();
        children.emplace(item, idx);
        Node node;
        node.item = item;
        node.parent = cur;
        tree.nodes_.push_back(std::move(node));
        tree.header_[item].nodes.push_back(idx);
        cur = idx;
      } else {
        cur = it->second;
      }
      tree.nodes_[cur].count += t.weight;
    }
  }
  return tree;
}

FpTree build_fptree(const TransactionDb& db, std::uint64_t min_support) {
  std::vector<FpTree::WeightedItems> items;
  items.reserve(db.size());
  for (const auto& t : db.transactions) items.push_back({t.vertices(), 1});
  return FpTree::build(items, min_support);
}

namespace {

void grow(const FpTree& tree, std::vector<VertexId>& suffix, std::optional<std::size_t> max_size,
          std::vector<FrequentPattern>& out) {
  const auto& nodes = tree.nodes();
  for (auto it = tree.item_order().rbegin(); it != tree.item_order().rend(); ++it) {
    const VertexId item = *it;
    const auto& entry = tree.header().at(item);

    suffix.push_back(item);
    FrequentPattern p;
    p.items = suffix;
    std::sort(p.items.begin(), p.items.end());
    p.support = entry.support;
    out.push_back(std::move(p));

    if (!max_size || suffix.size() < *max_size) {
      // Conditional pattern base: prefix paths of every node carrying item.
      std::vector<FpTree::WeightedItems> base;
      for (auto idx : entry.nodes) {
        FpTree::WeightedItems prefix;
        prefix.weight = nodes[idx].count;
        for (auto up = nodes[idx].parent; up != FpTree::kRoot; up = nodes[up].parent)
          prefix.items.push_back(nodes[up].item);
        if (!prefix.items.empty()) base.push_back(std::move(prefix));
      }
      if (!base.empty()) {
        const auto conditional = FpTree::build(base, tree.min_support());
        if (!conditional.empty()) grow(conditional, suffix, max_size, out);
      }
    }
    suffix.pop_back();
  }
}

}  // namespace

void sort_patterns(std::vector<FrequentPattern>& patterns) {
  std::sort(patterns.begin(), patterns.end(), [](const FrequentPattern& a, const FrequentPattern& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    if (a.support != b.support) return a.support > b.support;
    return a.items < b.items;
  });
}

std::vector<FrequentPattern> mine(const FpTree& tree, std::uint64_t min_support, std::optional<std::size_t> max_size) {
  if (min_support != tree.min_support())
    throw ValidationError("min_support " + std::to_string(min_support) + " differs from tree threshold " +
                          std::to_string(tree.min_support()));
  std::vector<FrequentPattern> out;
  if (max_size && *max_size == 0) return out;
  std::vector<VertexId> suffix;
  grow(tree, suffix, max_size, out);
  sort_patterns(out);
  return out;
}

std::vector<FrequentPattern> brute_force_frequent(const TransactionDb& db, std::uint64_t min_support,
                                                  std::size_t max_size) {
  if (min_support == 0) throw ValidationError("min_support must be at least 1");
  std::vector<std::vector<VertexId>> sets;
  sets.reserve(db.size());
  for (const auto& t : db.transactions) {
    auto s = t.vertices();
    std::sort(s.begin(), s.end());
    sets.push_back(std::move(s));
  }
  const auto support_of = [&](const std::vector<VertexId>& items) {
    std::uint64_t s = 0;
    for (const auto& t : sets)
      if (std::includes(t.begin(), t.end(), items.begin(), items.end())) ++s;
    return s;
  };

  std::map<VertexId, std::uint64_t> singles;
  for (const auto& t : sets)
    for (auto v : t) ++singles[v];
  std::vector<VertexId> universe;
  for (const auto& [v, s] : singles)
    if (s >= min_support) universe.push_back(v);
  if (universe.size() > kBruteForceItemLimit)
    throw ValidationError("brute-force enumeration limited to " + std::to_string(kBruteForceItemLimit) +
                          " frequent items, got " + std::to_string(universe.size()));

  std::vector<FrequentPattern> out;
  std::vector<std::vector<VertexId>> level;
  for (auto v : universe) level.push_back({v});
  for (std::size_t size = 1; !level.empty() && (max_size == 0 || size <= max_size); ++size) {
    std::vector<std::vector<VertexId>> frequent;
    for (auto& candidate : level) {
      const auto s = support_of(candidate);
      if (s < min_support) continue;
      out.push_back({candidate, s});
      frequent.push_back(std::move(candidate));
    }
    level.clear();
    for (const auto& base : frequent)
      for (auto v : universe)
        if (v > base.back()) {
          auto next = base;
          next.push_back(v);
          level.push_back(std::move(next));
        }
  }
  sort_patterns(out);
  return out;
}

std::string patterns_csv(std::span<const FrequentPattern> patterns) {
  std::string out = "support,size,items\n";
  for (const auto& p : patterns) {
    out += std::to_string(p.support);
    out += ',';
    out += std::to_string(p.items.size());
    out += ',';
    out += join_items(p.items);
    out += '\n';
  }
  return out;
}

}  // namespace spmine
