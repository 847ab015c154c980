#include <doctest.h>

#include <random>

#include "spmine/error.hpp"
#include "spmine/fpgrowth.hpp"
#include "support/oracles.hpp"

using namespace spmine;

namespace {

TransactionDb db_of(std::initializer_list<std::vector<VertexId>> sets) {
  TransactionDb db;
  for (const auto& s : sets) db.transactions.emplace_back(s);
  return db;
}

// Re-derives every node count by walking each transaction's ordered items.
void check_recount(const FpTree& tree, const TransactionDb& db) {
  std::vector<std::uint64_t> recount(tree.nodes().size(), 0);
  std::map<VertexId, std::size_t> rank;
  for (std::size_t i = 0; i < tree.item_order().size(); ++i) rank[tree.item_order()[i]] = i;
  for (const auto& t : db.transactions) {
    std::vector<VertexId> items;
    for (auto v : t.vertices())
      if (rank.count(v)) items.push_back(v);
    std::sort(items.begin(), items.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
    std::size_t cur = FpTree::kRoot;
    for (auto v : items) {
      cur = tree.nodes()[cur].children.at(v);
      ++recount[cur];
    }
  }
  for (std::size_t i = 1; i < recount.size(); ++i) CHECK(recount[i] == tree.nodes()[i].count);
  for (const auto& [item, entry] : tree.header()) {
    std::uint64_t sum = 0;
    for (auto idx : entry.nodes) {
      CHECK(tree.nodes()[idx].item == item);
      sum += tree.nodes()[idx].count;
    }
    CHECK(sum == entry.support);
  }
}

}  // namespace

TEST_CASE("build_fptree hand trace") {
  const auto db = db_of({{0, 1}, {0, 1}, {0, 2}});
  const auto tree = build_fptree(db, 2);
  CHECK(tree.item_order() == std::vector<VertexId>{0, 1});
  REQUIRE(tree.nodes().size() == 3);
  const auto& root = tree.nodes()[FpTree::kRoot];
  REQUIRE(root.children.size() == 1);
  const auto& a = tree.nodes()[root.children.at(0)];
  CHECK(a.count == 3);
  REQUIRE(a.children.size() == 1);
  CHECK(tree.nodes()[a.children.at(1)].count == 2);
  CHECK(tree.header().count(2) == 0);
  check_recount(tree, db);
}

TEST_CASE("build_fptree edge cases") {
  const auto single = build_fptree(db_of({{0, 1}}), 1);
  CHECK(single.nodes().size() == 3);
  CHECK(build_fptree(TransactionDb{}, 3).empty());
  CHECK_THROWS_AS(build_fptree(TransactionDb{}, 0), ValidationError);
}

TEST_CASE("mine small example") {
  const auto db = db_of({{0, 1, 2}, {0, 1}, {0, 2}});
  const auto patterns = mine(build_fptree(db, 2), 2);
  const std::vector<FrequentPattern> expected{
      {{0}, 3}, {{1}, 2}, {{2}, 2}, {{0, 1}, 2}, {{0, 2}, 2}};
  CHECK(patterns == expected);
  CHECK(brute_force_frequent(db, 2, 3) == expected);
}

TEST_CASE("mine singletons equal vertex_frequency") {
  std::mt19937_64 rng(4);
  const auto db = testing::random_db(rng, 30, 10);
  const auto patterns = mine(build_fptree(db, 1), 1, 1);
  const auto freq = vertex_frequency(db);
  REQUIRE(patterns.size() == freq.size());
  for (const auto& p : patterns) CHECK(freq.at(p.items[0]) == p.support);
}

TEST_CASE("mine edge cases") {
  CHECK(mine(build_fptree(TransactionDb{}, 1), 1).empty());
  CHECK_THROWS_AS(mine(build_fptree(TransactionDb{}, 2), 3), ValidationError);
}

TEST_CASE("brute_force_frequent") {
  CHECK(brute_force_frequent(db_of({{0, 1}}), 1, 2) ==
        std::vector<FrequentPattern>{{{0}, 1}, {{1}, 1}, {{0, 1}, 1}});
  CHECK(brute_force_frequent(db_of({{0, 1}, {1, 2}}), 3, 3).empty());
  TransactionDb wide;
  std::vector<VertexId> items(20);
  for (VertexId v = 0; v < 20; ++v) items[v] = v;
  wide.transactions.emplace_back(items);
  CHECK_THROWS_AS(brute_force_frequent(wide, 1, 2), ValidationError);
}

TEST_CASE("brute_force_frequent agrees with full subset enumeration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto db = testing::random_db(rng, 20, 8);
    const auto s = testing::draw(rng, 1, 4);
    const auto expected = testing::all_subset_supports(db, 8, s, 0);
    const auto got = brute_force_frequent(db, s, 0);
    REQUIRE(got.size() == expected.size());
    for (const auto& p : got) CHECK(expected.at(p.items) == p.support);
  }
}

TEST_CASE("FP-Growth equals the oracle, with anti-monotone supports") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto db = testing::random_db(rng, 40, 12);
    const auto s = testing::draw(rng, 1, 5);
    const auto tree = build_fptree(db, s);
    check_recount(tree, db);
    const auto fp = mine(tree, s);
    CHECK(fp == brute_force_frequent(db, s, 0));
    CHECK(mine(tree, s, 3) == brute_force_frequent(db, s, 3));

    std::map<std::vector<VertexId>, std::uint64_t> by_items;
    for (const auto& p : fp) by_items[p.items] = p.support;
    for (const auto& p : fp) {
      if (p.items.size() < 2) continue;
      for (std::size_t drop = 0; drop < p.items.size(); ++drop) {
        auto sub = p.items;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        REQUIRE(by_items.count(sub));
        CHECK(by_items[sub] >= p.support);
      }
    }
  }
}

TEST_CASE("patterns_csv") {
  const std::vector<FrequentPattern> ps{{{0}, 3}, {{0, 2}, 2}};
  CHECK(patterns_csv(ps) == "support,size,items\n3,1,0\n2,2,0|2\n");
}
