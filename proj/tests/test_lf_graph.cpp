#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rcomp/lf_graph.hpp"
#include "test_support.hpp"

using namespace rcomp;
using rcomp::testing::handles;
using rcomp::testing::sym;
using rcomp::testing::syms;

namespace {

PlainGraph sample_graph() { return PlainGraph::from_dbwt(syms("abbb$bbbaaa"), {1, 2, 1, 1, 3, 2, 1}); }

// Random BWT cut into random single-character blocks.
template <class Store>
LfIntervalGraph<Store> random_dbwt(std::mt19937_64& rng, std::vector<Symbol>& L, Store store = Store()) {
  Bytes text = rcomp::testing::random_bytes(rng, rng() % 150, 1 + rng() % 5);
  L = oracle::bwt_naive(sentinelize(text));
  std::vector<std::uint64_t> lengths;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (i == 0 || L[i] != L[i - 1] || rng() % 4 == 0) lengths.push_back(1); else ++lengths.back();
  }
  return LfIntervalGraph<Store>::from_dbwt(L, lengths, kDefaultAlpha, std::move(store));
}

}  // namespace

TEST(LfGraph, InitialGraphIsSentinelOnly) {
  PlainGraph g;
  EXPECT_EQ(g.k(), 1u);
  EXPECT_EQ(g.delta(), 1u);
  EXPECT_EQ(g.bwt(), syms("$"));
  EXPECT_EQ(g.tree().min_slot(), g.partner(Side::U, g.sentinel_u()));
  Handle u = g.first(Side::U);
  EXPECT_EQ(g.out_edge(Side::U, u), (Edge{g.partner(Side::U, u), 0}));
  EXPECT_TRUE(g.validate().ok()) << g.validate().summary();
}

TEST(LfGraph, AlphaBelowSixteenRejected) {
  EXPECT_THROW(PlainGraph(15), InvalidAlpha);
  EXPECT_NO_THROW(PlainGraph(16));
}

TEST(LfGraph, SampleGraphEdges) {
  PlainGraph g = sample_graph();
  auto u = handles(g, Side::U);
  auto v = handles(g, Side::V);
  ASSERT_EQ(u.size(), 7u);
  auto V = [&](int i) { return g.partner(Side::U, u[i - 1]); };
  auto U = [&](int i) { return u[i - 1]; };

  // V list order, named by partner index: v4, v1, v6, v7, v2, v3, v5.
  EXPECT_EQ(v, (std::vector<Handle>{V(4), V(1), V(6), V(7), V(2), V(3), V(5)}));

  const int out_l[7] = {4, 1, 6, 7, 2, 5, 5};
  for (int i = 1; i <= 7; ++i) EXPECT_EQ(g.out_edge(Side::U, U(i)).target, V(out_l[i - 1])) << "u" << i;
  const int out_f[7] = {2, 5, 5, 1, 6, 2, 4};
  for (int i = 1; i <= 7; ++i) EXPECT_EQ(g.out_edge(Side::V, V(i)).target, U(out_f[i - 1])) << "v" << i;

  EXPECT_EQ(g.in_degree(Side::V, V(5)), 2u);
  EXPECT_EQ(g.in_degree(Side::U, U(5)), 2u);
  auto rep = g.validate(nullptr, BalanceMode::Balanced);
  EXPECT_TRUE(rep.ok()) << rep.summary();
}

TEST(LfGraph, TreeConditionTable) {
  PlainGraph g = sample_graph();
  auto u = handles(g, Side::U);
  auto cond = [&](int i) { return g.satisfies_tree_condition(g.partner(Side::U, u[i - 1])); };
  EXPECT_EQ(cond(1), TreeCondition::AdjacentDistinct);
  EXPECT_EQ(cond(2), TreeCondition::None);
  EXPECT_EQ(cond(3), TreeCondition::None);  // b, $, bbb
  EXPECT_EQ(cond(4), TreeCondition::IsSentinel);
  EXPECT_EQ(cond(5), TreeCondition::AdjacentDistinct);
  EXPECT_EQ(cond(6), TreeCondition::None);
  EXPECT_EQ(cond(7), TreeCondition::AdjacentDistinct);  // last node: no successor

  // BWT of "aab": b, $, aa.
  auto h = PlainGraph::from_dbwt(syms("b$aa"), {1, 1, 2});
  auto hu = handles(h, Side::U);
  EXPECT_EQ(h.satisfies_tree_condition(h.partner(Side::U, hu[0])), TreeCondition::DistinctAcrossSentinel);
}

TEST(LfGraph, FaultInjectionIsCaught) {
  PlainGraph g = sample_graph();
  Handle u5 = handles(g, Side::U)[4];
  Edge e = g.out_edge(Side::U, u5);
  g.set_out_edge(Side::U, u5, Edge{e.target, e.offset + 1});
  auto rep = g.validate();
  ASSERT_FALSE(rep.ok());
  EXPECT_NE(rep.summary().find("G3"), std::string::npos) << rep.summary();
}

TEST(LfGraph, WrongExpectedBwtIsCaught) {
  PlainGraph g = sample_graph();
  auto wrong = syms("abbb$bbbaab");
  auto rep = g.validate(&wrong);
  EXPECT_NE(rep.summary().find("G2"), std::string::npos);
}

TEST(LfGraph, FromDbwtRejectsMixedBlocks) {
  EXPECT_THROW(PlainGraph::from_dbwt(syms("ab$"), {2, 1}), CorruptState);
  EXPECT_THROW(PlainGraph::from_dbwt(syms("ab$"), {1, 1}), CorruptState);
}

TEST(LfGraph, HeavyMarks) {
  PlainGraph g = sample_graph();
  Handle u1 = g.first(Side::U);
  EXPECT_FALSE(g.heavy_marked(Side::U, u1));
  g.heavy_mark(Side::U, u1);
  g.heavy_mark(Side::U, u1);
  EXPECT_EQ(g.heavy(Side::U).size(), 1u);
  EXPECT_TRUE(g.heavy_marked(Side::U, u1));
  g.heavy_unmark(Side::U, u1);
  EXPECT_TRUE(g.heavy(Side::U).empty());
}

TEST(LfGraph, IsHeavyAtThreshold) {
  // L = b^m $ a^m with every b alone: the a-run receives m incoming edges.
  for (std::uint64_t m : {15u, 16u}) {
    std::string text;
    for (std::uint64_t i = 0; i < m; ++i) text += "ab";
    auto L = rcomp::testing::oracle_bwt(text);
    std::vector<std::uint64_t> lengths(m + 1, 1);
    lengths.push_back(m);
    PlainGraph g = PlainGraph::from_dbwt(L, lengths);
    Handle ua = g.last(Side::U);
    EXPECT_EQ(g.in_degree(Side::U, ua), m);
    EXPECT_EQ(g.is_heavy(Side::U, ua), m >= 16);
    EXPECT_EQ(g.heavy_marked(Side::U, ua), m >= 16);
  }
}

TEST(LfGraph, RandomDbwtValidates) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    std::vector<Symbol> L;
    auto g = random_dbwt<PlainStore>(rng, L);
    auto rep = g.validate(&L, BalanceMode::Structural);
    ASSERT_TRUE(rep.ok()) << rep.summary();
    EXPECT_EQ(g.bwt(), L);
    EXPECT_EQ(g.to_rlbwt(), run_length_encode(L));
  }
}

TEST(LfGraph, TreePredAgainstLinearScan) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    std::vector<Symbol> L;
    auto g = random_dbwt<PlainStore>(rng, L);
    auto us = handles(g, Side::U);
    for (Handle u : us) {
      for (Symbol c = 1; c <= 6; ++c) {
        TreeKey probe{c, g.order().tag(u)};
        Handle best = g.tree().min_slot();
        for (Handle v : handles(g, Side::V)) {
          if (g.tree_member(v) && v != g.tree().min_slot() && g.key_of(v) < probe &&
              (best == g.tree().min_slot() || g.key_of(best) < g.key_of(v)))
            best = v;
        }
        ASSERT_EQ(g.tree_pred(u, c), best);
      }
    }
  }
}

TEST(LfGraph, IsHeavyMatchesFullCount) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    std::vector<Symbol> L;
    auto g = random_dbwt<PlainStore>(rng, L);
    for (Side s : {Side::U, Side::V}) {
      for (Handle h : handles(g, s)) {
        std::size_t d = 0;
        g.for_each_in_edge(s, h, [&](Handle, std::uint64_t) { ++d; return true; });
        EXPECT_EQ(g.is_heavy(s, h), d >= g.alpha());
      }
    }
  }
}

TEST(LfGraph, GroupedStoreBuildsSameGraph) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    std::mt19937_64 a = rng, b = rng;
    rng.discard(100);
    std::vector<Symbol> La, Lb;
    auto p = random_dbwt<PlainStore>(a, La);
    auto q = random_dbwt<GroupedStore>(b, Lb, GroupedStore(3));
    ASSERT_EQ(La, Lb);
    auto rep = q.validate(&Lb, BalanceMode::Structural);
    ASSERT_TRUE(rep.ok()) << rep.summary();
    for (Side s : {Side::U, Side::V}) EXPECT_EQ(p.labels(s), q.labels(s));
  }
}
