#include <gtest/gtest.h>

#include <random>

#include "rcomp/balancer.hpp"
#include "rcomp/update_engine.hpp"
#include "test_support.hpp"

using namespace rcomp;
using rcomp::testing::handles;
using rcomp::testing::sym;
using rcomp::testing::syms;

namespace {

PlainGraph sample_graph() { return PlainGraph::from_dbwt(syms("abbb$bbbaaa"), {1, 2, 1, 1, 3, 2, 1}); }

// Prepends text right to left, checking each step against the oracle chain.
template <class Store>
void run_chain(const Bytes& text, Store store, std::size_t& fast_steps) {
  LfIntervalGraph<Store> g(kDefaultAlpha, std::move(store));
  std::vector<Symbol> L{kSentinel};
  UpdateOutcome prev;
  for (std::size_t i = text.size(); i-- > 0;) {
    Symbol c = static_cast<Symbol>(text[i]) + 1;
    L = oracle::extend_bwt_naive(L, c).bwt;
    prev = dispatch(g, c, prev);
    fast_steps += prev.used_fast;
    auto rep = g.validate(&L, BalanceMode::PreBalance);
    ASSERT_TRUE(rep.ok()) << "after update at " << i << ": " << rep.summary();
    balance(g);
    rep = g.validate(&L, BalanceMode::Balanced);
    ASSERT_TRUE(rep.ok()) << "after balance at " << i << ": " << rep.summary();
  }
}

}  // namespace

TEST(UpdateEngine, FirstStepFromSentinel) {
  PlainGraph g;
  UpdateOutcome out = dispatch(g, sym('a'), UpdateOutcome{});
  EXPECT_FALSE(out.used_fast);
  EXPECT_EQ(render_symbols(g.bwt()), "a$");
  EXPECT_EQ(g.delta(), 2u);
  auto L = syms("a$");
  EXPECT_TRUE(g.validate(&L, BalanceMode::PreBalance).ok());
}

TEST(UpdateEngine, WorkedSlowUpdate) {
  PlainGraph g = sample_graph();
  auto u = handles(g, Side::U);
  auto V = [&](int i) { return g.partner(Side::U, u[i - 1]); };
  const Handle v1 = V(1), v3 = V(3), v5 = V(5), v6 = V(6), v7 = V(7);

  UpdateOutcome out = slow_update(g, sym('a'));
  auto L12 = syms("ab$bbabbbaaa");
  auto rep = g.validate(&L12, BalanceMode::PreBalance);
  ASSERT_TRUE(rep.ok()) << rep.summary();
  EXPECT_TRUE(out.did_split);

  const Handle u8 = out.u_new, u9 = out.u_left, u10 = out.u_right, u11 = out.u_sentinel;
  EXPECT_EQ(handles(g, Side::U), (std::vector<Handle>{u[0], u9, u11, u10, u[2], u8, u[4], u[5], u[6]}));
  EXPECT_EQ(g.label(Side::U, u8), (Label{sym('a'), 1}));
  EXPECT_EQ(g.label(Side::U, u9), (Label{sym('b'), 1}));
  EXPECT_EQ(g.label(Side::U, u10), (Label{sym('b'), 1}));
  EXPECT_EQ(g.sentinel_u(), u11);

  const Handle v8 = g.partner(Side::U, u8), v9 = g.partner(Side::U, u9), v10 = g.partner(Side::U, u10);
  const Handle v11 = g.partner(Side::U, u11);
  auto out_u = [&](Handle h) { return g.out_edge(Side::U, h).target; };
  auto out_v = [&](Handle h) { return g.out_edge(Side::V, h).target; };
  EXPECT_EQ(out_u(u[0]), v11);
  EXPECT_EQ(out_u(u9), v1);
  EXPECT_EQ(out_u(u11), v8);
  EXPECT_EQ(out_u(u10), v6);
  EXPECT_EQ(out_u(u8), v7);
  EXPECT_EQ(out_u(u[4]), v9);
  EXPECT_EQ(out_v(v11), u[0]);
  EXPECT_EQ(out_v(v1), u9);
  EXPECT_EQ(out_v(v8), u11);
  EXPECT_EQ(out_v(v6), u10);
  EXPECT_EQ(out_v(v7), u8);
  EXPECT_EQ(out_v(v9), u[4]);
  EXPECT_EQ(out_v(v10), u[4]);
  EXPECT_EQ(handles(g, Side::V), (std::vector<Handle>{v11, v1, v8, v6, v7, v9, v10, v3, v5}));

  EXPECT_EQ(g.tree_pred(u11, sym('a')), v1);
}

TEST(UpdateEngine, DispatchRejectsSentinel) {
  PlainGraph g;
  EXPECT_THROW(dispatch(g, kSentinel, UpdateOutcome{}), SentinelInput);
}

TEST(UpdateEngine, RepeatedCharacterUsesFastPath) {
  std::size_t fast = 0;
  run_chain(rcomp::testing::repeat("a", 200), PlainStore(), fast);
  EXPECT_GT(fast, 150u);
}

TEST(UpdateEngine, WorkedTextChain) {
  std::size_t fast = 0;
  run_chain(to_bytes("aabbabbabba"), PlainStore(), fast);
}

TEST(UpdateEngine, RandomChainsPlain) {
  std::mt19937_64 rng(101);
  std::size_t fast = 0;
  for (int t = 0; t < 60; ++t) {
    unsigned sigma = std::vector<unsigned>{1, 2, 4, 16, 256}[t % 5];
    run_chain(rcomp::testing::random_bytes(rng, rng() % 200, sigma), PlainStore(), fast);
    if (HasFatalFailure()) return;
  }
  EXPECT_GT(fast, 0u);
}

TEST(UpdateEngine, RandomChainsGrouped) {
  std::mt19937_64 rng(103);
  std::size_t fast = 0;
  for (int t = 0; t < 30; ++t) {
    GroupedStore store(4);
    store.set_verify_batches(true);
    run_chain(rcomp::testing::random_bytes(rng, rng() % 150, 1 + rng() % 4), std::move(store), fast);
    if (HasFatalFailure()) return;
  }
}
