#include <algorithm>
#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wlab;

namespace
{
  const Alphabet bin = Alphabet::of("01");

  /// Follows `s` for player `p` from the initial node against random
  /// opponent moves; true while it never leaves p's region.
  bool stays_in_region(const WadgeResult& r, const Strategy& s, Player p, random::Engine& rng,
                       int steps)
  {
    const auto& g = r.arena.game;
    int v = g.initial;
    for (int i = 0; i < steps; ++i)
      {
        if (!r.solution.wins(p, v))
          return false;
        const auto& succ = g.successors(v);
        v = g.owner(v) == p ? s[static_cast<std::size_t>(v)]
                            : succ[random::uniform(rng, 0, succ.size() - 1)];
      }
    return r.solution.wins(p, v);
  }
}

TEST(Wadge, Examples)
{
  EXPECT_TRUE(wadge_leq(fixtures::empty(), fixtures::zero_omega()));
  EXPECT_FALSE(wadge_leq(fixtures::full(), fixtures::empty()));
  EXPECT_FALSE(wadge_leq(fixtures::open_one(), fixtures::zero_omega()));
  EXPECT_TRUE(wadge_leq(fixtures::zero_omega(), fixtures::inf_one()));
  EXPECT_TRUE(wadge_equiv(fixtures::inf_one(), fixtures::sum_empty_inf_one()));
  for (auto& [name, d]: fixtures::lattice())
    EXPECT_TRUE(wadge_leq(d, d)) << name;
}

TEST(Wadge, InfiniteOnesIsAboveOpenAndClosed)
{
  EXPECT_TRUE(wadge_leq(fixtures::open_one(), fixtures::inf_one()));
  EXPECT_FALSE(wadge_leq(fixtures::inf_one(), fixtures::open_one()));
  EXPECT_FALSE(wadge_leq(fixtures::inf_one(), fixtures::fin_one()));
  EXPECT_FALSE(wadge_leq(fixtures::fin_one(), fixtures::inf_one()));
}

TEST(Wadge, SelfDuality)
{
  EXPECT_FALSE(is_self_dual(fixtures::zero_omega()));
  EXPECT_TRUE(is_self_dual(fixtures::clopen()));
  EXPECT_FALSE(is_self_dual(fixtures::inf_one()));
}

TEST(Wadge, SelfDualDecomposition)
{
  auto w = self_dual_decompose(fixtures::clopen());
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->u1, "");
  EXPECT_EQ(w->u2, "");
  EXPECT_EQ(w->sigma1.size() + w->sigma2.size(), 2u);
  try
    {
      self_dual_decompose(fixtures::zero_omega());
      FAIL();
    }
  catch (const Error& e)
    {
      EXPECT_EQ(e.code(), ErrorCode::NotSelfDual);
    }
}

TEST(Wadge, SelfDualDecompositionCanRunOutOfBound)
{
  // 00·Σ^ω is clopen, hence self-dual; a too small bound is not an error
  DPA d = fixtures::dpa_from(bin, {{1, 2}, {3, 4}, {4, 4}, {3, 3}, {4, 4}}, {1, 1, 1, 0, 1});
  ASSERT_TRUE(is_self_dual(d));
  EXPECT_NO_THROW(self_dual_decompose(d, 0));
  EXPECT_TRUE(self_dual_decompose(d, 3).has_value());
}

// Nodes reachable from the start when P2 follows s and P1 plays anything.
static std::vector<int> reachable_under(const ParityGame& g, const Strategy& s)
{
  std::vector<bool> seen(g.size(), false);
  std::vector<int> todo{g.initial}, out;
  seen[static_cast<std::size_t>(g.initial)] = true;
  while (!todo.empty())
    {
      int v = todo.back();
      todo.pop_back();
      out.push_back(v);
      std::vector<int> next = g.owner(v) == Player::P2
        ? std::vector<int>{s[static_cast<std::size_t>(v)]}
        : g.successors(v);
      for (int w: next)
        if (w >= 0 && !seen[static_cast<std::size_t>(w)])
          {
            seen[static_cast<std::size_t>(w)] = true;
            todo.push_back(w);
          }
    }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Wadge, CopyStrategyWinsAgainstItself)
{
  for (auto& [name, d]: fixtures::lattice())
    {
      WadgeResult r = wadge_game(d, d);
      Strategy c = copy_strategy(r.arena);
      EXPECT_EQ(certify_strategy(r.arena.game, Player::P2, reachable_under(r.arena.game, c), c), "")
        << name;
      int v = replay(r.arena, {Move::of('0')});
      EXPECT_EQ(strategy_move(r.arena, c, v), Move::of('0'));
    }
}

TEST(Wadge, CopyIntoASum)
{
  DPA l = fixtures::inf_one(), s = fixtures::sum_empty_inf_one();
  WadgeResult r = wadge_game(l, s);
  ASSERT_TRUE(r.leq);
  Strategy c = copy_strategy(r.arena);
  EXPECT_EQ(certify_strategy(r.arena.game, Player::P2, reachable_under(r.arena.game, c), c), "");
  // the solver's own reply stays inside X while P1 plays inside X
  std::vector<Move> h;
  for (Letter a: Word("0110"))
    {
      Move m = strategy_step(r.arena, r.solution.strategy, h, Move::of(a));
      h.push_back(Move::of(a));
      h.push_back(m);
      EXPECT_TRUE(m.skip || m.letter == '0' || m.letter == '1');
    }
}

TEST(Wadge, IllegalMove)
{
  WadgeResult r = wadge_game(fixtures::inf_one(), fixtures::inf_one());
  EXPECT_THROW(strategy_step(r.arena, r.solution.strategy, {}, Move::of('p')), Error);
  EXPECT_THROW(replay(r.arena, {Move::skip_move()}), Error);
}

TEST(Wadge, EngineStaysInItsRegion)
{
  random::Engine rng(71);
  for (auto [a, b]: {std::pair{fixtures::zero_omega(), fixtures::open_one()},
                     std::pair{fixtures::inf_one(), fixtures::sum_empty_inf_one()}})
    {
      WadgeResult r = wadge_game(a, b);
      for (int k = 0; k < 50; ++k)
        EXPECT_TRUE(stays_in_region(r, r.solution.strategy, r.winner(), rng, 80));
    }
}

TEST(Wadge, AgreesWithComplementDuality)
{
  random::Engine rng(73);
  for (int i = 0; i < 30; ++i)
    {
      DPA a = random::dpa(rng, bin, 3), b = random::dpa(rng, bin, 3);
      EXPECT_EQ(wadge_leq(a, b), wadge_leq(complement_dpa(a), complement_dpa(b)));
    }
}
