#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wlab;

TEST(NbaMember, InfinitelyManyOnes)
{
  NBA a = dpa_to_nba(fixtures::inf_one());
  EXPECT_TRUE(nba_lasso_member(a, Lasso::make("", "01")));
  EXPECT_FALSE(nba_lasso_member(a, Lasso::make("", "0")));
}

TEST(NbaMember, AgreesWithDpaAndBruteForce)
{
  random::Engine rng(21);
  const Alphabet b = Alphabet::of("01");
  for (int i = 0; i < 300; ++i)
    {
      DPA d = random::dpa(rng, b, 4);
      Lasso w = random::lasso(rng, b, 4, 4);
      NBA n = dpa_to_nba(d);
      bool want = dpa_lasso_member(d, w);
      EXPECT_EQ(nba_lasso_member(n, w), want) << w.str();
      EXPECT_EQ(testing_oracle::nba_member(n, w), want) << w.str();
      EXPECT_EQ(oracle::dpa_member(d, w), want) << w.str();
    }
}

TEST(DpaMember, Examples)
{
  EXPECT_TRUE(dpa_lasso_member(fixtures::inf_one(), Lasso::make("", "0001")));
  EXPECT_FALSE(dpa_lasso_member(fixtures::inf_one(), Lasso::make("01", "0")));
  EXPECT_THROW(dpa_lasso_member(fixtures::inf_one(), Lasso::make("", "2")), Error);
}

TEST(OcbaMember, Fixtures)
{
  OCBA idle = fixtures::oca_idle(), pp = fixtures::oca_push_pop();
  EXPECT_TRUE(ocba_lasso_member(idle, Lasso::make("", "01")));
  EXPECT_FALSE(ocba_lasso_member(idle, Lasso::make("1", "0")));
  EXPECT_TRUE(ocba_lasso_member(pp, Lasso::make("0011", "0")));
  EXPECT_FALSE(ocba_lasso_member(pp, Lasso::make("001", "0")));
  EXPECT_TRUE(oracle::capped_lasso_acceptance(pp, Lasso::make("0011", "0"), 10));
  EXPECT_FALSE(oracle::capped_lasso_acceptance(pp, Lasso::make("001", "0"), 10));
}

TEST(OcbaMember, CounterGrowthIsNotAcceptance)
{
  // 0^ω pushes forever and never reaches the final state
  OCBA pp = fixtures::oca_push_pop();
  EXPECT_FALSE(ocba_lasso_member(pp, Lasso::make("", "0")));
  auto r = bounded_acceptance_search(pp, Lasso::make("", "0"), {100, 25});
  EXPECT_NE(r.verdict, Verdict3::Accepted);
}

TEST(OcbaMember, UnboundedCounterWithFinalRecurrence)
{
  // accepts (01)^ω while the counter climbs by one per period
  Alphabet b = Alphabet::of("01");
  OCBA m(b, 2, 0, {{0, '0', 0, 1, 1}, {0, '0', 1, 1, 1}, {1, '1', 1, 0, 0}}, {1});
  EXPECT_TRUE(ocba_lasso_member(m, Lasso::make("", "01")));
  EXPECT_FALSE(ocba_emptiness(m));
}

TEST(OcbaMember, AgreesWithCappedSearchOnRandomAutomata)
{
  random::Engine rng(23);
  const Alphabet b = Alphabet::of("01");
  for (int i = 0; i < 200; ++i)
    {
      OCBA m = random::ocba(rng, b, 3);
      Lasso w = random::lasso(rng, b, 3, 3);
      bool capped = oracle::capped_lasso_acceptance(m, w, 20);
      bool exact = ocba_lasso_member(m, w);
      // a capped witness is a real one; the converse fails when every
      // accepting run lets the counter grow without bound
      if (capped)
        {
        EXPECT_TRUE(exact) << w.str();
        }
    }
}

TEST(OcbaEmptiness, Fixtures)
{
  for (auto& [name, m]: fixtures::empty_ocbas())
    EXPECT_TRUE(ocba_emptiness(m)) << name;
  EXPECT_FALSE(ocba_emptiness(fixtures::oca_idle()));
  EXPECT_FALSE(ocba_emptiness(fixtures::oca_push_pop()));
  Alphabet b = Alphabet::of("01");
  EXPECT_FALSE(ocba_emptiness(OCBA(b, 1, 0, {{0, '1', 0, 0, 0}}, {0})));
}

TEST(BoundedSearch, Verdicts)
{
  auto r = bounded_acceptance_search(fixtures::oca_idle(), Lasso::make("", "01"), {50, 25});
  EXPECT_EQ(r.verdict, Verdict3::Accepted);
  Alphabet b = Alphabet::of("01");
  OCBA no_ones(b, 1, 0, {{0, '0', 0, 0, 0}}, {0});
  auto s = bounded_acceptance_search(no_ones, Lasso::make("", "1"), {1, 25});
  EXPECT_EQ(s.verdict, Verdict3::Rejected);
}

TEST(BoundedSearch, StreamInput)
{
  // no folding on a raw stream, so an accepting input stays open
  LetterStream x = [](std::size_t i) { return i < 3 ? '0' : '1'; };
  auto r = bounded_acceptance_search(fixtures::oca_push_pop(), x, {60, 10});
  EXPECT_EQ(r.verdict, Verdict3::Unknown);
  // a leading 1 needs a nonzero counter: every run dies at once
  LetterStream ones = [](std::size_t) { return '1'; };
  EXPECT_EQ(bounded_acceptance_search(fixtures::oca_push_pop(), ones, {60, 10}).verdict,
            Verdict3::Rejected);
}
TEST(OcbaMember, UnboundedCounterWitness)
{
  // final state 2 only sits on cycles that raise the counter
  Alphabet b = Alphabet::of("0");
  OCBA m(b, 3, 0,
         {{0, '0', 0, 0, 1}, {0, '0', 1, 1, 1}, {1, '0', 1, 2, 1}, {1, '0', 1, 0, -1},
          {2, '0', 1, 0, -1}},
         {2});
  EXPECT_TRUE(ocba_lasso_member(m, Lasso::make("", "0")));
  EXPECT_FALSE(oracle::capped_lasso_acceptance(m, Lasso::make("", "0"), 60));
}

TEST(TtbaMember, IdentityRelation)
{
  TTBA id = fixtures::identity_relation();
  EXPECT_TRUE(ttba_lasso_pair_member(id, {Lasso::make("", "ab"), Lasso::make("", "ab")}));
  EXPECT_FALSE(ttba_lasso_pair_member(id, {Lasso::make("", "ab"), Lasso::make("", "ba")}));
}

TEST(TtbaMember, BothTapesMustBeRead)
{
  Alphabet a = Alphabet::of("a");
  TTBA only_first(a, a, 1, 0, {{0, "a", "", 0}}, {0});
  EXPECT_FALSE(ttba_lasso_pair_member(only_first, {Lasso::make("", "a"), Lasso::make("", "a")}));
}

TEST(TtbaMember, AgreesWithBruteForce)
{
  random::Engine rng(29);
  const Alphabet b = Alphabet::of("01");
  int accepted = 0;
  for (int i = 0; i < 400; ++i)
    {
      TTBA t = random::ttba(rng, b, 4, 10);
      LassoPair p{random::lasso(rng, b, 3, 3), random::lasso(rng, b, 3, 3)};
      bool want = testing_oracle::ttba_member(t, p);
      accepted += want;
      EXPECT_EQ(ttba_lasso_pair_member(t, p), want) << p.str();
      auto r = bounded_acceptance_search(t, p, {200, 25});
      if (r.verdict == Verdict3::Accepted)
        {
        EXPECT_TRUE(want);
        }
      if (r.verdict == Verdict3::Rejected)
        {
        EXPECT_FALSE(want);
        }
    }
  EXPECT_GT(accepted, 20);
}
