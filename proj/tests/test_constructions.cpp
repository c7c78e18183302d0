#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wlab;

namespace
{
  const Alphabet bin = Alphabet::of("01");

  std::vector<OcbaTransition> as_transitions(const OCBA& m, const std::vector<int>& run)
  {
    std::vector<OcbaTransition> out;
    for (int i: run)
      out.push_back(m.transitions()[static_cast<std::size_t>(i)]);
    return out;
  }

  /// Projected block-boundary computations of R1 against the runs of m.
  void expect_bijection(const OCBA& m, const Word& x)
  {
    const std::size_t n = x.size();
    AnnotatedR1 r1 = build_r1_annotated(m);
    auto runs = oracle::enumerate_runs(m, x);
    auto comps = enumerate_computations(r1.ttba, h_prefix(x, n), alpha_prefix(n + 1));
    std::multiset<std::vector<int>> got;
    for (auto& c: comps)
      if (at_block_boundary(r1, c))
        got.insert(committed_transitions(r1, c));
    std::multiset<std::vector<int>> want(runs.begin(), runs.end());
    EXPECT_EQ(got, want) << "x=" << x;
    for (auto& run: runs)
      {
        auto c = induced_computation(m, r1, as_transitions(m, run));
        EXPECT_EQ(committed_transitions(r1, c), run);
        EXPECT_TRUE(at_block_boundary(r1, c));
        std::size_t finals = 0;
        auto trace = oracle::trace_run(m, run);
        for (std::size_t i = 1; i < trace.states.size(); ++i)
          finals += m.is_final(trace.states[i]);
        EXPECT_EQ(c.final_visits.size(), finals);
      }
  }
}

TEST(R1, SizeAndShape)
{
  for (auto& [name, m]: fixtures::ocbas())
    {
      TTBA t = build_r1(m);
      EXPECT_TRUE(t.is_normalized()) << name;
      EXPECT_LE(static_cast<std::size_t>(t.num_states()), r1_state_bound(m)) << name;
      EXPECT_EQ(print_wlab(t), print_wlab(build_r1(m))) << "numbering must be deterministic";
    }
  EXPECT_EQ(build_r1(fixtures::oca_idle()).num_states(), 10);
}

TEST(R1, LassoPairsOfIdleCounter)
{
  TTBA t = build_r1(fixtures::oca_idle());
  EXPECT_TRUE(ttba_lasso_pair_member(t, {Lasso::make("", "A01"), Lasso::make("", "A")}));
  EXPECT_FALSE(ttba_lasso_pair_member(t, {Lasso::make("", "A00"), Lasso::make("", "A")}));
}

TEST(R1, ComputationsOnThreeBlocks)
{
  OCBA m = fixtures::oca_idle();
  AnnotatedR1 r1 = build_r1_annotated(m);
  auto comps = enumerate_computations(r1.ttba, h_prefix("111", 3), alpha_prefix(4));
  auto runs = oracle::enumerate_runs(m, "111");
  std::set<std::vector<int>> got;
  for (auto& c: comps)
    if (at_block_boundary(r1, c))
      got.insert(committed_transitions(r1, c));
  EXPECT_EQ(got, std::set<std::vector<int>>(runs.begin(), runs.end()));
}

TEST(R1, InducedComputation)
{
  OCBA m = fixtures::oca_idle();
  AnnotatedR1 r1 = build_r1_annotated(m);
  auto runs = oracle::enumerate_runs(m, "11111");
  ASSERT_EQ(runs.size(), 1u);
  auto c = induced_computation(m, r1, as_transitions(m, runs[0]));
  EXPECT_EQ(c.final_visits.size(), 5u);
  EXPECT_EQ(c.steps.back().pos1, h_length(5));

  OCBA pp = fixtures::oca_push_pop();
  auto pr = oracle::enumerate_runs(pp, "00110");
  ASSERT_EQ(pr.size(), 1u);
  EXPECT_EQ(check_ocba_run(pp, as_transitions(pp, pr[0])),
            (std::vector<long>{0, 1, 2, 1, 0, 0}));
}

TEST(R1, IllegalRun)
{
  OCBA pp = fixtures::oca_push_pop();
  // popping at zero is not enabled
  std::vector<OcbaTransition> bad{{0, '1', 1, 1, -1}};
  EXPECT_THROW(check_ocba_run(pp, bad), Error);
  try
    {
      induced_computation(pp, build_r1_annotated(pp), bad);
    }
  catch (const Error& e)
    {
      EXPECT_EQ(e.code(), ErrorCode::IllegalRun);
    }
}

TEST(R1, BijectionOnNondeterministicAutomata)
{
  random::Engine rng(41);
  int branching = 0;
  for (int i = 0; i < 40; ++i)
    {
      OCBA m = random::ocba(rng, bin, 3);
      Word x = random::word(rng, bin, random::uniform(rng, 1, 7));
      branching += oracle::enumerate_runs(m, x).size() > 1;
      expect_bijection(m, x);
    }
  EXPECT_GT(branching, 5);
}

TEST(Enumerate, IdentityRelation)
{
  TTBA id = fixtures::identity_relation();
  EXPECT_EQ(enumerate_computations(id, "ab", "ab").size(), 1u);
  EXPECT_TRUE(enumerate_computations(id, "a", "b").empty());
}

TEST(Enumerate, NodeBudget)
{
  Alphabet a = Alphabet::of("a");
  TTBA loop(a, a, 1, 0, {{0, "", "a", 0}, {0, "a", "", 0}}, {0});
  EXPECT_THROW(enumerate_computations(loop, Word(30, 'a'), Word(30, 'a'), {4096, 1000}), Error);
}

TEST(R2, SizeAndExamples)
{
  TTBA r2 = build_r2(bin);
  EXPECT_TRUE(r2.is_normalized());
  EXPECT_EQ(r2.num_states(), 47);
  LassoPair p{Lasso::make("", "A01"), Lasso::make("", "AA")};
  EXPECT_TRUE(ttba_lasso_pair_member(build_cj(2, bin), p));
  EXPECT_TRUE(ttba_lasso_pair_member(r2, p));
}

TEST(R2, PatternAgreement)
{
  random::Engine rng(43);
  for (int j = 1; j <= 4; ++j)
    {
      TTBA c = build_cj(j, bin);
      int yes = 0;
      for (int k = 0; k < 100; ++k)
        {
          LassoPair p = random::mixed_pair(rng, bin);
          bool want = eval_cj_pattern(j, bin, p);
          yes += want;
          EXPECT_EQ(ttba_lasso_pair_member(c, p), want) << j << " " << p.str();
          EXPECT_EQ(testing_oracle::ttba_member(c, p), want) << j << " " << p.str();
        }
      EXPECT_GT(yes, 10);
      EXPECT_LT(yes, 100);
    }
}

TEST(R2, LargerAlphabet)
{
  Alphabet s = Alphabet::of("012");
  TTBA r2 = build_r2(s);
  random::Engine rng(47);
  for (int k = 0; k < 50; ++k)
    EXPECT_TRUE(ttba_lasso_pair_member(r2, random::mixed_pair(rng, s)));
}

TEST(Reduction, AcceptsEveryLassoPair)
{
  Alphabet b = bin;
  OCBA none(b, 1, 0, {{0, '0', 0, 0, 0}}, {});
  TTBA t = build_reduction(none);
  random::Engine rng(53);
  for (int k = 0; k < 50; ++k)
    EXPECT_TRUE(ttba_lasso_pair_member(t, random::mixed_pair(rng, b)));
}

TEST(R1, CodesOfAcceptedWordsAreAccepted)
{
  // R1 accepts (h(x), α) for x = 1^ω: 30 blocks reach F 30 times
  OCBA m = fixtures::oca_idle();
  TTBA t = build_r1(m);
  Word x(30, '1');
  auto comps = enumerate_computations(t, h_prefix(x, 30), alpha_prefix(31));
  std::size_t best = 0;
  for (auto& c: comps)
    best = std::max(best, c.final_visits.size());
  EXPECT_GE(best, 30u);
}

TEST(Sum, Examples)
{
  DPA s = fixtures::sum_empty_inf_one();
  EXPECT_TRUE(dpa_lasso_member(s, Lasso::make("", "1")));
  EXPECT_TRUE(dpa_lasso_member(s, Lasso::make("0m", "0")));
  EXPECT_FALSE(dpa_lasso_member(s, Lasso::make("0p", "0")));
}

TEST(Sum, Errors)
{
  DPA y = fixtures::empty(fixtures::sum_alphabet());
  auto code = [](auto f)
  {
    try
      {
        f();
      }
    catch (const Error& e)
      {
        return e.code();
      }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([&] { sum_dpa(y, fixtures::inf_one(), {'p', 'm'}, {}); }),
            ErrorCode::PartitionError);
  EXPECT_EQ(code([&] { sum_dpa(y, fixtures::inf_one(), {'p'}, {'0'}); }),
            ErrorCode::PartitionError);
  EXPECT_EQ(code([&] { sum_dpa(fixtures::inf_one(), y, {'p'}, {'m'}); }),
            ErrorCode::AlphabetMismatch);
}

TEST(Sum, MatchesDefinition)
{
  random::Engine rng(59);
  const Alphabet y = fixtures::sum_alphabet();
  for (int k = 0; k < 300; ++k)
    {
      DPA d = random::dpa(rng, bin, 3), dp = random::dpa(rng, y, 3);
      DPA s = sum_dpa(dp, d, {'p'}, {'m'});
      Lasso w = random::lasso(rng, y, 4, 4);
      // split at the first letter outside {0,1}
      std::size_t i = 0;
      while (i < w.residues() && bin.contains(w.at(i)))
        ++i;
      bool want;
      if (i == w.residues())
        want = dpa_lasso_member(d, w);
      else
        {
          // the tail is periodic from the loop on
          std::size_t start = std::max(i + 1, w.prefix().size());
          Word pre = w.take(start).substr(i + 1);
          Word loop = w.take(start + w.loop().size()).substr(start);
          bool in = dpa_lasso_member(dp, Lasso::make(pre, loop));
          want = w.at(i) == 'p' ? in : !in;
        }
      EXPECT_EQ(dpa_lasso_member(s, w), want) << w.str();
    }
}
