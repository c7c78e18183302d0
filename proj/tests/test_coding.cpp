#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wlab;

namespace
{
  const Alphabet bin = Alphabet::of("01");

  std::vector<BlockDecomposition> parsed(const ParseResult& r)
  {
    auto* d = std::get_if<std::vector<BlockDecomposition>>(&r);
    return d ? *d : std::vector<BlockDecomposition>{};
  }

  std::string failure(const ParseResult& r)
  {
    auto* f = std::get_if<ParseFailure>(&r);
    return f ? f->constraint : "";
  }
}

TEST(Coding, Prefixes)
{
  EXPECT_EQ(h_prefix("111", 3), "A01A001A0001");
  EXPECT_EQ(h_prefix("111", 3).size(), 12u);
  EXPECT_EQ(h_prefix(Word(100, '0'), 100).size(), 5250u);
  EXPECT_EQ(alpha_prefix(3), "A0A00A000");
  EXPECT_EQ(alpha_prefix(4).size(), 14u);
  EXPECT_EQ(alpha_prefix(0), "");
  EXPECT_THROW(h_prefix("1", 2), Error);
  EXPECT_THROW(h_prefix(bin, "2", 1), Error);
}

TEST(Coding, FirstDifferenceOfNeighbours)
{
  Word a = h_prefix("10", 2), b = h_prefix("11", 2);
  std::size_t i = 0;
  while (a[i] == b[i])
    ++i;
  EXPECT_EQ(i + 1, 7u);
}

TEST(Coding, LengthsBySummation)
{
  for (std::size_t n = 0; n <= 100; ++n)
    {
      std::size_t h = 0, a = 0;
      for (std::size_t i = 1; i <= n; ++i)
        {
          h += i + 2;
          a += i + 1;
        }
      EXPECT_EQ(h_length(n), h);
      EXPECT_EQ(alpha_length(n), a);
    }
}

TEST(Coding, PairStream)
{
  PairStream s = encode_pair(Lasso::make("", "1"));
  EXPECT_EQ(s.first_prefix(4), "A01A");
  EXPECT_EQ(s.second_prefix(alpha_length(6)), alpha_prefix(6));
  PairStream t = encode_pair(Lasso::make("01", "0"));
  EXPECT_EQ(t.second_prefix(alpha_length(6)), alpha_prefix(6));
  // the last letter of block n is x(n)
  for (std::size_t n = 1; n < 20; ++n)
    EXPECT_EQ(t.first(h_length(n)), Lasso::make("01", "0").at(n - 1));
  for (std::size_t k = 1; k < 60; ++k)
    EXPECT_EQ(alpha_letter(k), alpha_prefix(10)[k - 1]);
}

TEST(Parse, ShapeGivesIdleCounters)
{
  auto ds = parsed(parse_block_structure(bin, h_prefix("11", 2), alpha_prefix(2), true));
  ASSERT_EQ(ds.size(), 1u);
  const auto& d = ds.front();
  EXPECT_EQ(d[0], (Block{1, 0, 0, 1, '1'}));
  EXPECT_EQ(d[1].u, 2u);
  EXPECT_EQ(d[1].v, 0u);
  EXPECT_EQ(d[1].x, '1');
  EXPECT_EQ(decoded_letters(d), "11");
}

TEST(Parse, MalformedPrefix)
{
  auto r = parse_block_structure(bin, "A00A", "A0A", true);
  EXPECT_EQ(failure(r), "T1_INCOMPLETE_BLOCK");
  EXPECT_EQ(std::get<ParseFailure>(r).block, 2u);
  EXPECT_EQ(failure(parse_block_structure(bin, "0A", "A0", true)), "T1_MARKER");
  EXPECT_EQ(failure(parse_block_structure(bin, "A01", "0A", true)), "T2_MARKER");
  EXPECT_EQ(failure(parse_block_structure(bin, "A001", "A0", true)), "T1_BLOCK_LENGTH");
  EXPECT_EQ(failure(parse_block_structure(bin, "A01", "A00", true)), "T2_BLOCK_LENGTH");
  EXPECT_EQ(failure(parse_block_structure(bin, "A01A001", "A0", true)), "BLOCK_COUNT_MISMATCH");
}

TEST(Parse, SplitsFollowCounterRuns)
{
  // every decomposition links |u_{i+1}| to |z_i| + 1 and starts with v_1 empty
  Word x = "0110";
  Word t1 = h_prefix(x, 4), t2 = alpha_prefix(4);
  auto ds = parsed(parse_block_structure(bin, t1, t2, false));
  ASSERT_FALSE(ds.empty());
  bool idle = false;
  for (auto& d: ds)
    {
      EXPECT_EQ(d[0].v, 0u);
      for (std::size_t i = 0; i + 1 < d.size(); ++i)
        EXPECT_EQ(d[i + 1].u, d[i].z + 1);
      for (std::size_t i = 0; i < d.size(); ++i)
        {
          EXPECT_EQ(d[i].u + d[i].v, i + 1);
          EXPECT_EQ(d[i].w + d[i].z, i + 1);
        }
      EXPECT_EQ(decoded_letters(d), x);
      idle |= std::all_of(d.begin(), d.end(), [](const Block& b) { return b.v == 0 && b.w == 0; });
    }
  EXPECT_TRUE(idle);
}

TEST(Parse, CounterTraceOfPushPop)
{
  // counters 0,1,2,1,0,0 along 0011·0
  auto d = decomposition_for_counters("00110", {0, 1, 2, 1, 0, 0});
  std::vector<std::size_t> v;
  for (auto& b: d)
    v.push_back(b.v);
  EXPECT_EQ(v, (std::vector<std::size_t>{0, 1, 2, 1, 0}));
}

TEST(Pattern, Examples)
{
  LassoPair p{Lasso::make("", "A01"), Lasso::make("", "AA")};
  EXPECT_TRUE(eval_cj_pattern(2, bin, p));
  LassoPair flat{Lasso::make("", "A00"), Lasso::make("", "A0")};
  EXPECT_TRUE(eval_cj_pattern(4, bin, flat));
  EXPECT_THROW(eval_cj_pattern(5, bin, p), Error);
}

TEST(Pattern, CodesOfWordsAvoidEveryPattern)
{
  random::Engine rng(31);
  for (int k = 0; k < 20; ++k)
    {
      Lasso x = random::lasso(rng, bin, 4, 4);
      PairStream s = encode_pair(x);
      for (int j = 1; j <= 4; ++j)
        {
          auto v = eval_cj_pattern(j, bin, s, 50);
          EXPECT_FALSE(v.value) << j << " " << x.str();
          EXPECT_EQ(v.str(), "false@50");
        }
    }
}

TEST(Pattern, StreamsSeeViolationsInTheWindow)
{
  // block 3 of tape 1 is one zero short
  LetterStream bad = [](std::size_t i)
  {
    static const Word w = "A00A000A001";
    return i < w.size() ? w[i] : '0';
  };
  LetterStream alpha = [](std::size_t i) { return alpha_letter(i + 1); };
  PairStream s(bad, alpha);
  bool some = false;
  for (int j = 1; j <= 4; ++j)
    some |= eval_cj_pattern(j, bin, s, 10).value;
  EXPECT_TRUE(some);
}
