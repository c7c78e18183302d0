#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wlab;

namespace
{
  Word stream(const Lasso& l, std::size_t n) { return l.take(n); }
}

TEST(Alphabet, RejectsDuplicatesAndReserved)
{
  EXPECT_THROW(Alphabet::of("00"), Error);
  EXPECT_THROW(Alphabet::of(""), Error);
  // the marker is an ordinary letter of coding alphabets
  EXPECT_NO_THROW(Alphabet::of("0A"));
  EXPECT_THROW(require_base_alphabet(Alphabet::of("0A")), Error);
  EXPECT_NO_THROW(require_base_alphabet(Alphabet::of("01")));
  try
    {
      require_base_alphabet(Alphabet::of("ab"));
      FAIL();
    }
  catch (const Error& e)
    {
      EXPECT_EQ(e.code(), ErrorCode::InvalidAlphabet);
    }
  EXPECT_TRUE(coding_alphabet(Alphabet::of("01")).contains(marker_letter));
}

TEST(Lasso, CanonicalForms)
{
  Lasso a = Lasso::make("", "0101");
  EXPECT_EQ(a.prefix(), "");
  EXPECT_EQ(a.loop(), "01");
  Lasso b = Lasso::make("0", "0");
  EXPECT_EQ(b.prefix(), "");
  EXPECT_EQ(b.loop(), "0");
  Lasso c = Lasso::make("01", "10");
  EXPECT_EQ(stream(c, 2 + 4), "011010");
  EXPECT_THROW(Lasso::make("0", ""), Error);
}

TEST(Lasso, CanonicalisationKeepsTheWord)
{
  random::Engine rng(3);
  for (int i = 0; i < 300; ++i)
    {
      Word u = random::word(rng, Alphabet::of("01"), random::uniform(rng, 0, 5));
      Word v = random::word(rng, Alphabet::of("01"), random::uniform(rng, 1, 6));
      Lasso l = Lasso::make(u, v);
      Word direct = u;
      while (direct.size() < 40)
        direct += v;
      EXPECT_EQ(l.take(40), direct.substr(0, 40)) << u << "(" << v << ")";
      EXPECT_LE(l.prefix().size(), u.size());
      EXPECT_LE(l.loop().size(), v.size());
    }
}

TEST(Lasso, ParsesText)
{
  EXPECT_EQ(parse_lasso("01(10)"), Lasso::make("01", "10"));
  EXPECT_EQ(parse_lasso("1"), Lasso::make("", "1"));
  EXPECT_THROW(parse_lasso("0(1"), Error);
}

TEST(Dpa, ComplementExamples)
{
  DPA c = complement_dpa(fixtures::inf_one());
  EXPECT_FALSE(dpa_lasso_member(c, Lasso::make("", "01")));
  EXPECT_TRUE(dpa_lasso_member(c, Lasso::make("", "0")));
  random::Engine rng(5);
  for (int i = 0; i < 100; ++i)
    {
      DPA d = random::dpa(rng, Alphabet::of("01"), 4);
      Lasso w = random::lasso(rng, Alphabet::of("01"), 4, 4);
      bool in = dpa_lasso_member(d, w);
      EXPECT_EQ(dpa_lasso_member(complement_dpa(d), w), !in);
      EXPECT_EQ(dpa_lasso_member(complement_dpa(complement_dpa(d)), w), in);
    }
}

TEST(Dpa, PrefixRestriction)
{
  DPA d = prefix_restriction(fixtures::inf_one(), "0");
  EXPECT_TRUE(dpa_lasso_member(d, Lasso::make("0", "01")));
  EXPECT_FALSE(dpa_lasso_member(d, Lasso::make("", "10")));
  random::Engine rng(9);
  DPA same = prefix_restriction(fixtures::inf_one(), "");
  for (int i = 0; i < 50; ++i)
    {
      Lasso w = random::lasso(rng, Alphabet::of("01"), 4, 4);
      EXPECT_EQ(dpa_lasso_member(same, w), dpa_lasso_member(fixtures::inf_one(), w));
    }
}

TEST(Dpa, PartitionedUnion)
{
  DPA inf = fixtures::inf_one();
  NBA u = partitioned_union({'0'}, inf, {'1'}, inf);
  EXPECT_TRUE(nba_lasso_member(u, Lasso::make("0", "01")));
  NBA v = partitioned_union({'0'}, fixtures::full(), {'1'}, fixtures::empty());
  EXPECT_FALSE(nba_lasso_member(v, Lasso::make("1", "0")));
  EXPECT_THROW(partitioned_union({'0'}, inf, {'0', '1'}, inf), Error);

  // against the case split
  random::Engine rng(11);
  for (int i = 0; i < 200; ++i)
    {
      DPA d1 = random::dpa(rng, Alphabet::of("01"), 3);
      DPA d2 = random::dpa(rng, Alphabet::of("01"), 3);
      Lasso w = random::lasso(rng, Alphabet::of("01"), 4, 4);
      // the first letter picks the branch, the rest is read by it
      Lasso tail = w.prefix().empty()
        ? Lasso::make("", w.loop().substr(1) + w.loop().substr(0, 1))
        : Lasso::make(w.prefix().substr(1), w.loop());
      bool want = w.at(0) == '0' ? dpa_lasso_member(d1, tail) : dpa_lasso_member(d2, tail);
      EXPECT_EQ(nba_lasso_member(partitioned_union({'0'}, d1, {'1'}, d2), w), want);
      EXPECT_EQ(dpa_lasso_member(partitioned_union_dpa({'0'}, d1, {'1'}, d2), w), want);
    }
}

TEST(Ttba, NormalizeAndUnionKeepLanguage)
{
  // a relation with multi-letter labels
  Alphabet ab = Alphabet::of("ab");
  TTBA t(ab, ab, 1, 0, {{0, "ab", "ab", 0}}, {0});
  EXPECT_FALSE(t.is_normalized());
  TTBA n = normalize_ttba(t);
  EXPECT_TRUE(n.is_normalized());
  EXPECT_TRUE(ttba_lasso_pair_member(n, {Lasso::make("", "ab"), Lasso::make("", "ab")}));
  EXPECT_FALSE(ttba_lasso_pair_member(n, {Lasso::make("", "ab"), Lasso::make("", "ba")}));

  TTBA id = fixtures::identity_relation();
  TTBA swap(ab, ab, 1, 0, {{0, "a", "b", 0}, {0, "b", "a", 0}}, {0});
  TTBA u = union_ttba({id, swap});
  EXPECT_TRUE(u.is_normalized());
  EXPECT_TRUE(ttba_lasso_pair_member(u, {Lasso::make("", "ab"), Lasso::make("", "ab")}));
  EXPECT_TRUE(ttba_lasso_pair_member(u, {Lasso::make("", "ab"), Lasso::make("", "ba")}));
  EXPECT_FALSE(ttba_lasso_pair_member(u, {Lasso::make("", "a"), Lasso::make("", "ab")}));
}

TEST(Ocba, Validation)
{
  Alphabet b = Alphabet::of("01");
  EXPECT_THROW(OCBA(b, 1, 0, {{0, '0', 0, 0, -1}}, {}), Error);
  EXPECT_THROW(OCBA(b, 1, 0, {{0, '2', 0, 0, 0}}, {}), Error);
  EXPECT_THROW(OCBA(b, 1, 0, {{0, '0', 0, 3, 0}}, {}), Error);
  EXPECT_THROW(OCBA(b, 1, 0, {{0, '0', 1, 0, 2}}, {}), Error);
  EXPECT_NO_THROW(OCBA(b, 1, 0, {}, {}));
}

TEST(Wlab, RoundTripsEveryKind)
{
  std::vector<Automaton> all{dpa_to_nba(fixtures::inf_one()), fixtures::clopen(),
                             fixtures::oca_push_pop(), build_r1(fixtures::oca_idle())};
  for (auto& a: all)
    {
      std::string text = print_wlab(a);
      Automaton b = parse_wlab(text);
      EXPECT_EQ(b.index(), a.index());
      EXPECT_EQ(print_wlab(b), text);
    }
}

TEST(Wlab, ReportsLineOfError)
{
  std::string text = "wlab ocba 1\nalphabet: 0 1\nstates: 2\ninitial: 0\nfinal: 1\n0 0 0 1\n";
  try
    {
      parse_wlab(text);
      FAIL();
    }
  catch (const Error& e)
    {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      EXPECT_NE(e.detail().find("line 6"), std::string::npos) << e.detail();
    }
  try
    {
      parse_wlab("wlab pda 1\n");
      FAIL();
    }
  catch (const Error& e)
    {
      EXPECT_EQ(e.code(), ErrorCode::UnsupportedKind);
    }
  EXPECT_THROW(parse_wlab_as<DPA>(print_wlab(fixtures::oca_idle())), Error);
}

TEST(Wlab, CommentsAndEmptyLabels)
{
  std::string text = "# relation\nwlab ttba 1\nalphabet: a\noutput-alphabet: a\nstates: 1\n"
                     "initial: 0\nfinal: 0\n0 a _ 0   # read only\n0 _ a 0\n";
  TTBA t = parse_wlab_as<TTBA>(text);
  EXPECT_EQ(t.transitions().size(), 2u);
  EXPECT_TRUE(ttba_lasso_pair_member(t, {Lasso::make("", "a"), Lasso::make("", "a")}));
}
