#pragma once

// The verification suites behind `wlab verify` and the acceptance binary.
// Each suite is seeded, counts cases and records a reproduction hint for
// every failing case.

#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coding.hpp"
#include "constructions.hpp"
#include "fixtures.hpp"
#include "membership.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "wadge.hpp"

namespace wlab
{
  struct SuiteOptions
  {
    std::uint64_t seed = 1;
    std::size_t depth = 0;  // 0: the suite's own default
    long cap = 25;
  };

  struct SuiteFailure
  {
    std::size_t case_index;
    std::string detail;
    std::string repro;
  };

  struct SuiteReport
  {
    std::string id;
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::vector<SuiteFailure> failures;
    double seconds = 0;
    std::string note;  // extra breakdown some suites report

    bool ok() const { return failures.empty() && passed == cases; }
  };

  namespace detail
  {
    class SuiteRun
    {
    public:
      SuiteRun(std::string id, const SuiteOptions& o) : opt(o)
      {
        report.id = std::move(id);
        report.seed = o.seed;
      }

      /// Records one case; `what` names the input for the repro line.
      void check(bool ok, const std::string& what, const std::string& detail = {})
      {
        std::size_t i = report.cases++;
        if (ok)
          {
            ++report.passed;
            return;
          }
        if (report.failures.size() < 50)
          report.failures.push_back(
            {i, what + (detail.empty() ? "" : ": " + detail),
             "wlab verify " + report.id + " --seed " + std::to_string(opt.seed)
               + "  # case " + std::to_string(i)});
      }

      /// Runs `body`, turning an escaping library error into a failed case.
      void guarded(const std::string& what, const std::function<void()>& body)
      {
        try
          {
            body();
          }
        catch (const Error& e)
          {
            check(false, what, std::string("unexpected ") + e.what());
          }
      }

      SuiteOptions opt;
      SuiteReport report;
    };

    inline std::vector<Lasso> all_small_lassos(const Alphabet& sigma, std::size_t max_u,
                                               std::size_t max_v)
    {
      std::vector<Word> words{""};
      for (std::size_t len = 1; len <= std::max(max_u, max_v); ++len)
        {
          std::vector<Word> next;
          for (auto& w: words)
            if (w.size() == len - 1)
              for (Letter c: sigma.letters())
                next.push_back(w + c);
          words.insert(words.end(), next.begin(), next.end());
        }
      std::set<Lasso> out;
      for (auto& u: words)
        for (auto& v: words)
          if (u.size() <= max_u && !v.empty() && v.size() <= max_v)
            out.insert(Lasso::make(u, v));
      return {out.begin(), out.end()};
    }

    inline std::string join(const std::vector<int>& v)
    {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
      return s + "]";
    }

    // --------------------------------------------------------------

    inline void suite_coding_roundtrip(SuiteRun& r)
    {
      random::Engine rng(r.opt.seed);
      const Alphabet sigma = fixtures::binary();
      for (int k = 0; k < 500; ++k)
        {
          std::size_t n = random::uniform(rng, 1, 30);
          Word x = random::word(rng, sigma, n);
          r.guarded("x=" + x, [&]
          {
            PairStream s = encode_pair([x](std::size_t i) { return i < x.size() ? x[i] : '0'; });
            auto res = parse_block_structure(sigma, s.first_prefix(h_length(n)),
                                             s.second_prefix(alpha_length(n)), true);
            auto* ds = std::get_if<std::vector<BlockDecomposition>>(&res);
            if (!ds || ds->size() != 1)
              {
                r.check(false, "x=" + x, "shape parse did not give one decomposition");
                return;
              }
            r.check(decoded_letters(ds->front()) == x, "x=" + x,
                    "decoded " + decoded_letters(ds->front()));
          });
        }
      // h is injective on words of length <= 12
      std::set<Word> images;
      std::size_t words = 0;
      std::vector<Word> layer{""};
      for (std::size_t len = 1; len <= 12; ++len)
        {
          std::vector<Word> next;
          for (auto& w: layer)
            for (Letter c: sigma.letters())
              {
                next.push_back(w + c);
                images.insert(h_prefix(next.back(), len));
                ++words;
              }
          layer = std::move(next);
        }
      r.check(images.size() == words, "h-injectivity",
              std::to_string(words - images.size()) + " collisions");
    }

    inline void suite_block_arithmetic(SuiteRun& r)
    {
      random::Engine rng(r.opt.seed);
      for (std::size_t n = 0; n <= 100; ++n)
        {
          Word x = random::word(rng, fixtures::binary(), n);
          std::size_t h = (n * n + 5 * n) / 2, a = n * (n + 3) / 2;
          std::string what = "n=" + std::to_string(n);
          r.check(h_length(n) == h && oracle::h_block_sum(n) == h && h_prefix(x, n).size() == h,
                  what, "h length " + std::to_string(h_prefix(x, n).size()));
          r.check(alpha_length(n) == a && oracle::alpha_block_sum(n) == a
                    && alpha_prefix(n).size() == a,
                  what, "alpha length " + std::to_string(alpha_prefix(n).size()));
        }
    }

    inline void suite_r1_bijection(SuiteRun& r)
    {
      const std::size_t n = r.opt.depth ? r.opt.depth : 30;
      const auto lassos = all_small_lassos(fixtures::binary(), 4, 4);
      for (auto& [name, m]: fixtures::ocbas())
        {
          const AnnotatedR1 r1 = build_r1_annotated(m);
          for (const Lasso& x: lassos)
            {
              std::string what = name + " x=" + x.str();
              r.guarded(what, [&]
              {
                Word xs = x.take(n);
                auto runs = oracle::enumerate_runs(m, xs);
                auto comps = enumerate_computations(r1.ttba, h_prefix(xs, n),
                                                    alpha_prefix(n + 1));
                // computations ending at a block boundary, projected
                std::map<std::vector<int>, const TTBAComputation*> projected;
                bool injective = true;
                for (auto& c: comps)
                  if (at_block_boundary(r1, c))
                    injective &= projected.emplace(committed_transitions(r1, c), &c).second;
                std::set<std::vector<int>> want(runs.begin(), runs.end());
                std::set<std::vector<int>> got;
                for (auto& [k, _]: projected)
                  got.insert(k);
                if (!injective || got != want)
                  {
                    r.check(false, what,
                            std::to_string(got.size()) + " projected computations vs "
                              + std::to_string(want.size()) + " runs");
                    return;
                  }
                bool ok = true;
                std::string why;
                for (auto& run: runs)
                  {
                    const TTBAComputation& c = *projected.at(run);
                    // final visits, counted in blocks
                    std::vector<int> vis_t, vis_m;
                    for (std::size_t f: c.final_visits)
                      {
                        int blocks = 0;
                        for (std::size_t s = 0; s <= f; ++s)
                          blocks += r1.layout.commit[static_cast<std::size_t>(
                                      c.steps[s].transition)]
                            >= 0;
                        vis_t.push_back(blocks);
                      }
                    auto tr = oracle::trace_run(m, run);
                    for (std::size_t i = 1; i < tr.states.size(); ++i)
                      if (m.is_final(tr.states[i]))
                        vis_m.push_back(static_cast<int>(i));
                    if (vis_t != vis_m)
                      {
                        ok = false;
                        why = "final visits " + join(vis_t) + " vs " + join(vis_m);
                        break;
                      }
                    std::vector<OcbaTransition> ts;
                    for (int i: run)
                      ts.push_back(m.transitions()[static_cast<std::size_t>(i)]);
                    if (induced_computation(m, r1, ts).steps != c.steps)
                      {
                        ok = false;
                        why = "induced computation differs for run " + join(run);
                        break;
                      }
                  }
                r.check(ok, what, why);
                bool member = ocba_lasso_member(m, x);
                r.check(member == oracle::has_pumpable_final_cycle(m, x, runs), what,
                        std::string("ocba_lasso_member says ") + (member ? "true" : "false"));
              });
            }
        }
    }

    /// One case per pair: R2 accepts it, and for the first 200 pairs each
    /// C_j automaton agrees with the pattern evaluator.
    inline void suite_r2_lasso_totality(SuiteRun& r)
    {
      random::Engine rng(r.opt.seed);
      const Alphabet sigma = fixtures::binary();
      const TTBA r2 = build_r2(sigma);
      std::vector<TTBA> cj;
      for (int j = 1; j <= 4; ++j)
        cj.push_back(build_cj(j, sigma));
      for (int k = 0; k < 500; ++k)
        {
          LassoPair p = random::mixed_pair(rng, sigma);
          r.guarded(p.str(), [&]
          {
            std::string why;
            if (!ttba_lasso_pair_member(r2, p))
              why = "R2 rejects";
            for (int j = 1; j <= 4 && k < 200 && why.empty(); ++j)
              {
                bool a = ttba_lasso_pair_member(cj[static_cast<std::size_t>(j - 1)], p);
                bool b = eval_cj_pattern(j, sigma, p);
                if (a != b)
                  why = "C" + std::to_string(j) + (a ? " accepts" : " rejects")
                    + ", pattern says " + (b ? "true" : "false");
              }
            r.check(why.empty(), p.str(), why);
          });
        }
    }

    inline void suite_hexclusion(SuiteRun& r)
    {
      random::Engine rng(r.opt.seed);
      const Alphabet sigma = fixtures::binary();
      const Alphabet gamma = coding_alphabet(sigma);
      std::size_t structural = 0, substituted = 0;
      const std::size_t depth = r.opt.depth ? r.opt.depth : 50;
      for (int k = 0; k < 50; ++k)
        {
          Lasso x = random::lasso(rng, sigma, 4, 4);
          PairStream s = encode_pair(x);
          for (int j = 1; j <= 4; ++j)
            {
              std::string what = "C" + std::to_string(j) + " x=" + x.str();
              r.guarded(what, [&]
              {
                auto v = eval_cj_pattern(j, sigma, s, depth);
                r.check(!v.value, what, v.str());
              });
            }
        }
      // single-letter mutations of a 20-block prefix
      for (int k = 0; k < 5; ++k)
        {
          const std::size_t n = 20;
          Word x = random::word(rng, sigma, n);
          const Word t1 = h_prefix(x, n), t2 = alpha_prefix(n);
          for (int tape = 0; tape < 2; ++tape)
            {
              const Word& base = tape == 0 ? t1 : t2;
              for (std::size_t i = 0; i < base.size(); ++i)
                for (Letter c: gamma.letters())
                  {
                    if (c == base[i])
                      continue;
                    Word m = base;
                    m[i] = c;
                    std::string what = "x=" + x + " tape " + std::to_string(tape + 1) + " pos "
                      + std::to_string(i) + " -> " + c;
                    r.guarded(what, [&]
                    {
                      auto res = tape == 0 ? parse_block_structure(sigma, m, t2, true)
                                           : parse_block_structure(sigma, t1, m, true);
                      auto* ds = std::get_if<std::vector<BlockDecomposition>>(&res);
                      // a letter slot changed to another letter of Σ is the
                      // code of a different word: it must decode to that word
                      bool letter_slot = tape == 0 && c != marker_letter
                        && (i + 1 == base.size() || base[i + 1] == marker_letter);
                      if (letter_slot)
                        {
                          ++substituted;
                          Word want = x;
                          std::size_t block = 0;
                          for (std::size_t p = 0; p <= i; ++p)
                            block += base[p] == marker_letter;
                          want[block - 1] = c;
                          r.check(ds && ds->size() == 1 && decoded_letters(ds->front()) == want,
                                  what, "letter-slot change must decode to the changed word");
                        }
                      else
                        {
                          ++structural;
                          r.check(ds == nullptr, what, "mutated prefix still parses");
                        }
                    });
                  }
            }
        }
      r.report.note = std::to_string(structural) + " structural mutations rejected, "
        + std::to_string(substituted) + " letter substitutions re-decoded";
    }

    inline void suite_wadge_lattice(SuiteRun& r)
    {
      const auto fx = fixtures::lattice();
      const std::size_t n = fx.size();
      std::vector<std::vector<char>> leq(n, std::vector<char>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          {
            std::string what = fx[i].first + " <= " + fx[j].first;
            r.guarded(what, [&]
            {
              WadgeResult g = wadge_game(fx[i].second, fx[j].second);
              leq[i][j] = g.leq;
              // determinacy: both regions certified, and they cover the arena
              const auto& game = g.arena.game;
              auto r1 = g.solution.region(Player::P1), r2 = g.solution.region(Player::P2);
              std::string c1 = certify_strategy(game, Player::P1, r1, g.solution.strategy);
              std::string c2 = certify_strategy(game, Player::P2, r2, g.solution.strategy);
              r.check(c1.empty() && c2.empty() && r1.size() + r2.size() == game.size(), what,
                      "determinacy: " + c1 + c2);
            });
          }
      for (std::size_t i = 0; i < n; ++i)
        r.check(leq[i][i], "reflexive " + fx[i].first);
      bool trans = true;
      std::string bad;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (leq[i][j] && leq[j][k] && !leq[i][k])
              {
                trans = false;
                bad = fx[i].first + " <= " + fx[j].first + " <= " + fx[k].first;
              }
      r.check(trans, "transitivity", bad);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          {
            std::string what = "dual " + fx[i].first + " <= " + fx[j].first;
            r.guarded(what, [&]
            {
              bool d = wadge_leq(complement_dpa(fx[i].second), complement_dpa(fx[j].second));
              r.check(d == static_cast<bool>(leq[i][j]), what);
            });
          }
      DPA zero = fixtures::zero_omega(), open = fixtures::open_one();
      r.check(!wadge_leq(zero, open) && !wadge_leq(open, zero), "zero-omega | open incomparable");
      r.check(wadge_equiv(fixtures::sum_empty_inf_one(), fixtures::inf_one()),
              "sum-empty-inf-one == inf-one");

      // sums: L over {0,1}, L' over {0,1,p,m}
      const Alphabet y = fixtures::sum_alphabet();
      std::vector<std::pair<std::string, DPA>> base, wide;
      for (auto& [name, d]: fx)
        {
          if (d.alphabet() == fixtures::binary())
            base.emplace_back(name, d);
          wide.emplace_back(name, d.alphabet() == y ? d : fixtures::lift(d, y));
        }
      for (auto& [ln, l]: base)
        for (auto& [pn, p]: wide)
          {
            std::string what = ln + " <= " + pn + "+" + ln;
            r.guarded(what,
                      [&] { r.check(wadge_leq(l, sum_dpa(p, l, {'p'}, {'m'})), what); });
          }
      for (std::size_t a = 0; a < base.size(); ++a)
        for (std::size_t b = 0; b < base.size(); ++b)
          {
            if (!wadge_leq(base[a].second, base[b].second))
              continue;
            for (auto& [pn, p]: wide)
              {
                std::string what = pn + "+" + base[a].first + " <= " + pn + "+" + base[b].first;
                r.guarded(what, [&]
                {
                  r.check(wadge_leq(sum_dpa(p, base[a].second, {'p'}, {'m'}),
                                    sum_dpa(p, base[b].second, {'p'}, {'m'})),
                          what);
                });
              }
          }
    }

    inline void suite_sum_oracle(SuiteRun& r)
    {
      random::Engine rng(r.opt.seed);
      const Alphabet x = fixtures::binary(), y = fixtures::sum_alphabet();
      for (int k = 0; k < 500; ++k)
        {
          DPA d = random::dpa(rng, x, 4);
          DPA dp = random::dpa(rng, y, 4);
          std::vector<Letter> plus, minus;
          if (random::uniform(rng, 0, 1))
            plus = {'p'}, minus = {'m'};
          else
            plus = {'m'}, minus = {'p'};
          DPA s = sum_dpa(dp, d, plus, minus);
          Lasso w = random::lasso(rng, y, 5, 4);
          // bias half the words towards X-only loops, which stay in L
          if (k % 2 == 0)
            w = Lasso::make(w.prefix(), random::word(rng, x, random::uniform(rng, 1, 4)));
          std::string what = "case " + std::to_string(k) + " w=" + w.str();
          r.guarded(what, [&]
          {
            bool a = dpa_lasso_member(s, w), b = oracle::sum_member(dp, d, plus, w);
            r.check(a == b, what, std::string("sum automaton says ") + (a ? "in" : "out"));
          });
        }
    }

    inline void suite_ocba_emptiness(SuiteRun& r)
    {
      random::Engine rng(r.opt.seed);
      const Alphabet sigma = fixtures::binary();
      const SearchBudget budget{200, r.opt.cap};
      for (int k = 0; k < 200; ++k)
        {
          OCBA m = random::ocba(rng, sigma, 4);
          std::vector<Lasso> words;
          for (int i = 0; i < 8; ++i)
            words.push_back(random::lasso(rng, sigma, 3, 3));
          std::string what = "ocba " + std::to_string(k);
          r.guarded(what, [&]
          {
            bool empty = ocba_emptiness(m);
            bool ok = true;
            std::string why;
            for (auto& w: words)
              {
                auto res = bounded_acceptance_search(m, w, budget);
                bool certified = res.verdict == Verdict3::Accepted;
                if (certified && (empty || !oracle::capped_lasso_acceptance(m, w, r.opt.cap)))
                  {
                    ok = false;
                    why = "explorer accepts " + w.str() + " but emptiness says empty";
                  }
                if (empty && ocba_lasso_member(m, w))
                  {
                    ok = false;
                    why = "empty but member " + w.str();
                  }
              }
            r.check(ok, what, why);
          });
        }
      for (auto& [name, m]: fixtures::empty_ocbas())
        r.guarded(name, [&] { r.check(ocba_emptiness(m), name, "reported nonempty"); });
    }

    inline void suite_reduction_totality(SuiteRun& r)
    {
      random::Engine rng(r.opt.seed);
      for (auto& [name, m]: fixtures::ocbas())
        {
          const TTBA red = build_reduction(m);
          for (int k = 0; k < 300; ++k)
            {
              LassoPair p = random::mixed_pair(rng, m.alphabet());
              std::string what = name + " " + p.str();
              r.guarded(what, [&] { r.check(ttba_lasso_pair_member(red, p), what); });
            }
        }
    }
  }

  struct SuiteInfo
  {
    std::string id;
    std::string letter;
    std::string title;
    std::function<void(detail::SuiteRun&)> run;
  };

  inline const std::vector<SuiteInfo>& suites()
  {
    static const std::vector<SuiteInfo> all{
      {"coding-roundtrip", "A", "coding round-trip and h-injectivity",
       detail::suite_coding_roundtrip},
      {"block-arithmetic", "B", "block lengths", detail::suite_block_arithmetic},
      {"r1-bijection", "C", "R1 computations match runs", detail::suite_r1_bijection},
      {"r2-lasso-totality", "D", "R2 totality and C_j agreement",
       detail::suite_r2_lasso_totality},
      {"hexclusion", "E", "(h, alpha) avoids every C_j", detail::suite_hexclusion},
      {"wadge-lattice", "F", "Wadge solver lattice", detail::suite_wadge_lattice},
      {"sum-oracle", "G", "sum automaton vs definition", detail::suite_sum_oracle},
      {"ocba-emptiness", "H", "emptiness vs bounded explorer", detail::suite_ocba_emptiness},
      {"reduction-totality", "I", "reduction accepts every lasso pair",
       detail::suite_reduction_totality},
    };
    return all;
  }

  inline SuiteReport run_verify_suite(const std::string& id, const SuiteOptions& opt = {})
  {
    for (auto& s: suites())
      if (s.id == id || s.letter == id)
        {
          detail::SuiteRun run(s.id, opt);
          auto t0 = std::chrono::steady_clock::now();
          s.run(run);
          run.report.seconds
            = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          return run.report;
        }
    fail(ErrorCode::UnknownSuite, "no suite '" + id + "'");
  }
}
