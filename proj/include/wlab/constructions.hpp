#pragma once

// Compilers from one-counter automata to 2-tape automata (R1), the four
// complement relations and their union (R2), the full reduction, the sum
// of parity languages, and computation enumeration for 2-tape automata.

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "coding.hpp"
#include "core.hpp"

namespace wlab
{
  /// One step of a 2-tape computation: which transition fired and where
  /// both heads stand afterwards.
  struct TtbaStep
  {
    int transition;
    int to;
    std::size_t pos1;
    std::size_t pos2;
    bool operator==(const TtbaStep&) const = default;
  };

  struct TTBAComputation
  {
    std::vector<TtbaStep> steps;
    std::vector<std::size_t> final_visits;  // step indices ending in F

    int last_state(int initial) const
    {
      return steps.empty() ? initial : steps.back().to;
    }
  };

  // ------------------------------------------------------------------
  // R1

  /// Where each piece of the R1 phase machine lives. Vectors indexed by
  /// OCBA state or OCBA transition (index into m.transitions()); -1 where a
  /// transition needs no state of that kind.
  struct R1Layout
  {
    int start = 0;
    int first_block = 1;
    std::vector<int> after_letter;   // x(i) read, q_i reached
    std::vector<int> marker_read;    // tape-1 A read, the +1 zero pending
    std::vector<int> lockstep_uz;    // u against z
    std::vector<int> guess;          // choose the next transition
    std::vector<int> lockstep_vw;    // v against w for a nonempty v
    std::vector<int> extra_w;        // one more tape-2 zero read, x pending
    /// For every R1 transition: the OCBA transition it commits to, or -1.
    std::vector<int> commit;
  };

  struct AnnotatedR1
  {
    TTBA ttba;
    R1Layout layout;
  };

  inline AnnotatedR1 build_r1_annotated(const OCBA& m)
  {
    const Alphabet& sigma = m.alphabet();
    require_base_alphabet(sigma);
    Alphabet gamma = coding_alphabet(sigma);
    const int k = m.num_states();
    const auto& delta = m.transitions();

    R1Layout lay;
    int next = 2;
    auto fresh = [&] { return next++; };
    lay.after_letter.resize(static_cast<std::size_t>(k));
    lay.marker_read.resize(static_cast<std::size_t>(k));
    lay.lockstep_uz.resize(static_cast<std::size_t>(k));
    lay.guess.resize(static_cast<std::size_t>(k));
    for (int q = 0; q < k; ++q)
      {
        auto s = static_cast<std::size_t>(q);
        lay.after_letter[s] = fresh();
        lay.marker_read[s] = fresh();
        lay.lockstep_uz[s] = fresh();
        lay.guess[s] = fresh();
      }
    lay.lockstep_vw.assign(delta.size(), -1);
    lay.extra_w.assign(delta.size(), -1);
    for (std::size_t t = 0; t < delta.size(); ++t)
      {
        const auto& tr = delta[t];
        if (tr.zero == 1)
          lay.lockstep_vw[t] = fresh();
        if (tr.delta == 1)
          lay.extra_w[t] = fresh();
      }

    std::vector<TtbaTransition> out;
    std::vector<int> commit;
    auto add = [&](int from, Word a, Word b, int to, int t = -1)
    {
      out.push_back({from, std::move(a), std::move(b), to});
      commit.push_back(t);
    };
    const Word A(1, marker_letter), Z("0"), E;
    auto at = [](const std::vector<int>& v, int i) { return v[static_cast<std::size_t>(i)]; };

    add(lay.start, A, A, lay.first_block);
    add(lay.first_block, Z, E, lay.first_block);  // u_1, read freely
    for (int q = 0; q < k; ++q)
      {
        add(at(lay.after_letter, q), A, E, at(lay.marker_read, q));
        add(at(lay.marker_read, q), Z, E, at(lay.lockstep_uz, q));
        add(at(lay.lockstep_uz, q), Z, Z, at(lay.lockstep_uz, q));
        add(at(lay.lockstep_uz, q), E, A, at(lay.guess, q));
      }
    for (std::size_t t = 0; t < delta.size(); ++t)
      {
        const auto& tr = delta[t];
        const int ti = static_cast<int>(t);
        const Word x(1, tr.letter);
        const int done = at(lay.after_letter, tr.to);
        const int extra = lay.extra_w[t];
        const int vw = lay.lockstep_vw[t];
        // counter is zero before block 1, so only zero-tested moves start
        std::vector<int> sources{at(lay.guess, tr.from)};
        if (tr.from == m.initial() && tr.zero == 0)
          sources.push_back(lay.first_block);
        for (int src: sources)
          {
            if (tr.zero == 0)
              {
                if (tr.delta == 0)
                  add(src, x, E, done, ti);
                else
                  add(src, E, Z, extra, ti);
              }
            else if (tr.delta == -1)
              add(src, Z, E, vw, ti);
            else
              add(src, Z, Z, vw, ti);
          }
        if (vw >= 0)
          {
            add(vw, Z, Z, vw);
            if (tr.delta == 1)
              add(vw, E, Z, extra);
            else
              add(vw, x, E, done);
          }
        if (extra >= 0)
          add(extra, x, E, done);
      }

    std::vector<int> finals;
    for (int q = 0; q < k; ++q)
      if (m.is_final(q))
        finals.push_back(at(lay.after_letter, q));

    // keep the commit table aligned with the deduplicated transition list
    TTBA t1(gamma, gamma, next, lay.start, out, finals);
    std::map<TtbaTransition, int> commit_of;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (commit[i] >= 0)
        commit_of[out[i]] = commit[i];
    for (auto& tr: t1.transitions())
      {
        auto it = commit_of.find(tr);
        lay.commit.push_back(it == commit_of.end() ? -1 : it->second);
      }
    return {std::move(t1), std::move(lay)};
  }

  /// 2-tape automaton for R1(m): pairs splitting into blocks that encode an
  /// accepting run of m, |v_i| and |w_i| being the counter before and after
  /// reading x(i).
  inline TTBA build_r1(const OCBA& m) { return build_r1_annotated(m).ttba; }

  /// States(T1) never exceed this.
  inline std::size_t r1_state_bound(const OCBA& m)
  {
    return 2 + 4 * static_cast<std::size_t>(m.num_states()) + 2 * m.transitions().size();
  }

  namespace detail
  {
    inline int find_transition(const TTBA& t, const TtbaTransition& tr)
    {
      const auto& all = t.transitions();
      auto it = std::find(all.begin(), all.end(), tr);
      if (it == all.end())
        fail(ErrorCode::IllegalRun, "computation uses a transition missing from T1");
      return static_cast<int>(it - all.begin());
    }
  }

  /// Checks a run prefix of m from (q0, 0); returns the counter value
  /// before every step plus the final one.
  inline std::vector<long> check_ocba_run(const OCBA& m, const std::vector<OcbaTransition>& run)
  {
    std::vector<long> counters{0};
    int q = m.initial();
    const auto& all = m.transitions();
    for (std::size_t i = 0; i < run.size(); ++i)
      {
        const auto& t = run[i];
        if (std::find(all.begin(), all.end(), t) == all.end())
          fail(ErrorCode::IllegalRun, "step " + std::to_string(i + 1) + " is not a transition");
        if (!OCBA::enabled(t, {q, counters.back()}))
          fail(ErrorCode::IllegalRun,
               "step " + std::to_string(i + 1) + " is not enabled in ("
               + std::to_string(q) + ", " + std::to_string(counters.back()) + ")");
        counters.push_back(counters.back() + t.delta);
        q = t.to;
      }
    return counters;
  }

  /// The computation of build_r1(m) on the first n = |run| blocks of
  /// (h(x), α), x being the run's letters, that guesses exactly the run's
  /// transitions. It stops right after x(n) is read.
  inline TTBAComputation induced_computation(const OCBA& m, const AnnotatedR1& r1,
                                             const std::vector<OcbaTransition>& run)
  {
    auto c = check_ocba_run(m, run);
    const TTBA& t1 = r1.ttba;
    const R1Layout& lay = r1.layout;
    const Word A(1, marker_letter), Z("0"), E;
    TTBAComputation comp;
    int cur = lay.start;
    std::size_t p1 = 0, p2 = 0;
    auto step = [&](const Word& a, const Word& b, int to)
    {
      int idx = detail::find_transition(t1, {cur, a, b, to});
      p1 += a.size();
      p2 += b.size();
      cur = to;
      comp.steps.push_back({idx, to, p1, p2});
      if (t1.is_final(to))
        comp.final_visits.push_back(comp.steps.size() - 1);
    };
    auto at = [](const std::vector<int>& v, int i) { return v[static_cast<std::size_t>(i)]; };
    const auto& delta = m.transitions();
    step(A, A, lay.first_block);
    step(Z, E, lay.first_block);
    for (std::size_t i = 1; i <= run.size(); ++i)
      {
        const auto& tr = run[i - 1];
        auto ti = static_cast<std::size_t>(std::find(delta.begin(), delta.end(), tr) - delta.begin());
        long v = c[i - 1];
        if (i > 1)
          {
            int q = tr.from;
            long z_prev = static_cast<long>(i - 1) - c[i - 1];
            step(A, E, at(lay.marker_read, q));
            step(Z, E, at(lay.lockstep_uz, q));
            for (long j = 0; j < z_prev; ++j)
              step(Z, Z, at(lay.lockstep_uz, q));
            step(E, A, at(lay.guess, q));
          }
        const Word x(1, tr.letter);
        const int done = at(lay.after_letter, tr.to);
        const int extra = lay.extra_w[ti];
        const int vw = lay.lockstep_vw[ti];
        if (tr.zero == 0)
          {
            if (tr.delta == 1)
              {
                step(E, Z, extra);
                step(x, E, done);
              }
            else
              step(x, E, done);
            continue;
          }
        if (tr.delta == -1)
          {
            step(Z, E, vw);
            for (long j = 1; j < v; ++j)
              step(Z, Z, vw);
            step(x, E, done);
          }
        else
          {
            step(Z, Z, vw);
            for (long j = 1; j < v; ++j)
              step(Z, Z, vw);
            if (tr.delta == 1)
              {
                step(E, Z, extra);
                step(x, E, done);
              }
            else
              step(x, E, done);
          }
      }
    return comp;
  }

  /// The OCBA transitions a computation of build_r1 committed to, in order.
  inline std::vector<int> committed_transitions(const AnnotatedR1& r1, const TTBAComputation& c)
  {
    std::vector<int> out;
    for (auto& s: c.steps)
      {
        int t = r1.layout.commit[static_cast<std::size_t>(s.transition)];
        if (t >= 0)
          out.push_back(t);
      }
    return out;
  }

  /// Whether the computation stands at a block boundary (x(i) just read).
  inline bool at_block_boundary(const AnnotatedR1& r1, const TTBAComputation& c)
  {
    int q = c.last_state(r1.ttba.initial());
    const auto& v = r1.layout.after_letter;
    return std::find(v.begin(), v.end(), q) != v.end();
  }

  // ------------------------------------------------------------------
  // Enumeration

  struct EnumerationBudget
  {
    std::size_t max_transitions = 4096;
    std::size_t max_nodes = 2'000'000;
  };

  /// Every computation of t from its initial state that reads all of
  /// `first` and a prefix of `second`, cut at the transition that reads the
  /// last letter of `first`. Depth-first in transition-index order.
  inline std::vector<TTBAComputation>
  enumerate_computations(const TTBA& t, std::string_view first, std::string_view second,
                         const EnumerationBudget& budget = {})
  {
    detail::require_normalized(t);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(t.num_states()));
    for (std::size_t i = 0; i < t.transitions().size(); ++i)
      out[static_cast<std::size_t>(t.transitions()[i].from)].push_back(static_cast<int>(i));
    std::vector<TTBAComputation> result;
    if (first.empty())
      {
        result.emplace_back();
        return result;
      }
    std::size_t nodes = 0;
    TTBAComputation cur;
    std::function<void(int, std::size_t, std::size_t)> dfs
      = [&](int q, std::size_t p1, std::size_t p2)
    {
      if (++nodes > budget.max_nodes)
        fail(ErrorCode::BudgetExceeded,
             "enumeration exceeded " + std::to_string(budget.max_nodes) + " nodes");
      if (cur.steps.size() >= budget.max_transitions)
        return;
      for (int idx: out[static_cast<std::size_t>(q)])
        {
          const auto& tr = t.transitions()[static_cast<std::size_t>(idx)];
          if (!tr.in.empty() && (p1 >= first.size() || first[p1] != tr.in[0]))
            continue;
          if (!tr.out.empty() && (p2 >= second.size() || second[p2] != tr.out[0]))
            continue;
          std::size_t n1 = p1 + tr.in.size(), n2 = p2 + tr.out.size();
          cur.steps.push_back({idx, tr.to, n1, n2});
          bool fin = t.is_final(tr.to);
          if (fin)
            cur.final_visits.push_back(cur.steps.size() - 1);
          if (n1 == first.size())
            result.push_back(cur);
          else
            dfs(tr.to, n1, n2);
          if (fin)
            cur.final_visits.pop_back();
          cur.steps.pop_back();
        }
    };
    dfs(t.initial(), 0, 0);
    return result;
  }

  // ------------------------------------------------------------------
  // Complement relations C1..C4 and R2

  namespace detail
  {
    /// Incremental builder for 2-tape automata over one alphabet.
    struct TtbaBuilder
    {
      Alphabet gamma;
      std::vector<Letter> base;  // Γ without the marker
      int states = 0;
      std::vector<TtbaTransition> tr;
      std::vector<int> finals;

      explicit TtbaBuilder(const Alphabet& sigma)
        : gamma(coding_alphabet(sigma)), base(sigma.letters())
      {}

      int state() { return states++; }
      void add(int from, Word a, Word b, int to)
      {
        tr.push_back({from, std::move(a), std::move(b), to});
      }
      /// Final state reading anything on either tape.
      int universal()
      {
        int u = state();
        for (Letter g: gamma.letters())
          {
            add(u, Word(1, g), "", u);
            add(u, "", Word(1, g), u);
          }
        finals.push_back(u);
        return u;
      }
      TTBA finish() const
      {
        return TTBA(gamma, gamma, states, 0, tr, finals);
      }
    };

    inline Word one(Letter c) { return Word(1, c); }

    /// C1 branch on one tape: the first letters miss `pattern` (true = A).
    inline TTBA c1_branch(const Alphabet& sigma, const std::vector<bool>& pattern,
                          bool second_tape)
    {
      TtbaBuilder b(sigma);
      std::vector<int> pos;
      for (std::size_t i = 0; i < pattern.size(); ++i)
        pos.push_back(b.state());
      int u = b.universal();
      auto label = [&](Letter g, int from, int to)
      {
        if (second_tape)
          b.add(from, "", one(g), to);
        else
          b.add(from, one(g), "", to);
      };
      for (std::size_t i = 0; i < pattern.size(); ++i)
        for (Letter g: b.gamma.letters())
          {
            bool is_a = g == marker_letter;
            if (is_a != pattern[i])
              label(g, pos[i], u);
            else if (i + 1 < pattern.size())
              label(g, pos[i], pos[i + 1]);
          }
      return b.finish();
    }

    /// C2 branch: σ2 ∉ (A·0⁺)^ω (tape 2) or σ1 ∉ (A·0⁺·Σ)^ω (tape 1).
    /// Tracks the shape deterministically; a violation or a guessed
    /// marker-free tail accepts.
    inline TTBA c2_branch(const Alphabet& sigma, bool coded_blocks)
    {
      TtbaBuilder b(sigma);
      bool tape2 = !coded_blocks;
      auto read = [&](int from, Letter g, int to)
      {
        if (tape2)
          b.add(from, "", one(g), to);
        else
          b.add(from, one(g), "", to);
      };
      // transition table: state -> letter -> next (-1 = violation)
      std::vector<std::map<Letter, int>> next;
      if (!coded_blocks)
        {
          // 0: expect A, 1: expect first 0, 2: in zeros
          next.resize(3);
          next[0][marker_letter] = 1;
          next[1]['0'] = 2;
          next[2]['0'] = 2;
          next[2][marker_letter] = 1;
        }
      else
        {
          // 0: expect A, 1: expect first 0, 2: one 0 read,
          // 3: zeros (x may have been one of them), 4: x read
          next.resize(5);
          next[0][marker_letter] = 1;
          next[1]['0'] = 2;
          for (Letter g: b.base)
            {
              next[2][g] = g == '0' ? 3 : 4;
              next[3][g] = g == '0' ? 3 : 4;
            }
          next[3][marker_letter] = 1;
          next[4][marker_letter] = 1;
        }
      std::vector<int> id;
      for (std::size_t i = 0; i < next.size(); ++i)
        id.push_back(b.state());
      int u = b.universal();
      int tail = b.state();
      b.finals.push_back(tail);
      for (Letter g: b.base)
        read(tail, g, tail);
      for (Letter g: b.gamma.letters())
        {
          if (tape2)
            b.add(tail, one(g), "", tail);
          else
            b.add(tail, "", one(g), tail);
        }
      for (std::size_t s = 0; s < next.size(); ++s)
        for (Letter g: b.gamma.letters())
          {
            auto it = next[s].find(g);
            if (it == next[s].end())
              read(id[s], g, u);
            else
              read(id[s], g, id[static_cast<std::size_t>(it->second)]);
            if (g != marker_letter)
              read(id[s], g, tail);
          }
      return b.finish();
    }

    /// C3 (extra_block = false) or C4 (true). Skips n >= 1 block pairs in
    /// step on the markers, optionally one more tape-1 block, then compares
    /// the next blocks in lockstep: e = |tape-1 block| - |tape-2 block|
    /// must differ from `forbidden`.
    inline TTBA block_compare(const Alphabet& sigma, bool extra_block)
    {
      TtbaBuilder b(sigma);
      const Word A = one(marker_letter);
      int init = b.state();
      int skip = b.state();
      int extra = extra_block ? b.state() : -1;
      int lock = b.state();
      int u = b.universal();
      int forbidden = extra_block ? 2 : 1;
      b.add(init, A, A, skip);
      b.add(skip, A, A, skip);
      for (Letter g: b.base)
        {
          b.add(skip, one(g), "", skip);
          b.add(skip, "", one(g), skip);
        }
      if (extra_block)
        {
          b.add(skip, A, A, extra);
          for (Letter g: b.base)
            b.add(extra, one(g), "", extra);
          b.add(extra, A, "", lock);
        }
      else
        b.add(skip, A, A, lock);
      for (Letter g: b.base)
        for (Letter h: b.base)
          b.add(lock, one(g), one(h), lock);
      // e = 0
      if (forbidden != 0)
        b.add(lock, A, A, u);
      // e < 0: tape 1 ended first; tape 2 must still close its block
      int shorter = b.state();
      for (Letter h: b.base)
        {
          b.add(lock, A, one(h), shorter);
          b.add(shorter, "", one(h), shorter);
        }
      b.add(shorter, "", A, u);
      // e >= 1: count the surplus on tape 1 up to forbidden + 1
      int prev = -1;
      std::vector<int> ahead;
      for (int e = 1; e <= forbidden + 1; ++e)
        ahead.push_back(b.state());
      for (Letter g: b.base)
        b.add(lock, one(g), A, ahead[0]);
      for (int e = 1; e <= forbidden + 1; ++e)
        {
          int s = ahead[static_cast<std::size_t>(e - 1)];
          if (e != forbidden)
            b.add(s, A, "", u);
          int succ = e <= forbidden ? ahead[static_cast<std::size_t>(e)] : s;
          for (Letter g: b.base)
            b.add(s, one(g), "", succ);
          prev = s;
        }
      (void)prev;
      return b.finish();
    }
  }

  /// 2-tape automaton for the j-th complement relation (j = 1..4).
  inline TTBA build_cj(int j, const Alphabet& sigma)
  {
    require_base_alphabet(sigma);
    switch (j)
      {
      case 1:
        {
          // A.Σ².A.Σ³.A on tape 1, A.Σ.A.Σ².A on tape 2
          std::vector<bool> p1{true, false, false, true, false, false, false, true};
          std::vector<bool> p2{true, false, true, false, false, true};
          return union_ttba({detail::c1_branch(sigma, p1, false),
                             detail::c1_branch(sigma, p2, true)});
        }
      case 2:
        return union_ttba({detail::c2_branch(sigma, false), detail::c2_branch(sigma, true)});
      case 3:
        return detail::block_compare(sigma, false);
      case 4:
        return detail::block_compare(sigma, true);
      default:
        fail(ErrorCode::ParseError, "pattern index must be 1..4");
      }
  }

  inline TTBA build_r2(const Alphabet& sigma)
  {
    return union_ttba({build_cj(1, sigma), build_cj(2, sigma), build_cj(3, sigma),
                       build_cj(4, sigma)});
  }

  /// R1(m) ∪ R2(Σ): its section at α is h(L(m)), every other section full.
  inline TTBA build_reduction(const OCBA& m)
  {
    return union_ttba({build_r1(m), build_r2(m.alphabet())});
  }

  // ------------------------------------------------------------------
  // Sum

  /// L' + L for L ⊆ X^ω (d) and L' ⊆ Y^ω (d_prime): run d while the
  /// letters stay in X; the first letter of Y − X switches to d_prime (if in
  /// X+) or its complement (if in X−), started afresh.
  inline DPA sum_dpa(const DPA& d_prime, const DPA& d, const std::vector<Letter>& x_plus,
                     const std::vector<Letter>& x_minus)
  {
    const Alphabet& y = d_prime.alphabet();
    const Alphabet& x = d.alphabet();
    if (!x.subset_of(y))
      fail(ErrorCode::AlphabetMismatch, "alphabet of L must be contained in that of L'");
    std::vector<Letter> rest;
    for (Letter c: y.letters())
      if (!x.contains(c))
        rest.push_back(c);
    if (x_plus.empty() || x_minus.empty())
      fail(ErrorCode::PartitionError, "both X+ and X- must be nonempty");
    Alphabet rest_alpha(rest.empty() ? std::vector<Letter>{'?'} : rest);
    if (rest.empty())
      fail(ErrorCode::PartitionError, "Y - X is empty");
    detail::require_partition(rest_alpha, x_plus, x_minus);

    int nd = d.num_states(), np = d_prime.num_states();
    int off_plus = nd, off_minus = nd + np;
    int n = nd + 2 * np;
    std::size_t k = y.size();
    std::vector<int> delta(static_cast<std::size_t>(n) * k);
    std::vector<int> pr(static_cast<std::size_t>(n));
    for (int q = 0; q < nd; ++q)
      {
        pr[static_cast<std::size_t>(q)] = d.priority(q);
        for (std::size_t a = 0; a < k; ++a)
          {
            Letter c = y[a];
            int to;
            if (x.contains(c))
              to = d.next(q, c);
            else if (std::find(x_plus.begin(), x_plus.end(), c) != x_plus.end())
              to = d_prime.initial() + off_plus;
            else
              to = d_prime.initial() + off_minus;
            delta[static_cast<std::size_t>(q) * k + a] = to;
          }
      }
    for (int q = 0; q < np; ++q)
      for (int off: {off_plus, off_minus})
        {
          pr[static_cast<std::size_t>(q + off)]
            = d_prime.priority(q) + (off == off_minus ? 1 : 0);
          for (std::size_t a = 0; a < k; ++a)
            delta[static_cast<std::size_t>(q + off) * k + a]
              = d_prime.next_index(q, static_cast<int>(a)) + off;
        }
    return DPA(y, n, d.initial(), std::move(delta), std::move(pr));
  }
}
