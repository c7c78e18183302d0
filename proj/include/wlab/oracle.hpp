#pragma once

// Reference procedures the verification suites compare against. They are
// deliberately naive and share no logic with the procedures they check
// beyond the basic automaton types.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "core.hpp"

namespace wlab::oracle
{
  /// All run prefixes of m on the finite word x from (q0, 0), as sequences
  /// of indices into m.transitions(); only runs that read all of x.
  inline std::vector<std::vector<int>> enumerate_runs(const OCBA& m, std::string_view x)
  {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, long)> go = [&](int q, long c)
    {
      if (cur.size() == x.size())
        {
          out.push_back(cur);
          return;
        }
      Letter a = x[cur.size()];
      const auto& all = m.transitions();
      for (std::size_t i = 0; i < all.size(); ++i)
        {
          const auto& t = all[i];
          if (t.from != q || t.letter != a)
            continue;
          if ((c == 0) != (t.zero == 0))
            continue;
          if (c + t.delta < 0)
            continue;
          cur.push_back(static_cast<int>(i));
          go(t.to, c + t.delta);
          cur.pop_back();
        }
    };
    go(m.initial(), 0);
    return out;
  }

  /// States q_1..q_n and counters c_1..c_{n+1} along a run (c_1 = 0).
  struct RunTrace
  {
    std::vector<int> states;     // q_0..q_n
    std::vector<long> counters;  // counter before step i (1-based) then final
  };

  inline RunTrace trace_run(const OCBA& m, const std::vector<int>& run)
  {
    RunTrace t;
    t.states.push_back(m.initial());
    t.counters.push_back(0);
    for (int i: run)
      {
        const auto& tr = m.transitions()[static_cast<std::size_t>(i)];
        t.states.push_back(tr.to);
        t.counters.push_back(t.counters.back() + tr.delta);
      }
    return t;
  }

  /// Some run repeats a configuration (state, counter, lasso residue) with
  /// a final state in between: a genuine accepting lasso run.
  inline bool has_pumpable_final_cycle(const OCBA& m, const Lasso& x,
                                       const std::vector<std::vector<int>>& runs)
  {
    for (auto& r: runs)
      {
        auto t = trace_run(m, r);
        std::map<std::tuple<int, long, std::size_t>, std::size_t> seen;
        std::size_t lf = 0;
        bool any_final = false;
        for (std::size_t i = 0; i < t.states.size(); ++i)
          {
            if (i > 0 && m.is_final(t.states[i]))
              {
                lf = i;
                any_final = true;
              }
            auto key = std::make_tuple(t.states[i], t.counters[i], x.fold(i));
            auto it = seen.find(key);
            if (it != seen.end() && any_final && lf > it->second)
              return true;
            seen[key] = i;
          }
      }
    return false;
  }

  /// Explicit configuration graph of m on a lasso with the counter capped;
  /// accepting iff a final configuration lies on a reachable cycle.
  inline bool capped_lasso_acceptance(const OCBA& m, const Lasso& w, long cap)
  {
    using Cfg = std::tuple<int, long, std::size_t>;
    std::map<Cfg, std::vector<Cfg>> succ;
    std::vector<Cfg> todo{{m.initial(), 0, 0}};
    std::set<Cfg> seen{todo.front()};
    while (!todo.empty())
      {
        Cfg c = todo.back();
        todo.pop_back();
        auto [q, n, r] = c;
        auto& out = succ[c];
        for (auto& t: m.transitions())
          {
            if (t.from != q || t.letter != w.at_residue(r) || (n == 0) != (t.zero == 0))
              continue;
            long nn = n + t.delta;
            if (nn < 0 || nn > cap)
              continue;
            Cfg d{t.to, nn, w.next(r)};
            out.push_back(d);
            if (seen.insert(d).second)
              todo.push_back(d);
          }
      }
    // a final configuration that can reach itself
    for (auto& f: seen)
      {
        if (!m.is_final(std::get<0>(f)))
          continue;
        std::set<Cfg> vis;
        std::vector<Cfg> st(succ[f].begin(), succ[f].end());
        while (!st.empty())
          {
            Cfg c = st.back();
            st.pop_back();
            if (c == f)
              return true;
            if (!vis.insert(c).second)
              continue;
            for (auto& d: succ[c])
              st.push_back(d);
          }
      }
    return false;
  }

  /// Runs a DPA on a lasso by brute force: iterate the loop until the pair
  /// (state at loop start) repeats, then take the least priority seen on
  /// the repeating stretch.
  inline bool dpa_member(const DPA& d, const Lasso& w)
  {
    int q = d.run(w.prefix(), d.initial());
    std::vector<int> starts;
    while (std::find(starts.begin(), starts.end(), q) == starts.end())
      {
        starts.push_back(q);
        q = d.run(w.loop(), q);
      }
    // q starts the cycle; walk it once more recording priorities
    int lo = -1;
    int s = q;
    do
      {
        for (Letter c: w.loop())
          {
            s = d.next(s, c);
            lo = lo < 0 ? d.priority(s) : std::min(lo, d.priority(s));
          }
      }
    while (s != q);
    return lo % 2 == 0;
  }

  /// L' + L by its definition: split at the first letter outside X.
  inline bool sum_member(const DPA& d_prime, const DPA& d, const std::vector<Letter>& x_plus,
                         const Lasso& w)
  {
    const Alphabet& x = d.alphabet();
    std::size_t n = w.residues();
    for (std::size_t i = 0; i < n; ++i)
      {
        Letter a = w.at(i);
        if (x.contains(a))
          continue;
        Word rest_prefix = i + 1 < w.prefix().size() ? w.prefix().substr(i + 1) : "";
        Lasso beta = i + 1 <= w.prefix().size()
          ? Lasso::make(rest_prefix, w.loop())
          : Lasso::make("", w.loop().substr(i + 1 - w.prefix().size())
                              + w.loop().substr(0, i + 1 - w.prefix().size()));
        bool in = dpa_member(d_prime, beta);
        bool plus = std::find(x_plus.begin(), x_plus.end(), a) != x_plus.end();
        return plus ? in : !in;
      }
    return dpa_member(d, w);
  }

  /// Σ_{i<=n} (i+2) and Σ_{i<=n} (i+1) by summation.
  inline std::size_t h_block_sum(std::size_t n)
  {
    std::size_t s = 0;
    for (std::size_t i = 1; i <= n; ++i)
      s += i + 2;
    return s;
  }

  inline std::size_t alpha_block_sum(std::size_t n)
  {
    std::size_t s = 0;
    for (std::size_t i = 1; i <= n; ++i)
      s += i + 1;
    return s;
  }
}
