#pragma once

// Small hand-built automata used by tests, suites and the service.

#include <map>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "core.hpp"

namespace wlab::fixtures
{
  inline Alphabet binary() { return Alphabet::of("01"); }

  /// X = {0,1} extended by p (X+) and m (X-).
  inline Alphabet sum_alphabet() { return Alphabet::of("01pm"); }

  inline DPA dpa_from(const Alphabet& sigma, std::vector<std::vector<int>> rows,
                      std::vector<int> priority)
  {
    std::vector<int> delta;
    for (auto& r: rows)
      delta.insert(delta.end(), r.begin(), r.end());
    const int n = static_cast<int>(priority.size());
    return DPA(sigma, n, 0, std::move(delta), std::move(priority));
  }

  inline DPA empty(const Alphabet& sigma = binary())
  {
    return dpa_from(sigma, {std::vector<int>(sigma.size(), 0)}, {1});
  }

  inline DPA full(const Alphabet& sigma = binary())
  {
    return dpa_from(sigma, {std::vector<int>(sigma.size(), 0)}, {0});
  }

  /// 0·Σ^ω
  inline DPA clopen() { return dpa_from(binary(), {{1, 2}, {1, 1}, {2, 2}}, {1, 0, 1}); }

  /// {0^ω}
  inline DPA zero_omega() { return dpa_from(binary(), {{0, 1}, {1, 1}}, {0, 1}); }

  /// Σ*·1·Σ^ω
  inline DPA open_one() { return dpa_from(binary(), {{0, 1}, {1, 1}}, {1, 0}); }

  /// (0*1)^ω: infinitely many 1s
  inline DPA inf_one() { return dpa_from(binary(), {{0, 1}, {0, 1}}, {1, 0}); }

  /// finitely many 1s
  inline DPA fin_one() { return complement_dpa(inf_one()); }

  /// ∅ + (0*1)^ω over {0,1,p,m}
  inline DPA sum_empty_inf_one()
  {
    return sum_dpa(empty(sum_alphabet()), inf_one(), {'p'}, {'m'});
  }

  /// The eight languages of the lattice checks, by name.
  inline std::vector<std::pair<std::string, DPA>> lattice()
  {
    return {{"empty", empty()},           {"full", full()},
            {"clopen", clopen()},         {"zero-omega", zero_omega()},
            {"open", open_one()},         {"inf-one", inf_one()},
            {"fin-one", fin_one()},       {"sum-empty-inf-one", sum_empty_inf_one()}};
  }

  inline std::optional<DPA> dpa_by_name(const std::string& name)
  {
    for (auto& [n, d]: lattice())
      if (n == name)
        return d;
    return std::nullopt;
  }

  /// Inverse image of L(d) under the letter map sending every letter
  /// outside d's alphabet to `as`. Keeps the Wadge degree.
  inline DPA lift(const DPA& d, const Alphabet& wider, Letter as = '0')
  {
    if (!d.alphabet().subset_of(wider))
      fail(ErrorCode::AlphabetMismatch, "lift needs a wider alphabet");
    std::vector<int> delta;
    for (int q = 0; q < d.num_states(); ++q)
      for (Letter c: wider.letters())
        delta.push_back(d.next(q, d.alphabet().contains(c) ? c : as));
    return DPA(wider, d.num_states(), d.initial(), std::move(delta), d.priorities());
  }

  /// Counter never moves; accepts the words with infinitely many 1s.
  inline OCBA oca_idle()
  {
    std::vector<OcbaTransition> t;
    for (int q = 0; q < 2; ++q)
      {
        t.push_back({q, '0', 0, 0, 0});
        t.push_back({q, '1', 0, 1, 0});
      }
    return OCBA(binary(), 2, 0, t, {1});
  }

  /// Accepts 0^n·1^n·c·w (n >= 1, c any letter): pushes on 0, pops on 1,
  /// then a zero test leads to an accepting sink.
  inline OCBA oca_push_pop()
  {
    enum { P, Q, R };
    std::vector<OcbaTransition> t{
      {P, '0', 0, P, 1}, {P, '0', 1, P, 1}, {P, '1', 1, Q, -1}, {Q, '1', 1, Q, -1},
      {Q, '0', 0, R, 0}, {Q, '1', 0, R, 0}, {R, '0', 0, R, 0}, {R, '1', 0, R, 0},
    };
    return OCBA(binary(), 3, P, t, {R});
  }

  inline std::vector<std::pair<std::string, OCBA>> ocbas()
  {
    return {{"oca-idle", oca_idle()}, {"oca-push-pop", oca_push_pop()}};
  }

  /// Empty by construction, each for a different reason.
  inline std::vector<std::pair<std::string, OCBA>> empty_ocbas()
  {
    const Alphabet b = binary();
    std::vector<std::pair<std::string, OCBA>> out;
    {
      std::vector<OcbaTransition> t;
      for (int q = 0; q < 2; ++q)
        {
          t.push_back({q, '0', 0, 0, 0});
          t.push_back({q, '1', 0, 1, 0});
        }
      out.emplace_back("no-final", OCBA(b, 2, 0, t, {}));
    }
    out.emplace_back("final-unreachable",
                     OCBA(b, 2, 0, {{0, '0', 0, 0, 0}, {0, '1', 0, 0, 0}, {1, '0', 0, 1, 0}},
                          {1}));
    out.emplace_back("final-dead-end",
                     OCBA(b, 2, 0, {{0, '1', 0, 0, 0}, {0, '0', 0, 1, 0}}, {1}));
    out.emplace_back("final-loop-needs-zero",
                     OCBA(b, 3, 0,
                          {{0, '0', 0, 1, 1}, {1, '0', 0, 1, 0}, {1, '1', 1, 2, 0},
                           {2, '0', 1, 2, 0}, {2, '1', 1, 2, 0}},
                          {1}));
    out.emplace_back("final-loop-decrements",
                     OCBA(b, 2, 0,
                          {{0, '0', 0, 0, 1}, {0, '0', 1, 0, 1}, {0, '1', 1, 1, 0},
                           {1, '0', 1, 1, -1}},
                          {1}));
    return out;
  }

  /// {(x, x)} over {a, b}.
  inline TTBA identity_relation(const Alphabet& sigma = Alphabet::of("ab"))
  {
    std::vector<TtbaTransition> t;
    for (Letter c: sigma.letters())
      t.push_back({0, Word(1, c), Word(1, c), 0});
    return TTBA(sigma, sigma, 1, 0, t, {0});
  }
}
