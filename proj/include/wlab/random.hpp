#pragma once

// Seeded generators for test inputs. Every generator draws from the
// caller's engine, so a suite is reproducible from its seed alone.

#include <random>
#include <vector>

#include "core.hpp"

namespace wlab::random
{
  using Engine = std::mt19937_64;

  inline std::size_t uniform(Engine& rng, std::size_t lo, std::size_t hi)
  {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  inline int uniform_int(Engine& rng, int lo, int hi)
  {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }

  inline Word word(Engine& rng, const Alphabet& sigma, std::size_t len)
  {
    Word w;
    for (std::size_t i = 0; i < len; ++i)
      w += sigma[uniform(rng, 0, sigma.size() - 1)];
    return w;
  }

  inline Lasso lasso(Engine& rng, const Alphabet& sigma, std::size_t max_prefix,
                     std::size_t max_loop)
  {
    Word u = word(rng, sigma, uniform(rng, 0, max_prefix));
    Word v = word(rng, sigma, uniform(rng, 1, max_loop));
    return Lasso::make(std::move(u), std::move(v));
  }

  /// A lasso over Σ ∪ {A} biased towards block-shaped words: starts with A
  /// most of the time and mixes runs of zeros.
  inline Lasso coded_lasso(Engine& rng, const Alphabet& sigma, std::size_t max_prefix,
                           std::size_t max_loop)
  {
    auto part = [&](std::size_t len)
    {
      Word w;
      while (w.size() < len)
        {
          switch (uniform(rng, 0, 3))
            {
            case 0:
              w += marker_letter;
              break;
            case 1:
              w.append(uniform(rng, 1, 3), '0');
              break;
            default:
              w += sigma[uniform(rng, 0, sigma.size() - 1)];
            }
        }
      w.resize(len);
      return w;
    };
    Word u = part(uniform(rng, 0, max_prefix));
    Word v = part(uniform(rng, 1, max_loop));
    if (uniform(rng, 0, 4) != 0)
      {
        if (u.empty())
          v[0] = marker_letter;
        else
          u[0] = marker_letter;
      }
    return Lasso::make(std::move(u), std::move(v));
  }

  inline LassoPair coded_pair(Engine& rng, const Alphabet& sigma, std::size_t max_prefix = 6,
                              std::size_t max_loop = 6)
  {
    Lasso a = coded_lasso(rng, sigma, max_prefix, max_loop);
    Lasso b = coded_lasso(rng, sigma, max_prefix, max_loop);
    return {a, b};
  }

  /// A pair whose blocks are mostly the right size: tape 1 blocks A·0^k·x,
  /// tape 2 blocks A·0^k, with k drifting from the block index now and then
  /// and an occasional single-letter mutation.
  inline LassoPair shaped_pair(Engine& rng, const Alphabet& sigma)
  {
    Alphabet gamma = coding_alphabet(sigma);
    auto zeros = [&](std::size_t i)
    {
      std::size_t k = i;
      if (uniform(rng, 0, 3) == 0)
        k = uniform(rng, 0, 1) ? k + 1 : (k > 0 ? k - 1 : 0);
      return k;
    };
    auto tape = [&](bool with_letter)
    {
      std::size_t pre = uniform(rng, 0, 4), loop = uniform(rng, 1, 2);
      Word u, v;
      for (std::size_t i = 1; i <= pre + loop; ++i)
        {
          Word b(1, marker_letter);
          b.append(zeros(i), '0');
          if (with_letter)
            b += sigma[uniform(rng, 0, sigma.size() - 1)];
          (i <= pre ? u : v) += b;
        }
      if (uniform(rng, 0, 4) == 0)
        {
          Word& w = uniform(rng, 0, 1) && !u.empty() ? u : v;
          w[uniform(rng, 0, w.size() - 1)] = gamma[uniform(rng, 0, gamma.size() - 1)];
        }
      return Lasso::make(std::move(u), std::move(v));
    };
    Lasso a = tape(true);
    Lasso b = tape(false);
    return {a, b};
  }

  /// Half block-shaped, half loosely coded.
  inline LassoPair mixed_pair(Engine& rng, const Alphabet& sigma)
  {
    return uniform(rng, 0, 1) ? shaped_pair(rng, sigma) : coded_pair(rng, sigma);
  }

  /// Up to `max_states` states, each (state, letter, zero flag) pair gets
  /// 0..2 transitions.
  inline OCBA ocba(Engine& rng, const Alphabet& sigma, int max_states = 4)
  {
    int n = uniform_int(rng, 1, max_states);
    std::vector<OcbaTransition> t;
    for (int q = 0; q < n; ++q)
      for (Letter c: sigma.letters())
        for (int z = 0; z < 2; ++z)
          {
            int k = uniform_int(rng, 0, 2);
            for (int i = 0; i < k; ++i)
              {
                int d = z == 0 ? uniform_int(rng, 0, 1) : uniform_int(rng, -1, 1);
                t.push_back({q, c, z, uniform_int(rng, 0, n - 1), d});
              }
          }
    std::vector<int> finals;
    for (int q = 0; q < n; ++q)
      if (uniform(rng, 0, 2) == 0)
        finals.push_back(q);
    return OCBA(sigma, n, 0, std::move(t), std::move(finals));
  }

  /// Normalized 2-tape automaton with up to `max_states` states.
  inline TTBA ttba(Engine& rng, const Alphabet& sigma, int max_states = 4,
                   std::size_t max_transitions = 10)
  {
    int n = uniform_int(rng, 1, max_states);
    std::size_t m = uniform(rng, 1, max_transitions);
    std::vector<TtbaTransition> t;
    for (std::size_t i = 0; i < m; ++i)
      {
        int from = uniform_int(rng, 0, n - 1), to = uniform_int(rng, 0, n - 1);
        Word a, b;
        switch (uniform(rng, 0, 2))
          {
          case 0:
            a = word(rng, sigma, 1);
            break;
          case 1:
            b = word(rng, sigma, 1);
            break;
          default:
            a = word(rng, sigma, 1);
            b = word(rng, sigma, 1);
          }
        t.push_back({from, a, b, to});
      }
    std::vector<int> finals;
    for (int q = 0; q < n; ++q)
      if (uniform(rng, 0, 1) == 0)
        finals.push_back(q);
    return TTBA(sigma, sigma, n, 0, std::move(t), std::move(finals));
  }

  /// Complete DPA with up to `max_states` states and priorities < 4.
  inline DPA dpa(Engine& rng, const Alphabet& sigma, int max_states = 4)
  {
    int n = uniform_int(rng, 1, max_states);
    std::vector<int> delta, pr;
    for (int q = 0; q < n; ++q)
      {
        pr.push_back(uniform_int(rng, 0, 3));
        for (std::size_t a = 0; a < sigma.size(); ++a)
          delta.push_back(uniform_int(rng, 0, n - 1));
      }
    return DPA(sigma, n, 0, std::move(delta), std::move(pr));
  }
}
