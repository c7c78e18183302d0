#pragma once

// Parity games under the min-parity convention: player Even (P2) wins a
// play iff the least priority seen infinitely often is even.

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace wlab
{
  enum class Player
  {
    P1 = 0,  // odd
    P2 = 1,  // even
  };

  inline Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
  inline const char* player_name(Player p) { return p == Player::P1 ? "P1" : "P2"; }

  /// The player a priority favours.
  inline Player favoured_by(int priority) { return priority % 2 == 0 ? Player::P2 : Player::P1; }

  class ParityGame
  {
  public:
    int add_node(Player owner, int priority)
    {
      if (priority < 0)
        fail(ErrorCode::MalformedAutomaton, "priorities must be >= 0");
      owner_.push_back(owner);
      priority_.push_back(priority);
      succ_.emplace_back();
      return static_cast<int>(owner_.size()) - 1;
    }
    void add_edge(int from, int to) { succ_[idx(from)].push_back(to); }

    std::size_t size() const noexcept { return owner_.size(); }
    Player owner(int v) const { return owner_[idx(v)]; }
    int priority(int v) const { return priority_[idx(v)]; }
    const std::vector<int>& successors(int v) const { return succ_[idx(v)]; }
    int initial = 0;

    /// Rejects dead ends and dangling edges.
    void validate() const
    {
      for (std::size_t v = 0; v < size(); ++v)
        {
          if (succ_[v].empty())
            fail(ErrorCode::MalformedAutomaton,
                 "node " + std::to_string(v) + " has no successor");
          for (int w: succ_[v])
            if (w < 0 || static_cast<std::size_t>(w) >= size())
              fail(ErrorCode::MalformedAutomaton, "edge to missing node");
        }
      if (size() > 0 && (initial < 0 || static_cast<std::size_t>(initial) >= size()))
        fail(ErrorCode::MalformedAutomaton, "initial node out of range");
    }

  private:
    static std::size_t idx(int v) { return static_cast<std::size_t>(v); }
    std::vector<Player> owner_;
    std::vector<int> priority_;
    std::vector<std::vector<int>> succ_;
  };

  /// Positional strategy: chosen successor per node, -1 where undefined.
  using Strategy = std::vector<int>;

  struct ParitySolution
  {
    std::vector<Player> winner;  // per node
    Strategy strategy;           // for each node, a move of its owner that
                                 // keeps a won node won (-1 on lost nodes)

    bool wins(Player p, int v) const { return winner[static_cast<std::size_t>(v)] == p; }
    std::vector<int> region(Player p) const
    {
      std::vector<int> r;
      for (std::size_t v = 0; v < winner.size(); ++v)
        if (winner[v] == p)
          r.push_back(static_cast<int>(v));
      return r;
    }
  };

  namespace detail
  {
    struct ZielonkaSolver
    {
      const ParityGame& g;
      std::vector<std::vector<int>> pred;

      explicit ZielonkaSolver(const ParityGame& game) : g(game)
      {
        pred.resize(g.size());
        for (std::size_t v = 0; v < g.size(); ++v)
          for (int w: g.successors(static_cast<int>(v)))
            pred[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
      }

      /// Attractor of `target` for p within `alive`; records the edge used
      /// by p's nodes into `strat`.
      std::vector<char> attractor(const std::vector<char>& alive, const std::vector<char>& target,
                                  Player p, Strategy& strat) const
      {
        std::vector<char> in(target);
        std::vector<int> count(g.size(), 0);
        std::deque<int> queue;
        for (std::size_t v = 0; v < g.size(); ++v)
          {
            if (!alive[v])
              continue;
            if (in[v])
              queue.push_back(static_cast<int>(v));
            for (int w: g.successors(static_cast<int>(v)))
              if (alive[static_cast<std::size_t>(w)])
                ++count[v];
          }
        while (!queue.empty())
          {
            int w = queue.front();
            queue.pop_front();
            for (int v: pred[static_cast<std::size_t>(w)])
              {
                auto vs = static_cast<std::size_t>(v);
                if (!alive[vs] || in[vs])
                  continue;
                if (g.owner(v) == p)
                  {
                    in[vs] = 1;
                    strat[vs] = w;
                    queue.push_back(v);
                  }
                else if (--count[vs] == 0)
                  {
                    in[vs] = 1;
                    queue.push_back(v);
                  }
              }
          }
        return in;
      }

      /// Fills winner/strategy for the nodes of `alive`.
      void solve(const std::vector<char>& alive, std::vector<Player>& winner, Strategy& strat)
      {
        int lo = -1;
        for (std::size_t v = 0; v < g.size(); ++v)
          if (alive[v] && (lo < 0 || g.priority(static_cast<int>(v)) < lo))
            lo = g.priority(static_cast<int>(v));
        if (lo < 0)
          return;
        Player p = favoured_by(lo);
        std::vector<char> top(g.size(), 0);
        for (std::size_t v = 0; v < g.size(); ++v)
          top[v] = alive[v] && g.priority(static_cast<int>(v)) == lo;
        Strategy attr_strat(g.size(), -1);
        auto a = attractor(alive, top, p, attr_strat);
        std::vector<char> rest(g.size(), 0);
        for (std::size_t v = 0; v < g.size(); ++v)
          rest[v] = alive[v] && !a[v];
        std::vector<Player> sub_w(g.size(), Player::P1);
        Strategy sub_s(g.size(), -1);
        solve(rest, sub_w, sub_s);
        bool opp_wins_some = false;
        for (std::size_t v = 0; v < g.size(); ++v)
          opp_wins_some = opp_wins_some || (rest[v] && sub_w[v] != p);
        if (!opp_wins_some)
          {
            for (std::size_t v = 0; v < g.size(); ++v)
              {
                if (!alive[v])
                  continue;
                winner[v] = p;
                auto vi = static_cast<int>(v);
                if (g.owner(vi) != p)
                  strat[v] = -1;
                else if (rest[v])
                  strat[v] = sub_s[v];
                else if (!top[v])
                  strat[v] = attr_strat[v];
                else
                  strat[v] = first_alive_successor(vi, alive);
              }
            return;
          }
        Player o = opponent(p);
        std::vector<char> opp_region(g.size(), 0);
        for (std::size_t v = 0; v < g.size(); ++v)
          opp_region[v] = rest[v] && sub_w[v] == o;
        Strategy battr(g.size(), -1);
        auto b = attractor(alive, opp_region, o, battr);
        std::vector<char> rest2(g.size(), 0);
        for (std::size_t v = 0; v < g.size(); ++v)
          rest2[v] = alive[v] && !b[v];
        std::vector<Player> w2(g.size(), Player::P1);
        Strategy s2(g.size(), -1);
        solve(rest2, w2, s2);
        for (std::size_t v = 0; v < g.size(); ++v)
          {
            if (!alive[v])
              continue;
            auto vi = static_cast<int>(v);
            if (b[v])
              {
                winner[v] = o;
                if (g.owner(vi) != o)
                  strat[v] = -1;
                else if (opp_region[v])
                  strat[v] = sub_s[v];
                else
                  strat[v] = battr[v];
              }
            else
              {
                winner[v] = w2[v];
                strat[v] = g.owner(vi) == w2[v] ? s2[v] : -1;
              }
          }
      }

      int first_alive_successor(int v, const std::vector<char>& alive) const
      {
        for (int w: g.successors(v))
          if (alive[static_cast<std::size_t>(w)])
            return w;
        return -1;
      }
    };
  }

  /// Recursive (Zielonka) solver with positional strategies on both
  /// winning regions.
  inline ParitySolution solve_parity(const ParityGame& g)
  {
    g.validate();
    ParitySolution s;
    s.winner.assign(g.size(), Player::P1);
    s.strategy.assign(g.size(), -1);
    detail::ZielonkaSolver z(g);
    std::vector<char> all(g.size(), 1);
    z.solve(all, s.winner, s.strategy);
    return s;
  }

  /// Certifies that `strat` wins for p from every node of `region`: the
  /// region is closed under the strategy and the opponent's moves, and the
  /// graph they leave has no cycle whose least priority favours the
  /// opponent. Returns an empty string on success, else the reason.
  inline std::string certify_strategy(const ParityGame& g, Player p,
                                      const std::vector<int>& region, const Strategy& strat)
  {
    std::vector<char> in(g.size(), 0);
    for (int v: region)
      in[static_cast<std::size_t>(v)] = 1;
    std::vector<std::vector<int>> edges(g.size());
    for (int v: region)
      {
        auto vs = static_cast<std::size_t>(v);
        if (g.owner(v) == p)
          {
            int w = strat[vs];
            const auto& succ = g.successors(v);
            if (w < 0 || std::find(succ.begin(), succ.end(), w) == succ.end())
              return "node " + std::to_string(v) + " has no legal strategy move";
            if (!in[static_cast<std::size_t>(w)])
              return "strategy leaves the region at node " + std::to_string(v);
            edges[vs].push_back(w);
          }
        else
          for (int w: g.successors(v))
            {
              if (!in[static_cast<std::size_t>(w)])
                return "opponent escapes the region at node " + std::to_string(v);
              edges[vs].push_back(w);
            }
      }
    std::vector<int> bad;
    for (int v: region)
      if (favoured_by(g.priority(v)) != p)
        bad.push_back(g.priority(v));
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    for (int q: bad)
      {
        // cycle through priority q using only priorities >= q
        detail::TaggedGraph sub;
        sub.adj.resize(g.size());
        for (int v: region)
          {
            if (g.priority(v) < q)
              continue;
            for (int w: edges[static_cast<std::size_t>(v)])
              if (g.priority(w) >= q)
                sub.add_edge(v, w);
          }
        auto sum = detail::summarize_components(sub);
        for (int v: region)
          if (g.priority(v) == q && sum.cyclic[static_cast<std::size_t>(sum.comp[static_cast<std::size_t>(v)])])
            return "opponent can force a cycle of least priority " + std::to_string(q)
              + " through node " + std::to_string(v);
      }
    return {};
  }
}
