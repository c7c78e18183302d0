#pragma once

// Wadge games W(L, L') between deterministic parity automata, compiled to
// parity games. Player 2 wins iff it writes infinitely often and the two
// runs agree on acceptance.

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "parity.hpp"

namespace wlab
{
  // ------------------------------------------------------------------
  // Zielonka tree of a Muller condition over a small colour set

  /// Deterministic parity automaton for a Muller condition given as a
  /// predicate on colour masks, read one colour at a time.
  class ZielonkaTreeAutomaton
  {
  public:
    using Mask = std::uint32_t;

    ZielonkaTreeAutomaton(int colours, std::function<bool(Mask)> accepting)
      : accepting_(std::move(accepting))
    {
      if (colours < 1 || colours > 20)
        fail(ErrorCode::BudgetExceeded, "colour set too large for the Zielonka tree");
      Mask all = colours == 32 ? ~Mask{0} : ((Mask{1} << colours) - 1);
      root_accepts_ = accepting_(all);
      build(all, -1, 0);
      for (std::size_t n = 0; n < nodes_.size(); ++n)
        if (nodes_[n].children.empty())
          {
            leaf_index_[static_cast<int>(n)] = static_cast<int>(leaves_.size());
            leaves_.push_back(static_cast<int>(n));
          }
    }

    int num_leaves() const noexcept { return static_cast<int>(leaves_.size()); }
    int max_priority() const
    {
      int d = 0;
      for (auto& n: nodes_)
        d = std::max(d, n.depth);
      return d + 1;
    }
    int initial_leaf() const { return leaf_index_.at(leftmost_leaf(0)); }

    /// Reads one colour from a leaf; returns (next leaf, priority).
    std::pair<int, int> step(int leaf, int colour) const
    {
      int n = leaves_[static_cast<std::size_t>(leaf)];
      Mask bit = Mask{1} << colour;
      int child = -1;
      while (!(nodes_[static_cast<std::size_t>(n)].label & bit))
        {
          child = n;
          n = nodes_[static_cast<std::size_t>(n)].parent;
        }
      int prio = nodes_[static_cast<std::size_t>(n)].depth + (root_accepts_ ? 0 : 1);
      const auto& kids = nodes_[static_cast<std::size_t>(n)].children;
      if (kids.empty())
        return {leaf_index_.at(n), prio};
      std::size_t pos = 0;
      if (child >= 0)
        pos = (static_cast<std::size_t>(std::find(kids.begin(), kids.end(), child) - kids.begin())
               + 1) % kids.size();
      return {leaf_index_.at(leftmost_leaf(kids[pos])), prio};
    }

  private:
    struct Node
    {
      Mask label;
      int parent;
      int depth;
      std::vector<int> children;
    };

    int build(Mask label, int parent, int depth)
    {
      int id = static_cast<int>(nodes_.size());
      nodes_.push_back({label, parent, depth, {}});
      bool acc = accepting_(label);
      // maximal nonempty submasks with the other outcome
      std::vector<Mask> cand;
      for (Mask s = (label - 1) & label; s; s = (s - 1) & label)
        if (accepting_(s) != acc)
          cand.push_back(s);
      std::vector<Mask> maximal;
      for (Mask s: cand)
        {
          bool dominated = false;
          for (Mask t: cand)
            if (t != s && (s & t) == s)
              {
                dominated = true;
                break;
              }
          if (!dominated)
            maximal.push_back(s);
        }
      std::sort(maximal.begin(), maximal.end());
      for (Mask s: maximal)
        {
          int c = build(s, id, depth + 1);
          nodes_[static_cast<std::size_t>(id)].children.push_back(c);
        }
      return id;
    }

    int leftmost_leaf(int n) const
    {
      while (!nodes_[static_cast<std::size_t>(n)].children.empty())
        n = nodes_[static_cast<std::size_t>(n)].children.front();
      return n;
    }

    std::function<bool(Mask)> accepting_;
    bool root_accepts_ = false;
    std::vector<Node> nodes_;
    std::vector<int> leaves_;
    std::map<int, int> leaf_index_;
  };

  // ------------------------------------------------------------------
  // Arena

  /// A move of the Wadge game: a letter, or the skip token of player 2.
  struct Move
  {
    bool skip = false;
    Letter letter = 0;

    static Move skip_move() { return {true, 0}; }
    static Move of(Letter c) { return {false, c}; }
    std::string str() const { return skip ? "s" : std::string(1, letter); }
    bool operator==(const Move&) const = default;
  };

  struct ArenaNode
  {
    Player turn;
    int q_l;        // state of the automaton for L (P1's word)
    int q_lp;       // state of the automaton for L' (P2's word)
    int leaf;       // Zielonka tree automaton state
    Letter last;    // at P2 nodes: the letter P1 just played
    auto operator<=>(const ArenaNode&) const = default;
  };

  struct WadgeArena
  {
    DPA d_l;
    DPA d_lp;
    ParityGame game;
    std::vector<ArenaNode> nodes;
    std::vector<std::vector<Move>> labels;  // parallel to game successors

    /// Successor of `v` under move `m`, or -1 if unavailable.
    int move_target(int v, const Move& m) const
    {
      const auto& l = labels[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] == m)
          return game.successors(v)[i];
      return -1;
    }
    Move move_label(int v, int w) const
    {
      const auto& s = game.successors(v);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == w)
          return labels[static_cast<std::size_t>(v)][i];
      fail(ErrorCode::IllegalMove, "no edge between the given nodes");
    }
    std::vector<Move> legal_moves(int v) const { return labels[static_cast<std::size_t>(v)]; }
  };

  namespace detail
  {
    /// Colour layout: 1:p for each priority of d_l, 2:p for d_lp, then W.
    struct WadgeColours
    {
      int n1, n2;
      int c1(int p) const { return p; }
      int c2(int p) const { return n1 + p; }
      int write() const { return n1 + n2; }
      int count() const { return n1 + n2 + 1; }

      bool accepting(std::uint32_t s) const
      {
        if (!(s & (1u << write())))
          return false;
        int m1 = -1, m2 = -1;
        for (int p = 0; p < n1 && m1 < 0; ++p)
          if (s & (1u << c1(p)))
            m1 = p;
        for (int p = 0; p < n2 && m2 < 0; ++p)
          if (s & (1u << c2(p)))
            m2 = p;
        if (m1 < 0 || m2 < 0)
          return false;
        return (m1 % 2) == (m2 % 2);
      }
    };
  }

  /// Arena of W(L(d_l), L(d_lp)). P1 nodes carry the least priority the
  /// Zielonka tree automaton emitted during the round that led to them; P2
  /// nodes carry a neutral priority above all others.
  inline WadgeArena build_wadge_arena(const DPA& d_l, const DPA& d_lp)
  {
    detail::WadgeColours col{d_l.max_priority() + 1, d_lp.max_priority() + 1};
    ZielonkaTreeAutomaton zt(col.count(), [col](std::uint32_t s) { return col.accepting(s); });
    const int neutral = zt.max_priority() + 1 + (zt.max_priority() % 2 == 0 ? 1 : 0);

    WadgeArena a{d_l, d_lp, {}, {}, {}};
    std::map<std::pair<ArenaNode, int>, int> index;  // (node, P1 priority)
    std::deque<int> work;
    auto node_id = [&](const ArenaNode& n, int prio) -> int
    {
      auto key = std::make_pair(n, n.turn == Player::P1 ? prio : -1);
      auto it = index.find(key);
      if (it != index.end())
        return it->second;
      int id = a.game.add_node(n.turn, n.turn == Player::P1 ? prio : neutral);
      a.nodes.push_back(n);
      a.labels.emplace_back();
      index.emplace(key, id);
      work.push_back(id);
      return id;
    };
    a.game.initial = node_id({Player::P1, d_l.initial(), d_lp.initial(), zt.initial_leaf(), 0},
                             neutral);
    while (!work.empty())
      {
        int v = work.front();
        work.pop_front();
        ArenaNode n = a.nodes[static_cast<std::size_t>(v)];
        if (n.turn == Player::P1)
          {
            for (Letter c: d_l.alphabet().letters())
              {
                int w = node_id({Player::P2, d_l.next(n.q_l, c), n.q_lp, n.leaf, c}, 0);
                a.game.add_edge(v, w);
                a.labels[static_cast<std::size_t>(v)].push_back(Move::of(c));
              }
            continue;
          }
        auto round = [&](std::vector<int> colours, int q_lp, Move m)
        {
          int leaf = n.leaf, prio = neutral;
          for (int c: colours)
            {
              auto [next, p] = zt.step(leaf, c);
              leaf = next;
              prio = std::min(prio, p);
            }
          int w = node_id({Player::P1, n.q_l, q_lp, leaf, 0}, prio);
          a.game.add_edge(v, w);
          a.labels[static_cast<std::size_t>(v)].push_back(m);
        };
        int c1 = col.c1(d_l.priority(n.q_l));
        for (Letter c: d_lp.alphabet().letters())
          {
            int q = d_lp.next(n.q_lp, c);
            round({c1, col.c2(d_lp.priority(q)), col.write()}, q, Move::of(c));
          }
        round({c1}, n.q_lp, Move::skip_move());
      }
    return a;
  }

  struct WadgeResult
  {
    bool leq;                // player 2 wins from the initial node
    WadgeArena arena;
    ParitySolution solution;

    Player winner() const { return leq ? Player::P2 : Player::P1; }
  };

  inline WadgeResult wadge_game(const DPA& d_l, const DPA& d_lp)
  {
    WadgeArena arena = build_wadge_arena(d_l, d_lp);
    ParitySolution sol = solve_parity(arena.game);
    bool leq = sol.wins(Player::P2, arena.game.initial);
    return {leq, std::move(arena), std::move(sol)};
  }

  /// L(d_l) ≤_W L(d_lp).
  inline bool wadge_leq(const DPA& d_l, const DPA& d_lp) { return wadge_game(d_l, d_lp).leq; }

  inline bool wadge_equiv(const DPA& a, const DPA& b)
  {
    return wadge_leq(a, b) && wadge_leq(b, a);
  }

  inline bool is_self_dual(const DPA& d)
  {
    DPA c = complement_dpa(d);
    return wadge_leq(d, c) && wadge_leq(c, d);
  }

  /// The same automaton started after reading `u`.
  inline DPA residual_dpa(const DPA& d, std::string_view u)
  {
    return DPA(d.alphabet(), d.num_states(), d.run(u, d.initial()), d.delta(), d.priorities());
  }

  /// L ≡_W Σ1·L1 ∪ Σ2·L2 with L_i the residual of L after a_i·u_i, where
  /// a_i is the first letter of Σ_i in alphabet order.
  struct SelfDualWitness
  {
    std::vector<Letter> sigma1, sigma2;
    Word u1, u2;
  };

  /// Bounded search over partitions and words of length <= max_len.
  /// Throws NotSelfDual when d is not self-dual; std::nullopt means no
  /// witness within the bound.
  inline std::optional<SelfDualWitness> self_dual_decompose(const DPA& d, std::size_t max_len = 3)
  {
    if (!is_self_dual(d))
      fail(ErrorCode::NotSelfDual, "the language is not self-dual");
    const Alphabet& sigma = d.alphabet();
    const std::size_t n = sigma.size();
    if (n < 2)
      return std::nullopt;
    std::vector<Word> words{""};
    for (std::size_t len = 1; len <= max_len; ++len)
      {
        std::size_t start = words.size();
        for (std::size_t i = 0; i < start; ++i)
          if (words[i].size() == len - 1)
            for (Letter c: sigma.letters())
              words.push_back(words[i] + c);
      }
    // everything below depends only on the residual state
    std::map<int, bool> nsd;
    std::map<std::pair<int, int>, bool> dual;
    auto at_state = [&](int q)
    { return DPA(sigma, d.num_states(), q, d.delta(), d.priorities()); };
    auto non_self_dual = [&](int q)
    {
      auto it = nsd.find(q);
      if (it != nsd.end())
        return it->second;
      bool r = !is_self_dual(at_state(q));
      nsd[q] = r;
      return r;
    };
    auto duals = [&](int q1, int q2)
    {
      auto key = std::make_pair(q1, q2);
      auto it = dual.find(key);
      if (it != dual.end())
        return it->second;
      bool r = wadge_equiv(at_state(q1), complement_dpa(at_state(q2)));
      dual[key] = r;
      return r;
    };
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask)
      {
        std::vector<Letter> s1, s2;
        for (std::size_t i = 0; i < n; ++i)
          ((mask >> i) & 1 ? s1 : s2).push_back(sigma[i]);
        for (const Word& u1: words)
          {
            int q1 = d.run(Word(1, s1.front()) + u1, d.initial());
            if (!non_self_dual(q1))
              continue;
            for (const Word& u2: words)
              {
                int q2 = d.run(Word(1, s2.front()) + u2, d.initial());
                if (!non_self_dual(q2) || !duals(q1, q2))
                  continue;
                DPA candidate = partitioned_union_dpa(s1, at_state(q1), s2, at_state(q2));
                if (wadge_equiv(candidate, d))
                  return SelfDualWitness{s1, s2, u1, u2};
              }
          }
      }
    return std::nullopt;
  }

  // ------------------------------------------------------------------
  // Playing

  /// Node reached from the initial node by a move history.
  inline int replay(const WadgeArena& a, const std::vector<Move>& history)
  {
    int v = a.game.initial;
    for (std::size_t i = 0; i < history.size(); ++i)
      {
        int w = a.move_target(v, history[i]);
        if (w < 0)
          fail(ErrorCode::IllegalMove,
               "move " + std::to_string(i + 1) + " '" + history[i].str() + "' is not legal");
        v = w;
      }
    return v;
  }

  /// The strategy's move at node v.
  inline Move strategy_move(const WadgeArena& a, const Strategy& s, int v)
  {
    int w = s[static_cast<std::size_t>(v)];
    if (w < 0)
      {
        // outside the strategy's region: any legal move
        w = a.game.successors(v).front();
      }
    return a.move_label(v, w);
  }

  /// Applies the opponent's move after `history` and returns the
  /// strategy's reply.
  inline Move strategy_step(const WadgeArena& a, const Strategy& s,
                            const std::vector<Move>& history, const Move& opponent_move)
  {
    int v = replay(a, history);
    int w = a.move_target(v, opponent_move);
    if (w < 0)
      fail(ErrorCode::IllegalMove, "'" + opponent_move.str() + "' is not a legal move here");
    return strategy_move(a, s, w);
  }

  /// Player 2 repeats player 1's last letter; needs X ⊆ Y.
  inline Strategy copy_strategy(const WadgeArena& a)
  {
    Strategy s(a.game.size(), -1);
    for (std::size_t v = 0; v < a.game.size(); ++v)
      if (a.nodes[v].turn == Player::P2)
        s[v] = a.move_target(static_cast<int>(v), Move::of(a.nodes[v].last));
    return s;
  }
}
