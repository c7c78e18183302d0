#pragma once

// Wadge-game sessions for human-versus-engine play. The engine plays the
// side the human did not pick, following the solver's strategy while it
// stands in its winning region.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "wadge.hpp"
#include "wlab_format.hpp"

namespace wlab
{
  using json = nlohmann::json;

  /// Loads a DPA from a request field: a fixture name, {"fixture": name} or
  /// {"wlab": text}.
  inline DPA dpa_from_spec(const json& spec)
  {
    std::string name;
    if (spec.is_string())
      name = spec.get<std::string>();
    else if (spec.is_object() && spec.contains("fixture") && spec["fixture"].is_string())
      name = spec["fixture"].get<std::string>();
    else if (spec.is_object() && spec.contains("wlab") && spec["wlab"].is_string())
      {
        std::optional<Automaton> a;
        try
          {
            a = parse_wlab(spec["wlab"].get<std::string>());
          }
        catch (const Error& e)
          {
            if (e.code() == ErrorCode::UnsupportedKind)
              throw;
            fail(ErrorCode::BadAutomaton, e.detail());
          }
        if (auto* d = std::get_if<DPA>(&*a))
          return *d;
        fail(ErrorCode::UnsupportedKind,
             std::string("sessions need a dpa, got ") + automaton_kind(*a));
      }
    else
      fail(ErrorCode::BadAutomaton, "expected a fixture name or {\"wlab\": text}");
    if (auto d = fixtures::dpa_by_name(name))
      return *d;
    fail(ErrorCode::BadAutomaton, "unknown fixture '" + name + "'");
  }

  inline Player parse_player(const json& j)
  {
    if (j == "P1")
      return Player::P1;
    if (j == "P2")
      return Player::P2;
    fail(ErrorCode::ParseError, "humanSide must be \"P1\" or \"P2\"");
  }

  inline Move parse_move(const std::string& s)
  {
    if (s == "skip")
      return Move::skip_move();
    if (s.size() == 1)
      return Move::of(s[0]);
    fail(ErrorCode::IllegalMove, "a move is one letter or \"skip\"");
  }

  inline std::string move_name(const Move& m) { return m.skip ? "skip" : m.str(); }

  struct PlayedMove
  {
    Player player;
    Move move;
  };

  class Session
  {
  public:
    static constexpr std::size_t max_moves = 4000;

    Session(std::string id, DPA l, DPA lp, Player human)
      : id_(std::move(id)), game_(wadge_game(l, lp)), human_(human),
        node_(game_.arena.game.initial)
    {
      if (engine_to_move())
        engine_move();
    }

    json view() const
    {
      std::lock_guard lock(mu_);
      return view_locked();
    }

    json post(const std::string& text)
    {
      std::lock_guard lock(mu_);
      if (history_.size() >= max_moves)
        fail(ErrorCode::SessionFinished, "move limit reached");
      Move m = parse_move(text);
      play(m);
      if (engine_to_move())
        engine_move();
      return view_locked();
    }

    Player engine_side() const { return opponent(human_); }
    const WadgeResult& game() const { return game_; }
    int node() const
    {
      std::lock_guard lock(mu_);
      return node_;
    }

  private:
    bool engine_to_move() const
    {
      return game_.arena.nodes[static_cast<std::size_t>(node_)].turn == engine_side();
    }

    void play(const Move& m)
    {
      const ArenaNode& n = game_.arena.nodes[static_cast<std::size_t>(node_)];
      int w = game_.arena.move_target(node_, m);
      if (w < 0)
        fail(ErrorCode::IllegalMove, "'" + move_name(m) + "' is not legal here");
      Player mover = n.turn;
      history_.push_back({mover, m});
      if (mover == Player::P2)
        {
          json seen;
          seen["L"] = game_.arena.d_l.priority(n.q_l);
          const ArenaNode& after = game_.arena.nodes[static_cast<std::size_t>(w)];
          seen["Lp"] = m.skip ? json(nullptr) : json(game_.arena.d_lp.priority(after.q_lp));
          priorities_.push_back(seen);
        }
      Player top = game_.winner();
      if (mover == human_ && human_ == top && !game_.solution.wins(top, w))
        deviation_ = true;
      node_ = w;
    }

    void engine_move()
    {
      play(strategy_move(game_.arena, game_.solution.strategy, node_));
    }

    json view_locked() const
    {
      const auto& a = game_.arena;
      const ArenaNode& n = a.nodes[static_cast<std::size_t>(node_)];
      json v;
      v["id"] = id_;
      v["winner"] = player_name(game_.winner());
      v["humanSide"] = player_name(human_);
      v["engineSide"] = player_name(engine_side());
      v["node"] = node_;
      v["turn"] = player_name(n.turn);
      v["history"] = json::array();
      for (auto& h: history_)
        v["history"].push_back({{"player", player_name(h.player)}, {"move", h.move.str()}});
      v["deviation"] = deviation_;
      v["dpaStates"] = {{"L", n.q_l}, {"Lp", n.q_lp}};
      v["prioritiesSeen"] = priorities_;
      v["inWinnerRegion"] = game_.solution.wins(game_.winner(), node_);
      json legal = json::array();
      if (n.turn == human_ && history_.size() < max_moves)
        for (auto& m: a.labels[static_cast<std::size_t>(node_)])
          legal.push_back(move_name(m));
      v["legalMoves"] = legal;
      return v;
    }

    mutable std::mutex mu_;
    std::string id_;
    WadgeResult game_;
    Player human_;
    int node_;
    std::vector<PlayedMove> history_;
    json priorities_ = json::array();
    bool deviation_ = false;
  };

  /// All sessions of one server.
  class Service
  {
  public:
    json create_session(const json& body)
    {
      if (!body.is_object() || !body.contains("L") || !body.contains("Lp"))
        fail(ErrorCode::ParseError, "expected {L, Lp, humanSide}");
      DPA l = dpa_from_spec(body["L"]);
      DPA lp = dpa_from_spec(body["Lp"]);
      Player human = parse_player(body.value("humanSide", json("P1")));
      std::string id;
      {
        std::lock_guard lock(mu_);
        id = "s" + std::to_string(++counter_);
      }
      // solving may take a while; keep the registry unlocked meanwhile
      auto s = std::make_shared<Session>(id, std::move(l), std::move(lp), human);
      {
        std::lock_guard lock(mu_);
        sessions_.emplace(id, s);
      }
      return s->view();
    }

    json get_session(const std::string& id) const { return find(id)->view(); }

    json post_move(const std::string& id, const json& body)
    {
      auto s = find(id);
      if (!body.is_object() || !body.contains("move") || !body["move"].is_string())
        fail(ErrorCode::ParseError, "expected {\"move\": letter or \"skip\"}");
      return s->post(body["move"].get<std::string>());
    }

    json fixtures_list() const
    {
      json out = json::array();
      for (auto& [name, d]: fixtures::lattice())
        out.push_back({{"name", name},
                       {"alphabet", d.alphabet().str()},
                       {"states", d.num_states()},
                       {"wlab", print_wlab(d)}});
      return out;
    }

    std::shared_ptr<Session> find(const std::string& id) const
    {
      std::lock_guard lock(mu_);
      auto it = sessions_.find(id);
      if (it == sessions_.end())
        fail(ErrorCode::UnknownSession, "no session '" + id + "'");
      return it->second;
    }

  private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::size_t counter_ = 0;
  };

  inline json error_json(const Error& e)
  {
    return {{"error", error_code_name(e.code())}, {"detail", e.detail()}};
  }
}
