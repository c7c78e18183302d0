#include <gtest/gtest.h>

#include <thread>

#include "oracles.hpp"
#include "wlab/http.hpp"

using namespace wlab;

namespace
{
  ErrorCode code_of(const std::function<void()>& f)
  {
    try
      {
        f();
      }
    catch (const Error& e)
      {
        return e.code();
      }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::ParseError;
  }
}

TEST(Service, WinnersOfTheExampleGames)
{
  Service svc;
  json a = svc.create_session({{"L", "inf-one"}, {"Lp", "sum-empty-inf-one"}, {"humanSide", "P1"}});
  EXPECT_EQ(a["winner"], "P2");
  EXPECT_EQ(a["humanSide"], "P1");
  EXPECT_TRUE(a["history"].empty());
  json b = svc.create_session({{"L", "zero-omega"}, {"Lp", "open"}, {"humanSide", "P2"}});
  EXPECT_EQ(b["winner"], "P1");
  // the engine opens when the human plays P2
  ASSERT_EQ(b["history"].size(), 1u);
  EXPECT_EQ(b["history"][0]["player"], "P1");
  EXPECT_NE(a["id"], b["id"]);
}

TEST(Service, MovesAndHistory)
{
  Service svc;
  json v = svc.create_session({{"L", "inf-one"}, {"Lp", "inf-one"}, {"humanSide", "P1"}});
  std::string id = v["id"];
  EXPECT_EQ(v["legalMoves"], json::array({"0", "1"}));
  v = svc.post_move(id, {{"move", "1"}});
  ASSERT_EQ(v["history"].size(), 2u);
  EXPECT_EQ(v["history"][0]["move"], "1");
  EXPECT_EQ(v["history"][1]["player"], "P2");
  EXPECT_EQ(svc.get_session(id), v);
  EXPECT_EQ(v["prioritiesSeen"].size(), 1u);
  EXPECT_EQ(code_of([&] { svc.post_move(id, {{"move", "p"}}); }), ErrorCode::IllegalMove);
  EXPECT_EQ(code_of([&] { svc.post_move(id, {{"move", "skip"}}); }), ErrorCode::IllegalMove);
  EXPECT_EQ(svc.get_session(id), v) << "a rejected move changes nothing";
}

TEST(Service, SkipShowsAsS)
{
  Service svc;
  json v = svc.create_session({{"L", "inf-one"}, {"Lp", "inf-one"}, {"humanSide", "P2"}});
  std::string id = v["id"];
  auto legal = v["legalMoves"];
  EXPECT_NE(std::find(legal.begin(), legal.end(), "skip"), legal.end());
  v = svc.post_move(id, {{"move", "skip"}});
  EXPECT_EQ(v["history"][1]["move"], "s");
  EXPECT_TRUE(v["prioritiesSeen"][0]["Lp"].is_null());
}

TEST(Service, CopyingNeverDeviates)
{
  Service svc;
  json v = svc.create_session({{"L", "inf-one"}, {"Lp", "inf-one"}, {"humanSide", "P2"}});
  std::string id = v["id"];
  for (int i = 0; i < 50; ++i)
    {
      std::string last = v["history"].back()["move"];
      v = svc.post_move(id, {{"move", last}});
      EXPECT_FALSE(v["deviation"].get<bool>());
    }
  EXPECT_EQ(v["history"].size(), 101u);
}

TEST(Service, DeviationIsSticky)
{
  Service svc;
  // answering 1 to 0^ω leaves the winning region; the flag then stays
  json v = svc.create_session({{"L", "zero-omega"}, {"Lp", "zero-omega"}, {"humanSide", "P2"}});
  std::string id = v["id"];
  bool seen = false;
  for (int i = 0; i < 10; ++i)
    {
      v = svc.post_move(id, {{"move", "1"}});
      seen |= v["deviation"].get<bool>();
      if (seen)
        {
        EXPECT_TRUE(v["deviation"].get<bool>());
        }
    }
  EXPECT_TRUE(seen);
}

TEST(Service, RandomScriptsKeepEngineInRegion)
{
  random::Engine rng(79);
  Service svc;
  int sessions = 0;
  for (auto [l, lp]: {std::pair{"zero-omega", "open"}, std::pair{"inf-one", "sum-empty-inf-one"}})
    for (int k = 0; k < 50; ++k)
      {
        json v = svc.create_session({{"L", l}, {"Lp", lp}, {"humanSide", "P1"}});
        ++sessions;
        std::string id = v["id"];
        std::string winner = v["winner"];
        std::string engine = v["engineSide"];
        for (int i = 0; i < 40; ++i)
          {
            auto legal = v["legalMoves"];
            ASSERT_FALSE(legal.empty());
            std::string m = legal[random::uniform(rng, 0, legal.size() - 1)];
            v = svc.post_move(id, {{"move", m}});
            if (engine == winner)
              {
              EXPECT_TRUE(v["inWinnerRegion"].get<bool>());
              }
          }
        EXPECT_EQ(v["history"].size(), 80u);
      }
  EXPECT_EQ(sessions, 100);
}

TEST(Service, Errors)
{
  Service svc;
  EXPECT_EQ(code_of([&] { svc.get_session("s99"); }), ErrorCode::UnknownSession);
  EXPECT_EQ(code_of([&] { svc.create_session({{"L", {{"wlab", "wlab dpa 1\nalphabet: 0\n"}}},
                                              {"Lp", "full"}}); }),
            ErrorCode::BadAutomaton);
  EXPECT_EQ(code_of([&] { svc.create_session({{"L", "no-such"}, {"Lp", "full"}}); }),
            ErrorCode::BadAutomaton);
  std::string ocba = print_wlab(fixtures::oca_idle());
  EXPECT_EQ(code_of([&] { svc.create_session({{"L", {{"wlab", ocba}}}, {"Lp", "full"}}); }),
            ErrorCode::UnsupportedKind);
  json up = svc.create_session({{"L", {{"wlab", print_wlab(fixtures::clopen())}}},
                                {"Lp", "clopen"}, {"humanSide", "P1"}});
  EXPECT_EQ(up["winner"], "P2");
}

TEST(Http, Routes)
{
  Service svc;
  httplib::Server srv;
  install_routes(srv, svc);
  int port = srv.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  httplib::Client cli("127.0.0.1", port);

  auto fx = cli.Get("/fixtures");
  ASSERT_TRUE(fx);
  EXPECT_EQ(fx->status, 200);
  EXPECT_EQ(json::parse(fx->body).size(), 8u);

  auto made = cli.Post("/sessions",
                       json{{"L", "inf-one"}, {"Lp", "sum-empty-inf-one"}, {"humanSide", "P1"}}
                         .dump(),
                       "application/json");
  ASSERT_TRUE(made);
  EXPECT_EQ(made->status, 200);
  json v = json::parse(made->body);
  EXPECT_EQ(v["winner"], "P2");
  std::string id = v["id"];

  auto moved = cli.Post("/sessions/" + id + "/moves", json{{"move", "0"}}.dump(),
                        "application/json");
  ASSERT_TRUE(moved);
  EXPECT_EQ(json::parse(moved->body)["history"].size(), 2u);
  auto got = cli.Get("/sessions/" + id);
  EXPECT_EQ(json::parse(got->body), json::parse(moved->body));

  auto bad = cli.Post("/sessions/" + id + "/moves", json{{"move", "x"}}.dump(),
                      "application/json");
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(json::parse(bad->body)["error"], "IllegalMove");
  auto missing = cli.Get("/sessions/s404");
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"], "UnknownSession");
  auto garbage = cli.Post("/sessions", "{", "application/json");
  EXPECT_EQ(garbage->status, 400);
  EXPECT_TRUE(json::parse(garbage->body).contains("detail"));

  srv.stop();
  t.join();
}
