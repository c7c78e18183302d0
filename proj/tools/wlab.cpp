// wlab: command-line front end.
//
// Exit status: 0 ok, 1 a checked property failed, 2 bad usage or input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wlab/http.hpp"
#include "wlab/wlab.hpp"

using namespace wlab;

namespace
{
  struct Globals
  {
    std::uint64_t seed = 1;
    std::size_t depth = 0;
    long cap = 25;
    bool json = false;
  };

  std::string slurp(const std::string& path)
  {
    if (path == "-")
      {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
      }
    std::ifstream in(path);
    if (!in)
      fail(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void emit(const std::string& out_path, const std::string& text)
  {
    if (out_path.empty() || out_path == "-")
      {
        std::cout << text;
        return;
      }
    std::ofstream out(out_path);
    if (!out)
      fail(ErrorCode::ParseError, "cannot write " + out_path);
    out << text;
  }

  /// A file path, or the name of a built-in DPA fixture.
  DPA load_dpa(const std::string& what)
  {
    if (auto d = fixtures::dpa_by_name(what))
      return *d;
    return parse_wlab_as<DPA>(slurp(what));
  }

  OCBA load_ocba(const std::string& what)
  {
    for (auto& [name, m]: fixtures::ocbas())
      if (name == what)
        return m;
    return parse_wlab_as<OCBA>(slurp(what));
  }

  void print_result(const Globals& g, const json& j, const std::string& plain)
  {
    if (g.json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << plain << "\n";
  }

  json report_json(const SuiteReport& r)
  {
    json f = json::array();
    for (auto& x: r.failures)
      f.push_back({{"case", x.case_index}, {"detail", x.detail}, {"repro", x.repro}});
    return {{"suite", r.id},     {"seed", r.seed},     {"cases", r.cases},
            {"passed", r.passed}, {"failures", f},      {"seconds", r.seconds},
            {"note", r.note}};
  }

  json decomposition_json(const BlockDecomposition& d)
  {
    json blocks = json::array();
    for (auto& b: d)
      blocks.push_back(
        {{"u", b.u}, {"v", b.v}, {"w", b.w}, {"z", b.z}, {"x", std::string(1, b.x)}});
    return blocks;
  }

  int play_in_terminal(const DPA& l, const DPA& lp, Player human)
  {
    Service svc;
    json view = svc.create_session({{"L", {{"wlab", print_wlab(l)}}},
                                    {"Lp", {{"wlab", print_wlab(lp)}}},
                                    {"humanSide", player_name(human)}});
    std::cout << "winner with best play: " << view["winner"].get<std::string>() << "\n"
              << "you are " << player_name(human) << "; enter a letter, 'skip' or 'quit'\n";
    std::string line;
    while (true)
      {
        std::string hist;
        for (auto& h: view["history"])
          hist += h["move"].get<std::string>();
        std::cout << "history: " << (hist.empty() ? "-" : hist) << "   legal:";
        for (auto& m: view["legalMoves"])
          std::cout << " " << m.get<std::string>();
        if (view["deviation"].get<bool>())
          std::cout << "   (you left your winning region)";
        std::cout << "\n> " << std::flush;
        if (!std::getline(std::cin, line) || line == "quit")
          return 0;
        try
          {
            view = svc.post_move(view["id"].get<std::string>(), {{"move", line}});
          }
        catch (const Error& e)
          {
            std::cout << e.what() << "\n";
          }
      }
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"wlab: Wadge degrees of one-counter relations, executable parts"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--depth", g.depth, "depth in blocks (suites, bounded search)");
  app.add_option("--cap", g.cap, "counter cap for bounded search");
  app.add_flag("--json", g.json, "machine-readable output");
  app.fallthrough();

  int status = 0;

  // encode
  auto* encode = app.add_subcommand("encode", "print the first blocks of (h(x), alpha)");
  std::string enc_x;
  std::size_t enc_blocks = 5;
  encode->add_option("lasso,--x", enc_x, "x as u(v) or a finite word")->required();
  encode->add_option("--blocks", enc_blocks, "number of blocks");
  encode->callback([&]
  {
    Word xs;
    if (enc_x.find('(') == std::string::npos)
      {
        // a finite word supplies exactly its own blocks
        xs = enc_x;
        if (xs.size() < enc_blocks)
          fail(ErrorCode::ParseError, "word shorter than --blocks");
        xs.resize(enc_blocks);
        fixtures::binary().require_word(xs);
      }
    else
      {
        Lasso x = parse_lasso(enc_x);
        fixtures::binary().require_word(x.prefix() + x.loop());
        xs = x.take(enc_blocks);
      }
    Word t1 = h_prefix(xs, enc_blocks), t2 = alpha_prefix(enc_blocks);
    print_result(g, {{"tape1", t1}, {"tape2", t2}}, t1 + "\n" + t2);
  });

  // parse-pair
  auto* parse = app.add_subcommand("parse-pair", "split a pair prefix into coding blocks");
  std::string pp1, pp2, pp_sigma = "01";
  bool pp_shape = false;
  parse->add_option("tape1", pp1)->required();
  parse->add_option("tape2", pp2)->required();
  parse->add_option("--alphabet", pp_sigma, "base alphabet letters");
  parse->add_flag("--shape", pp_shape, "require the exact (h, alpha) block shape");
  parse->callback([&]
  {
    auto res = parse_block_structure(Alphabet::of(pp_sigma), pp1, pp2, pp_shape);
    if (auto* f = std::get_if<ParseFailure>(&res))
      {
        print_result(g, {{"error", f->constraint}, {"block", f->block}, {"detail", f->detail}},
                     "fails " + f->constraint + " at block " + std::to_string(f->block) + ": "
                       + f->detail);
        status = 1;
        return;
      }
    const auto& ds = std::get<std::vector<BlockDecomposition>>(res);
    json all = json::array();
    std::string plain;
    for (auto& d: ds)
      {
        all.push_back({{"letters", decoded_letters(d)}, {"blocks", decomposition_json(d)}});
        plain += decoded_letters(d) + " ";
        for (auto& b: d)
          plain += "[" + std::to_string(b.u) + "," + std::to_string(b.v) + ","
            + std::to_string(b.w) + "," + std::to_string(b.z) + "]";
        plain += "\n";
      }
    print_result(g, all, std::to_string(ds.size()) + " decomposition(s)\n" + plain);
  });

  // build
  auto* build = app.add_subcommand("build", "build a construction");
  build->require_subcommand(1);
  std::string b_in, b_out, b_sigma = "01";
  for (const char* kind: {"r1", "reduction"})
    {
      auto* sc = build->add_subcommand(kind, std::string("build ") + kind + " from an OCBA");
      sc->add_option("--in", b_in, "OCBA file or fixture name")->required();
      sc->add_option("--out", b_out, "output file (default stdout)");
      std::string k = kind;
      sc->callback([&, k]
      {
        OCBA m = load_ocba(b_in);
        emit(b_out, print_wlab(k == "r1" ? build_r1(m) : build_reduction(m)));
      });
    }
  auto* b_r2 = build->add_subcommand("r2", "build R2 for a base alphabet");
  b_r2->add_option("--alphabet", b_sigma, "base alphabet letters");
  b_r2->add_option("--out", b_out, "output file (default stdout)");
  b_r2->callback([&] { emit(b_out, print_wlab(build_r2(Alphabet::of(b_sigma)))); });

  std::string s_lp, s_l, s_plus, s_minus;
  auto add_sum = [&](CLI::App* sc)
  {
    sc->add_option("--lprime", s_lp, "DPA over Y (file, or fixture widened to Y)")->required();
    sc->add_option("--l", s_l, "DPA over X (file or fixture)")->required();
    sc->add_option("--plus", s_plus, "letters of X+")->required();
    sc->add_option("--minus", s_minus, "letters of X-")->required();
    sc->add_option("--out", b_out, "output file (default stdout)");
    sc->callback([&]
    {
      std::vector<Letter> p(s_plus.begin(), s_plus.end()), m(s_minus.begin(), s_minus.end());
      DPA l = load_dpa(s_l), lp = load_dpa(s_lp);
      // built-in fixtures live over {0,1}; widen them to Y on request
      Alphabet y = l.alphabet();
      for (Letter c: p)
        y = y.with(c);
      for (Letter c: m)
        y = y.with(c);
      if (fixtures::dpa_by_name(s_lp) && !(lp.alphabet() == y))
        lp = fixtures::lift(lp, y);
      emit(b_out, print_wlab(sum_dpa(lp, l, p, m)));
    });
  };
  add_sum(build->add_subcommand("sum", "the sum L' + L"));
  add_sum(app.add_subcommand("sum", "the sum L' + L (same as build sum)"));

  // member
  auto* member = app.add_subcommand("member", "lasso membership");
  member->require_subcommand(1);
  std::string m_in, m_word, m_word2;
  bool m_bounded = false;
  for (const char* kind: {"nba", "dpa", "ocba", "ttba"})
    {
      auto* sc = member->add_subcommand(kind, std::string("membership for ") + kind);
      sc->add_option("--in", m_in, "automaton file (or fixture name for dpa/ocba)")->required();
      sc->add_option("--word", m_word, "lasso u(v)")->required();
      std::string k = kind;
      if (k == "ttba")
        sc->add_option("--word2", m_word2, "second-tape lasso u(v)")->required();
      if (k == "ocba" || k == "ttba")
        sc->add_flag("--bounded", m_bounded, "bounded search (uses --depth and --cap)");
      sc->callback([&, k]
      {
        auto text = [&] { return slurp(m_in); };
        Lasso w = parse_lasso(m_word);
        SearchBudget b;
        if (g.depth)
          b.depth = g.depth;
        b.counter_cap = g.cap;
        std::string verdict;
        if (k == "nba")
          verdict = nba_lasso_member(parse_wlab_as<NBA>(text()), w) ? "accepted" : "rejected";
        else if (k == "dpa")
          verdict = dpa_lasso_member(load_dpa(m_in), w) ? "accepted" : "rejected";
        else if (k == "ocba")
          {
            OCBA m = load_ocba(m_in);
            verdict = m_bounded ? verdict_name(bounded_acceptance_search(m, w, b).verdict)
                                : (ocba_lasso_member(m, w) ? "accepted" : "rejected");
          }
        else
          {
            TTBA t = parse_wlab_as<TTBA>(text());
            LassoPair p{w, parse_lasso(m_word2)};
            verdict = m_bounded ? verdict_name(bounded_acceptance_search(t, p, b).verdict)
                                : (ttba_lasso_pair_member(t, p) ? "accepted" : "rejected");
          }
        for (auto& c: verdict)
          c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        print_result(g, {{"verdict", verdict}}, verdict);
      });
    }

  // wadge
  auto* wadge = app.add_subcommand("wadge", "Wadge games between DPA languages");
  wadge->require_subcommand(1);
  std::string w_l, w_lp, w_side = "P1";
  std::size_t w_len = 3;
  auto* leq = wadge->add_subcommand("leq", "L <=_W L'");
  auto* equiv = wadge->add_subcommand("equiv", "L ==_W L'");
  for (auto* sc: {leq, equiv})
    {
      sc->add_option("l,--l", w_l, "DPA file or fixture name")->required();
      sc->add_option("lp,--lp", w_lp, "DPA file or fixture name")->required();
    }
  leq->callback([&]
  {
    WadgeResult r = wadge_game(load_dpa(w_l), load_dpa(w_lp));
    print_result(g,
                 {{"leq", r.leq},
                  {"winner", player_name(r.winner())},
                  {"arenaNodes", r.arena.game.size()}},
                 r.leq ? "true" : "false");
  });
  equiv->callback([&]
  {
    bool e = wadge_equiv(load_dpa(w_l), load_dpa(w_lp));
    print_result(g, {{"equiv", e}}, e ? "true" : "false");
  });
  auto* selfdual = wadge->add_subcommand("selfdual", "self-duality, with a decomposition");
  selfdual->add_option("l,--l", w_l, "DPA file or fixture name")->required();
  selfdual->add_option("--max-len", w_len, "longest u_i tried");
  selfdual->callback([&]
  {
    DPA d = load_dpa(w_l);
    bool sd = is_self_dual(d);
    json j{{"selfDual", sd}};
    std::string plain = sd ? "true" : "false";
    if (sd)
      {
        if (auto wit = self_dual_decompose(d, w_len))
          {
            auto letters = [](const std::vector<Letter>& v) { return std::string(v.begin(), v.end()); };
            j["witness"] = {{"sigma1", letters(wit->sigma1)}, {"sigma2", letters(wit->sigma2)},
                            {"u1", wit->u1},                  {"u2", wit->u2}};
            plain += "\nsigma1=" + letters(wit->sigma1) + " u1=" + wit->u1
              + "\nsigma2=" + letters(wit->sigma2) + " u2=" + wit->u2;
          }
        else
          plain += "\nno decomposition with |u_i| <= " + std::to_string(w_len);
      }
    print_result(g, j, plain);
  });
  auto* play = wadge->add_subcommand("play", "play W(L, L') against the engine");
  play->add_option("l,--l", w_l, "DPA file or fixture name")->required();
  play->add_option("lp,--lp", w_lp, "DPA file or fixture name")->required();
  play->add_option("--side,--as", w_side, "your side: P1, P2, 1 or 2");
  play->callback([&]
  {
    if (w_side == "1" || w_side == "2")
      w_side = "P" + w_side;
    status = play_in_terminal(load_dpa(w_l), load_dpa(w_lp), parse_player(json(w_side)));
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> v_ids;
  verify->add_option("suite", v_ids, "suite ids or 'all' (default all)");
  verify->callback([&]
  {
    std::vector<std::string> ids;
    if (v_ids.empty() || (v_ids.size() == 1 && v_ids[0] == "all"))
      for (auto& s: suites())
        ids.push_back(s.id);
    else
      ids = v_ids;
    SuiteOptions opt{g.seed, g.depth, g.cap};
    json all = json::array();
    for (auto& id: ids)
      {
        SuiteReport r = run_verify_suite(id, opt);
        if (!r.ok())
          status = 1;
        all.push_back(report_json(r));
        if (!g.json)
          {
            std::printf("%-20s %s  %zu/%zu  seed %llu  %.2fs\n", r.id.c_str(),
                        r.ok() ? "PASS" : "FAIL", r.passed, r.cases,
                        static_cast<unsigned long long>(r.seed), r.seconds);
            if (!r.note.empty())
              std::printf("  %s\n", r.note.c_str());
            for (auto& f: r.failures)
              std::printf("  case %zu: %s\n    repro: %s\n", f.case_index, f.detail.c_str(),
                          f.repro.c_str());
          }
      }
    if (g.json)
      std::cout << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
  });

  // serve
  auto* serve = app.add_subcommand("serve", "serve the JSON API on localhost");
  int port = 8642;
  serve->add_option("--port", port, "port to bind");
  serve->callback([&]
  {
    Service svc;
    httplib::Server srv;
    install_routes(srv, svc);
    std::cerr << "listening on http://127.0.0.1:" << port << "\n";
    if (!srv.listen("127.0.0.1", port))
      {
        std::cerr << "cannot bind port " << port << "\n";
        status = 2;
      }
  });

  // fmt
  auto* fmt = app.add_subcommand("fmt", "read a WLAB file and print it canonically");
  std::string f_in = "-", f_out;
  fmt->add_option("in", f_in, "WLAB file (default stdin)");
  fmt->add_option("--out", f_out, "output file (default stdout)");
  fmt->callback([&] { emit(f_out, print_wlab(parse_wlab(slurp(f_in)))); });

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      int rc = app.exit(e);
      return rc == 0 ? 0 : 2;
    }
  catch (const Error& e)
    {
      std::cerr << "error: " << e.what() << "\n";
      if (g.json)
        std::cout << error_json(e).dump() << "\n";
      return 2;
    }
  return status;
}
