#pragma once

// WLAB: a line-oriented text format, one automaton per file.
//
//   wlab <nba|dpa|ocba|ttba> 1
//   alphabet: 0 1
//   output-alphabet: 0 1 A      (ttba only)
//   states: 3
//   initial: 0
//   final: 1 2                  (priority: p0 p1 ... for dpa)
//   <one transition per line>
//
// Transitions: nba/dpa `q a q'`, ocba `q a z q' d`, ttba `q w1 w2 q'` with
// `_` for the empty word. `#` starts a comment.

#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"

namespace wlab
{
  using Automaton = std::variant<NBA, DPA, OCBA, TTBA>;

  inline const char* automaton_kind(const Automaton& a)
  {
    static const char* names[] = {"nba", "dpa", "ocba", "ttba"};
    return names[a.index()];
  }

  namespace detail
  {
    inline std::vector<std::string> tokens(std::string_view line)
    {
      std::vector<std::string> out;
      std::istringstream in{std::string(line)};
      std::string t;
      while (in >> t)
        out.push_back(t);
      return out;
    }

    struct WlabLines
    {
      std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
      std::size_t at = 0;

      explicit WlabLines(std::string_view text)
      {
        std::size_t no = 0, start = 0;
        while (start <= text.size())
          {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
              end = text.size();
            ++no;
            auto line = text.substr(start, end - start);
            if (auto hash = line.find('#'); hash != std::string_view::npos)
              line = line.substr(0, hash);
            auto t = tokens(line);
            if (!t.empty())
              lines.emplace_back(no, std::move(t));
            start = end + 1;
          }
      }

      [[noreturn]] void error(const std::string& what) const
      {
        std::size_t no = at < lines.size() ? lines[at].first
                                           : (lines.empty() ? 0 : lines.back().first);
        fail(ErrorCode::ParseError, "line " + std::to_string(no) + ": " + what);
      }

      bool done() const { return at >= lines.size(); }

      const std::vector<std::string>& next()
      {
        if (done())
          error("unexpected end of input");
        return lines[at++].second;
      }

      /// `key: values...`
      std::vector<std::string> field(const std::string& key)
      {
        if (done())
          error("missing '" + key + ":' line");
        const auto& t = lines[at].second;
        if (t.front() != key + ":")
          error("expected '" + key + ":'");
        ++at;
        return {t.begin() + 1, t.end()};
      }

      bool peek_field(const std::string& key) const
      {
        return !done() && lines[at].second.front() == key + ":";
      }
    };

    inline int parse_int(WlabLines& in, const std::string& s)
    {
      try
        {
          std::size_t used = 0;
          int v = std::stoi(s, &used);
          if (used != s.size())
            in.error("not an integer: '" + s + "'");
          return v;
        }
      catch (const std::logic_error&)
        {
          in.error("not an integer: '" + s + "'");
        }
    }

    inline Letter parse_letter(WlabLines& in, const std::string& s)
    {
      if (s.size() != 1)
        in.error("symbols are single characters: '" + s + "'");
      return s[0];
    }

    inline Word parse_label(WlabLines& in, const std::string& s)
    {
      if (s == "_")
        return {};
      for (char c: s)
        if (is_reserved_letter(c))
          in.error("reserved character in label '" + s + "'");
      return s;
    }

    inline Alphabet parse_alphabet(WlabLines& in, const std::vector<std::string>& t)
    {
      std::vector<Letter> letters;
      for (auto& s: t)
        letters.push_back(parse_letter(in, s));
      try
        {
          return Alphabet(std::move(letters));
        }
      catch (const Error& e)
        {
          in.error(e.detail());
        }
    }

    inline std::vector<int> parse_ints(WlabLines& in, const std::vector<std::string>& t)
    {
      std::vector<int> out;
      for (auto& s: t)
        out.push_back(parse_int(in, s));
      return out;
    }

    inline void expect_arity(WlabLines& in, const std::vector<std::string>& t, std::size_t n)
    {
      if (t.size() != n)
        {
          --in.at;
          in.error("expected " + std::to_string(n) + " fields, got " + std::to_string(t.size()));
        }
    }

    inline std::string join_ints(const std::vector<int>& v)
    {
      std::string s;
      for (int x: v)
        s += " " + std::to_string(x);
      return s;
    }

    inline std::string label(const Word& w) { return w.empty() ? "_" : w; }
  }

  /// Parses one automaton. Structural problems (bad indices, missing DPA
  /// entries) surface as the constructors' errors.
  inline Automaton parse_wlab(std::string_view text)
  {
    detail::WlabLines in(text);
    const auto& head = in.next();
    if (head.size() != 3 || head[0] != "wlab")
      in.error("expected header 'wlab <kind> 1'");
    const std::string kind = head[1];
    if (head[2] != "1")
      in.error("unsupported version " + head[2]);
    if (kind != "nba" && kind != "dpa" && kind != "ocba" && kind != "ttba")
      fail(ErrorCode::UnsupportedKind, "unknown automaton kind '" + kind + "'");
    Alphabet sigma = detail::parse_alphabet(in, in.field("alphabet"));
    Alphabet gamma;
    if (kind == "ttba")
      gamma = detail::parse_alphabet(in, in.field("output-alphabet"));
    auto st = in.field("states");
    if (st.size() != 1)
      in.error("'states:' takes one number");
    int n = detail::parse_int(in, st[0]);
    auto ini = in.field("initial");
    if (ini.size() != 1)
      in.error("'initial:' takes one number");
    int initial = detail::parse_int(in, ini[0]);
    std::vector<int> finals, priority;
    if (kind == "dpa")
      priority = detail::parse_ints(in, in.field("priority"));
    else
      finals = detail::parse_ints(in, in.field("final"));

    if (kind == "nba" || kind == "dpa")
      {
        std::vector<NbaTransition> tr;
        while (!in.done())
          {
            const auto& t = in.next();
            detail::expect_arity(in, t, 3);
            tr.push_back({detail::parse_int(in, t[0]), detail::parse_letter(in, t[1]),
                          detail::parse_int(in, t[2])});
          }
        if (kind == "nba")
          return NBA(std::move(sigma), n, initial, std::move(tr), std::move(finals));
        return DPA::from_transitions(std::move(sigma), n, initial, tr, std::move(priority));
      }
    if (kind == "ocba")
      {
        std::vector<OcbaTransition> tr;
        while (!in.done())
          {
            const auto& t = in.next();
            detail::expect_arity(in, t, 5);
            tr.push_back({detail::parse_int(in, t[0]), detail::parse_letter(in, t[1]),
                          detail::parse_int(in, t[2]), detail::parse_int(in, t[3]),
                          detail::parse_int(in, t[4])});
          }
        return OCBA(std::move(sigma), n, initial, std::move(tr), std::move(finals));
      }
    std::vector<TtbaTransition> tr;
    while (!in.done())
      {
        const auto& t = in.next();
        detail::expect_arity(in, t, 4);
        tr.push_back({detail::parse_int(in, t[0]), detail::parse_label(in, t[1]),
                      detail::parse_label(in, t[2]), detail::parse_int(in, t[3])});
      }
    return TTBA(std::move(sigma), std::move(gamma), n, initial, std::move(tr),
                std::move(finals));
  }

  inline std::string print_wlab(const NBA& a)
  {
    std::string s = "wlab nba 1\nalphabet: " + a.alphabet().str() + "\nstates: "
      + std::to_string(a.num_states()) + "\ninitial: " + std::to_string(a.initial())
      + "\nfinal:" + detail::join_ints(a.final_states()) + "\n";
    for (auto& t: a.transitions())
      s += std::to_string(t.from) + " " + t.letter + " " + std::to_string(t.to) + "\n";
    return s;
  }

  inline std::string print_wlab(const DPA& a)
  {
    std::string s = "wlab dpa 1\nalphabet: " + a.alphabet().str() + "\nstates: "
      + std::to_string(a.num_states()) + "\ninitial: " + std::to_string(a.initial())
      + "\npriority:" + detail::join_ints(a.priorities()) + "\n";
    for (int q = 0; q < a.num_states(); ++q)
      for (Letter c: a.alphabet().letters())
        s += std::to_string(q) + " " + c + " " + std::to_string(a.next(q, c)) + "\n";
    return s;
  }

  inline std::string print_wlab(const OCBA& a)
  {
    std::string s = "wlab ocba 1\nalphabet: " + a.alphabet().str() + "\nstates: "
      + std::to_string(a.num_states()) + "\ninitial: " + std::to_string(a.initial())
      + "\nfinal:" + detail::join_ints(a.final_states()) + "\n";
    for (auto& t: a.transitions())
      s += std::to_string(t.from) + " " + t.letter + " " + std::to_string(t.zero) + " "
        + std::to_string(t.to) + " " + std::to_string(t.delta) + "\n";
    return s;
  }

  inline std::string print_wlab(const TTBA& a)
  {
    std::string s = "wlab ttba 1\nalphabet: " + a.input_alphabet().str()
      + "\noutput-alphabet: " + a.output_alphabet().str() + "\nstates: "
      + std::to_string(a.num_states()) + "\ninitial: " + std::to_string(a.initial())
      + "\nfinal:" + detail::join_ints(a.final_states()) + "\n";
    for (auto& t: a.transitions())
      s += std::to_string(t.from) + " " + detail::label(t.in) + " " + detail::label(t.out)
        + " " + std::to_string(t.to) + "\n";
    return s;
  }

  inline std::string print_wlab(const Automaton& a)
  {
    return std::visit([](const auto& x) { return print_wlab(x); }, a);
  }

  /// Parses and insists on one kind.
  template <typename T>
  T parse_wlab_as(std::string_view text)
  {
    Automaton a = parse_wlab(text);
    if (auto* p = std::get_if<T>(&a))
      return std::move(*p);
    fail(ErrorCode::UnsupportedKind,
         std::string("expected a different automaton kind, got ") + automaton_kind(a));
  }
}
