#pragma once

// Foundational word and automaton types: alphabets, lassos, NBA, DPA,
// real-time one-counter Büchi automata (OCBA) and 2-tape Büchi automata
// (TTBA), plus the small language combinators the constructions rely on.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace wlab
{
  using Letter = char;
  using Word = std::string;

  /// The letter added to a base alphabet to form the coding alphabet.
  inline constexpr Letter marker_letter = 'A';

  inline bool is_reserved_letter(Letter c)
  {
    auto u = static_cast<unsigned char>(c);
    return u <= 0x20 || u >= 0x7f || c == '#' || c == '_' || c == '('
      || c == ')' || c == ',' || c == ':';
  }

  /// Ordered finite set of single-character symbols.
  class Alphabet
  {
  public:
    Alphabet() { index_.fill(-1); }

    explicit Alphabet(std::vector<Letter> letters)
      : letters_(std::move(letters))
    {
      index_.fill(-1);
      if (letters_.empty())
        fail(ErrorCode::InvalidAlphabet, "alphabet is empty");
      for (std::size_t i = 0; i < letters_.size(); ++i)
        {
          Letter c = letters_[i];
          if (is_reserved_letter(c))
            fail(ErrorCode::InvalidAlphabet,
                 std::string("reserved symbol '") + c + "'");
          auto& slot = index_[static_cast<unsigned char>(c)];
          if (slot >= 0)
            fail(ErrorCode::InvalidAlphabet,
                 std::string("duplicate symbol '") + c + "'");
          slot = static_cast<std::int16_t>(i);
        }
    }

    /// Each character of `letters` is one symbol.
    static Alphabet of(std::string_view letters)
    {
      return Alphabet(std::vector<Letter>(letters.begin(), letters.end()));
    }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const std::vector<Letter>& letters() const noexcept { return letters_; }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    bool contains(Letter c) const noexcept
    {
      return index_[static_cast<unsigned char>(c)] >= 0;
    }

    /// Position of `c`, or -1.
    int index(Letter c) const noexcept
    {
      return index_[static_cast<unsigned char>(c)];
    }

    int require_index(Letter c) const
    {
      int i = index(c);
      if (i < 0)
        fail(ErrorCode::AlphabetMismatch,
             std::string("letter '") + c + "' not in alphabet {" + str() + "}");
      return i;
    }

    bool contains_all(std::string_view w) const noexcept
    {
      return std::all_of(w.begin(), w.end(),
                         [this](Letter c) { return contains(c); });
    }

    void require_word(std::string_view w) const
    {
      for (Letter c: w)
        require_index(c);
    }

    bool subset_of(const Alphabet& other) const noexcept
    {
      return std::all_of(letters_.begin(), letters_.end(),
                         [&](Letter c) { return other.contains(c); });
    }

    /// Set equality (order-insensitive).
    bool same_letters(const Alphabet& other) const noexcept
    {
      return size() == other.size() && subset_of(other);
    }

    Alphabet with(Letter c) const
    {
      auto l = letters_;
      l.push_back(c);
      return Alphabet(std::move(l));
    }

    /// Space separated, in declaration order.
    std::string str() const
    {
      std::string s;
      for (Letter c: letters_)
        {
          if (!s.empty())
            s += ' ';
          s += c;
        }
      return s;
    }

    bool operator==(const Alphabet& o) const noexcept
    {
      return letters_ == o.letters_;
    }

  private:
    std::vector<Letter> letters_;
    std::array<std::int16_t, 256> index_;
  };

  /// Base alphabets used by the coding must contain 0 and must not contain
  /// the marker letter.
  inline void require_base_alphabet(const Alphabet& sigma)
  {
    if (!sigma.contains('0'))
      fail(ErrorCode::InvalidAlphabet, "base alphabet must contain '0'");
    if (sigma.contains(marker_letter))
      fail(ErrorCode::InvalidAlphabet,
           "base alphabet must not contain the marker 'A'");
  }

  /// Σ ∪ {A}.
  inline Alphabet coding_alphabet(const Alphabet& sigma)
  {
    require_base_alphabet(sigma);
    return sigma.with(marker_letter);
  }

  // ------------------------------------------------------------------
  // Lassos

  /// The ultimately periodic word prefix·loop^ω in canonical form: the loop
  /// is primitive and the prefix cannot be shortened by rotating the loop.
  class Lasso
  {
  public:
    Lasso() : loop_("0") {}

    static Lasso make(Word prefix, Word loop)
    {
      if (loop.empty())
        fail(ErrorCode::InvalidLasso, "loop must be nonempty");
      // primitive root
      std::size_t n = loop.size();
      for (std::size_t p = 1; p <= n; ++p)
        {
          if (n % p)
            continue;
          bool ok = true;
          for (std::size_t i = p; i < n && ok; ++i)
            ok = loop[i] == loop[i - p];
          if (ok)
            {
              loop.resize(p);
              break;
            }
        }
      // absorb the prefix tail into the loop
      while (!prefix.empty() && prefix.back() == loop.back())
        {
          std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
          prefix.pop_back();
        }
      Lasso l;
      l.prefix_ = std::move(prefix);
      l.loop_ = std::move(loop);
      return l;
    }

    const Word& prefix() const noexcept { return prefix_; }
    const Word& loop() const noexcept { return loop_; }

    /// Number of distinct folded positions.
    std::size_t residues() const noexcept
    {
      return prefix_.size() + loop_.size();
    }

    std::size_t fold(std::size_t pos) const noexcept
    {
      if (pos < prefix_.size())
        return pos;
      return prefix_.size() + (pos - prefix_.size()) % loop_.size();
    }

    /// Successor of a folded position.
    std::size_t next(std::size_t residue) const noexcept
    {
      return residue + 1 < residues() ? residue + 1 : prefix_.size();
    }

    Letter at_residue(std::size_t r) const noexcept
    {
      return r < prefix_.size() ? prefix_[r] : loop_[r - prefix_.size()];
    }

    /// Letter at 0-based position `pos`.
    Letter at(std::size_t pos) const noexcept { return at_residue(fold(pos)); }

    Word take(std::size_t n) const
    {
      Word w;
      w.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        w += at(i);
      return w;
    }

    bool starts_with(std::string_view u) const noexcept
    {
      for (std::size_t i = 0; i < u.size(); ++i)
        if (at(i) != u[i])
          return false;
      return true;
    }

    std::string str() const { return prefix_ + "(" + loop_ + ")"; }

    bool operator==(const Lasso& o) const noexcept
    {
      return prefix_ == o.prefix_ && loop_ == o.loop_;
    }
    auto operator<=>(const Lasso& o) const noexcept
    {
      if (auto c = prefix_ <=> o.prefix_; c != 0)
        return c;
      return loop_ <=> o.loop_;
    }

  private:
    Word prefix_;
    Word loop_;
  };

  inline Lasso canonicalize_lasso(Word prefix, Word loop)
  {
    return Lasso::make(std::move(prefix), std::move(loop));
  }

  /// Parses `u(v)`; a bare word `v` is read as `(v)`.
  inline Lasso parse_lasso(std::string_view text)
  {
    auto open = text.find('(');
    if (open == std::string_view::npos)
      return Lasso::make("", Word(text));
    if (text.empty() || text.back() != ')')
      fail(ErrorCode::InvalidLasso, "expected u(v): " + std::string(text));
    Word u(text.substr(0, open));
    Word v(text.substr(open + 1, text.size() - open - 2));
    return Lasso::make(std::move(u), std::move(v));
  }

  struct LassoPair
  {
    Lasso first;
    Lasso second;

    std::string str() const { return first.str() + "," + second.str(); }
    bool operator==(const LassoPair&) const = default;
  };

  // ------------------------------------------------------------------
  // Automata

  namespace detail
  {
    inline void check_state(int q, int n, const char* what)
    {
      if (q < 0 || q >= n)
        fail(ErrorCode::MalformedAutomaton,
             std::string(what) + " " + std::to_string(q)
             + " outside [0," + std::to_string(n) + ")");
    }

    inline std::vector<bool> final_mask(const std::vector<int>& finals, int n)
    {
      std::vector<bool> mask(static_cast<std::size_t>(n), false);
      for (int f: finals)
        {
          check_state(f, n, "final state");
          mask[static_cast<std::size_t>(f)] = true;
        }
      return mask;
    }

    template <typename T>
    std::vector<T> dedupe(std::vector<T> v)
    {
      std::vector<T> out;
      std::set<T> seen;
      for (auto& t: v)
        if (seen.insert(t).second)
          out.push_back(std::move(t));
      return out;
    }
  }

  struct NbaTransition
  {
    int from;
    Letter letter;
    int to;
    auto operator<=>(const NbaTransition&) const = default;
  };

  /// Nondeterministic Büchi automaton over a finite alphabet.
  class NBA
  {
  public:
    NBA(Alphabet alphabet, int num_states, int initial,
        std::vector<NbaTransition> transitions, std::vector<int> finals)
      : alphabet_(std::move(alphabet)), num_states_(num_states),
        initial_(initial), transitions_(detail::dedupe(std::move(transitions)))
    {
      if (num_states_ < 1)
        fail(ErrorCode::MalformedAutomaton, "NBA needs at least one state");
      detail::check_state(initial_, num_states_, "initial state");
      for (auto& t: transitions_)
        {
          detail::check_state(t.from, num_states_, "transition source");
          detail::check_state(t.to, num_states_, "transition target");
          alphabet_.require_index(t.letter);
        }
      final_ = detail::final_mask(finals, num_states_);
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int num_states() const noexcept { return num_states_; }
    int initial() const noexcept { return initial_; }
    const std::vector<NbaTransition>& transitions() const noexcept
    {
      return transitions_;
    }
    bool is_final(int q) const { return final_[static_cast<std::size_t>(q)]; }
    std::vector<int> final_states() const
    {
      std::vector<int> f;
      for (int q = 0; q < num_states_; ++q)
        if (is_final(q))
          f.push_back(q);
      return f;
    }

  private:
    Alphabet alphabet_;
    int num_states_;
    int initial_;
    std::vector<NbaTransition> transitions_;
    std::vector<bool> final_;
  };

  /// Deterministic, complete parity automaton with state priorities.
  /// A run is accepting iff the least priority seen infinitely often is even.
  class DPA
  {
  public:
    /// `delta` is row-major: delta[q * |alphabet| + letter index].
    DPA(Alphabet alphabet, int num_states, int initial, std::vector<int> delta,
        std::vector<int> priority)
      : alphabet_(std::move(alphabet)), num_states_(num_states),
        initial_(initial), delta_(std::move(delta)),
        priority_(std::move(priority))
    {
      if (num_states_ < 1)
        fail(ErrorCode::MalformedAutomaton, "DPA needs at least one state");
      detail::check_state(initial_, num_states_, "initial state");
      if (delta_.size() != static_cast<std::size_t>(num_states_) * alphabet_.size())
        fail(ErrorCode::MalformedAutomaton,
             "transition function is not total on states x letters");
      for (int t: delta_)
        detail::check_state(t, num_states_, "transition target");
      if (priority_.size() != static_cast<std::size_t>(num_states_))
        fail(ErrorCode::MalformedAutomaton, "one priority per state required");
      for (int p: priority_)
        if (p < 0)
          fail(ErrorCode::MalformedAutomaton, "priorities must be >= 0");
    }

    /// Builds from an explicit (q, a, q') list; rejects missing or
    /// conflicting entries.
    static DPA from_transitions(Alphabet alphabet, int num_states, int initial,
                                const std::vector<NbaTransition>& transitions,
                                std::vector<int> priority)
    {
      if (num_states < 1)
        fail(ErrorCode::MalformedAutomaton, "DPA needs at least one state");
      std::vector<int> delta(static_cast<std::size_t>(num_states) * alphabet.size(), -1);
      for (auto& t: transitions)
        {
          detail::check_state(t.from, num_states, "transition source");
          detail::check_state(t.to, num_states, "transition target");
          auto& slot = delta[static_cast<std::size_t>(t.from) * alphabet.size()
                             + static_cast<std::size_t>(alphabet.require_index(t.letter))];
          if (slot >= 0 && slot != t.to)
            fail(ErrorCode::MalformedAutomaton,
                 "nondeterministic transition from state " + std::to_string(t.from));
          slot = t.to;
        }
      for (std::size_t i = 0; i < delta.size(); ++i)
        if (delta[i] < 0)
          fail(ErrorCode::MalformedAutomaton,
               "transition function is not total: state "
               + std::to_string(i / alphabet.size()) + " letter '"
               + alphabet[i % alphabet.size()] + "'");
      return DPA(std::move(alphabet), num_states, initial, std::move(delta),
                 std::move(priority));
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int num_states() const noexcept { return num_states_; }
    int initial() const noexcept { return initial_; }
    int priority(int q) const { return priority_[static_cast<std::size_t>(q)]; }
    const std::vector<int>& priorities() const noexcept { return priority_; }
    int max_priority() const
    {
      return *std::max_element(priority_.begin(), priority_.end());
    }

    int next_index(int q, int letter_index) const
    {
      return delta_[static_cast<std::size_t>(q) * alphabet_.size()
                    + static_cast<std::size_t>(letter_index)];
    }
    int next(int q, Letter a) const
    {
      return next_index(q, alphabet_.require_index(a));
    }
    int run(std::string_view w, int from) const
    {
      for (Letter c: w)
        from = next(from, c);
      return from;
    }
    const std::vector<int>& delta() const noexcept { return delta_; }

  private:
    Alphabet alphabet_;
    int num_states_;
    int initial_;
    std::vector<int> delta_;
    std::vector<int> priority_;
  };

  struct OcbaTransition
  {
    int from;
    Letter letter;
    int zero;   // 0: counter is zero, 1: counter is nonzero
    int to;
    int delta;  // -1, 0 or +1
    auto operator<=>(const OcbaTransition&) const = default;
  };

  struct Configuration
  {
    int state;
    long counter;
    auto operator<=>(const Configuration&) const = default;
  };

  /// Real-time one-counter Büchi automaton; every transition consumes one
  /// letter and may test the counter for zero.
  class OCBA
  {
  public:
    OCBA(Alphabet alphabet, int num_states, int initial,
         std::vector<OcbaTransition> transitions, std::vector<int> finals)
      : alphabet_(std::move(alphabet)), num_states_(num_states),
        initial_(initial), transitions_(detail::dedupe(std::move(transitions)))
    {
      if (num_states_ < 1)
        fail(ErrorCode::InvalidOCBA, "OCBA needs at least one state");
      if (initial_ < 0 || initial_ >= num_states_)
        fail(ErrorCode::InvalidOCBA, "initial state out of range");
      for (auto& t: transitions_)
        {
          if (t.from < 0 || t.from >= num_states_ || t.to < 0 || t.to >= num_states_)
            fail(ErrorCode::InvalidOCBA, "transition endpoint out of range");
          if (!alphabet_.contains(t.letter))
            fail(ErrorCode::InvalidOCBA,
                 std::string("transition letter '") + t.letter + "' not in alphabet");
          if (t.zero != 0 && t.zero != 1)
            fail(ErrorCode::InvalidOCBA, "zero flag must be 0 or 1");
          if (t.delta < -1 || t.delta > 1)
            fail(ErrorCode::InvalidOCBA, "counter update must be -1, 0 or 1");
          if (t.zero == 0 && t.delta == -1)
            fail(ErrorCode::InvalidOCBA,
                 "a zero-tested transition cannot decrement the counter");
        }
      final_.assign(static_cast<std::size_t>(num_states_), false);
      for (int f: finals)
        {
          if (f < 0 || f >= num_states_)
            fail(ErrorCode::InvalidOCBA, "final state out of range");
          final_[static_cast<std::size_t>(f)] = true;
        }
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    int num_states() const noexcept { return num_states_; }
    int initial() const noexcept { return initial_; }
    const std::vector<OcbaTransition>& transitions() const noexcept
    {
      return transitions_;
    }
    bool is_final(int q) const { return final_[static_cast<std::size_t>(q)]; }
    std::vector<int> final_states() const
    {
      std::vector<int> f;
      for (int q = 0; q < num_states_; ++q)
        if (is_final(q))
          f.push_back(q);
      return f;
    }

    /// Whether `t` may fire in configuration `c` (ignoring the letter).
    static bool enabled(const OcbaTransition& t, const Configuration& c)
    {
      return t.from == c.state && t.zero == (c.counter == 0 ? 0 : 1);
    }

  private:
    Alphabet alphabet_;
    int num_states_;
    int initial_;
    std::vector<OcbaTransition> transitions_;
    std::vector<bool> final_;
  };

  struct TtbaTransition
  {
    int from;
    Word in;   // read on tape 1
    Word out;  // read on tape 2
    int to;
    auto operator<=>(const TtbaTransition&) const = default;
  };

  /// 2-tape Büchi automaton with asynchronous heads.
  class TTBA
  {
  public:
    TTBA(Alphabet input, Alphabet output, int num_states, int initial,
         std::vector<TtbaTransition> transitions, std::vector<int> finals)
      : input_(std::move(input)), output_(std::move(output)),
        num_states_(num_states), initial_(initial),
        transitions_(detail::dedupe(std::move(transitions)))
    {
      if (num_states_ < 1)
        fail(ErrorCode::MalformedAutomaton, "TTBA needs at least one state");
      detail::check_state(initial_, num_states_, "initial state");
      for (auto& t: transitions_)
        {
          detail::check_state(t.from, num_states_, "transition source");
          detail::check_state(t.to, num_states_, "transition target");
          input_.require_word(t.in);
          output_.require_word(t.out);
        }
      final_ = detail::final_mask(finals, num_states_);
    }

    const Alphabet& input_alphabet() const noexcept { return input_; }
    const Alphabet& output_alphabet() const noexcept { return output_; }
    int num_states() const noexcept { return num_states_; }
    int initial() const noexcept { return initial_; }
    const std::vector<TtbaTransition>& transitions() const noexcept
    {
      return transitions_;
    }
    bool is_final(int q) const { return final_[static_cast<std::size_t>(q)]; }
    std::vector<int> final_states() const
    {
      std::vector<int> f;
      for (int q = 0; q < num_states_; ++q)
        if (is_final(q))
          f.push_back(q);
      return f;
    }

    /// Each transition reads at most one letter per tape and no transition
    /// is an empty self-loop.
    bool is_normalized() const noexcept
    {
      return std::all_of(transitions_.begin(), transitions_.end(),
                         [](const TtbaTransition& t)
                         {
                           return t.in.size() <= 1 && t.out.size() <= 1
                             && !(t.in.empty() && t.out.empty() && t.from == t.to);
                         });
    }

  private:
    Alphabet input_;
    Alphabet output_;
    int num_states_;
    int initial_;
    std::vector<TtbaTransition> transitions_;
    std::vector<bool> final_;
  };

  /// Splits long labels through fresh intermediate states and drops empty
  /// self-loops; the accepted relation is unchanged.
  inline TTBA normalize_ttba(const TTBA& t)
  {
    int n = t.num_states();
    std::vector<TtbaTransition> out;
    for (auto& tr: t.transitions())
      {
        if (tr.in.empty() && tr.out.empty() && tr.from == tr.to)
          continue;
        std::size_t steps = std::max(tr.in.size(), tr.out.size());
        if (steps <= 1)
          {
            out.push_back(tr);
            continue;
          }
        int cur = tr.from;
        for (std::size_t k = 0; k < steps; ++k)
          {
            int dst = k + 1 == steps ? tr.to : n++;
            Word a = k < tr.in.size() ? Word(1, tr.in[k]) : Word();
            Word b = k < tr.out.size() ? Word(1, tr.out[k]) : Word();
            out.push_back({cur, a, b, dst});
            cur = dst;
          }
      }
    return TTBA(t.input_alphabet(), t.output_alphabet(), n, t.initial(),
                std::move(out), t.final_states());
  }

  /// Union by a fresh initial state that duplicates the first transitions
  /// of every operand; stays normalized when the operands are.
  inline TTBA union_ttba(const std::vector<TTBA>& parts)
  {
    if (parts.empty())
      fail(ErrorCode::MalformedAutomaton, "union of no automata");
    const auto& in = parts.front().input_alphabet();
    const auto& outa = parts.front().output_alphabet();
    std::vector<TtbaTransition> tr;
    std::vector<int> finals;
    int offset = 1;
    for (auto& p: parts)
      {
        if (!p.input_alphabet().same_letters(in)
            || !p.output_alphabet().same_letters(outa))
          fail(ErrorCode::AlphabetMismatch, "union operands differ in alphabets");
        for (auto& t: p.transitions())
          {
            tr.push_back({t.from + offset, t.in, t.out, t.to + offset});
            if (t.from == p.initial())
              tr.push_back({0, t.in, t.out, t.to + offset});
          }
        for (int f: p.final_states())
          finals.push_back(f + offset);
        offset += p.num_states();
      }
    return TTBA(in, outa, offset, 0, std::move(tr), std::move(finals));
  }

  // ------------------------------------------------------------------
  // Combinators on deterministic parity automata

  /// Shifts every priority by one: accepts exactly the complement.
  inline DPA complement_dpa(const DPA& d)
  {
    auto pr = d.priorities();
    for (auto& p: pr)
      ++p;
    return DPA(d.alphabet(), d.num_states(), d.initial(), d.delta(), std::move(pr));
  }

  /// Accepts u·Σ^ω ∩ L(d).
  inline DPA prefix_restriction(const DPA& d, std::string_view u)
  {
    d.alphabet().require_word(u);
    if (u.empty())
      return d;
    int n = d.num_states();
    int k = static_cast<int>(u.size());
    int sink = n + k;
    std::size_t sigma = d.alphabet().size();
    std::vector<int> delta(d.delta());
    delta.resize(static_cast<std::size_t>(n + k + 1) * sigma);
    auto pr = d.priorities();
    int along = d.initial();
    for (int i = 0; i < k; ++i)
      {
        int chain = n + i;
        int expected = d.alphabet().index(u[static_cast<std::size_t>(i)]);
        int after = d.next_index(along, expected);
        for (std::size_t a = 0; a < sigma; ++a)
          {
            int dst = sink;
            if (static_cast<int>(a) == expected)
              dst = i + 1 < k ? chain + 1 : after;
            delta[static_cast<std::size_t>(chain) * sigma + a] = dst;
          }
        pr.push_back(1);
        along = after;
      }
    for (std::size_t a = 0; a < sigma; ++a)
      delta[static_cast<std::size_t>(sink) * sigma + a] = sink;
    pr.push_back(1);
    return DPA(d.alphabet(), n + k + 1, n, std::move(delta), std::move(pr));
  }

  namespace detail
  {
    inline void require_partition(const Alphabet& sigma,
                                  const std::vector<Letter>& s1,
                                  const std::vector<Letter>& s2)
    {
      std::set<Letter> a(s1.begin(), s1.end()), b(s2.begin(), s2.end());
      if (a.size() != s1.size() || b.size() != s2.size())
        fail(ErrorCode::PartitionError, "duplicate letters in a partition block");
      if (a.size() + b.size() != sigma.size())
        fail(ErrorCode::PartitionError, "blocks do not cover the alphabet exactly");
      for (Letter c: a)
        if (!sigma.contains(c) || b.count(c))
          fail(ErrorCode::PartitionError,
               std::string("letter '") + c + "' misplaced in partition");
      for (Letter c: b)
        if (!sigma.contains(c))
          fail(ErrorCode::PartitionError,
               std::string("letter '") + c + "' not in alphabet");
    }
  }

  /// Büchi automaton for L(d); guesses the point after which no priority
  /// below some even p occurs and p recurs.
  inline NBA dpa_to_nba(const DPA& d)
  {
    int n = d.num_states();
    std::vector<int> evens;
    for (int p: d.priorities())
      if (p % 2 == 0 && std::find(evens.begin(), evens.end(), p) == evens.end())
        evens.push_back(p);
    std::sort(evens.begin(), evens.end());
    int total = n * static_cast<int>(1 + evens.size());
    std::vector<NbaTransition> tr;
    std::vector<int> finals;
    auto copy = [&](std::size_t k, int q) { return n * static_cast<int>(k + 1) + q; };
    const auto& sigma = d.alphabet();
    for (int q = 0; q < n; ++q)
      for (std::size_t a = 0; a < sigma.size(); ++a)
        {
          int r = d.next_index(q, static_cast<int>(a));
          tr.push_back({q, sigma[a], r});
          for (std::size_t k = 0; k < evens.size(); ++k)
            if (d.priority(r) >= evens[k])
              {
                tr.push_back({q, sigma[a], copy(k, r)});
                if (d.priority(q) >= evens[k])
                  tr.push_back({copy(k, q), sigma[a], copy(k, r)});
              }
        }
    for (std::size_t k = 0; k < evens.size(); ++k)
      for (int q = 0; q < n; ++q)
        if (d.priority(q) == evens[k])
          finals.push_back(copy(k, q));
    return NBA(sigma, total, d.initial(), std::move(tr), std::move(finals));
  }

  /// Accepts {a·y : a ∈ s1, y ∈ L(d1)} ∪ {a·y : a ∈ s2, y ∈ L(d2)}.
  inline NBA partitioned_union(const std::vector<Letter>& s1, const DPA& d1,
                               const std::vector<Letter>& s2, const DPA& d2)
  {
    if (!d1.alphabet().same_letters(d2.alphabet()))
      fail(ErrorCode::AlphabetMismatch, "components must share the alphabet");
    detail::require_partition(d1.alphabet(), s1, s2);
    NBA b1 = dpa_to_nba(d1), b2 = dpa_to_nba(d2);
    int o1 = 1, o2 = 1 + b1.num_states();
    std::vector<NbaTransition> tr;
    std::vector<int> finals;
    for (auto& t: b1.transitions())
      tr.push_back({t.from + o1, t.letter, t.to + o1});
    for (auto& t: b2.transitions())
      tr.push_back({t.from + o2, t.letter, t.to + o2});
    for (Letter a: s1)
      tr.push_back({0, a, b1.initial() + o1});
    for (Letter a: s2)
      tr.push_back({0, a, b2.initial() + o2});
    for (int f: b1.final_states())
      finals.push_back(f + o1);
    for (int f: b2.final_states())
      finals.push_back(f + o2);
    return NBA(d1.alphabet(), o2 + b2.num_states(), 0, std::move(tr),
               std::move(finals));
  }

  /// Deterministic variant of partitioned_union.
  inline DPA partitioned_union_dpa(const std::vector<Letter>& s1, const DPA& d1,
                                   const std::vector<Letter>& s2, const DPA& d2)
  {
    if (!d1.alphabet().same_letters(d2.alphabet()))
      fail(ErrorCode::AlphabetMismatch, "components must share the alphabet");
    detail::require_partition(d1.alphabet(), s1, s2);
    const auto& sigma = d1.alphabet();
    std::size_t k = sigma.size();
    int o1 = 1, o2 = 1 + d1.num_states();
    int n = o2 + d2.num_states();
    std::vector<int> delta(static_cast<std::size_t>(n) * k);
    std::vector<int> pr(static_cast<std::size_t>(n));
    pr[0] = 1;
    for (std::size_t a = 0; a < k; ++a)
      {
        bool first = std::find(s1.begin(), s1.end(), sigma[a]) != s1.end();
        delta[a] = first ? d1.initial() + o1 : d2.initial() + o2;
      }
    auto embed = [&](const DPA& d, int off)
    {
      for (int q = 0; q < d.num_states(); ++q)
        {
          pr[static_cast<std::size_t>(q + off)] = d.priority(q);
          for (std::size_t a = 0; a < k; ++a)
            delta[static_cast<std::size_t>(q + off) * k + a]
              = d.next(q, sigma[a]) + off;
        }
    };
    embed(d1, o1);
    embed(d2, o2);
    return DPA(sigma, n, 0, std::move(delta), std::move(pr));
  }
}
