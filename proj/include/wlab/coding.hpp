#pragma once

// The coding h(x) = A·0·x(1)·A·0²·x(2)·…, the comparison word
// α = A·0·A·0²·…, block-structure parsing of word pairs, and direct
// evaluation of the four complement patterns C1..C4.

#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"
#include "membership.hpp"

namespace wlab
{
  /// Length of the first n blocks of h(x): Σ (i+2) = (n² + 5n) / 2.
  constexpr std::size_t h_length(std::size_t n) { return (n * n + 5 * n) / 2; }

  /// Length of the first n blocks of α: Σ (i+1) = n(n + 3) / 2.
  constexpr std::size_t alpha_length(std::size_t n) { return n * (n + 3) / 2; }

  namespace detail
  {
    /// Block index i (1-based) containing 1-based position k, given the
    /// cumulative length function of the blocks.
    template <typename Len>
    std::size_t block_of(std::size_t k, Len len)
    {
      std::size_t lo = 1, hi = 2;
      while (len(hi) < k)
        hi *= 2;
      while (lo < hi)
        {
          std::size_t mid = (lo + hi) / 2;
          if (len(mid) >= k)
            hi = mid;
          else
            lo = mid + 1;
        }
      return lo;
    }
  }

  inline Word h_prefix(std::string_view x, std::size_t n)
  {
    if (x.size() < n)
      fail(ErrorCode::InsufficientInput,
           "need " + std::to_string(n) + " letters of x, got "
           + std::to_string(x.size()));
    Word out;
    out.reserve(h_length(n));
    for (std::size_t i = 1; i <= n; ++i)
      {
        Letter c = x[i - 1];
        if (c == marker_letter)
          fail(ErrorCode::InvalidAlphabet, "x must not contain the marker 'A'");
        out += marker_letter;
        out.append(i, '0');
        out += c;
      }
    return out;
  }

  /// Same, checking x against a base alphabet first.
  inline Word h_prefix(const Alphabet& sigma, std::string_view x, std::size_t n)
  {
    require_base_alphabet(sigma);
    sigma.require_word(x.substr(0, std::min(n, x.size())));
    return h_prefix(x, n);
  }

  inline Word alpha_prefix(std::size_t n)
  {
    Word out;
    out.reserve(alpha_length(n));
    for (std::size_t i = 1; i <= n; ++i)
      {
        out += marker_letter;
        out.append(i, '0');
      }
    return out;
  }

  /// Letter-by-letter access to a pair of ω-words (1-based positions).
  class PairStream
  {
  public:
    PairStream(LetterStream first, LetterStream second)
      : first_(std::move(first)), second_(std::move(second))
    {}

    Letter first(std::size_t k) const { return first_(k - 1); }
    Letter second(std::size_t k) const { return second_(k - 1); }

    Word first_prefix(std::size_t n) const
    {
      Word w;
      for (std::size_t k = 1; k <= n; ++k)
        w += first(k);
      return w;
    }
    Word second_prefix(std::size_t n) const
    {
      Word w;
      for (std::size_t k = 1; k <= n; ++k)
        w += second(k);
      return w;
    }

    /// 0-based views for the bounded search.
    const LetterStream& first_stream() const noexcept { return first_; }
    const LetterStream& second_stream() const noexcept { return second_; }

  private:
    LetterStream first_;
    LetterStream second_;
  };

  /// Continuity modulus of h: letter k of h(x) is determined by
  /// x(1)..x(blocks_needed(k)).
  inline std::size_t blocks_needed(std::size_t k)
  {
    return detail::block_of(k, h_length);
  }

  inline Letter alpha_letter(std::size_t k)
  {
    std::size_t i = detail::block_of(k, alpha_length);
    return k == alpha_length(i - 1) + 1 ? marker_letter : '0';
  }

  inline Letter h_letter(const LetterStream& x, std::size_t k)
  {
    std::size_t i = blocks_needed(k);
    std::size_t offset = k - h_length(i - 1);
    if (offset == 1)
      return marker_letter;
    if (offset <= i + 1)
      return '0';
    return x(i - 1);
  }

  /// (h(x), α) for x given letter by letter (0-based).
  inline PairStream encode_pair(LetterStream x)
  {
    return PairStream([x = std::move(x)](std::size_t k0) { return h_letter(x, k0 + 1); },
                      [](std::size_t k0) { return alpha_letter(k0 + 1); });
  }

  inline PairStream encode_pair(const Lasso& x)
  {
    return encode_pair([x](std::size_t i) { return x.at(i); });
  }

  // ------------------------------------------------------------------
  // Block structure

  /// One block: tape 1 reads A·u·v·x, tape 2 reads A·w·z (lengths of the
  /// zero runs, plus the letter x).
  struct Block
  {
    std::size_t u = 0, v = 0, w = 0, z = 0;
    Letter x = '0';
    bool operator==(const Block&) const = default;
  };

  using BlockDecomposition = std::vector<Block>;

  /// First violated constraint in a block-by-block, tape-1-first scan.
  struct ParseFailure
  {
    std::size_t block;
    std::string constraint;
    std::string detail;
    bool operator==(const ParseFailure&) const = default;
  };

  using ParseResult = std::variant<std::vector<BlockDecomposition>, ParseFailure>;

  namespace detail
  {
    struct RawBlocks
    {
      std::vector<std::size_t> zeros1;  // zero run before x on tape 1
      std::vector<Letter> letters;      // x
      std::vector<std::size_t> zeros2;  // zero run on tape 2
    };

    inline std::vector<std::string_view> split_blocks(std::string_view t)
    {
      std::vector<std::string_view> out;
      std::size_t start = 1;
      while (start <= t.size())
        {
          auto next = t.find(marker_letter, start);
          if (next == std::string_view::npos)
            next = t.size();
          out.push_back(t.substr(start, next - start));
          start = next + 1;
        }
      return out;
    }

    inline std::variant<RawBlocks, ParseFailure>
    scan_blocks(const Alphabet& sigma, std::string_view t1, std::string_view t2,
                bool require_shape)
    {
      if (t1.empty() || t1[0] != marker_letter)
        return ParseFailure{1, "T1_MARKER", "tape 1 must start with A"};
      if (t2.empty() || t2[0] != marker_letter)
        return ParseFailure{1, "T2_MARKER", "tape 2 must start with A"};
      auto b1 = split_blocks(t1), b2 = split_blocks(t2);
      RawBlocks raw;
      std::size_t common = std::min(b1.size(), b2.size());
      for (std::size_t i = 0; i < common; ++i)
        {
          std::size_t idx = i + 1;
          auto c1 = b1[i];
          if (c1.empty())
            return ParseFailure{idx, "T1_INCOMPLETE_BLOCK",
                                "tape-1 block has no letter before the next A"};
          for (std::size_t k = 0; k + 1 < c1.size(); ++k)
            if (c1[k] != '0')
              return ParseFailure{idx, "T1_ZERO_RUN",
                                  std::string("unexpected '") + c1[k] + "' in zero run"};
          Letter x = c1.back();
          if (!sigma.contains(x))
            return ParseFailure{idx, "T1_LETTER",
                                std::string("'") + x + "' is not a base letter"};
          if (require_shape && c1.size() != idx + 1)
            return ParseFailure{idx, "T1_BLOCK_LENGTH",
                                "tape-1 block " + std::to_string(idx) + " has length "
                                + std::to_string(c1.size()) + ", expected "
                                + std::to_string(idx + 1)};
          auto c2 = b2[i];
          for (Letter c: c2)
            if (c != '0')
              return ParseFailure{idx, "T2_ZERO_RUN",
                                  std::string("unexpected '") + c + "' in zero run"};
          if (require_shape && c2.size() != idx)
            return ParseFailure{idx, "T2_BLOCK_LENGTH",
                                "tape-2 block " + std::to_string(idx) + " has length "
                                + std::to_string(c2.size()) + ", expected "
                                + std::to_string(idx)};
          raw.zeros1.push_back(c1.size() - 1);
          raw.letters.push_back(x);
          raw.zeros2.push_back(c2.size());
        }
      if (b1.size() != b2.size())
        return ParseFailure{common + 1, "BLOCK_COUNT_MISMATCH",
                            "tape 1 has " + std::to_string(b1.size())
                            + " blocks, tape 2 has " + std::to_string(b2.size())};
      return raw;
    }
  }

  /// The decomposition of an (h, α)-shaped block sequence induced by a
  /// counter trace: counters[i] is the counter value before block i+1, so
  /// |v_i| = counters[i-1] and |w_i| = counters[i]. counters[0] must be 0.
  inline BlockDecomposition
  decomposition_for_counters(std::string_view letters, const std::vector<long>& counters)
  {
    if (counters.size() != letters.size() + 1 || counters.empty() || counters[0] != 0)
      fail(ErrorCode::IllegalRun, "counter trace must start at 0 and cover every block");
    BlockDecomposition d;
    for (std::size_t i = 1; i <= letters.size(); ++i)
      {
        auto before = static_cast<std::size_t>(counters[i - 1]);
        auto after = static_cast<std::size_t>(counters[i]);
        if (counters[i] < 0 || before > i - 1 || after > i)
          fail(ErrorCode::IllegalRun, "counter exceeds the block budget");
        d.push_back({i - before, before, after, i - after, letters[i - 1]});
      }
    return d;
  }

  /// Splits a pair of finite words into blocks. With `require_shape` the
  /// pair must be a block-aligned prefix of some (h(x), α) and the result is
  /// the single counter-idle decomposition (every v and w empty). Without
  /// it, every split satisfying |v_1| = 0 and |u_{i+1}| = |z_i| + 1 is
  /// listed (up to `max_results`).
  inline ParseResult parse_block_structure(const Alphabet& sigma, std::string_view t1,
                                           std::string_view t2, bool require_shape,
                                           std::size_t max_results = 100000)
  {
    require_base_alphabet(sigma);
    auto scanned = detail::scan_blocks(sigma, t1, t2, require_shape);
    if (auto* f = std::get_if<ParseFailure>(&scanned))
      return *f;
    const auto& raw = std::get<detail::RawBlocks>(scanned);
    const std::size_t n = raw.letters.size();
    if (require_shape)
      {
        std::vector<long> idle(n + 1, 0);
        return std::vector<BlockDecomposition>{
          decomposition_for_counters(std::string(raw.letters.begin(), raw.letters.end()),
                                     idle)};
      }
    for (std::size_t i = 1; i < n; ++i)
      if (raw.zeros1[i] == 0)
        return ParseFailure{i + 1, "U_Z_LINK",
                            "|u| = |z| + 1 needs a nonempty zero run on tape 1"};
    std::vector<BlockDecomposition> all;
    BlockDecomposition cur(n);
    // depth-first over z_i choices
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t u)
    {
      Block& b = cur[i];
      b.u = u;
      b.v = raw.zeros1[i] - u;
      b.x = raw.letters[i];
      std::size_t m = raw.zeros2[i];
      std::size_t zmax = m;
      if (i + 1 < n)
        zmax = std::min(m, raw.zeros1[i + 1] - 1);
      for (std::size_t z = 0; z <= zmax; ++z)
        {
          b.z = z;
          b.w = m - z;
          if (i + 1 < n)
            rec(i + 1, z + 1);
          else
            {
              if (all.size() >= max_results)
                fail(ErrorCode::BudgetExceeded, "too many block decompositions");
              all.push_back(cur);
            }
        }
    };
    if (n > 0)
      rec(0, raw.zeros1[0]);
    return all;
  }

  inline Word decoded_letters(const BlockDecomposition& d)
  {
    Word x;
    for (auto& b: d)
      x += b.x;
    return x;
  }

  // ------------------------------------------------------------------
  // Complement patterns

  namespace detail
  {
    inline bool has_marker(std::string_view w)
    {
      return w.find(marker_letter) != std::string_view::npos;
    }

    /// σ(1..) matches A·Σ^a·A·Σ^b·A on its first a+b+3 letters.
    template <typename LetterAt>
    bool has_two_block_prefix(LetterAt at, std::size_t a, std::size_t b)
    {
      std::size_t pos = 0;
      auto marker = [&](std::size_t k) { return at(k) == marker_letter; };
      if (!marker(pos++))
        return false;
      for (std::size_t i = 0; i < a; ++i)
        if (marker(pos++))
          return false;
      if (!marker(pos++))
        return false;
      for (std::size_t i = 0; i < b; ++i)
        if (marker(pos++))
          return false;
      return marker(pos);
    }

    /// u·v^ω ∈ (A·0⁺)^ω.
    inline bool lasso_in_marker_zeros(const Lasso& s)
    {
      if (s.at(0) != marker_letter || !has_marker(s.loop()))
        return false;
      Word w = s.prefix() + s.loop() + s.loop();
      for (std::size_t i = 0; i < w.size(); ++i)
        {
          if (w[i] != '0' && w[i] != marker_letter)
            return false;
          if (i + 1 < w.size() && w[i] == marker_letter && w[i + 1] == marker_letter)
            return false;
        }
      return true;
    }

    /// Gap between two markers must be 0⁺ followed by one base letter.
    inline bool valid_coded_gap(std::string_view gap)
    {
      if (gap.size() < 2)
        return false;
      for (std::size_t i = 0; i + 1 < gap.size(); ++i)
        if (gap[i] != '0')
          return false;
      return gap.back() != marker_letter;
    }

    /// u·v^ω ∈ (A·0⁺·Σ)^ω.
    inline bool lasso_in_coded_blocks(const Lasso& s)
    {
      if (s.at(0) != marker_letter || !has_marker(s.loop()))
        return false;
      Word w = s.prefix() + s.loop() + s.loop();
      std::size_t limit = s.residues();
      for (std::size_t p = 0; p < limit; ++p)
        {
          if (w[p] != marker_letter)
            continue;
          auto q = w.find(marker_letter, p + 1);
          if (!valid_coded_gap(std::string_view(w).substr(p + 1, q - p - 1)))
            return false;
        }
      return true;
    }

    /// Lengths of the first complete blocks (content between the k-th and
    /// (k+1)-th marker) of a word starting with A; at most `count`.
    inline std::vector<std::size_t> lasso_block_lengths(const Lasso& s, std::size_t count)
    {
      std::vector<std::size_t> out;
      bool periodic_markers = has_marker(s.loop());
      std::size_t limit = s.prefix().size() + 1;
      std::size_t since = 0;
      for (std::size_t pos = 1; out.size() < count; ++pos)
        {
          if (!periodic_markers && pos >= limit)
            break;
          if (s.at(pos) == marker_letter)
            {
              out.push_back(since);
              since = 0;
            }
          else
            ++since;
        }
      return out;
    }

    inline std::size_t count_markers(std::string_view w)
    {
      return static_cast<std::size_t>(std::count(w.begin(), w.end(), marker_letter));
    }

    /// Number of block indices to inspect so that the pair of
    /// ultimately periodic block-length sequences has fully repeated.
    inline std::size_t block_horizon(const Lasso& a, const Lasso& b)
    {
      std::size_t ca = std::max<std::size_t>(1, count_markers(a.loop()));
      std::size_t cb = std::max<std::size_t>(1, count_markers(b.loop()));
      std::size_t pre = std::max(count_markers(a.prefix()), count_markers(b.prefix())) + 2;
      return pre + std::lcm(ca, cb) + 3;
    }

    inline bool lengths_differ_c3(const std::vector<std::size_t>& b1,
                                  const std::vector<std::size_t>& b2)
    {
      // blocks k >= 2 (1-based) on both tapes, |u| != |v| + 1
      for (std::size_t k = 1; k < std::min(b1.size(), b2.size()); ++k)
        if (b1[k] != b2[k] + 1)
          return true;
      return false;
    }

    inline bool lengths_differ_c4(const std::vector<std::size_t>& b1,
                                  const std::vector<std::size_t>& b2)
    {
      // tape-1 block k+1 against tape-2 block k, k >= 2, |v| != |u| + 2
      for (std::size_t k = 1; k < b2.size() && k + 1 < b1.size(); ++k)
        if (b1[k + 1] != b2[k] + 2)
          return true;
      return false;
    }
  }

  /// Exact membership of an ultimately periodic pair in C_j, evaluated
  /// directly from the defining condition.
  inline bool eval_cj_pattern(int j, const Alphabet& sigma, const LassoPair& p)
  {
    Alphabet gamma = coding_alphabet(sigma);
    gamma.require_word(p.first.prefix() + p.first.loop());
    gamma.require_word(p.second.prefix() + p.second.loop());
    const Lasso& s1 = p.first;
    const Lasso& s2 = p.second;
    switch (j)
      {
      case 1:
        return !detail::has_two_block_prefix([&](std::size_t k) { return s1.at(k); }, 2, 3)
          || !detail::has_two_block_prefix([&](std::size_t k) { return s2.at(k); }, 1, 2);
      case 2:
        return !detail::lasso_in_marker_zeros(s2) || !detail::lasso_in_coded_blocks(s1);
      case 3:
      case 4:
        {
          if (s1.at(0) != marker_letter || s2.at(0) != marker_letter)
            return false;
          std::size_t horizon = detail::block_horizon(s1, s2);
          auto b1 = detail::lasso_block_lengths(s1, horizon + 2);
          auto b2 = detail::lasso_block_lengths(s2, horizon + 2);
          return j == 3 ? detail::lengths_differ_c3(b1, b2)
                        : detail::lengths_differ_c4(b1, b2);
        }
      default:
        fail(ErrorCode::ParseError, "pattern index must be 1..4");
      }
  }

  /// Sound-up-to-depth answer for streams: `value == true` is final,
  /// `false` only holds for the inspected window ("false@depth").
  struct DepthJudgement
  {
    bool value;
    std::size_t depth;
    std::string str() const
    {
      return value ? "true" : "false@" + std::to_string(depth);
    }
  };

  /// Evaluates C_j on the first `depth` blocks' worth of letters of each
  /// component (h-sized window on tape 1, α-sized window on tape 2).
  inline DepthJudgement eval_cj_pattern(int j, const Alphabet& sigma, const PairStream& s,
                                        std::size_t depth)
  {
    require_base_alphabet(sigma);
    std::size_t n1 = std::max<std::size_t>(h_length(depth), 8);
    std::size_t n2 = std::max<std::size_t>(alpha_length(depth), 6);
    Word w1 = s.first_prefix(n1), w2 = s.second_prefix(n2);
    DepthJudgement r{false, depth};
    switch (j)
      {
      case 1:
        r.value = !detail::has_two_block_prefix([&](std::size_t k) { return w1[k]; }, 2, 3)
          || !detail::has_two_block_prefix([&](std::size_t k) { return w2[k]; }, 1, 2);
        break;
      case 2:
        {
          bool bad2 = w2[0] != marker_letter;
          for (std::size_t i = 0; i < w2.size() && !bad2; ++i)
            bad2 = (w2[i] != '0' && w2[i] != marker_letter)
              || (i + 1 < w2.size() && w2[i] == marker_letter && w2[i + 1] == marker_letter);
          bool bad1 = w1[0] != marker_letter;
          std::size_t p = 0;
          while (!bad1)
            {
              auto q = w1.find(marker_letter, p + 1);
              if (q == Word::npos)
                {
                  // open gap: fine while it still extends to 0⁺·Σ
                  std::string_view gap = std::string_view(w1).substr(p + 1);
                  auto zeros = [](std::string_view g)
                  { return g.find_first_not_of('0') == std::string_view::npos; };
                  bad1 = !(zeros(gap)
                           || (gap.size() >= 2 && zeros(gap.substr(0, gap.size() - 1))));
                  break;
                }
              bad1 = !detail::valid_coded_gap(std::string_view(w1).substr(p + 1, q - p - 1));
              p = q;
            }
          r.value = bad1 || bad2;
          break;
        }
      case 3:
      case 4:
        {
          if (w1[0] != marker_letter || w2[0] != marker_letter)
            break;
          auto lengths = [](std::string_view w)
          {
            std::vector<std::size_t> out;
            std::size_t since = 0;
            for (std::size_t i = 1; i < w.size(); ++i)
              {
                if (w[i] == marker_letter)
                  {
                    out.push_back(since);
                    since = 0;
                  }
                else
                  ++since;
              }
            return out;
          };
          auto b1 = lengths(w1), b2 = lengths(w2);
          r.value = j == 3 ? detail::lengths_differ_c3(b1, b2)
                           : detail::lengths_differ_c4(b1, b2);
          break;
        }
      default:
        fail(ErrorCode::ParseError, "pattern index must be 1..4");
      }
    return r;
  }
}
