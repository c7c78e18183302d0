// One PASS/FAIL line per acceptance criterion. A criterion passes when its
// suite reports no failing case and finishes inside its time limit.

#include <cstdio>

#include "wlab/verify.hpp"

namespace
{
  struct Criterion
  {
    const char* letter;
    const char* suite;
    double limit_seconds;
  };

  constexpr Criterion criteria[] = {
    {"A", "coding-roundtrip", 5},   {"B", "block-arithmetic", 1},
    {"C", "r1-bijection", 120},     {"D", "r2-lasso-totality", 60},
    {"E", "hexclusion", 10},        {"F", "wadge-lattice", 30},
    {"G", "sum-oracle", 10},        {"H", "ocba-emptiness", 60},
    {"I", "reduction-totality", 60},
  };

  constexpr std::uint64_t seed = 7;
}

int main()
{
  int failed = 0;
  for (const auto& c: criteria)
    {
      wlab::SuiteReport r;
      bool ok = false;
      std::string note;
      try
        {
          r = wlab::run_verify_suite(c.suite, {seed, 0, 25});
          ok = r.ok() && r.seconds < c.limit_seconds;
          if (!r.ok())
            note = r.failures.empty() ? "case count mismatch" : r.failures.front().detail;
          else if (!ok)
            note = "over time limit";
          else
            note = r.note;
        }
      catch (const std::exception& e)
        {
          note = e.what();
        }
      std::printf("%s %s  %-20s %zu/%zu cases  %.2fs (limit %.0fs)%s%s\n", c.letter,
                  ok ? "PASS" : "FAIL", c.suite, r.passed, r.cases, r.seconds,
                  c.limit_seconds, note.empty() ? "" : "  ", note.c_str());
      failed += !ok;
    }
  return failed == 0 ? 0 : 1;
}
