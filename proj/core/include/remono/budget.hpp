#ifndef REMONO_BUDGET_HPP
#define REMONO_BUDGET_HPP

#include <cstdint>
#include <string>

namespace remono {

// Search budget. Exhausting it yields Verdict::Unknown, never an exception;
// a Yes or No obtained under any budget is final.
struct Budget {
  std::uint64_t nodes = 2'000'000;  // backtracking nodes / BFS states
  std::uint32_t depth = 64;         // search depth where meaningful
  std::uint32_t time_hint_ms = 0;   // advisory only; 0 = no hint

  static Budget unlimited() {
    return Budget{~std::uint64_t{0}, ~std::uint32_t{0}, 0};
  }
};

enum class Verdict { Yes, No, Unknown };

std::string verdict_name(Verdict v);

// Size guards for operations whose cost explodes with instance size.
// The environment variable REMONO_GUARD_OVERRIDE, when set to a positive
// integer larger than the built-in default, raises every guard to that value
// (unsupported territory, documented as such).
struct Guards {
  static int lovasz_vertices();        // default 30
  static int frac_chromatic_vertices();// default 30
  static int canon_vertices();         // default 64
  static int cone_dimension();         // default 8
};

}  // namespace remono

#endif
