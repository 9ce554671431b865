#ifndef REMONO_SIMPLEX_HPP
#define REMONO_SIMPLEX_HPP

#include "remono/linalg.hpp"

#include <vector>

namespace remono {

enum class Rel { LE, GE, EQ };

struct LinConstraint {
  Vec a;
  Rel rel;
  Rat b;
};

// General-form linear program over exact rationals. Variables are free unless
// listed in nonneg. Solved by two-phase dense simplex with Bland's rule, so
// termination is guaranteed and every reported number is exact.
struct LinearProgram {
  int nvars = 0;
  std::vector<LinConstraint> cons;
  Vec objective;          // empty means pure feasibility
  bool maximize = false;
  std::vector<bool> nonneg;  // size nvars; empty means all free

  static LinearProgram feasibility(int nvars) {
    LinearProgram lp;
    lp.nvars = nvars;
    lp.objective.assign(nvars, Rat(0));
    return lp;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;          // one optimizer (original variables), when Optimal
  Rat objective;  // optimal value, when Optimal
};

LpResult lp_solve(const LinearProgram& lp);

}  // namespace remono

#endif
