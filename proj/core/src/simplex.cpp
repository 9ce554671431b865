#include "remono/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace remono {

namespace {

// Standard-form tableau: minimize c·x s.t. A x = b, x >= 0, b >= 0.
struct Tableau {
  int m = 0, n = 0;               // constraints, columns (without RHS)
  Mat a;                          // m x n
  Vec rhs;                        // m
  Vec cost;                       // n, current reduced-cost row
  Rat obj = 0;                    // negated current objective value
  std::vector<int> basis;         // m basic column indices

  void pivot(int row, int col) {
    Rat inv = Rat(1) / a[row][col];
    for (int j = 0; j < n; ++j) a[row][j] *= inv;
    rhs[row] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    if (!(cost.empty())) {
      Rat f = cost[col];
      if (f != 0) {
        for (int j = 0; j < n; ++j) cost[j] -= f * a[row][j];
        obj -= f * rhs[row];
      }
    }
    basis[row] = col;
  }

  enum class Step { Pivoted, Optimal, Unbounded };

  // Bland's rule: entering = least index with negative reduced cost;
  // leaving = least basic variable index among minimal ratios.
  Step step() {
    int enter = -1;
    for (int j = 0; j < n; ++j)
      if (cost[j] < 0) { enter = j; break; }
    if (enter < 0) return Step::Optimal;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (a[i][enter] <= 0) continue;
      Rat ratio = rhs[i] / a[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return Step::Unbounded;
    pivot(leave, enter);
    return Step::Pivoted;
  }

  // True when an optimum was reached, false on unboundedness.
  bool run() {
    for (;;) {
      Step s = step();
      if (s == Step::Optimal) return true;
      if (s == Step::Unbounded) return false;
    }
  }
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  const int nv = lp.nvars;
  if (static_cast<int>(lp.objective.size()) != nv)
    throw std::invalid_argument("lp_solve: objective size mismatch");
  for (const auto& c : lp.cons)
    if (static_cast<int>(c.a.size()) != nv)
      throw std::invalid_argument("lp_solve: constraint size mismatch");
  if (!lp.nonneg.empty() && static_cast<int>(lp.nonneg.size()) != nv)
    throw std::invalid_argument("lp_solve: nonneg size mismatch");

  // Column layout: for each original variable, one column if nonneg, else a
  // (pos, neg) pair; then one slack per inequality; artificials appended.
  std::vector<int> col_of(nv), neg_col_of(nv, -1);
  int ncols = 0;
  auto is_nonneg = [&](int i) { return !lp.nonneg.empty() && lp.nonneg[i]; };
  for (int i = 0; i < nv; ++i) {
    col_of[i] = ncols++;
    if (!is_nonneg(i)) neg_col_of[i] = ncols++;
  }
  const int m = static_cast<int>(lp.cons.size());
  std::vector<int> slack_col(m, -1);
  for (int k = 0; k < m; ++k)
    if (lp.cons[k].rel != Rel::EQ) slack_col[k] = ncols++;
  const int nstruct = ncols;
  ncols += m;  // artificials

  Tableau t;
  t.m = m;
  t.n = ncols;
  t.a.assign(m, Vec(ncols, Rat(0)));
  t.rhs.assign(m, Rat(0));
  t.basis.assign(m, -1);

  for (int k = 0; k < m; ++k) {
    const auto& c = lp.cons[k];
    Rat sign = 1;
    // Normalize to a·x (+ slack) = b with b >= 0.
    Rat b = c.b;
    bool flip = (b < 0);
    if (flip) { sign = -1; b = -b; }
    for (int i = 0; i < nv; ++i) {
      Rat v = sign * c.a[i];
      t.a[k][col_of[i]] = v;
      if (neg_col_of[i] >= 0) t.a[k][neg_col_of[i]] = -v;
    }
    if (slack_col[k] >= 0) {
      // LE gets +slack, GE gets -slack (before any sign flip).
      Rat s = (c.rel == Rel::LE) ? Rat(1) : Rat(-1);
      t.a[k][slack_col[k]] = sign * s;
    }
    t.rhs[k] = b;
    int art = nstruct + k;
    t.a[k][art] = 1;
    t.basis[k] = art;
  }

  // Phase 1: minimize sum of artificials.
  t.cost.assign(ncols, Rat(0));
  for (int k = 0; k < m; ++k) t.cost[nstruct + k] = 1;
  // Price out the basic artificials.
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < ncols; ++j) t.cost[j] -= t.a[k][j];
    t.obj -= t.rhs[k];
  }
  if (!t.run())
    throw std::logic_error("lp_solve: phase 1 cannot be unbounded");
  if (-t.obj != 0) return LpResult{LpStatus::Infeasible, {}, Rat(0)};

  // Pivot remaining artificials out of the basis; drop redundant rows.
  for (int i = 0; i < t.m; ++i) {
    if (t.basis[i] < nstruct) continue;
    int col = -1;
    for (int j = 0; j < nstruct; ++j)
      if (t.a[i][j] != 0) { col = j; break; }
    if (col >= 0) {
      t.pivot(i, col);
    } else {
      t.a.erase(t.a.begin() + i);
      t.rhs.erase(t.rhs.begin() + i);
      t.basis.erase(t.basis.begin() + i);
      --t.m;
      --i;
    }
  }
  // Remove artificial columns entirely.
  for (int i = 0; i < t.m; ++i) t.a[i].resize(nstruct);
  t.n = nstruct;

  // Phase 2.
  Vec cost(nstruct, Rat(0));
  for (int i = 0; i < nv; ++i) {
    Rat ci = lp.objective[i];
    if (lp.maximize) ci = -ci;
    cost[col_of[i]] += ci;
    if (neg_col_of[i] >= 0) cost[neg_col_of[i]] -= ci;
  }
  t.cost = cost;
  t.obj = 0;
  for (int i = 0; i < t.m; ++i) {
    int b = t.basis[i];
    Rat f = t.cost[b];
    if (f == 0) continue;
    for (int j = 0; j < t.n; ++j) t.cost[j] -= f * t.a[i][j];
    t.obj -= f * t.rhs[i];
  }
  if (!t.run()) return LpResult{LpStatus::Unbounded, {}, Rat(0)};

  Vec xs(nstruct, Rat(0));
  for (int i = 0; i < t.m; ++i) xs[t.basis[i]] = t.rhs[i];
  Vec x(nv, Rat(0));
  for (int i = 0; i < nv; ++i) {
    x[i] = xs[col_of[i]];
    if (neg_col_of[i] >= 0) x[i] -= xs[neg_col_of[i]];
  }
  Rat value = -t.obj;
  if (lp.maximize) value = -value;
  return LpResult{LpStatus::Optimal, std::move(x), value};
}

}  // namespace remono
