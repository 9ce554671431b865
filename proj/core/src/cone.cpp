#include "remono/cone.hpp"

#include "remono/budget.hpp"
#include "remono/simplex.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace remono {

namespace {

void check_dim(const Mat& rows, int dim, const char* what) {
  for (const Vec& r : rows)
    if (static_cast<int>(r.size()) != dim)
      throw std::invalid_argument(std::string(what) + ": row dimension mismatch");
}

void guard_dimension(int dim) {
  if (dim > Guards::cone_dimension())
    throw std::invalid_argument("cone dimension exceeds guard (set REMONO_GUARD_OVERRIDE to raise)");
}

// A strictly feasible member of the cell (gt rows >= 1), if any.
std::optional<Vec> cell_member(const ConeCell& cell, int dim) {
  LinearProgram lp = LinearProgram::feasibility(dim);
  for (const Vec& r : cell.ge) lp.cons.push_back({r, Rel::GE, Rat(0)});
  for (const Vec& r : cell.gt) lp.cons.push_back({r, Rel::GE, Rat(1)});
  LpResult res = lp_solve(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return res.x;
}

Mat closed_rows(const ConeCell& cell) {
  Mat rows = cell.ge;
  rows.insert(rows.end(), cell.gt.begin(), cell.gt.end());
  return rows;
}

}  // namespace

bool cell_contains(const ConeCell& cell, const Vec& v) {
  for (const Vec& r : cell.ge)
    if (dot(r, v) < 0) return false;
  for (const Vec& r : cell.gt)
    if (dot(r, v) <= 0) return false;
  return true;
}

bool cone_contains(const RationalCone& c, const Vec& v) {
  if (static_cast<int>(v.size()) != c.dim)
    throw std::invalid_argument("cone_contains: dimension mismatch");
  for (const ConeCell& cell : c.cells)
    if (cell_contains(cell, v)) return true;
  return false;
}

bool closed_contains(const ClosedCone& c, const Vec& v) {
  if (static_cast<int>(v.size()) != c.dim)
    throw std::invalid_argument("closed_contains: dimension mismatch");
  for (const Vec& f : c.facets)
    if (dot(f, v) < 0) return false;
  return true;
}

bool closed_union_contains(const RationalCone& c, const Vec& v) {
  for (const ConeCell& cell : c.cells) {
    bool ok = true;
    for (const Vec& r : cell.ge)
      if (dot(r, v) < 0) { ok = false; break; }
    if (ok)
      for (const Vec& r : cell.gt)
        if (dot(r, v) < 0) { ok = false; break; }
    if (ok) return true;
  }
  return false;
}

void validate_cone(const RationalCone& c) {
  if (c.dim <= 0) throw std::invalid_argument("cone: dimension must be positive");
  if (c.cells.empty()) throw std::invalid_argument("cone: needs at least one cell");
  for (const ConeCell& cell : c.cells) {
    check_dim(cell.ge, c.dim, "cone cell");
    check_dim(cell.gt, c.dim, "cone cell");
  }
  bool origin = false;
  for (const ConeCell& cell : c.cells)
    if (cell.gt.empty()) { origin = true; break; }
  if (!origin)
    throw std::invalid_argument("cone: no cell admits the origin (every cell has strict rows)");

  // Collect a few members per cell, then spot-check scaling and cross-cell
  // sums against the union. Deterministic seed keeps load behavior stable.
  std::mt19937 rng(20240901u);
  std::uniform_int_distribution<int> coef(1, 7);
  std::vector<std::vector<Vec>> members(c.cells.size());
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    auto base = cell_member(c.cells[i], c.dim);
    if (!base) continue;  // cell has no strictly feasible point; skip
    members[i].push_back(*base);
    DDResult dd = extreme_rays(closed_rows(c.cells[i]), c.dim);
    Mat gens = dd.rays;
    for (const Vec& l : dd.lineality) {
      gens.push_back(l);
      gens.push_back(vec_scale(Rat(-1), l));
    }
    for (const Vec& g : gens)
      members[i].push_back(vec_add(*base, vec_scale(Rat(coef(rng)), g)));
  }
  for (const auto& ms : members)
    for (const Vec& m : ms) {
      if (!cone_contains(c, vec_scale(Rat(coef(rng)), m)))
        throw std::invalid_argument("cone: not closed under nonnegative scaling");
    }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j)
      for (const Vec& a : members[i])
        for (const Vec& b : members[j])
          if (!cone_contains(c, vec_add(a, b)))
            throw std::invalid_argument("cone: not closed under addition (cross-cell sum escapes the union)");
}

ClosedCone closed_cone_from_facets(Mat facets, int dim) {
  check_dim(facets, dim, "closed cone");
  DDResult dd = extreme_rays(facets, dim);
  return ClosedCone{dim, std::move(facets), std::move(dd.rays), std::move(dd.lineality)};
}

ClosedCone closed_cone_from_generators(Mat rays, Mat lins, int dim) {
  check_dim(rays, dim, "closed cone");
  check_dim(lins, dim, "closed cone");
  Mat facets = facets_of(rays, lins, dim);
  DDResult dd = extreme_rays(facets, dim);
  return ClosedCone{dim, std::move(facets), std::move(dd.rays), std::move(dd.lineality)};
}

ClosedCone archimedeanize(const RationalCone& c) {
  // Per-cell closure and generator extraction.
  std::vector<Mat> cell_gens(c.cells.size());
  Mat all;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    DDResult dd = extreme_rays(closed_rows(c.cells[i]), c.dim);
    Mat gens = dd.rays;
    for (const Vec& l : dd.lineality) {
      gens.push_back(l);
      gens.push_back(vec_scale(Rat(-1), l));
    }
    cell_gens[i] = gens;
    all.insert(all.end(), gens.begin(), gens.end());
  }

  // The union of cell closures must already be additively stable, otherwise
  // consolidating into the conic hull would silently enlarge the set.
  for (std::size_t i = 0; i < cell_gens.size(); ++i)
    for (std::size_t j = i + 1; j < cell_gens.size(); ++j)
      for (const Vec& a : cell_gens[i])
        for (const Vec& b : cell_gens[j])
          if (!closed_union_contains(c, vec_add(a, b)))
            throw std::invalid_argument("cone: closure union is not additively stable; refusing to consolidate");

  return closed_cone_from_generators(std::move(all), {}, c.dim);
}

PointedQuotient pointed_quotient(const ClosedCone& c) {
  Mat lin = c.lins;
  std::vector<int> piv = rref(lin);
  const int l = static_cast<int>(lin.size());
  const int qdim = c.dim - l;
  std::vector<int> free_cols;
  {
    std::vector<bool> is_piv(c.dim, false);
    for (int p : piv) is_piv[p] = true;
    for (int col = 0; col < c.dim; ++col)
      if (!is_piv[col]) free_cols.push_back(col);
  }
  Mat proj(qdim, Vec(c.dim, Rat(0)));
  for (int k = 0; k < qdim; ++k) {
    proj[k][free_cols[k]] = 1;
    for (int j = 0; j < l; ++j) proj[k][piv[j]] = -lin[j][free_cols[k]];
  }
  // Facets vanish on the lineality space, so they descend to the quotient by
  // restriction to the free coordinates.
  Mat qfacets;
  for (const Vec& f : c.facets) {
    Vec qf(qdim);
    for (int k = 0; k < qdim; ++k) qf[k] = f[free_cols[k]];
    if (!vec_is_zero(qf)) qfacets.push_back(primitive_direction(qf));
  }
  std::sort(qfacets.begin(), qfacets.end());
  qfacets.erase(std::unique(qfacets.begin(), qfacets.end()), qfacets.end());
  ClosedCone quotient = closed_cone_from_facets(std::move(qfacets), qdim);
  return PointedQuotient{qdim, std::move(proj), std::move(quotient), std::move(lin)};
}

namespace {

Mat generator_rows(const ClosedCone& c) {
  Mat rows = c.rays;
  for (const Vec& l : c.lins) {
    rows.push_back(l);
    rows.push_back(vec_scale(Rat(-1), l));
  }
  return rows;
}

}  // namespace

Mat dual_rays(const ClosedCone& c) {
  guard_dimension(c.dim);
  DDResult dd = extreme_rays(generator_rows(c), c.dim);
  Mat out = dd.rays;
  for (const Vec& l : dd.lineality) {
    out.push_back(l);
    out.push_back(vec_scale(Rat(-1), l));
  }
  return out;
}

Separation separate_closed(const ClosedCone& c, const Vec& x) {
  if (closed_contains(c, x)) return Separation{true, {}};
  // Farkas alternative: f >= 0 on the cone's generators, f·x = -1.
  LinearProgram lp = LinearProgram::feasibility(c.dim);
  for (const Vec& r : c.rays) lp.cons.push_back({r, Rel::GE, Rat(0)});
  for (const Vec& l : c.lins) lp.cons.push_back({l, Rel::EQ, Rat(0)});
  lp.cons.push_back({x, Rel::EQ, Rat(-1)});
  LpResult res = lp_solve(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("separate: Farkas alternative failed on both sides");
  for (const Vec& r : c.rays)
    if (dot(res.x, r) < 0) throw std::logic_error("separate: certificate fails on a ray");
  for (const Vec& l : c.lins)
    if (dot(res.x, l) != 0) throw std::logic_error("separate: certificate fails on lineality");
  return Separation{false, res.x};
}

Separation separate(const RationalCone& c, const Vec& x) {
  return separate_closed(archimedeanize(c), x);
}

ConeRate rate_region_cone(const ClosedCone& c, const Vec& x, const Vec& y) {
  if (!closed_contains(c, x) || !closed_contains(c, y))
    throw std::invalid_argument("rate_region_cone: x and y must lie in the cone");

  // Primal route: one-variable LP over beta.
  LinearProgram lp;
  lp.nvars = 1;
  lp.objective = {Rat(1)};
  lp.maximize = true;
  lp.nonneg = {true};
  for (const Vec& f : c.facets) {
    Rat fy = dot(f, y);
    Rat fx = dot(f, x);
    lp.cons.push_back({Vec{fy}, Rel::LE, fx});
  }
  LpResult primal = lp_solve(lp);
  ExtRat primal_rate = (primal.status == LpStatus::Unbounded)
                           ? ExtRat::infinity()
                           : ExtRat::of(primal.objective);
  if (primal.status == LpStatus::Infeasible)
    throw std::logic_error("rate_region_cone: primal LP infeasible with x in cone");

  // Dual route: minimum of (f·x)/(f·y) over dual extreme rays with f·y > 0.
  Mat duals = dual_rays(c);
  ExtRat dual_rate = ExtRat::infinity();
  for (const Vec& f : duals) {
    Rat fy = dot(f, y);
    if (fy <= 0) continue;
    ExtRat q = ExtRat::of(dot(f, x) / fy);
    if (q < dual_rate) dual_rate = q;
  }

  if (!(primal_rate == dual_rate))
    throw std::logic_error("rate_region_cone: primal and dual rates disagree");

  bool y_vanishes = true;
  for (const Vec& f : c.facets)
    if (dot(f, y) != 0) { y_vanishes = false; break; }

  return ConeRate{ExtRat::of(Rat(0)), primal_rate, y_vanishes};
}

NumericalEvidence is_numerical(const ClosedCone& c) {
  guard_dimension(c.dim);
  PointedQuotient pq = pointed_quotient(c);
  DDResult dd = extreme_rays(generator_rows(pq.quotient), pq.qdim);
  NumericalEvidence ev;
  ev.quotient_dim = pq.qdim;
  ev.dual_ray_count = static_cast<int>(dd.rays.size()) +
                      2 * static_cast<int>(dd.lineality.size());
  ev.numerical = (dd.rays.size() == 1 && dd.lineality.empty());
  if (ev.numerical) {
    const Vec& fq = dd.rays[0];
    Vec f(c.dim, Rat(0));
    for (int i = 0; i < c.dim; ++i)
      for (int k = 0; k < pq.qdim; ++k) f[i] += pq.projection[k][i] * fq[k];
    ev.embedding = primitive_direction(f);
  }
  return ev;
}

ReciprocalReport reciprocal_rate_check(const ClosedCone& c,
                                       const std::vector<Vec>& samples) {
  ReciprocalReport rep;
  rep.numerical = is_numerical(c).numerical;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      ReciprocalEntry e;
      e.i = i;
      e.j = j;
      e.forward = rate_region_cone(c, samples[i], samples[j]).rmax;
      e.backward = rate_region_cone(c, samples[j], samples[i]).rmax;
      if (!e.forward.infinite && !e.backward.infinite) {
        e.product = e.forward.value * e.backward.value;
        e.exact_one = (*e.product == 1);
        if (*e.product > 1) rep.all_products_leq_one = false;
        if (rep.numerical && !e.exact_one)
          rep.all_products_one_when_numerical = false;
      }
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

namespace {

// Optimum of max/min of (linear in t) expressions; see hahn_banach_extend.
// Returns the exact optimum of:  opt_u u  s.t.  u >= or <= each expression.
Rat bound_lp(const Mat& exprs, const Vec& consts, bool minimize_upper) {
  // exprs: rows over t-variables; consts aligned. If minimize_upper, solve
  // min u s.t. u >= exprs_i·t + consts_i; else max u s.t. u <= exprs_i·t + consts_i.
  const int k = exprs.empty() ? 0 : static_cast<int>(exprs[0].size());
  LinearProgram lp;
  lp.nvars = k + 1;  // t..., u
  lp.objective.assign(k + 1, Rat(0));
  lp.objective[k] = 1;
  lp.maximize = !minimize_upper;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    Vec a(k + 1, Rat(0));
    for (int j = 0; j < k; ++j) a[j] = -exprs[i][j];
    a[k] = 1;
    // u - exprs_i·t >= consts_i   (upper)   or   <= consts_i  (lower)
    lp.cons.push_back({a, minimize_upper ? Rel::GE : Rel::LE, consts[i]});
  }
  LpResult res = lp_solve(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("hahn_banach_extend: bound LP not optimal");
  return res.objective;
}

// Largest s with s <= (f - a_i)·x for some x (s capped at 1). Zero exactly
// when f <= max_i a_i·x everywhere.
Rat domination_violation(const Mat& forms, const Vec& f) {
  const int d = static_cast<int>(f.size());
  LinearProgram lp;
  lp.nvars = d + 1;
  lp.objective.assign(d + 1, Rat(0));
  lp.objective[d] = 1;
  lp.maximize = true;
  for (const Vec& a : forms) {
    Vec row(d + 1, Rat(0));
    for (int j = 0; j < d; ++j) row[j] = f[j] - a[j];
    row[d] = -1;
    lp.cons.push_back({row, Rel::GE, Rat(0)});  // (f - a)·x - s >= 0
  }
  Vec cap(d + 1, Rat(0));
  cap[d] = 1;
  lp.cons.push_back({cap, Rel::LE, Rat(1)});  // s <= 1
  LpResult res = lp_solve(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("hahn_banach_extend: violation LP not optimal");
  return res.objective;
}

}  // namespace

Vec hahn_banach_extend(const Mat& forms, const Mat& subspace_basis,
                       const Vec& f_values, const Mat& full_basis) {
  if (forms.empty()) throw std::invalid_argument("hahn_banach_extend: gauge needs at least one form");
  const int d = static_cast<int>(forms[0].size());
  check_dim(forms, d, "gauge");
  check_dim(subspace_basis, d, "subspace basis");
  check_dim(full_basis, d, "full basis");
  if (f_values.size() != subspace_basis.size())
    throw std::invalid_argument("hahn_banach_extend: one value per subspace basis vector");
  if (rank(subspace_basis) != static_cast<int>(subspace_basis.size()))
    throw std::invalid_argument("hahn_banach_extend: subspace basis is dependent");

  Mat basis = subspace_basis;
  Vec values = f_values;

  // Seed must be p-dominated on its span: sup of (f - a_i)·x over the span
  // must not be positive.
  {
    const int k = static_cast<int>(basis.size());
    Mat exprs;
    Vec consts;
    for (const Vec& a : forms) {
      Vec row(k);
      for (int j = 0; j < k; ++j) row[j] = values[j] - dot(a, basis[j]);
      exprs.push_back(row);
      consts.push_back(Rat(0));
    }
    // max s s.t. s <= row_j·t : reuse bound_lp in "lower" mode, but the cap
    // comes from homogeneity: any positive value scales unboundedly, so test
    // feasibility of value 1 instead.
    LinearProgram lp;
    lp.nvars = k + 1;
    lp.objective.assign(k + 1, Rat(0));
    lp.objective[k] = 1;
    lp.maximize = true;
    for (std::size_t i = 0; i < exprs.size(); ++i) {
      Vec a(k + 1, Rat(0));
      for (int j = 0; j < k; ++j) a[j] = exprs[i][j];
      a[k] = -1;
      lp.cons.push_back({a, Rel::GE, Rat(0)});
    }
    Vec cap(k + 1, Rat(0));
    cap[k] = 1;
    lp.cons.push_back({cap, Rel::LE, Rat(1)});
    LpResult res = lp_solve(lp);
    if (res.status != LpStatus::Optimal || res.objective > 0)
      throw std::invalid_argument("hahn_banach_extend: seed functional is not dominated by the gauge");
  }

  for (const Vec& y : full_basis) {
    // Skip directions already in the span.
    Mat probe = basis;
    probe.push_back(y);
    if (rank(probe) == static_cast<int>(basis.size())) continue;

    const int k = static_cast<int>(basis.size());
    // Upper bound: inf over x in span of p(x + y) - f(x).
    Mat uexprs;
    Vec uconsts;
    for (const Vec& a : forms) {
      Vec row(k);
      for (int j = 0; j < k; ++j) row[j] = dot(a, basis[j]) - values[j];
      uexprs.push_back(row);
      uconsts.push_back(dot(a, y));
    }
    Rat upper = bound_lp(uexprs, uconsts, true);
    // Lower bound: sup over x of f(x) - p(x - y).
    Mat lexprs;
    Vec lconsts;
    for (const Vec& a : forms) {
      Vec row(k);
      for (int j = 0; j < k; ++j) row[j] = values[j] - dot(a, basis[j]);
      lexprs.push_back(row);
      lconsts.push_back(dot(a, y));
    }
    Rat lower = bound_lp(lexprs, lconsts, false);
    if (lower > upper)
      throw std::logic_error("hahn_banach_extend: extension interval is empty");
    basis.push_back(y);
    values.push_back((lower + upper) / 2);
  }

  if (rank(basis) != d)
    throw std::invalid_argument("hahn_banach_extend: full basis does not span the space");

  // Recover the coefficient vector from its values on the basis.
  Mat sys = basis;
  auto coeffs = solve_linear(sys, values);
  if (!coeffs) throw std::logic_error("hahn_banach_extend: inconsistent basis values");

  if (domination_violation(forms, *coeffs) > 0)
    throw std::logic_error("hahn_banach_extend: extension escapes the gauge");
  return *coeffs;
}

FunctionalDecomposition decompose_functional(const ClosedCone& c, const Vec& f) {
  FunctionalDecomposition out;
  for (const Vec& r : c.rays)
    if (dot(f, r) < 0) return out;
  for (const Vec& l : c.lins)
    if (dot(f, l) != 0) return out;
  out.in_dual = true;

  Mat rays = dual_rays(c);
  const int k = static_cast<int>(rays.size());
  LinearProgram lp = LinearProgram::feasibility(k);
  lp.nonneg.assign(k, true);
  for (int i = 0; i < c.dim; ++i) {
    Vec a(k);
    for (int j = 0; j < k; ++j) a[j] = rays[j][i];
    lp.cons.push_back({a, Rel::EQ, f[i]});
  }
  LpResult res = lp_solve(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("decompose_functional: dual membership LP infeasible");
  out.ray_coeffs = res.x;
  return out;
}

}  // namespace remono
