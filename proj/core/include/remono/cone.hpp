#ifndef REMONO_CONE_HPP
#define REMONO_CONE_HPP

#include "remono/dd.hpp"
#include "remono/linalg.hpp"
#include "remono/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace remono {

// One cell of strict/non-strict homogeneous inequalities: the points v with
// ge·v >= 0 (rowwise) and gt·v > 0 (rowwise).
struct ConeCell {
  Mat ge;
  Mat gt;
};

// A positive cone given as a finite union of cells. Must contain the origin
// and be closed under addition and nonnegative scaling; validate() spot-checks
// this at load and rejects violations.
struct RationalCone {
  int dim = 0;
  std::vector<ConeCell> cells;
};

// A topologically closed polyhedral cone, kept in both representations:
// facets (H-rep, rows f with f·v >= 0) and rays/lins (V-rep).
struct ClosedCone {
  int dim = 0;
  Mat facets;
  Mat rays;
  Mat lins;  // RREF basis of the lineality space
};

bool cell_contains(const ConeCell& cell, const Vec& v);
bool cone_contains(const RationalCone& c, const Vec& v);
bool closed_contains(const ClosedCone& c, const Vec& v);

// Membership in the union of the cells' closures.
bool closed_union_contains(const RationalCone& c, const Vec& v);

// Rejects inputs that visibly fail the monoid axioms: origin not covered, a
// cell not closed under doubling, or cross-cell sums escaping the union
// (randomized sampling with a fixed seed).
void validate_cone(const RationalCone& c);

// Closure: per-cell closure (strict rows become non-strict), then
// consolidation of the union into one polyhedral cone via per-cell generator
// extraction and a conic hull. Cross-cell generator sums are re-checked
// against the union of closures; failures throw.
ClosedCone archimedeanize(const RationalCone& c);

// Wraps an H-rep into a ClosedCone, computing the V-rep.
ClosedCone closed_cone_from_facets(Mat facets, int dim);
ClosedCone closed_cone_from_generators(Mat rays, Mat lins, int dim);

struct PointedQuotient {
  int qdim = 0;
  Mat projection;      // qdim x dim; v maps to projection * v
  ClosedCone quotient; // pointed cone in the quotient coordinates
  Mat lineality;       // RREF basis of cone ∩ -cone
};
PointedQuotient pointed_quotient(const ClosedCone& c);

// Extreme rays of { f : f·v >= 0 on the cone }, as primitive integer vectors;
// when the dual has a lineality space (input not full-dimensional) its basis
// appears as +/- ray pairs. Guarded by Guards::cone_dimension().
Mat dual_rays(const ClosedCone& c);

struct Separation {
  bool in_closure = false;
  Vec functional;  // when !in_closure: f·x < 0 and f >= 0 on the closure
};
// Exact Farkas alternative on the archimedeanization of c.
Separation separate(const RationalCone& c, const Vec& x);
Separation separate_closed(const ClosedCone& c, const Vec& x);

struct ConeRate {
  ExtRat rmin;          // always 0 here
  ExtRat rmax;
  bool infinite_because_target_vanishes = false;  // y = 0 in the quotient
};
// Maximal conversion rate sup{ beta >= 0 : x - beta*y in cone } for x, y in
// the cone, computed independently by a primal LP and by a minimum over dual
// extreme rays; the two must agree exactly or this throws.
ConeRate rate_region_cone(const ClosedCone& c, const Vec& x, const Vec& y);

struct NumericalEvidence {
  bool numerical = false;
  int quotient_dim = 0;
  int dual_ray_count = 0;
  std::optional<Vec> embedding;  // order-reflecting functional on the original space
};
NumericalEvidence is_numerical(const ClosedCone& c);

struct ReciprocalEntry {
  std::size_t i = 0, j = 0;
  ExtRat forward, backward;
  std::optional<Rat> product;  // set when both finite
  bool exact_one = false;
};
struct ReciprocalReport {
  bool numerical = false;
  std::vector<ReciprocalEntry> entries;
  bool all_products_leq_one = true;
  bool all_products_one_when_numerical = true;
};
ReciprocalReport reciprocal_rate_check(const ClosedCone& c,
                                       const std::vector<Vec>& samples);

// Stepwise extension of a linear functional dominated by the polyhedral
// sublinear gauge p(z) = max_i forms[i]·z. Seed values are given on
// subspace_basis; the result is defined on all of Q^d (full_basis must span),
// agrees with the seed, and is certified p-dominated by a final exact LP.
// Throws std::invalid_argument when the seed is not p-dominated.
Vec hahn_banach_extend(const Mat& forms, const Mat& subspace_basis,
                       const Vec& f_values, const Mat& full_basis);

struct FunctionalDecomposition {
  std::vector<Rat> ray_coeffs;   // per dual_rays(c) entry
  bool in_dual = false;
};
// Writes f as a nonnegative combination of the dual extreme rays.
FunctionalDecomposition decompose_functional(const ClosedCone& c, const Vec& f);

}  // namespace remono

#endif
