#pragma once

// Finite probability distributions under the majorization order, with the
// one-parameter entropy family and the rate upper bound it induces. Order
// decisions (prefix-sum dominance) are exact rational; entropy values are
// floating point with stated tolerance.

#include "remono/budget.hpp"
#include "remono/monoid.hpp"
#include "remono/rational.hpp"

#include <string>
#include <vector>

namespace remono {

// Canonical form: probabilities sorted nonincreasing, summing to exactly 1.
struct FiniteDistribution {
  std::vector<Rat> p;

  bool operator==(const FiniteDistribution&) const = default;
};

// Validates entries in [0,1] and total exactly 1; sorts nonincreasing.
// Throws std::invalid_argument on violations or an empty list.
FiniteDistribution make_distribution(std::vector<Rat> probs);

// Number of nonzero entries.
std::size_t support_size(const FiniteDistribution& d);

// Exact prefix-sum dominance after zero-padding to a common length:
// every partial sum of the k largest entries of `a` is >= that of `b`.
bool major_leq(const FiniteDistribution& a, const FiniteDistribution& b);

// Distribution of an independent sample from each; re-sorted.
FiniteDistribution dist_product(const FiniteDistribution& a, const FiniteDistribution& b);

// Entropy of order t in bits. t = 0 counts the support, t = 1 is the Shannon
// limit, infinite t is min-entropy; otherwise (1/(1-t)) * log2(sum p^t).
// Throws std::invalid_argument for negative t.
double renyi(const FiniteDistribution& d, const ExtRat& t);

struct RenyiRateBound {
  double value = 0;        // inf over the probed t of H_t(P)/H_t(Q)
  bool infinite = false;   // Q is a point mass: every denominator vanishes
  std::string attained;    // description of the minimizing t
  int grid_points = 0;     // coarse grid size before local refinement
};

// Upper bound on the conversion rate P -> Q: infimum of H_t(P)/H_t(Q) over a
// logarithmic t-grid (grid_points points on [2^-10, 2^10]) plus t in
// {0, 1, infinity}, followed by one golden-section refinement around the best
// grid cell. The grid resolution is disclosed in the result.
RenyiRateBound rate_upper_renyi(const FiniteDistribution& p, const FiniteDistribution& q,
                                int grid_points = 64);

// The monoid instance: combine = independent product, zero = point mass,
// leq(a, b) decides whether a converts to b — exactly when b majorizes a,
// i.e. the target's sorted prefix sums dominate the source's. Conversions
// concentrate: none can create randomness, so every Renyi entropy is
// non-increasing along a conversion, the point mass is the bottom element,
// and the n-point uniform converts to everything on at most n outcomes.
// The order is completely decidable, so verdicts are always Yes or No.
struct ProbMajInstance {
  using Element = FiniteDistribution;
  static constexpr bool complete_order = true;

  Element combine(const Element& a, const Element& b) const { return dist_product(a, b); }
  Element zero() const { return FiniteDistribution{{Rat(1)}}; }
  TriState leq(const Element& a, const Element& b, const Budget& budget) const;
  bool equal(const Element& a, const Element& b) const;
  std::string describe(const Element& a) const;
};

}  // namespace remono
