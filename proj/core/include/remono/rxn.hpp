#pragma once

// Finitely presented ordered commutative monoids over a species alphabet:
// multiset states, one-directional reactions as generating conversions,
// reachability search, exact conservation laws, the extreme rays of the
// additive-monotone cone, and the functional-order membership test with
// Farkas certificates.

#include "remono/budget.hpp"
#include "remono/linalg.hpp"
#include "remono/monoid.hpp"
#include "remono/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace remono {

// Species counts; absent means zero, present counts are positive.
using Multiset = std::map<std::string, std::uint64_t>;

struct Reaction {
  Multiset lhs;
  Multiset rhs;
};

struct ReactionSystem {
  std::vector<std::string> species;  // declared order fixes vector coordinates
  std::vector<Reaction> reactions;
};

// Throws std::invalid_argument if a reaction or state references an
// undeclared species.
void validate_system(const ReactionSystem& sys);
void validate_state(const ReactionSystem& sys, const Multiset& m);

// Vector of counts in the system's species order.
std::vector<std::int64_t> to_counts(const ReactionSystem& sys, const Multiset& m);
Multiset from_counts(const ReactionSystem& sys, const std::vector<std::int64_t>& counts);

struct ReachResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::size_t> sequence;  // reaction indices applied, in order
  std::uint64_t states = 0;           // states expanded
  std::string detail;
};

// Breadth-first search from x applying reactions to sub-multisets; Yes with
// the witnessing sequence, No only when the whole reachable set was
// enumerated within the budget (depth truncation forces Unknown instead).
ReachResult reachable_leq(const ReactionSystem& sys, const Multiset& x, const Multiset& y,
                          const Budget& budget);

// Exact rational basis of { f : f · lhs_r = f · rhs_r for every reaction }.
// Coordinates follow the species order.
std::vector<Vec> conservation_laws(const ReactionSystem& sys);

struct MonotoneRays {
  std::vector<Vec> rays;      // extreme rays of { f : f·(lhs-rhs) >= 0 all r }
  std::vector<Vec> lineality; // directions where both f and -f are feasible
};

// Extreme rays of the cone of additive monotones, via double description.
// Guarded by Guards::cone_dimension() on the species count.
MonotoneRays monotone_rays(const ReactionSystem& sys);

struct FunctionalOrderResult {
  bool holds = false;
  std::vector<Rat> coefficients;  // conic combination over reactions when holds
  Vec separating;                 // Farkas functional otherwise
  std::string detail;
};

// Decides whether x - y lies in the rational conic hull of the reaction
// difference vectors. This is the order determined by evaluating every
// additive monotone; it coincides with the asymptotic seed-assisted order
// only in the presence of a universal resource pair, and is in general
// coarser than plain reachability.
FunctionalOrderResult functional_order_leq(const ReactionSystem& sys, const Multiset& x,
                                           const Multiset& y);

// Rewrites the system over an atom alphabet using a composition table
// (species -> multiset of atoms); species missing from the table are kept
// as-is. Useful for conservation tests on atom counts.
ReactionSystem expand_species(const ReactionSystem& sys,
                              const std::map<std::string, Multiset>& atoms);
Multiset expand_multiset(const Multiset& m, const std::map<std::string, Multiset>& atoms);

// The monoid instance over a fixed reaction system: combine is multiset sum,
// zero the empty multiset, leq is reachability.
struct RxnInstance {
  using Element = Multiset;
  static constexpr bool complete_order = false;

  const ReactionSystem* sys = nullptr;

  Element combine(const Element& a, const Element& b) const;
  Element zero() const { return {}; }
  TriState leq(const Element& a, const Element& b, const Budget& budget) const;
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string describe(const Element& a) const;
};

std::string format_multiset(const Multiset& m);

}  // namespace remono
