#pragma once

// The resource theory of graphs: elements are formal products of atoms under
// the disjunctive product, where an atom is either a base graph or a join of
// further terms. Keeping the algebraic structure (instead of materializing
// every product) is what lets ordering queries on large powers decompose into
// tractable exact searches whose composed witnesses are then verified against
// the real adjacency.

#include "remono/budget.hpp"
#include "remono/graph.hpp"
#include "remono/graph_alg.hpp"
#include "remono/monoid.hpp"
#include "remono/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace remono {

struct GraphTerm;

// One factor of a product term: a plain graph, or the join of sub-terms
// (disjoint union plus all edges between parts).
struct GraphAtom {
  Graph base{1};
  std::vector<GraphTerm> parts;  // when nonempty this atom is a join

  bool is_join() const { return !parts.empty(); }
  std::int64_t order() const;
  Graph realize() const;      // materialized adjacency of this atom
  std::string sort_key() const;
};

// A product of atoms; the empty product is the single-vertex neutral graph.
struct GraphTerm {
  std::vector<GraphAtom> atoms;

  std::int64_t order() const;
  Graph realize() const;      // guarded materialization of the whole product
  std::vector<Graph> atom_graphs() const;
  std::string sort_key() const;
};

GraphTerm term_from_graph(const Graph& g);
GraphTerm term_join(const std::vector<GraphTerm>& parts);

// The monoid instance. Ordering queries leq(a, b) decide whether a converts
// to b, i.e. whether a homomorphism explicit(b) → explicit(a) exists; every
// Yes is backed by a map checked edge-by-edge against both products.
struct GrphInstance {
  using Element = GraphTerm;
  static constexpr bool complete_order = false;

  Element combine(const Element& a, const Element& b) const;
  Element zero() const { return GraphTerm{}; }
  TriState leq(const Element& a, const Element& b, const Budget& budget) const;
  bool equal(const Element& a, const Element& b) const;
  std::string describe(const Element& a) const;
};

// Detailed ordering query: the witnessing map (source-vertex → target-vertex
// on the materalized index spaces) accompanies a Yes.
struct GraphLeqWitness {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::int64_t> hom;  // explicit(b) index → explicit(a) index
  std::string detail;
};

GraphLeqWitness graph_leq_witness(const GraphTerm& a, const GraphTerm& b, const Budget& budget);

// ω, certified orthogonality interval, and χ with the sandwich verdict.
struct SandwichReport {
  Verdict verdict = Verdict::Unknown;
  int clique = 0;
  double lovasz_value = 0;
  Rat lovasz_lower = 0;
  Rat lovasz_upper = 0;
  int chromatic = 0;
  bool holds = false;
};

SandwichReport sandwich_check(const Graph& g, const Budget& budget, const Rat& tol);

// Zero-error capacity bounds in bits per use for converting copies of g into
// bits: lower from exact clique numbers of powers, upper from the minimum of
// the certified orthogonality bound and the exact fractional covering bound.
struct CapacityBounds {
  double lower = 0;
  int best_power = 0;   // power attaining the lower bound
  int best_clique = 0;  // ω at that power
  double upper = 0;
  std::string upper_source;
  Rat lovasz_upper = 0;  // certified
  Rat chi_f = 0;         // exact
};

CapacityBounds capacity_bounds(const Graph& g, int max_power, const Rat& tol,
                               const Budget& budget);

// Given a verified witness that n·x ≥ n·y (a map explicit(y)^n → explicit(x)^n
// on row-major product indices), builds the catalyst
//   z = join over k = 1..n of ( (k-1)·x ∗ (n-k)·y )
// and a verified map witnessing x + z ≥ y + z. Index convention for the
// returned map: source vertex = v·|z| + w with v over explicit(y), w over the
// join graph of z; likewise for the target with explicit(x).
struct CatalystConstruction {
  GraphTerm z;
  Graph z_graph;
  std::vector<std::int64_t> hom;
  std::int64_t source_order = 0;
  std::int64_t target_order = 0;
};

CatalystConstruction distribute_catalyst(const GraphTerm& x, const GraphTerm& y, int n,
                                         const std::vector<std::int64_t>& power_witness);

}  // namespace remono
