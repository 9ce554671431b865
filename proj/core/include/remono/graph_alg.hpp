#pragma once

// Exact graph search: clique number via branch-and-bound with a greedy
// coloring bound, chromatic number via saturation-ordered backtracking,
// homomorphism search via constraint propagation, maximal independent sets,
// and the exact fractional chromatic number.
//
// Every search takes a Budget and counts nodes; when the node limit is hit
// the verdict is Unknown and partial information (best bound found so far)
// is still reported. Completed searches are exact.

#include "remono/budget.hpp"
#include "remono/graph.hpp"
#include "remono/monoid.hpp"
#include "remono/rational.hpp"

#include <cstdint>
#include <vector>

namespace remono {

struct CliqueResult {
  Verdict verdict = Verdict::Unknown;  // Yes: size is exact
  int size = 0;                        // on Unknown: best clique found so far
  std::vector<int> witness;            // vertices of a clique of `size`
  std::uint64_t nodes = 0;
};

CliqueResult clique_number(const Graph& g, const Budget& budget);

// Decides whether the graph has a clique of at least `m` vertices, stopping
// as soon as one is found. Yes carries a witness of exactly m vertices; No is
// exhaustive; Unknown on budget exhaustion.
struct CliqueAtLeast {
  Verdict verdict = Verdict::Unknown;
  std::vector<int> witness;
  std::uint64_t nodes = 0;
};

CliqueAtLeast clique_at_least(const Graph& g, int m, const Budget& budget);

struct ColoringResult {
  Verdict verdict = Verdict::Unknown;  // Yes: number is exact
  int number = 0;                      // on Unknown: best upper bound found
  std::vector<int> coloring;           // proper coloring with `number` colors
  std::uint64_t nodes = 0;
};

ColoringResult chromatic_number(const Graph& g, const Budget& budget);

// Decides whether the graph admits a proper coloring with at most k colors.
struct ColoringAtMost {
  Verdict verdict = Verdict::Unknown;
  std::vector<int> coloring;
  std::uint64_t nodes = 0;
};

ColoringAtMost coloring_at_most(const Graph& g, int k, const Budget& budget);

// Homomorphism from `source` into `target` (adjacent vertices map to
// adjacent vertices). Yes carries a verified map; No means the backtracking
// search exhausted all assignments.
struct HomResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<int> map;
  std::uint64_t nodes = 0;
  std::string note;
};

HomResult hom_search(const Graph& source, const Graph& target, const Budget& budget);

bool verify_hom(const Graph& source, const Graph& target, const std::vector<int>& map);

// All maximal independent sets (Bron–Kerbosch with pivoting on the
// complement). Throws if more than `cap` sets would be produced.
std::vector<Bitset> maximal_independent_sets(const Graph& g, std::size_t cap = 1000000);

// Exact optimum of the fractional covering relaxation of coloring:
// min Σ_I w_I subject to Σ_{I∋v} w_I ≥ 1 over maximal independent sets.
// Guarded by Guards::frac_chromatic_vertices().
Rat fractional_chromatic(const Graph& g);

// Greedy clique (descending-degree heuristic); cheap lower bound.
std::vector<int> greedy_clique(const Graph& g);

// Greedy sequential coloring in descending-degree order; cheap upper bound.
int greedy_coloring(const Graph& g, std::vector<int>* coloring = nullptr);

}  // namespace remono
