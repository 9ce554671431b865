#pragma once

// Certified orthogonality-relaxation bound for the disjunctive graph order:
// lovasz(G) is the optimum of  max ⟨J, X⟩  over unit-trace positive
// semidefinite X with X_uv = 0 for every distinct non-adjacent pair of G.
// It is multiplicative under the disjunctive product, equals n on K_n, and
// sits between the clique and chromatic numbers.
//
// The solver is a feasible-start primal-dual interior point method; the
// returned interval is certified after the fact in exact rational arithmetic
// (a feasible rational primal matrix proves the lower end, a feasible
// rational dual slack matrix proves the upper end).

#include "remono/budget.hpp"
#include "remono/graph.hpp"
#include "remono/rational.hpp"

namespace remono {

struct ThetaResult {
  Verdict verdict = Verdict::Unknown;  // Yes iff certified within tolerance
  double value = 0;                    // midpoint of the certified interval
  Rat lower = 0;                       // certified: some feasible X attains it
  Rat upper = 0;                       // certified: some feasible dual attains it
  int iterations = 0;
};

// Guarded by Guards::lovasz_vertices(). `tol` is the requested certified
// interval width; on convergence failure the verdict is Unknown and the
// interval is the best one certified.
ThetaResult lovasz_complement(const Graph& g, const Rat& tol);

}  // namespace remono
