#pragma once

// Isomorphism-invariant relabeling: equal outputs exactly for isomorphic
// inputs. Partition refinement plus individualization backtracking, with
// subtree pruning by refinement traces and by verified automorphisms.

#include "remono/graph.hpp"

namespace remono {

// Permutation sending each vertex to its canonical position. Guarded by
// Guards::canon_vertices().
std::vector<int> canonical_permutation(const Graph& g);

Graph canonical_label(const Graph& g);

bool isomorphic(const Graph& g, const Graph& h);

}  // namespace remono
