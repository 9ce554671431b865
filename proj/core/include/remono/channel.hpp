#pragma once

// Discrete memoryless channels with exact rational transition probabilities:
// parallel combination, composition, conversion verification by explicit
// encode/decode witnesses, the distinguishability graph, and the heuristic
// conversion search (verified Yes; No only through the graph-level necessary
// condition).

#include "remono/budget.hpp"
#include "remono/graph.hpp"
#include "remono/monoid.hpp"
#include "remono/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace remono {

// Row-stochastic matrix: p[a][b] is the probability of output b on input a.
struct StochasticChannel {
  int in_size = 0;
  int out_size = 0;
  std::vector<std::vector<Rat>> p;

  bool operator==(const StochasticChannel&) const = default;
};

// Validates shape, entries in [0,1], and exact row sums of 1.
StochasticChannel make_channel(int in_size, int out_size, std::vector<std::vector<Rat>> p);
StochasticChannel identity_channel(int n);
// The neutral element: one input, one output, probability 1.
StochasticChannel trivial_channel();

// Parallel use: inputs (a, c) and outputs (b, d) paired row-major
// (a * Q.in_size + c, and b * Q.out_size + d).
StochasticChannel tensor(const StochasticChannel& p, const StochasticChannel& q);

// Serial composition: feed a's output into b. Throws on dimension mismatch.
StochasticChannel compose(const StochasticChannel& a, const StochasticChannel& b);

// Exact test of q == dec after p after enc. Throws on dimension mismatch.
bool verify_conversion(const StochasticChannel& p, const StochasticChannel& q,
                       const StochasticChannel& enc, const StochasticChannel& dec);

// Vertices are input symbols; two inputs are adjacent iff their output
// distributions have disjoint support (no output can be caused by both).
Graph distinguishability_graph(const StochasticChannel& p);

// From a verified conversion witness, the induced map on distinguishability
// graphs: each input c of q goes to the least a with enc(a|c) > 0. The result
// is checked to be adjacency-preserving. Throws std::invalid_argument when
// the witness does not verify.
std::vector<int> induced_hom(const StochasticChannel& p, const StochasticChannel& q,
                             const StochasticChannel& enc, const StochasticChannel& dec);

struct ConversionSearchResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<StochasticChannel> enc;
  std::optional<StochasticChannel> dec;
  std::string detail;
  int restarts_used = 0;
};

// Searches for encode/decode witnesses turning p into q. Alternates exact
// linear-programming half-steps (fix one side, minimize the exact residual of
// the other). Yes only with a witness that passes verify_conversion; No only
// when the distinguishability graphs already rule out any conversion; anything
// else is Unknown, because joint feasibility is bilinear.
ConversionSearchResult conversion_search(const StochasticChannel& p, const StochasticChannel& q,
                                         int restarts, int iterations, const Budget& budget);

// The monoid instance: combine = parallel use, zero = trivial channel,
// leq(a, b) asks whether a converts to b.
struct ChannelInstance {
  using Element = StochasticChannel;
  static constexpr bool complete_order = false;

  int restarts = 6;
  int iterations = 8;

  Element combine(const Element& a, const Element& b) const { return tensor(a, b); }
  Element zero() const { return trivial_channel(); }
  TriState leq(const Element& a, const Element& b, const Budget& budget) const;
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string describe(const Element& a) const;
};

}  // namespace remono
