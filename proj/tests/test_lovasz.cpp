// Certified orthogonality-relaxation bound: known closed-form values, the
// clique/chromatic sandwich on random graphs, and certificate consistency.

#include "remono/graph.hpp"
#include "remono/graph_alg.hpp"
#include "remono/lovasz.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace remono;

namespace {

const Rat kTol = Rat(1, 1000000);

// Interval is certified, tight, and contains `expected`.
void check_value(const Graph& g, double expected) {
  ThetaResult r = lovasz_complement(g, kTol);
  REQUIRE(r.verdict == Verdict::Yes);
  CHECK(r.upper - r.lower <= kTol);
  CHECK(rat_to_double(r.lower) <= expected + 1e-6);
  CHECK(rat_to_double(r.upper) >= expected - 1e-6);
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-6));
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, 5 + i);
  }
  return g;
}

}  // namespace

TEST_CASE("pentagon value is sqrt 5") { check_value(Graph::cycle(5), std::sqrt(5.0)); }

TEST_CASE("complete graphs evaluate to their order") {
  for (int n = 1; n <= 8; ++n) check_value(Graph::complete(n), static_cast<double>(n));
}

TEST_CASE("edgeless graphs evaluate to one") {
  for (int n : {2, 5, 9}) check_value(Graph::edgeless(n), 1.0);
}

TEST_CASE("odd cycle closed form") {
  // On C_n (n odd) the value is 1 + sec(pi/n) by vertex-transitive duality.
  check_value(Graph::cycle(7), 1.0 + 1.0 / std::cos(M_PI / 7));
  check_value(Graph::cycle(9), 1.0 + 1.0 / std::cos(M_PI / 9));
}

TEST_CASE("petersen graph evaluates to five halves") { check_value(petersen(), 2.5); }

TEST_CASE("multiplicative under the disjunctive product") {
  Graph c5 = Graph::cycle(5);
  check_value(disjunctive_product(c5, Graph::complete(2)), 2.0 * std::sqrt(5.0));
  check_value(disjunctive_product(c5, c5), 5.0);
}

TEST_CASE("sandwiched between clique and chromatic number on random graphs") {
  std::mt19937 rng(2026);
  std::bernoulli_distribution coin(0.5);
  Budget budget;
  for (int trial = 0; trial < 8; ++trial) {
    Graph g(10);
    for (int u = 0; u < 10; ++u)
      for (int v = u + 1; v < 10; ++v)
        if (coin(rng)) g.add_edge(u, v);

    auto cl = clique_number(g, budget);
    auto ch = chromatic_number(g, budget);
    REQUIRE(cl.verdict == Verdict::Yes);
    REQUIRE(ch.verdict == Verdict::Yes);

    ThetaResult r = lovasz_complement(g, kTol);
    REQUIRE(r.verdict == Verdict::Yes);
    // The true optimum lies in [lower, upper]; the sandwich holds against the
    // certified ends with the interval width as slack.
    CHECK(Rat(cl.size) <= r.upper);
    CHECK(r.lower <= Rat(ch.number));
  }
}

TEST_CASE("certified interval ends are rationally ordered") {
  ThetaResult r = lovasz_complement(Graph::cycle(5), kTol);
  REQUIRE(r.verdict == Verdict::Yes);
  CHECK(r.lower <= r.upper);
  CHECK(r.iterations > 0);
  // Midpoint reported as the value.
  CHECK(r.value == doctest::Approx(rat_to_double((r.lower + r.upper) / Rat(2))));
}

TEST_CASE("vertex guard rejects oversized inputs") {
  CHECK_THROWS(lovasz_complement(Graph::edgeless(31), kTol));
}
