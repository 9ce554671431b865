// Polyhedral cone theories: validation, closure/consolidation, quotients,
// duals, exact separation, conversion rates, numerical-embedding detection,
// functional extension, and dual decomposition.

#include "remono/cone.hpp"

#include "remono/budget.hpp"
#include "remono/linalg.hpp"
#include "remono/rational.hpp"

#include "doctest.h"

#include <set>
#include <string>
#include <vector>

using namespace remono;

namespace {

std::string vec_key(const Vec& v) {
  std::string s;
  for (const Rat& r : v) s += rat_to_string(r) + ",";
  return s;
}

std::multiset<std::string> mat_keys(const Mat& m) {
  std::multiset<std::string> out;
  for (const Vec& v : m) out.insert(vec_key(primitive_direction(v)));
  return out;
}

// Two non-strict inequality cells: alpha > 0, or alpha = 0 and beta >= 0.
// The union is not topologically closed; its closure is the halfspace.
RationalCone lexicographic_cone() {
  RationalCone c;
  c.dim = 2;
  ConeCell strict;
  strict.gt = {{Rat(1), Rat(0)}};
  ConeCell boundary;
  boundary.ge = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(-1), Rat(0)}};
  c.cells = {strict, boundary};
  return c;
}

RationalCone orthant_cone(int d) {
  RationalCone c;
  c.dim = d;
  ConeCell cell;
  for (int i = 0; i < d; ++i) {
    Vec row(d, Rat(0));
    row[i] = 1;
    cell.ge.push_back(row);
  }
  c.cells = {cell};
  return c;
}

RationalCone wrap_closed(const ClosedCone& c) {
  RationalCone r;
  r.dim = c.dim;
  ConeCell cell;
  cell.ge = c.facets;
  r.cells = {cell};
  return r;
}

}  // namespace

TEST_CASE("membership in cells, unions, and closures") {
  RationalCone lex = lexicographic_cone();
  CHECK(cone_contains(lex, {Rat(1), Rat(-50)}));
  CHECK(cone_contains(lex, {Rat(0), Rat(3)}));
  CHECK(cone_contains(lex, {Rat(0), Rat(0)}));
  CHECK_FALSE(cone_contains(lex, {Rat(0), Rat(-1)}));
  CHECK_FALSE(cone_contains(lex, {Rat(-1), Rat(5)}));
  // The union of cell closures is strictly larger than the union itself.
  CHECK(closed_union_contains(lex, {Rat(0), Rat(-1)}));
  CHECK_FALSE(closed_union_contains(lex, {Rat(-1), Rat(5)}));

  ConeCell cell;
  cell.ge = {{Rat(1), Rat(0)}};
  cell.gt = {{Rat(0), Rat(1)}};
  CHECK(cell_contains(cell, {Rat(0), Rat(1)}));
  CHECK_FALSE(cell_contains(cell, {Rat(1), Rat(0)}));  // strict row at zero
}

TEST_CASE("validation accepts lawful cones and rejects violations") {
  CHECK_NOTHROW(validate_cone(lexicographic_cone()));
  CHECK_NOTHROW(validate_cone(orthant_cone(3)));

  // Every cell strict: the origin is missing.
  RationalCone no_origin;
  no_origin.dim = 2;
  ConeCell strict;
  strict.gt = {{Rat(1), Rat(0)}};
  no_origin.cells = {strict};
  CHECK_THROWS_AS(validate_cone(no_origin), std::invalid_argument);

  // Two opposite axis rays: the cross-cell sum (1,1) escapes the union.
  RationalCone two_rays;
  two_rays.dim = 2;
  ConeCell ray1, ray2;
  ray1.ge = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
  ray2.ge = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(-1), Rat(0)}};
  two_rays.cells = {ray1, ray2};
  CHECK_THROWS_AS(validate_cone(two_rays), std::invalid_argument);

  RationalCone empty;
  empty.dim = 2;
  CHECK_THROWS_AS(validate_cone(empty), std::invalid_argument);
}

TEST_CASE("closure consolidates the lexicographic cone into a halfspace") {
  ClosedCone closed = archimedeanize(lexicographic_cone());
  CHECK(closed.dim == 2);
  CHECK(mat_keys(closed.facets) == mat_keys({{Rat(1), Rat(0)}}));
  CHECK(mat_keys(closed.lins) == mat_keys({{Rat(0), Rat(1)}}));
  CHECK(mat_keys(closed.rays) == mat_keys({{Rat(1), Rat(0)}}));
  CHECK(closed_contains(closed, {Rat(0), Rat(-7)}));
  CHECK_FALSE(closed_contains(closed, {Rat(-1), Rat(0)}));
}

TEST_CASE("closure is idempotent") {
  for (const RationalCone& c : {lexicographic_cone(), orthant_cone(3)}) {
    ClosedCone once = archimedeanize(c);
    ClosedCone twice = archimedeanize(wrap_closed(once));
    CHECK(mat_keys(once.facets) == mat_keys(twice.facets));
    CHECK(mat_keys(once.rays) == mat_keys(twice.rays));
    CHECK(mat_keys(once.lins) == mat_keys(twice.lins));
  }
}

TEST_CASE("representation conversions agree") {
  // Orthant: facets I <-> rays e_i.
  ClosedCone from_facets =
      closed_cone_from_facets({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, 2);
  CHECK(mat_keys(from_facets.rays) == mat_keys({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
  CHECK(from_facets.lins.empty());

  ClosedCone from_gens =
      closed_cone_from_generators({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {}, 2);
  CHECK(mat_keys(from_gens.facets) == mat_keys(from_facets.facets));

  // Halfspace: one facet, lineality basis (0,1).
  ClosedCone half = closed_cone_from_facets({{Rat(1), Rat(0)}}, 2);
  CHECK(mat_keys(half.lins) == mat_keys({{Rat(0), Rat(1)}}));
}

TEST_CASE("pointed quotient flattens the lineality space") {
  ClosedCone half = closed_cone_from_facets({{Rat(1), Rat(0)}}, 2);
  PointedQuotient pq = pointed_quotient(half);
  CHECK(pq.qdim == 1);
  CHECK(mat_keys(pq.lineality) == mat_keys({{Rat(0), Rat(1)}}));
  REQUIRE(pq.projection.size() == 1);
  // The projection kills the lineality direction and keeps the facet normal.
  CHECK(dot(pq.projection[0], {Rat(0), Rat(1)}) == Rat(0));
  CHECK(dot(pq.projection[0], {Rat(1), Rat(0)}) != Rat(0));

  ClosedCone orthant = closed_cone_from_facets({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, 2);
  PointedQuotient pq2 = pointed_quotient(orthant);
  CHECK(pq2.qdim == 2);
  CHECK(pq2.lineality.empty());
}

TEST_CASE("dual extreme rays") {
  ClosedCone orthant = closed_cone_from_facets({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, 2);
  CHECK(mat_keys(dual_rays(orthant)) == mat_keys({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));

  ClosedCone half = closed_cone_from_facets({{Rat(1), Rat(0)}}, 2);
  CHECK(mat_keys(dual_rays(half)) == mat_keys({{Rat(1), Rat(0)}}));

  // A ray in the plane is not full-dimensional: the dual halfplane's
  // lineality shows up as an opposite pair.
  ClosedCone line = closed_cone_from_generators({{Rat(1), Rat(0)}}, {}, 2);
  CHECK(mat_keys(dual_rays(line)) ==
        mat_keys({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}}));
}

TEST_CASE("exact separation certificates") {
  RationalCone lex = lexicographic_cone();

  Separation inside = separate(lex, {Rat(0), Rat(1)});
  CHECK(inside.in_closure);
  // Boundary-of-closure points cannot be separated either.
  Separation boundary = separate(lex, {Rat(0), Rat(-2)});
  CHECK(boundary.in_closure);

  Separation outside = separate(lex, {Rat(-1), Rat(3)});
  REQUIRE_FALSE(outside.in_closure);
  CHECK(dot(outside.functional, {Rat(-1), Rat(3)}) < Rat(0));
  // The functional is nonnegative on the closure's generators.
  ClosedCone closed = archimedeanize(lex);
  for (const Vec& r : closed.rays) CHECK(dot(outside.functional, r) >= Rat(0));
  for (const Vec& l : closed.lins) CHECK(dot(outside.functional, l) == Rat(0));
}

TEST_CASE("conversion rates on the orthant") {
  ClosedCone orthant = closed_cone_from_facets({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, 2);

  ConeRate r1 = rate_region_cone(orthant, {Rat(2), Rat(1)}, {Rat(1), Rat(1)});
  CHECK_FALSE(r1.rmax.infinite);
  CHECK(r1.rmax.value == Rat(1));
  CHECK(r1.rmin.value == Rat(0));

  ConeRate r2 = rate_region_cone(orthant, {Rat(1), Rat(0)}, {Rat(0), Rat(1)});
  CHECK(r2.rmax.value == Rat(0));

  ConeRate r3 = rate_region_cone(orthant, {Rat(3), Rat(5)}, {Rat(3), Rat(5)});
  CHECK(r3.rmax.value == Rat(1));

  ConeRate degenerate = rate_region_cone(orthant, {Rat(1), Rat(1)}, {Rat(0), Rat(0)});
  CHECK(degenerate.rmax.infinite);
  CHECK(degenerate.infinite_because_target_vanishes);
}

TEST_CASE("conversion rates see through the lineality space") {
  ClosedCone half = closed_cone_from_facets({{Rat(1), Rat(0)}}, 2);
  // Only the first coordinate survives the quotient.
  ConeRate r = rate_region_cone(half, {Rat(1), Rat(5)}, {Rat(1), Rat(-3)});
  CHECK(r.rmax.value == Rat(1));
  ConeRate r2 = rate_region_cone(half, {Rat(3), Rat(0)}, {Rat(2), Rat(9)});
  CHECK(r2.rmax.value == Rat(3, 2));
  // A target that vanishes in the quotient has infinite rate.
  ConeRate r3 = rate_region_cone(half, {Rat(1), Rat(0)}, {Rat(0), Rat(7)});
  CHECK(r3.rmax.infinite);
  CHECK(r3.infinite_because_target_vanishes);
}

TEST_CASE("numerical evidence distinguishes total from partial orders") {
  ClosedCone half = closed_cone_from_facets({{Rat(1), Rat(0)}}, 2);
  NumericalEvidence ev = is_numerical(half);
  CHECK(ev.numerical);
  CHECK(ev.quotient_dim == 1);
  CHECK(ev.dual_ray_count == 1);
  REQUIRE(ev.embedding.has_value());
  CHECK(*ev.embedding == Vec{Rat(1), Rat(0)});

  ClosedCone orthant = closed_cone_from_facets({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, 2);
  NumericalEvidence ev2 = is_numerical(orthant);
  CHECK_FALSE(ev2.numerical);
  CHECK(ev2.quotient_dim == 2);
  CHECK(ev2.dual_ray_count == 2);
  CHECK_FALSE(ev2.embedding.has_value());

  // A single ray in the plane leaves most pairs incomparable.
  ClosedCone line = closed_cone_from_generators({{Rat(1), Rat(0)}}, {}, 2);
  CHECK_FALSE(is_numerical(line).numerical);
}

TEST_CASE("reciprocal rate products") {
  ClosedCone half = closed_cone_from_facets({{Rat(1), Rat(0)}}, 2);
  ReciprocalReport rep = reciprocal_rate_check(
      half, {{Rat(1), Rat(0)}, {Rat(2), Rat(5)}, {Rat(3), Rat(-1)}});
  CHECK(rep.numerical);
  CHECK(rep.all_products_leq_one);
  CHECK(rep.all_products_one_when_numerical);
  REQUIRE(rep.entries.size() == 3);
  for (const auto& e : rep.entries) {
    REQUIRE(e.product.has_value());
    CHECK(e.exact_one);
  }

  ClosedCone orthant = closed_cone_from_facets({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, 2);
  ReciprocalReport rep2 = reciprocal_rate_check(
      orthant, {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}, {Rat(1), Rat(0)}});
  CHECK_FALSE(rep2.numerical);
  CHECK(rep2.all_products_leq_one);
  // (1,1) <-> (2,2): product exactly one even off the numerical case.
  CHECK(rep2.entries[0].exact_one);
  // (1,1) -> (1,0) goes at rate 1 but the reverse collapses to 0.
  REQUIRE(rep2.entries[1].product.has_value());
  CHECK(*rep2.entries[1].product == Rat(0));
}

TEST_CASE("functional extension under a polyhedral gauge") {
  // p(z) = max(z1, z2); seed f(1,1) = 1 on the diagonal.
  Mat forms = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  Mat identity = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  Vec g = hahn_banach_extend(forms, {{Rat(1), Rat(1)}}, {Rat(1)}, identity);
  REQUIRE(g.size() == 2);
  CHECK(g == Vec{Rat(1, 2), Rat(1, 2)});

  // Extension agrees with the seed and stays dominated on a sample grid.
  CHECK(dot(g, {Rat(1), Rat(1)}) == Rat(1));
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      Vec z{Rat(a), Rat(b)};
      Rat p = std::max(dot(forms[0], z), dot(forms[1], z));
      CHECK(dot(g, z) <= p);
    }
}

TEST_CASE("functional extension from a plane in three dimensions") {
  Mat forms = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
  Mat identity = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
  Mat seed_basis = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
  Vec g = hahn_banach_extend(forms, seed_basis, {Rat(1, 3), Rat(1, 4)}, identity);
  CHECK(g[0] == Rat(1, 3));
  CHECK(g[1] == Rat(1, 4));
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c) {
        Vec z{Rat(a), Rat(b), Rat(c)};
        Rat p = std::max({dot(forms[0], z), dot(forms[1], z), dot(forms[2], z)});
        CHECK(dot(g, z) <= p);
      }
}

TEST_CASE("functional extension rejects an undominated seed") {
  Mat forms = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  Mat identity = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  CHECK_THROWS_AS(hahn_banach_extend(forms, {{Rat(1), Rat(1)}}, {Rat(2)}, identity),
                  std::invalid_argument);
}

TEST_CASE("dual decomposition of functionals") {
  ClosedCone orthant = closed_cone_from_facets({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, 2);
  Mat rays = dual_rays(orthant);

  FunctionalDecomposition yes = decompose_functional(orthant, {Rat(3), Rat(5)});
  CHECK(yes.in_dual);
  REQUIRE(yes.ray_coeffs.size() == rays.size());
  Vec rebuilt(2, Rat(0));
  for (std::size_t i = 0; i < rays.size(); ++i) {
    CHECK(yes.ray_coeffs[i] >= Rat(0));
    for (int k = 0; k < 2; ++k) rebuilt[k] += yes.ray_coeffs[i] * rays[i][k];
  }
  CHECK(rebuilt == Vec{Rat(3), Rat(5)});

  CHECK_FALSE(decompose_functional(orthant, {Rat(1), Rat(-1)}).in_dual);
}

TEST_CASE("nested gauge cones distinguish continued-fraction convergents") {
  // lambda_k = p_k / q_k are the convergents 1, 3/2, 7/5, 17/12, 41/29 whose
  // squares straddle 2. The cone |lambda alpha + beta| <= gamma contains
  // v_j = (q_j, -p_j, 0) exactly when j = k, so each refinement flips the
  // membership of every earlier boundary point.
  const std::vector<std::pair<long, long>> conv = {{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}};
  std::vector<ClosedCone> cones;
  for (auto [p, q] : conv)
    cones.push_back(closed_cone_from_facets(
        {{Rat(-p), Rat(-q), Rat(q)}, {Rat(p), Rat(q), Rat(q)}}, 3));
  for (std::size_t k = 0; k < conv.size(); ++k) {
    Vec v{Rat(conv[k].second), Rat(-conv[k].first), Rat(0)};
    for (std::size_t j = 0; j < conv.size(); ++j) {
      CHECK(closed_contains(cones[j], v) == (j == k));
      if (j != k) {
        Separation s = separate_closed(cones[j], v);
        REQUIRE_FALSE(s.in_closure);
        CHECK(dot(s.functional, v) < Rat(0));
      }
    }
  }
}
