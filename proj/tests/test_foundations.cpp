#include "doctest.h"

#include "remono/dd.hpp"
#include "remono/linalg.hpp"
#include "remono/rational.hpp"
#include "remono/simplex.hpp"

#include <algorithm>
#include <set>
#include <string>

using namespace remono;

TEST_CASE("rational serialization is p/q and parses back") {
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK(rat_to_string(Rat(-3, 7)) == "-3/7");
  CHECK(rat_to_string(Rat(2, 4)) == "1/2");

  CHECK(*rat_from_string("5") == Rat(5));
  CHECK(*rat_from_string("-3/7") == Rat(-3, 7));
  CHECK(*rat_from_string("6/4") == Rat(3, 2));
  CHECK(!rat_from_string("1.5").has_value());
  CHECK(!rat_from_string("x").has_value());
  CHECK(!rat_from_string("1/0").has_value());
  CHECK(!rat_from_string("").has_value());
}

TEST_CASE("double conversion is exact for binary rationals") {
  CHECK(rat_from_double(0.25) == Rat(1, 4));
  CHECK(rat_from_double(-3.5) == Rat(-7, 2));
  CHECK(rat_to_double(Rat(1, 2)) == 0.5);
}

TEST_CASE("extended rationals order with infinity on top") {
  ExtRat two = ExtRat::of(Rat(2));
  ExtRat three = ExtRat::of(Rat(3));
  ExtRat inf = ExtRat::infinity();
  CHECK(two < three);
  CHECK(three < inf);
  CHECK(!(inf < inf));
  CHECK(inf == inf);
  CHECK(two <= two);
  CHECK(ext_rat_to_string(inf) == "inf");
  CHECK(ext_rat_to_string(two) == "2");
}

TEST_CASE("rref, rank, and nullspace agree on a rank-2 system") {
  Mat a = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(rank(a) == 2);
  Mat ns = nullspace(a, 3);
  REQUIRE(ns.size() == 1);
  for (const Vec& row : a) CHECK(dot(row, ns[0]) == 0);
}

TEST_CASE("solve_linear finds a solution iff consistent") {
  Mat a = {{1, 1}, {1, -1}};
  auto x = solve_linear(a, {Rat(3), Rat(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(2));
  CHECK((*x)[1] == Rat(1));

  Mat sing = {{1, 1}, {2, 2}};
  CHECK(!solve_linear(sing, {Rat(0), Rat(1)}).has_value());
  CHECK(solve_linear(sing, {Rat(1), Rat(2)}).has_value());
}

TEST_CASE("primitive_direction clears denominators without flipping sign") {
  Vec v = {Rat(1, 2), Rat(-3, 4)};
  Vec p = primitive_direction(v);
  CHECK(p == Vec{Rat(2), Rat(-3)});
  CHECK(vec_is_zero(primitive_direction({Rat(0), Rat(0)})));
}

TEST_CASE("lp_solve: bounded optimum with exact rational answer") {
  // max x + y subject to x + 2y <= 4, 3x + y <= 6, x,y >= 0
  LinearProgram lp;
  lp.nvars = 2;
  lp.cons.push_back({{Rat(1), Rat(2)}, Rel::LE, Rat(4)});
  lp.cons.push_back({{Rat(3), Rat(1)}, Rel::LE, Rat(6)});
  lp.objective = {Rat(1), Rat(1)};
  lp.maximize = true;
  lp.nonneg = {true, true};
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rat(14, 5));
  CHECK(r.x[0] == Rat(8, 5));
  CHECK(r.x[1] == Rat(6, 5));
}

TEST_CASE("lp_solve: infeasible and unbounded are detected") {
  LinearProgram bad = LinearProgram::feasibility(1);
  bad.cons.push_back({{Rat(1)}, Rel::GE, Rat(2)});
  bad.cons.push_back({{Rat(1)}, Rel::LE, Rat(1)});
  CHECK(lp_solve(bad).status == LpStatus::Infeasible);

  LinearProgram unb;
  unb.nvars = 1;
  unb.cons.push_back({{Rat(1)}, Rel::GE, Rat(0)});
  unb.objective = {Rat(1)};
  unb.maximize = true;
  CHECK(lp_solve(unb).status == LpStatus::Unbounded);
}

TEST_CASE("lp_solve: free variables and equality rows") {
  // x free, y >= 0: minimize y subject to x + y = 3, x <= 1  -> y = 2.
  LinearProgram lp;
  lp.nvars = 2;
  lp.cons.push_back({{Rat(1), Rat(1)}, Rel::EQ, Rat(3)});
  lp.cons.push_back({{Rat(1), Rat(0)}, Rel::LE, Rat(1)});
  lp.objective = {Rat(0), Rat(1)};
  lp.maximize = false;
  lp.nonneg = {false, true};
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rat(2));
}

namespace {

std::set<std::string> ray_keys(const Mat& rays) {
  std::set<std::string> keys;
  for (const Vec& r : rays) {
    std::string k;
    for (const Rat& x : r) k += rat_to_string(x) + ",";
    keys.insert(k);
  }
  return keys;
}

}  // namespace

TEST_CASE("extreme_rays of the quadrant and a halfplane") {
  Mat quad = {{1, 0}, {0, 1}};
  DDResult r = extreme_rays(quad, 2);
  CHECK(r.lineality.empty());
  CHECK(ray_keys(r.rays) == std::set<std::string>{"1,0,", "0,1,"});

  Mat half = {{1, 0}};
  DDResult h = extreme_rays(half, 2);
  REQUIRE(h.lineality.size() == 1);
  CHECK(ray_keys(h.lineality) == std::set<std::string>{"0,1,"});
  CHECK(ray_keys(h.rays) == std::set<std::string>{"1,0,"});
}

TEST_CASE("facets_of inverts extreme_rays on random small cones") {
  // Round-trip: H-rep -> V-rep -> H-rep must describe the same point set.
  std::vector<Mat> cases = {
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {{1, 1, 0}, {1, -1, 0}, {0, 0, 1}},
      {{2, -1}, {-1, 2}},
      {{1, 2, 3}, {3, 2, 1}, {1, 0, 1}},
  };
  for (const Mat& rows : cases) {
    int dim = static_cast<int>(rows.front().size());
    DDResult dd = extreme_rays(rows, dim);
    Mat back = facets_of(dd.rays, dd.lineality, dim);
    // Every generator satisfies the recovered facets...
    for (const Vec& g : dd.rays)
      for (const Vec& f : back) CHECK(dot(f, g) >= 0);
    for (const Vec& l : dd.lineality)
      for (const Vec& f : back) CHECK(dot(f, l) == 0);
    // ...and the recovered facets are implied by the original rows: sample
    // a few combinations of generators and check the original description.
    Vec sum(dim, Rat(0));
    for (const Vec& g : dd.rays) sum = vec_add(sum, g);
    for (const Vec& row : rows) CHECK(dot(row, sum) >= 0);
  }
}
