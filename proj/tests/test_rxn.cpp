// Finitely presented theories over a species alphabet: reachability with
// witness sequences, exact conservation laws, monotone cones, the
// functional order with Farkas certificates, and atom expansion.

#include "remono/rxn.hpp"

#include "remono/monoid.hpp"

#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

using namespace remono;

namespace {

const Budget kBudget;

// Methane combustion and zinc dissolution over a shared alphabet.
ReactionSystem chemistry() {
  ReactionSystem sys;
  sys.species = {"CH4", "O2", "CO2", "H2O", "Zn", "HCl", "ZnCl2", "H2"};
  sys.reactions = {
      {{{"CH4", 1}, {"O2", 2}}, {{"CO2", 1}, {"H2O", 2}}},
      {{{"Zn", 1}, {"HCl", 2}}, {{"ZnCl2", 1}, {"H2", 1}}},
  };
  return sys;
}

std::map<std::string, Multiset> atom_table() {
  return {
      {"CH4", {{"C", 1}, {"H", 4}}},
      {"O2", {{"O", 2}}},
      {"CO2", {{"C", 1}, {"O", 2}}},
      {"H2O", {{"H", 2}, {"O", 1}}},
      {"HCl", {{"H", 1}, {"Cl", 1}}},
      {"ZnCl2", {{"Zn", 1}, {"Cl", 2}}},
      {"H2", {{"H", 2}}},
      {"Zn", {{"Zn", 1}}},
  };
}

// a <-> b plus a one-way valve b -> c.
ReactionSystem valve() {
  ReactionSystem sys;
  sys.species = {"a", "b", "c"};
  sys.reactions = {
      {{{"a", 1}}, {{"b", 1}}},
      {{{"b", 1}}, {{"a", 1}}},
      {{{"b", 1}}, {{"c", 1}}},
  };
  return sys;
}

Rat dot_counts(const Vec& f, const std::vector<std::int64_t>& counts) {
  Rat s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * Rat(counts[i]);
  return s;
}

}  // namespace

TEST_CASE("validation and counts round-trip") {
  ReactionSystem sys = chemistry();
  CHECK_NOTHROW(validate_system(sys));
  Multiset m{{"CH4", 2}, {"H2", 1}};
  CHECK_NOTHROW(validate_state(sys, m));
  CHECK_THROWS_AS(validate_state(sys, Multiset{{"Xe", 1}}), std::invalid_argument);

  auto counts = to_counts(sys, m);
  REQUIRE(counts.size() == sys.species.size());
  CHECK(counts[0] == 2);  // CH4
  CHECK(counts[7] == 1);  // H2
  CHECK(from_counts(sys, counts) == m);

  ReactionSystem bad = sys;
  bad.reactions.push_back({{{"Kr", 1}}, {}});
  CHECK_THROWS_AS(validate_system(bad), std::invalid_argument);
}

TEST_CASE("reachability finds witnessed sequences") {
  ReactionSystem sys = chemistry();
  Multiset x{{"CH4", 1}, {"O2", 2}, {"Zn", 1}, {"HCl", 2}};
  Multiset y{{"CO2", 1}, {"H2O", 2}, {"ZnCl2", 1}, {"H2", 1}};

  ReachResult r = reachable_leq(sys, x, y, kBudget);
  REQUIRE(r.verdict == Verdict::Yes);
  REQUIRE(r.sequence.size() == 2);
  // Replay the sequence by hand to confirm the witness.
  auto counts = to_counts(sys, x);
  for (std::size_t idx : r.sequence) {
    const Reaction& rx = sys.reactions[idx];
    for (const auto& [sp, k] : rx.lhs) {
      auto pos = std::find(sys.species.begin(), sys.species.end(), sp) - sys.species.begin();
      counts[pos] -= static_cast<std::int64_t>(k);
      REQUIRE(counts[pos] >= 0);
    }
    for (const auto& [sp, k] : rx.rhs) {
      auto pos = std::find(sys.species.begin(), sys.species.end(), sp) - sys.species.begin();
      counts[pos] += static_cast<std::int64_t>(k);
    }
  }
  CHECK(from_counts(sys, counts) == y);

  // Discarding is not a declared reaction, so the target state must be hit
  // exactly; reaching a strict superset of it does not count.
  Multiset partial{{"CO2", 1}};
  CHECK(reachable_leq(sys, x, partial, kBudget).verdict == Verdict::No);

  // The reverse direction is refused exhaustively.
  CHECK(reachable_leq(sys, y, x, kBudget).verdict == Verdict::No);
}

TEST_CASE("reachability explores interleavings") {
  ReactionSystem sys = valve();
  ReachResult r = reachable_leq(sys, {{"a", 3}}, {{"c", 3}}, kBudget);
  CHECK(r.verdict == Verdict::Yes);
  CHECK(reachable_leq(sys, {{"c", 1}}, {{"a", 1}}, kBudget).verdict == Verdict::No);
  // Mixed state: two conversions happen independently.
  CHECK(reachable_leq(sys, {{"a", 1}, {"b", 1}}, {{"c", 2}}, kBudget).verdict ==
        Verdict::Yes);

  // Identical states are reachable by the empty sequence.
  ReachResult self = reachable_leq(sys, {{"a", 2}}, {{"a", 2}}, kBudget);
  CHECK(self.verdict == Verdict::Yes);
  CHECK(self.sequence.empty());
}

TEST_CASE("depth truncation reports Unknown, not No") {
  ReactionSystem sys = valve();
  Budget shallow;
  shallow.nodes = 2;
  ReachResult r = reachable_leq(sys, {{"a", 5}}, {{"c", 5}}, shallow);
  CHECK(r.verdict == Verdict::Unknown);
}

TEST_CASE("conservation laws annihilate every reaction difference") {
  ReactionSystem sys = chemistry();
  std::vector<Vec> laws = conservation_laws(sys);
  CHECK(laws.size() == 6);  // 8 species, 2 independent reactions
  for (const Vec& f : laws)
    for (const Reaction& rx : sys.reactions) {
      Multiset lhs = rx.lhs, rhs = rx.rhs;
      CHECK(dot_counts(f, to_counts(sys, lhs)) == dot_counts(f, to_counts(sys, rhs)));
    }

  // The atom-expanded system conserves each atom count; the hydrogen-count
  // vector must be in the span. Expansion maps every species to atoms, so
  // the coordinates are atoms only.
  ReactionSystem atoms = expand_species(sys, atom_table());
  std::vector<Vec> atom_laws = conservation_laws(atoms);
  // Each coordinate vector (count one atom) is conserved.
  for (std::size_t i = 0; i < atoms.species.size(); ++i) {
    Vec indicator(atoms.species.size(), Rat(0));
    indicator[i] = 1;
    for (const Reaction& rx : atoms.reactions)
      CHECK(dot_counts(indicator, to_counts(atoms, rx.lhs)) ==
            dot_counts(indicator, to_counts(atoms, rx.rhs)));
  }
  CHECK(atom_laws.size() == atoms.species.size());  // expansions change nothing
}

TEST_CASE("atom expansion rewrites states and reactions") {
  ReactionSystem sys = chemistry();
  auto table = atom_table();
  Multiset water{{"H2O", 2}};
  Multiset expanded = expand_multiset(water, table);
  CHECK(expanded == Multiset{{"H", 4}, {"O", 2}});

  ReactionSystem atoms = expand_species(sys, table);
  // Combustion becomes an identity on atoms: C + 4H + 4O on both sides.
  Multiset lhs = atoms.reactions[0].lhs;
  Multiset rhs = atoms.reactions[0].rhs;
  CHECK(lhs == rhs);
  CHECK(lhs == Multiset{{"C", 1}, {"H", 4}, {"O", 4}});

  // Species not in the table survive unchanged.
  Multiset partial = expand_multiset({{"H2O", 1}, {"mystery", 2}}, table);
  CHECK(partial == Multiset{{"H", 2}, {"O", 1}, {"mystery", 2}});
}

TEST_CASE("monotone cone rays evaluate monotonically on reachable pairs") {
  ReactionSystem sys = valve();
  MonotoneRays mr = monotone_rays(sys);
  CHECK_FALSE(mr.rays.empty());
  // a <-> b forces f(a) = f(b) >= f(c): rays must satisfy the constraints.
  for (const Vec& f : mr.rays) {
    CHECK(f[0] == f[1]);
    CHECK(f[1] >= f[2]);
  }
  // And monotone along an actual conversion a -> c.
  for (const Vec& f : mr.rays)
    CHECK(dot_counts(f, to_counts(sys, {{"a", 1}})) >=
          dot_counts(f, to_counts(sys, {{"c", 1}})));
}

TEST_CASE("functional order membership with certificates") {
  ReactionSystem sys = chemistry();
  Multiset x{{"CH4", 1}, {"O2", 2}, {"Zn", 1}, {"HCl", 2}};
  Multiset y{{"CO2", 1}, {"H2O", 2}, {"ZnCl2", 1}, {"H2", 1}};

  FunctionalOrderResult holds = functional_order_leq(sys, x, y);
  CHECK(holds.holds);
  REQUIRE(holds.coefficients.size() == sys.reactions.size());
  // The coefficients reproduce x - y as a conic combination.
  std::vector<Rat> diff(sys.species.size(), Rat(0));
  auto cx = to_counts(sys, x);
  auto cy = to_counts(sys, y);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = Rat(cx[i] - cy[i]);
  for (std::size_t r = 0; r < sys.reactions.size(); ++r) {
    CHECK(holds.coefficients[r] >= 0);
    auto cl = to_counts(sys, sys.reactions[r].lhs);
    auto cr = to_counts(sys, sys.reactions[r].rhs);
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] -= holds.coefficients[r] * Rat(cl[i] - cr[i]);
  }
  for (const Rat& d : diff) CHECK(d == 0);

  // The reverse direction is separated by an explicit monotone.
  FunctionalOrderResult refuted = functional_order_leq(sys, y, x);
  CHECK_FALSE(refuted.holds);
  REQUIRE_FALSE(refuted.separating.empty());
  Rat at_y = dot_counts(refuted.separating, to_counts(sys, y));
  Rat at_x = dot_counts(refuted.separating, to_counts(sys, x));
  CHECK(at_y < at_x);
  // The separator is an additive monotone: nonincreasing along reactions.
  for (const Reaction& rx : sys.reactions)
    CHECK(dot_counts(refuted.separating, to_counts(sys, rx.lhs)) >=
          dot_counts(refuted.separating, to_counts(sys, rx.rhs)));
}

TEST_CASE("functional order is coarser than reachability") {
  // Half a combustion: x - y = (CH4 + 2 O2 - CO2 - 2 H2O)/2 needs a
  // fractional coefficient, which the conic hull allows but stepwise
  // reachability does not (counts are integers).
  ReactionSystem sys;
  sys.species = {"u", "v"};
  sys.reactions = {{{{"u", 2}}, {{"v", 2}}}};
  FunctionalOrderResult half = functional_order_leq(sys, {{"u", 1}}, {{"v", 1}});
  CHECK(half.holds);
  CHECK(half.coefficients == std::vector<Rat>{Rat(1, 2)});
  CHECK(reachable_leq(sys, {{"u", 1}}, {{"v", 1}}, kBudget).verdict == Verdict::No);
}

TEST_CASE("monoid instance over a fixed system") {
  ReactionSystem sys = valve();
  RxnInstance inst{&sys};
  Multiset a{{"a", 1}};
  Multiset b{{"b", 2}};
  CHECK(inst.combine(a, b) == Multiset{{"a", 1}, {"b", 2}});
  CHECK(inst.combine(a, inst.zero()) == a);
  CHECK(inst.leq(a, {{"c", 1}}, kBudget).verdict == Verdict::Yes);
  CHECK(inst.leq({{"c", 1}}, a, kBudget).verdict == Verdict::No);
  CHECK(inst.equal(a, Multiset{{"a", 1}}));
  CHECK(inst.describe(b) == "2 b");
}

TEST_CASE("multiset formatting") {
  CHECK(format_multiset({}) == "0");
  CHECK(format_multiset({{"H2O", 2}, {"CO2", 1}}) == "CO2 + 2 H2O");
  CHECK(format_multiset({{"a", 1}}) == "a");
}
