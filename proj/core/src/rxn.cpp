#include "remono/rxn.hpp"

#include "remono/budget.hpp"
#include "remono/dd.hpp"
#include "remono/simplex.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace remono {

namespace {

std::size_t species_index(const ReactionSystem& sys, const std::string& name) {
  for (std::size_t i = 0; i < sys.species.size(); ++i)
    if (sys.species[i] == name) return i;
  throw std::invalid_argument("unknown species '" + name + "'");
}

// Difference vector lhs - rhs of a reaction, in species order.
Vec reaction_delta(const ReactionSystem& sys, const Reaction& r) {
  Vec d(sys.species.size(), Rat(0));
  for (const auto& [name, c] : r.lhs) d[species_index(sys, name)] += Rat(Int(c));
  for (const auto& [name, c] : r.rhs) d[species_index(sys, name)] -= Rat(Int(c));
  return d;
}

}  // namespace

void validate_state(const ReactionSystem& sys, const Multiset& m) {
  for (const auto& [name, c] : m) {
    if (c == 0) throw std::invalid_argument("species '" + name + "' has count zero");
    species_index(sys, name);
  }
}

void validate_system(const ReactionSystem& sys) {
  std::set<std::string> seen;
  for (const std::string& s : sys.species)
    if (!seen.insert(s).second)
      throw std::invalid_argument("species '" + s + "' declared twice");
  for (const Reaction& r : sys.reactions) {
    validate_state(sys, r.lhs);
    validate_state(sys, r.rhs);
  }
}

std::vector<std::int64_t> to_counts(const ReactionSystem& sys, const Multiset& m) {
  std::vector<std::int64_t> v(sys.species.size(), 0);
  for (const auto& [name, c] : m) v[species_index(sys, name)] = static_cast<std::int64_t>(c);
  return v;
}

Multiset from_counts(const ReactionSystem& sys, const std::vector<std::int64_t>& counts) {
  Multiset m;
  for (std::size_t i = 0; i < counts.size() && i < sys.species.size(); ++i)
    if (counts[i] > 0) m[sys.species[i]] = static_cast<std::uint64_t>(counts[i]);
  return m;
}

ReachResult reachable_leq(const ReactionSystem& sys, const Multiset& x, const Multiset& y,
                          const Budget& budget) {
  validate_state(sys, x);
  validate_state(sys, y);
  ReachResult out;

  using State = std::vector<std::int64_t>;
  const State start = to_counts(sys, x);
  const State goal = to_counts(sys, y);
  if (start == goal) {
    out.verdict = Verdict::Yes;
    out.detail = "states already equal";
    return out;
  }

  // Reaction vectors: need[i] and delta[i].
  struct Step {
    State need;
    State delta;
  };
  std::vector<Step> steps;
  for (const Reaction& r : sys.reactions) {
    Step s;
    s.need = to_counts(sys, r.lhs);
    State rhs = to_counts(sys, r.rhs);
    s.delta.resize(s.need.size());
    for (std::size_t i = 0; i < s.need.size(); ++i) s.delta[i] = rhs[i] - s.need[i];
    steps.push_back(std::move(s));
  }

  struct NodeInfo {
    State parent;           // empty for the start state
    std::size_t reaction = 0;
    std::uint64_t depth = 0;
  };
  std::map<State, NodeInfo> seen;
  std::deque<State> frontier;
  seen.emplace(start, NodeInfo{});
  frontier.push_back(start);

  auto reconstruct = [&](State at) {
    std::vector<std::size_t> seq;
    while (at != start) {
      const NodeInfo& info = seen.at(at);
      seq.push_back(info.reaction);
      at = info.parent;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  bool truncated = false;
  std::uint64_t expanded = 0;
  while (!frontier.empty()) {
    if (expanded >= budget.nodes) {
      truncated = true;
      break;
    }
    State cur = frontier.front();
    frontier.pop_front();
    ++expanded;
    const std::uint64_t depth = seen.at(cur).depth;
    if (depth >= budget.depth) {
      truncated = true;  // unexplored successors may exist beyond this depth
      continue;
    }
    for (std::size_t r = 0; r < steps.size(); ++r) {
      bool applicable = true;
      for (std::size_t i = 0; i < cur.size() && applicable; ++i)
        applicable = cur[i] >= steps[r].need[i];
      if (!applicable) continue;
      State next = cur;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += steps[r].delta[i];
      if (seen.count(next)) continue;
      seen.emplace(next, NodeInfo{cur, r, depth + 1});
      if (next == goal) {
        out.verdict = Verdict::Yes;
        out.sequence = reconstruct(next);
        out.states = expanded;
        out.detail = "reached by a reaction sequence of length " +
                     std::to_string(out.sequence.size());
        return out;
      }
      frontier.push_back(std::move(next));
    }
  }

  out.states = expanded;
  if (truncated) {
    out.detail = "search budget exhausted before the reachable set closed";
    return out;
  }
  out.verdict = Verdict::No;
  out.detail = "reachable set exhausted (" + std::to_string(seen.size()) +
               " states) without the target";
  return out;
}

std::vector<Vec> conservation_laws(const ReactionSystem& sys) {
  validate_system(sys);
  const int d = static_cast<int>(sys.species.size());
  Mat rows;
  for (const Reaction& r : sys.reactions) rows.push_back(reaction_delta(sys, r));
  if (rows.empty()) {
    std::vector<Vec> basis;
    for (int i = 0; i < d; ++i) {
      Vec e(d, Rat(0));
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  return nullspace(rows, d);
}

MonotoneRays monotone_rays(const ReactionSystem& sys) {
  validate_system(sys);
  const int d = static_cast<int>(sys.species.size());
  if (d > Guards::cone_dimension())
    throw std::invalid_argument("monotone_rays: species count " + std::to_string(d) +
                                " exceeds the dimension guard " +
                                std::to_string(Guards::cone_dimension()));
  Mat rows;
  for (const Reaction& r : sys.reactions) rows.push_back(reaction_delta(sys, r));
  DDResult dd = extreme_rays(rows, d);
  MonotoneRays out;
  for (const Vec& v : dd.rays) out.rays.push_back(v);
  for (const Vec& v : dd.lineality) out.lineality.push_back(v);
  return out;
}

FunctionalOrderResult functional_order_leq(const ReactionSystem& sys, const Multiset& x,
                                           const Multiset& y) {
  validate_system(sys);
  validate_state(sys, x);
  validate_state(sys, y);
  const int d = static_cast<int>(sys.species.size());
  const int m = static_cast<int>(sys.reactions.size());

  Vec target(d, Rat(0));
  {
    std::vector<std::int64_t> xv = to_counts(sys, x), yv = to_counts(sys, y);
    for (int i = 0; i < d; ++i) target[i] = Rat(xv[i] - yv[i]);
  }
  Mat deltas;
  for (const Reaction& r : sys.reactions) deltas.push_back(reaction_delta(sys, r));

  FunctionalOrderResult out;
  // Membership: find lambda >= 0 with sum lambda_r * delta_r = target.
  {
    LinearProgram lp = LinearProgram::feasibility(m);
    lp.nonneg.assign(m, true);
    for (int i = 0; i < d; ++i) {
      LinConstraint c;
      c.a.assign(m, Rat(0));
      for (int r = 0; r < m; ++r) c.a[r] = deltas[r][i];
      c.rel = Rel::EQ;
      c.b = target[i];
      lp.cons.push_back(std::move(c));
    }
    LpResult res = lp_solve(lp);
    if (res.status == LpStatus::Optimal) {
      out.holds = true;
      out.coefficients = res.x;
      out.detail = "difference is a nonnegative rational combination of the reactions";
      return out;
    }
  }

  // Farkas alternative: f with f·delta_r >= 0 for all r and f·target <= -1.
  {
    LinearProgram lp = LinearProgram::feasibility(d);
    for (int r = 0; r < m; ++r)
      lp.cons.push_back({deltas[r], Rel::GE, Rat(0)});
    lp.cons.push_back({target, Rel::LE, Rat(-1)});
    LpResult res = lp_solve(lp);
    if (res.status != LpStatus::Optimal)
      throw std::logic_error("functional_order_leq: no certificate for an infeasible membership");
    // Verify the certificate exactly.
    for (int r = 0; r < m; ++r)
      if (dot(res.x, deltas[r]) < 0)
        throw std::logic_error("functional_order_leq: certificate fails a reaction");
    if (dot(res.x, target) >= 0)
      throw std::logic_error("functional_order_leq: certificate fails the difference");
    out.separating = res.x;
    out.detail = "separating functional is nonnegative on every reaction and negative on x-y";
  }
  return out;
}

ReactionSystem expand_species(const ReactionSystem& sys,
                              const std::map<std::string, Multiset>& atoms) {
  validate_system(sys);
  ReactionSystem out;
  std::set<std::string> names;
  auto expand_into = [&](const Multiset& m) {
    Multiset e = expand_multiset(m, atoms);
    for (const auto& [n, c] : e) {
      (void)c;
      names.insert(n);
    }
    return e;
  };
  for (const Reaction& r : sys.reactions)
    out.reactions.push_back({expand_into(r.lhs), expand_into(r.rhs)});
  // Also keep species that appear in no reaction.
  for (const std::string& s : sys.species) {
    Multiset single{{s, 1}};
    for (const auto& [n, c] : expand_multiset(single, atoms)) {
      (void)c;
      names.insert(n);
    }
  }
  out.species.assign(names.begin(), names.end());
  return out;
}

Multiset expand_multiset(const Multiset& m, const std::map<std::string, Multiset>& atoms) {
  Multiset out;
  for (const auto& [name, count] : m) {
    auto it = atoms.find(name);
    if (it == atoms.end()) {
      out[name] += count;
      continue;
    }
    for (const auto& [atom, per] : it->second) out[atom] += per * count;
  }
  return out;
}

Multiset RxnInstance::combine(const Element& a, const Element& b) const {
  Multiset out = a;
  for (const auto& [name, c] : b) out[name] += c;
  return out;
}

TriState RxnInstance::leq(const Element& a, const Element& b, const Budget& budget) const {
  if (!sys) throw std::logic_error("RxnInstance: no reaction system bound");
  ReachResult r = reachable_leq(*sys, a, b, budget);
  return TriState{r.verdict, r.detail};
}

std::string RxnInstance::describe(const Element& a) const { return format_multiset(a); }

std::string format_multiset(const Multiset& m) {
  if (m.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : m) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << " ";
    os << name;
  }
  return os.str();
}

}  // namespace remono
