#include "remono/graph_alg.hpp"

#include "remono/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace remono {

namespace {

// Vertices in descending degree order (ties by index) — shared search order.
std::vector<int> degree_order(const Graph& g) {
  std::vector<int> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  return order;
}

// Branch-and-bound clique search on a reordered adjacency matrix.
class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, std::uint64_t node_limit, int stop_at)
      : n_(g.order()), node_limit_(node_limit), stop_at_(stop_at) {
    order_ = degree_order(g);
    adj_.assign(n_, Bitset(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (g.has_edge(order_[i], order_[j])) adj_[i].set(j);
  }

  // Returns false when the node budget ran out.
  bool run(std::vector<int> seed_best) {
    // Seed translates external vertex ids into the reordered ids.
    std::vector<int> inv(n_);
    for (int i = 0; i < n_; ++i) inv[order_[i]] = i;
    best_.clear();
    for (int v : seed_best) best_.push_back(inv[v]);
    Bitset all(n_);
    all.set();
    std::vector<int> current;
    complete_ = true;
    expand(current, all);
    return complete_;
  }

  int best_size() const { return static_cast<int>(best_.size()); }
  std::uint64_t nodes() const { return nodes_; }
  bool found_stop() const { return stop_at_ > 0 && best_size() >= stop_at_; }

  std::vector<int> best_original_ids() const {
    std::vector<int> out;
    for (int i : best_) out.push_back(order_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void expand(std::vector<int>& current, const Bitset& candidates) {
    if (++nodes_ > node_limit_) {
      complete_ = false;
      return;
    }
    if (found_stop()) return;
    if (candidates.none()) {
      if (current.size() > best_.size()) best_ = current;
      return;
    }
    // Greedy coloring of the candidates: vertices listed by ascending color,
    // so scanning from the back prunes with |current| + color ≤ |best|.
    std::vector<int> verts;
    std::vector<int> colors;
    {
      Bitset uncolored = candidates;
      int color = 0;
      while (uncolored.any()) {
        ++color;
        Bitset cls = uncolored;
        while (cls.any()) {
          const int v = static_cast<int>(cls.find_first());
          verts.push_back(v);
          colors.push_back(color);
          uncolored.reset(v);
          cls.reset(v);
          cls -= adj_[v];
        }
      }
    }
    const int threshold = stop_at_ > 0 ? std::min<int>(best_.size(), stop_at_ - 1)
                                       : static_cast<int>(best_.size());
    Bitset remaining = candidates;
    for (int idx = static_cast<int>(verts.size()) - 1; idx >= 0; --idx) {
      if (static_cast<int>(current.size()) + colors[idx] <= threshold) return;
      const int v = verts[idx];
      current.push_back(v);
      Bitset next = remaining & adj_[v];
      expand(current, next);
      current.pop_back();
      remaining.reset(v);
      if (!complete_ || found_stop()) return;
    }
  }

  int n_;
  std::uint64_t node_limit_;
  int stop_at_;  // 0 = exact search; otherwise stop once a clique this big exists
  std::vector<int> order_;
  std::vector<Bitset> adj_;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;
  bool complete_ = true;
};

}  // namespace

std::vector<int> greedy_clique(const Graph& g) {
  std::vector<int> order = degree_order(g);
  std::vector<int> clique;
  Bitset allowed(g.order());
  allowed.set();
  for (int v : order) {
    if (!allowed.test(v)) continue;
    clique.push_back(v);
    allowed &= g.neighbors(v);
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

int greedy_coloring(const Graph& g, std::vector<int>* coloring) {
  const int n = g.order();
  std::vector<int> order = degree_order(g);
  std::vector<int> color(n, -1);
  int used = 0;
  for (int v : order) {
    Bitset taken(n + 1);
    for (std::size_t u = g.neighbors(v).find_first(); u != Bitset::npos;
         u = g.neighbors(v).find_next(u))
      if (color[u] >= 0) taken.set(color[u]);
    int c = 0;
    while (taken.test(c)) ++c;
    color[v] = c;
    used = std::max(used, c + 1);
  }
  if (coloring) *coloring = color;
  return used;
}

CliqueResult clique_number(const Graph& g, const Budget& budget) {
  CliqueSearch search(g, budget.nodes, 0);
  const bool complete = search.run(greedy_clique(g));
  CliqueResult out;
  out.verdict = complete ? Verdict::Yes : Verdict::Unknown;
  out.size = search.best_size();
  out.witness = search.best_original_ids();
  out.nodes = search.nodes();
  return out;
}

CliqueAtLeast clique_at_least(const Graph& g, int m, const Budget& budget) {
  CliqueAtLeast out;
  if (m <= 0) {
    out.verdict = Verdict::Yes;
    return out;
  }
  if (m > g.order()) {
    out.verdict = Verdict::No;
    return out;
  }
  std::vector<int> seed = greedy_clique(g);
  if (static_cast<int>(seed.size()) >= m) {
    out.verdict = Verdict::Yes;
    out.witness.assign(seed.begin(), seed.begin() + m);
    return out;
  }
  CliqueSearch search(g, budget.nodes, m);
  const bool complete = search.run(seed);
  out.nodes = search.nodes();
  if (search.found_stop()) {
    out.verdict = Verdict::Yes;
    std::vector<int> best = search.best_original_ids();
    out.witness.assign(best.begin(), best.begin() + m);
  } else if (complete) {
    out.verdict = Verdict::No;
  }
  return out;
}

namespace {

// Saturation-ordered exact coloring search with an upper cap. Finds the
// least k ≤ cap admitting a proper coloring, or reports cap insufficient.
class ColoringSearch {
 public:
  ColoringSearch(const Graph& g, std::uint64_t node_limit)
      : g_(g), n_(g.order()), node_limit_(node_limit) {}

  // best-found coloring is stored; returns true when search completed.
  bool run(int lower, int upper_cap, const std::vector<int>& greedy) {
    best_count_ = static_cast<int>(greedy.empty() ? 0 : 1 + *std::max_element(greedy.begin(), greedy.end()));
    best_ = greedy;
    lower_ = std::max(lower, 1);
    cap_ = upper_cap;
    color_.assign(n_, -1);
    complete_ = true;
    if (best_count_ > 0 && best_count_ <= lower_) return true;  // greedy already optimal
    descend(0, 0);
    return complete_;
  }

  int best_count() const { return best_count_; }
  const std::vector<int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void descend(int colored, int used) {
    if (++nodes_ > node_limit_) {
      complete_ = false;
      return;
    }
    const int goal = best_count_ > 0 ? std::min(best_count_ - 1, cap_) : cap_;
    if (used > goal) return;
    if (colored == n_) {
      best_count_ = used;
      best_ = color_;
      return;
    }
    // Most saturated uncolored vertex; ties by degree then index.
    int pick = -1;
    int pick_sat = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      Bitset seen(used + 1);
      for (std::size_t u = g_.neighbors(v).find_first(); u != Bitset::npos;
           u = g_.neighbors(v).find_next(u))
        if (color_[u] >= 0) seen.set(color_[u]);
      const int sat = static_cast<int>(seen.count());
      if (sat > pick_sat || (sat == pick_sat && g_.degree(v) > g_.degree(pick)))
        pick = v, pick_sat = sat;
    }
    Bitset taken(used + 2);
    for (std::size_t u = g_.neighbors(pick).find_first(); u != Bitset::npos;
         u = g_.neighbors(pick).find_next(u))
      if (color_[u] >= 0) taken.set(color_[u]);
    const int limit = std::min(used + 1, goal);
    for (int c = 0; c < limit; ++c) {
      if (taken.test(c)) continue;
      color_[pick] = c;
      descend(colored + 1, std::max(used, c + 1));
      color_[pick] = -1;
      if (!complete_) return;
      if (best_count_ > 0 && best_count_ <= lower_) return;  // provably optimal
    }
  }

  const Graph& g_;
  int n_;
  std::uint64_t node_limit_;
  int lower_ = 1;
  int cap_ = 0;
  std::vector<int> color_;
  std::vector<int> best_;
  int best_count_ = 0;
  std::uint64_t nodes_ = 0;
  bool complete_ = true;
};

}  // namespace

ColoringResult chromatic_number(const Graph& g, const Budget& budget) {
  ColoringResult out;
  std::vector<int> greedy;
  greedy_coloring(g, &greedy);
  const int lower = static_cast<int>(greedy_clique(g).size());
  ColoringSearch search(g, budget.nodes);
  const bool complete = search.run(lower, g.order(), greedy);
  out.number = search.best_count();
  out.coloring = search.best();
  out.nodes = search.nodes();
  out.verdict = complete ? Verdict::Yes : Verdict::Unknown;
  return out;
}

ColoringAtMost coloring_at_most(const Graph& g, int k, const Budget& budget) {
  ColoringAtMost out;
  if (k <= 0) {
    out.verdict = Verdict::No;
    return out;
  }
  std::vector<int> greedy;
  const int greedy_count = greedy_coloring(g, &greedy);
  if (greedy_count <= k) {
    out.verdict = Verdict::Yes;
    out.coloring = greedy;
    return out;
  }
  ColoringSearch search(g, budget.nodes);
  const bool complete = search.run(1, k, {});
  out.nodes = search.nodes();
  if (search.best_count() > 0 && search.best_count() <= k) {
    out.verdict = Verdict::Yes;
    out.coloring = search.best();
  } else if (complete) {
    out.verdict = Verdict::No;
  }
  return out;
}

bool verify_hom(const Graph& source, const Graph& target, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != source.order()) return false;
  for (int v : map)
    if (v < 0 || v >= target.order()) return false;
  for (auto [u, v] : source.edges())
    if (!target.has_edge(map[u], map[v])) return false;
  return true;
}

namespace {

// Backtracking homomorphism search with forward checking.
class HomSearch {
 public:
  HomSearch(const Graph& s, const Graph& t, std::uint64_t node_limit)
      : s_(s), t_(t), sn_(s.order()), tn_(t.order()), node_limit_(node_limit) {}

  Verdict run(std::vector<int>& map_out) {
    dom_.assign(sn_, Bitset(tn_));
    for (auto& d : dom_) d.set();
    // Initial arc consistency: a vertex with a neighbor must map into the
    // union of candidate neighborhoods; iterate to a fixpoint.
    if (!initial_consistency()) return Verdict::No;
    assignment_.assign(sn_, -1);
    const Verdict v = descend(0);
    if (v == Verdict::Yes) map_out = assignment_;
    return v;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool initial_consistency() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int u = 0; u < sn_; ++u) {
        for (std::size_t w = s_.neighbors(u).find_first(); w != Bitset::npos;
             w = s_.neighbors(u).find_next(w)) {
          Bitset reach(tn_);
          const Bitset& dw = dom_[w];
          for (std::size_t q = dw.find_first(); q != Bitset::npos; q = dw.find_next(q))
            reach |= t_.neighbors(static_cast<int>(q));
          Bitset refined = dom_[u] & reach;
          if (refined != dom_[u]) {
            if (refined.none()) return false;
            dom_[u] = std::move(refined);
            changed = true;
          }
        }
      }
    }
    return true;
  }

  Verdict descend(int depth) {
    if (depth == sn_) return Verdict::Yes;
    if (++nodes_ > node_limit_) return Verdict::Unknown;
    // Most constrained unassigned vertex.
    int pick = -1;
    std::size_t pick_size = 0;
    for (int u = 0; u < sn_; ++u) {
      if (assignment_[u] >= 0) continue;
      const std::size_t sz = dom_[u].count();
      if (pick < 0 || sz < pick_size) pick = u, pick_size = sz;
    }
    const Bitset cands = dom_[pick];
    bool saw_unknown = false;
    for (std::size_t p = cands.find_first(); p != Bitset::npos; p = cands.find_next(p)) {
      assignment_[pick] = static_cast<int>(p);
      std::vector<std::pair<int, Bitset>> saved;
      bool dead = false;
      for (std::size_t w = s_.neighbors(pick).find_first(); w != Bitset::npos;
           w = s_.neighbors(pick).find_next(w)) {
        const int wi = static_cast<int>(w);
        if (assignment_[wi] >= 0) {
          if (!t_.has_edge(static_cast<int>(p), assignment_[wi])) {
            dead = true;
            break;
          }
          continue;
        }
        Bitset refined = dom_[wi] & t_.neighbors(static_cast<int>(p));
        if (refined.none()) {
          dead = true;
          break;
        }
        saved.emplace_back(wi, dom_[wi]);
        dom_[wi] = std::move(refined);
      }
      if (!dead) {
        const Verdict v = descend(depth + 1);
        if (v == Verdict::Yes) return v;
        if (v == Verdict::Unknown) saw_unknown = true;
      }
      for (auto& [wi, old] : saved) dom_[wi] = std::move(old);
      assignment_[pick] = -1;
      if (saw_unknown) break;
    }
    return saw_unknown ? Verdict::Unknown : Verdict::No;
  }

  const Graph& s_;
  const Graph& t_;
  int sn_;
  int tn_;
  std::uint64_t node_limit_;
  std::vector<Bitset> dom_;
  std::vector<int> assignment_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

HomResult hom_search(const Graph& source, const Graph& target, const Budget& budget) {
  HomResult out;
  if (source.is_edgeless()) {
    out.verdict = Verdict::Yes;
    out.map.assign(source.order(), 0);
    out.note = "edgeless source maps to any vertex";
    return out;
  }
  if (source.is_complete()) {
    CliqueAtLeast c = clique_at_least(target, source.order(), budget);
    out.nodes = c.nodes;
    out.verdict = c.verdict;
    if (c.verdict == Verdict::Yes) {
      out.map = c.witness;
      out.note = "complete source: clique embedding";
      if (!verify_hom(source, target, out.map))
        throw std::logic_error("hom_search: clique embedding failed verification");
    } else if (c.verdict == Verdict::No) {
      out.note = "exhaustive: target clique number is below the source order";
    }
    return out;
  }
  if (target.is_complete()) {
    ColoringAtMost c = coloring_at_most(source, target.order(), budget);
    out.nodes = c.nodes;
    out.verdict = c.verdict;
    if (c.verdict == Verdict::Yes) {
      out.map = c.coloring;
      out.note = "complete target: proper coloring";
      if (!verify_hom(source, target, out.map))
        throw std::logic_error("hom_search: coloring map failed verification");
    } else if (c.verdict == Verdict::No) {
      out.note = "exhaustive: source chromatic number exceeds the target order";
    }
    return out;
  }
  HomSearch search(source, target, budget.nodes);
  out.verdict = search.run(out.map);
  out.nodes = search.nodes();
  if (out.verdict == Verdict::Yes) {
    if (!verify_hom(source, target, out.map))
      throw std::logic_error("hom_search: map failed verification");
  } else if (out.verdict == Verdict::No) {
    out.note = "exhaustive";
  } else {
    out.note = "node budget exhausted";
  }
  return out;
}

namespace {

void bron_kerbosch(const std::vector<Bitset>& adj, Bitset r, Bitset p, Bitset x,
                   std::vector<Bitset>& out, std::size_t cap) {
  if (p.none() && x.none()) {
    out.push_back(r);
    if (out.size() > cap) throw std::runtime_error("maximal_independent_sets: cap exceeded");
    return;
  }
  // Pivot with most candidates eliminated.
  int pivot = -1;
  std::size_t best = 0;
  Bitset px = p | x;
  for (std::size_t v = px.find_first(); v != Bitset::npos; v = px.find_next(v)) {
    const std::size_t cnt = (p & adj[v]).count();
    if (pivot < 0 || cnt > best) pivot = static_cast<int>(v), best = cnt;
  }
  Bitset ext = p - adj[pivot];
  for (std::size_t v = ext.find_first(); v != Bitset::npos; v = ext.find_next(v)) {
    Bitset r2 = r;
    r2.set(v);
    bron_kerbosch(adj, r2, p & adj[v], x & adj[v], out, cap);
    p.reset(v);
    x.set(v);
  }
}

}  // namespace

std::vector<Bitset> maximal_independent_sets(const Graph& g, std::size_t cap) {
  const int n = g.order();
  std::vector<Bitset> coadj(n, Bitset(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !g.has_edge(u, v)) coadj[u].set(v);
  std::vector<Bitset> out;
  Bitset all(n);
  all.set();
  bron_kerbosch(coadj, Bitset(n), all, Bitset(n), out, cap);
  std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.test(i) != b.test(i)) return a.test(i);
    }
    return false;
  });
  return out;
}

Rat fractional_chromatic(const Graph& g) {
  if (g.order() > Guards::frac_chromatic_vertices())
    throw std::invalid_argument(
        "fractional_chromatic: vertex guard exceeded (set REMONO_GUARD_OVERRIDE to raise)");
  const std::vector<Bitset> sets = maximal_independent_sets(g);
  const int k = static_cast<int>(sets.size());
  LinearProgram lp;
  lp.nvars = k;
  lp.objective.assign(k, Rat(1));
  lp.maximize = false;
  lp.nonneg.assign(k, true);
  for (int v = 0; v < g.order(); ++v) {
    Vec a(k, Rat(0));
    for (int i = 0; i < k; ++i)
      if (sets[i].test(v)) a[i] = 1;
    lp.cons.push_back({std::move(a), Rel::GE, Rat(1)});
  }
  LpResult res = lp_solve(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("fractional_chromatic: covering program must be solvable");
  return res.objective;
}

}  // namespace remono
