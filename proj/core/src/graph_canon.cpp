#include "remono/graph_canon.hpp"

#include "remono/budget.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace remono {

namespace {

using Partition = std::vector<std::vector<int>>;  // ordered cells

// Equitable refinement: split cells by neighbor counts into splitter cells
// until stable. Appends one invariant token per split to `trace`.
void refine(const Graph& g, Partition& part, std::vector<int>& trace) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < part.size() && !changed; ++s) {
      // Counts against splitter cell s.
      std::vector<int> cnt(g.order(), 0);
      for (int v : part[s])
        for (std::size_t u = g.neighbors(v).find_first(); u != Bitset::npos;
             u = g.neighbors(v).find_next(u))
          ++cnt[u];
      Partition next;
      next.reserve(part.size());
      for (std::size_t c = 0; c < part.size(); ++c) {
        auto& cell = part[c];
        bool uniform = true;
        for (int v : cell)
          if (cnt[v] != cnt[cell[0]]) {
            uniform = false;
            break;
          }
        if (uniform) {
          next.push_back(std::move(cell));
          continue;
        }
        // Group by ascending count; group contents sorted for determinism.
        std::vector<int> sorted = cell;
        std::sort(sorted.begin(), sorted.end(),
                  [&](int a, int b) { return cnt[a] != cnt[b] ? cnt[a] < cnt[b] : a < b; });
        std::size_t i = 0;
        while (i < sorted.size()) {
          std::size_t j = i;
          while (j < sorted.size() && cnt[sorted[j]] == cnt[sorted[i]]) ++j;
          next.emplace_back(sorted.begin() + i, sorted.begin() + j);
          trace.push_back(static_cast<int>(c));
          trace.push_back(static_cast<int>(j - i));
          trace.push_back(cnt[sorted[i]]);
          i = j;
        }
        changed = true;
      }
      part = std::move(next);
    }
  }
}

class CanonSearch {
 public:
  explicit CanonSearch(const Graph& g) : g_(g), n_(g.order()), orbit_parent_(n_) {}

  std::vector<int> run() {
    Partition part{std::vector<int>(n_)};
    std::iota(part[0].begin(), part[0].end(), 0);
    std::vector<int> trace;
    refine(g_, part, trace);
    descend(part, trace, {});
    return best_perm_;
  }

 private:
  static std::vector<int> to_perm(const Partition& part, int n) {
    std::vector<int> perm(n);
    int pos = 0;
    for (const auto& cell : part) perm[cell[0]] = pos++;
    return perm;
  }

  std::string key_of(const std::vector<int>& perm) const {
    return g_.permuted(perm).adjacency_key();
  }

  // Union-find over vertices for this node's candidate pruning, built from
  // verified automorphisms fixing every vertex of `path`.
  int orbit_find(int v) {
    while (orbit_parent_[v] != v) v = orbit_parent_[v] = orbit_parent_[orbit_parent_[v]];
    return v;
  }

  void build_orbits(const std::vector<int>& path) {
    std::iota(orbit_parent_.begin(), orbit_parent_.end(), 0);
    for (const auto& a : automorphisms_) {
      bool fixes = true;
      for (int v : path)
        if (a[v] != v) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        int ra = orbit_find(v);
        int rb = orbit_find(a[v]);
        if (ra != rb) orbit_parent_[ra] = rb;
      }
    }
  }

  void descend(const Partition& part, const std::vector<int>& trace, std::vector<int> path) {
    // Trace pruning: among surviving branches the canonical leaf has the
    // lexicographically least trace, so anything strictly above is hopeless.
    if (have_best_) {
      const std::size_t k = std::min(trace.size(), best_trace_.size());
      for (std::size_t i = 0; i < k; ++i) {
        if (trace[i] < best_trace_[i]) break;
        if (trace[i] > best_trace_[i]) return;
      }
    }
    // Discrete partition: a candidate labeling.
    std::size_t target = part.size();
    for (std::size_t c = 0; c < part.size(); ++c)
      if (part[c].size() > 1) {
        target = c;
        break;
      }
    if (target == part.size()) {
      std::vector<int> perm = to_perm(part, n_);
      std::string key = key_of(perm);
      if (!have_best_ || std::make_pair(trace, key) < std::make_pair(best_trace_, best_key_)) {
        have_best_ = true;
        best_trace_ = trace;
        best_key_ = key;
        best_perm_ = perm;
      } else if (key == best_key_ && trace == best_trace_) {
        // perm and best_perm_ induce the same labeled graph, so the
        // composition is an automorphism; verify before trusting it.
        std::vector<int> inv(n_);
        for (int v = 0; v < n_; ++v) inv[best_perm_[v]] = v;
        std::vector<int> a(n_);
        for (int v = 0; v < n_; ++v) a[v] = inv[perm[v]];
        bool ok = true;
        for (int v = 0; v < n_ && ok; ++v)
          for (std::size_t u = g_.neighbors(v).find_first(); u != Bitset::npos;
               u = g_.neighbors(v).find_next(u))
            if (!g_.has_edge(a[v], a[static_cast<int>(u)])) {
              ok = false;
              break;
            }
        if (ok) automorphisms_.push_back(a);
      }
      return;
    }
    // Individualize each orbit representative of the target cell.
    std::vector<int> cands = part[target];
    std::vector<int> explored;
    for (int v : cands) {
      build_orbits(path);
      bool skip = false;
      for (int u : explored)
        if (orbit_find(u) == orbit_find(v)) {
          skip = true;
          break;
        }
      if (skip) continue;
      explored.push_back(v);
      Partition child;
      child.reserve(part.size() + 1);
      for (std::size_t c = 0; c < part.size(); ++c) {
        if (c == target) {
          child.push_back({v});
          std::vector<int> rest;
          for (int u : part[target])
            if (u != v) rest.push_back(u);
          child.push_back(std::move(rest));
        } else {
          child.push_back(part[c]);
        }
      }
      std::vector<int> child_trace = trace;
      child_trace.push_back(-1);  // individualization marker
      child_trace.push_back(static_cast<int>(target));
      refine(g_, child, child_trace);
      std::vector<int> child_path = path;
      child_path.push_back(v);
      descend(child, child_trace, std::move(child_path));
    }
  }

  const Graph& g_;
  int n_;
  std::vector<int> orbit_parent_;
  std::vector<std::vector<int>> automorphisms_;
  bool have_best_ = false;
  std::vector<int> best_trace_;
  std::string best_key_;
  std::vector<int> best_perm_;
};

}  // namespace

std::vector<int> canonical_permutation(const Graph& g) {
  if (g.order() > Guards::canon_vertices())
    throw std::invalid_argument(
        "canonical_permutation: vertex guard exceeded (set REMONO_GUARD_OVERRIDE to raise)");
  CanonSearch search(g);
  return search.run();
}

Graph canonical_label(const Graph& g) { return g.permuted(canonical_permutation(g)); }

bool isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.edge_count() != h.edge_count()) return false;
  return canonical_label(g) == canonical_label(h);
}

}  // namespace remono
