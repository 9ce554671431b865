#include "remono/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace remono {

Graph::Graph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph: needs at least one vertex");
  adj_.assign(n_, Bitset(n_));
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const Bitset& row : adj_) twice += row.count();
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::out_of_range("graph: vertex index out of range");
  if (u == v) throw std::invalid_argument("graph: loops are not allowed");
  adj_[u].set(v);
  adj_[v].set(u);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n_; ++u)
    for (std::size_t v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v))
      es.emplace_back(u, static_cast<int>(v));
  return es;
}

bool Graph::is_complete() const {
  for (int v = 0; v < n_; ++v)
    if (static_cast<int>(adj_[v].count()) != n_ - 1) return false;
  return true;
}

bool Graph::is_edgeless() const {
  for (const Bitset& row : adj_)
    if (row.any()) return false;
  return true;
}

std::string Graph::adjacency_key() const {
  std::string key;
  key.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) key.push_back(adj_[u].test(v) ? '1' : '0');
  return key;
}

Graph Graph::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_)
    throw std::invalid_argument("graph: permutation size mismatch");
  Graph out(n_);
  for (int u = 0; u < n_; ++u)
    for (std::size_t v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v))
      out.add_edge(perm[u], perm[static_cast<int>(v)]);
  return out;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::edgeless(int n) { return Graph(n); }

Graph Graph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: needs at least three vertices");
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph complement(const Graph& g) {
  const int n = g.order();
  Graph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) out.add_edge(u, v);
  return out;
}

Graph disjunctive_product(const Graph& g, const Graph& h) {
  const int gn = g.order();
  const int hn = h.order();
  const long long total = static_cast<long long>(gn) * hn;
  if (total > 1 << 20) throw std::invalid_argument("disjunctive_product: result too large to materialize");
  Graph out(static_cast<int>(total));
  for (int v = 0; v < gn; ++v)
    for (int w = 0; w < hn; ++w) {
      const int a = v * hn + w;
      for (int v2 = v; v2 < gn; ++v2) {
        const int wstart = (v2 == v) ? w + 1 : 0;
        for (int w2 = wstart; w2 < hn; ++w2) {
          if (g.has_edge(v, v2) || h.has_edge(w, w2)) out.add_edge(a, v2 * hn + w2);
        }
      }
    }
  return out;
}

Graph graph_join(const Graph& g, const Graph& h) {
  const int gn = g.order();
  const int hn = h.order();
  Graph out(gn + hn);
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(gn + u, gn + v);
  for (int u = 0; u < gn; ++u)
    for (int v = 0; v < hn; ++v) out.add_edge(u, gn + v);
  return out;
}

ProductView::ProductView(std::vector<Graph> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) factors_.push_back(Graph(1));
  radix_.assign(factors_.size(), 1);
  order_ = 1;
  for (int i = static_cast<int>(factors_.size()) - 1; i >= 0; --i) {
    radix_[i] = order_;
    order_ *= factors_[i].order();
  }
}

std::vector<int> ProductView::digits(std::int64_t vertex) const {
  std::vector<int> d(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    d[i] = static_cast<int>(vertex / radix_[i]);
    vertex %= radix_[i];
  }
  return d;
}

std::int64_t ProductView::index(const std::vector<int>& digits) const {
  std::int64_t v = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) v += digits[i] * radix_[i];
  return v;
}

bool ProductView::adjacent(std::int64_t u, std::int64_t v) const {
  if (u == v) return false;
  std::int64_t a = u;
  std::int64_t b = v;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const int da = static_cast<int>(a / radix_[i]);
    const int db = static_cast<int>(b / radix_[i]);
    if (factors_[i].has_edge(da, db)) return true;
    a %= radix_[i];
    b %= radix_[i];
  }
  return false;
}

Graph ProductView::realize() const {
  if (order_ > (1 << 20)) throw std::invalid_argument("product: too large to materialize");
  Graph g = factors_[0];
  for (std::size_t i = 1; i < factors_.size(); ++i) g = disjunctive_product(g, factors_[i]);
  return g;
}

std::optional<Graph> parse_graph_text(const std::string& text, GraphParseError* err) {
  auto fail = [&](int line, std::string msg) -> std::optional<Graph> {
    if (err) *err = {line, std::move(msg)};
    return std::nullopt;
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<Graph> g;
  long long want_edges = -1;
  long long seen_edges = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "p") {
      if (g) return fail(lineno, "duplicate p line");
      long long n = 0;
      long long m = 0;
      if (!(ls >> n >> m)) return fail(lineno, "p line needs vertex and edge counts");
      if (n < 1) return fail(lineno, "graph needs at least one vertex");
      if (n > (1 << 20)) return fail(lineno, "vertex count too large");
      if (m < 0) return fail(lineno, "edge count must be nonnegative");
      std::string rest;
      if (ls >> rest) return fail(lineno, "trailing tokens on p line");
      g.emplace(static_cast<int>(n));
      want_edges = m;
    } else if (tag == "e") {
      if (!g) return fail(lineno, "e line before p line");
      long long u = 0;
      long long v = 0;
      if (!(ls >> u >> v)) return fail(lineno, "e line needs two vertex indices");
      std::string rest;
      if (ls >> rest) return fail(lineno, "trailing tokens on e line");
      if (u < 1 || v < 1 || u > g->order() || v > g->order())
        return fail(lineno, "vertex index out of range (vertices are 1-based)");
      if (u == v) return fail(lineno, "loops are not allowed");
      g->add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
      ++seen_edges;
    } else {
      return fail(lineno, "unrecognized line tag '" + tag + "'");
    }
  }
  if (!g) return fail(lineno == 0 ? 1 : lineno, "missing p line");
  if (want_edges >= 0 && seen_edges != want_edges)
    return fail(lineno == 0 ? 1 : lineno, "edge count mismatch: p line announced " +
                                              std::to_string(want_edges) + ", found " +
                                              std::to_string(seen_edges));
  return g;
}

std::string format_graph_text(const Graph& g) {
  std::ostringstream out;
  auto es = g.edges();
  out << "p " << g.order() << " " << es.size() << "\n";
  for (auto [u, v] : es) out << "e " << u + 1 << " " << v + 1 << "\n";
  return out.str();
}

}  // namespace remono
