#pragma once

// Finite simple graphs with bitset adjacency, the products and joins used by
// the graph resource theory, and the text exchange format.

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace remono {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

// Simple graph: at least one vertex, no loops, symmetric adjacency.
class Graph {
 public:
  explicit Graph(int n = 1);

  int order() const { return n_; }
  std::size_t edge_count() const;

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return adj_[u].test(v); }
  const Bitset& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].count()); }

  std::vector<std::pair<int, int>> edges() const;  // u < v, lexicographic

  bool is_complete() const;
  bool is_edgeless() const;

  // Adjacency bits row-major above the diagonal; total order on graphs of
  // equal order, used for deterministic tie-breaking.
  std::string adjacency_key() const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  // Relabel by `perm`, where perm[v] is the new index of vertex v.
  Graph permuted(const std::vector<int>& perm) const;

  static Graph complete(int n);
  static Graph edgeless(int n);
  static Graph cycle(int n);
  static Graph path(int n);

 private:
  int n_;
  std::vector<Bitset> adj_;
};

// Complement: edges exactly between distinct non-adjacent pairs.
Graph complement(const Graph& g);

// Product with vertex pairs (v, w), adjacent iff v~v' or w~w'; the monoid's
// combination. Vertex (v, w) gets index v * h.order() + w.
Graph disjunctive_product(const Graph& g, const Graph& h);

// Disjoint union plus all edges between the two parts. Vertices of g keep
// their indices; vertices of h are shifted by g.order().
Graph graph_join(const Graph& g, const Graph& h);

// Adjacency queries on a product of factors without materializing it.
// Vertex index encodes mixed-radix digits, most significant factor first.
class ProductView {
 public:
  explicit ProductView(std::vector<Graph> factors);

  std::int64_t order() const { return order_; }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  const Graph& factor(int i) const { return factors_[i]; }

  std::vector<int> digits(std::int64_t vertex) const;
  std::int64_t index(const std::vector<int>& digits) const;
  bool adjacent(std::int64_t u, std::int64_t v) const;

  // Materialize; caller is responsible for keeping the order reasonable.
  Graph realize() const;

 private:
  std::vector<Graph> factors_;
  std::vector<std::int64_t> radix_;  // radix_[i] = product of orders after i
  std::int64_t order_;
};

// Text format: "p <vertices> <edges>" then one "e <u> <v>" line per edge,
// vertices 1-based; '#' starts a comment. Parse errors carry 1-based line
// numbers. `label` names the input in diagnostics (e.g. a file path).
struct GraphParseError {
  int line;
  std::string message;
};

std::optional<Graph> parse_graph_text(const std::string& text, GraphParseError* err);
std::string format_graph_text(const Graph& g);

}  // namespace remono
