#include "remono/graph_monoid.hpp"

#include "remono/graph_canon.hpp"
#include "remono/lovasz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace remono {

namespace {

// Materialization and search size caps. Everything beyond them degrades to
// Unknown rather than failing: the algebraic strategies below don't need the
// big products, only the small constituents.
constexpr std::int64_t kExplicitCliqueCap = 512;   // exact clique B&B on a realized target
constexpr std::int64_t kSourceRealizeCap = 8192;   // source materialization for verification
constexpr std::int64_t kCsvSourceCap = 64;         // general backtracking search limits
constexpr std::int64_t kCsvTargetCap = 2048;
constexpr std::int64_t kBlockRealizeCap = 1024;    // factor-block materialization
constexpr std::int64_t kBlockExactCap = 64;        // exact clique search inside a block
constexpr std::size_t kCellCap = 64;               // join expansion width

}  // namespace

// ---------------------------------------------------------------------------
// Term structure
// ---------------------------------------------------------------------------

std::int64_t GraphAtom::order() const {
  if (!is_join()) return base.order();
  std::int64_t total = 0;
  for (const GraphTerm& p : parts) total += p.order();
  return total;
}

Graph GraphAtom::realize() const {
  if (!is_join()) return base;
  Graph g = parts[0].realize();
  for (std::size_t i = 1; i < parts.size(); ++i) g = graph_join(g, parts[i].realize());
  return g;
}

std::string GraphAtom::sort_key() const {
  if (!is_join()) {
    std::ostringstream os;
    os << "g" << base.order() << ":" << base.adjacency_key();
    return os.str();
  }
  std::ostringstream os;
  os << "j" << order() << "(";
  for (const GraphTerm& p : parts) os << p.sort_key() << ";";
  os << ")";
  return os.str();
}

std::int64_t GraphTerm::order() const {
  std::int64_t total = 1;
  for (const GraphAtom& a : atoms) {
    total *= a.order();
    if (total > (std::int64_t(1) << 40)) return total;  // saturating; callers cap anyway
  }
  return total;
}

std::vector<Graph> GraphTerm::atom_graphs() const {
  std::vector<Graph> gs;
  gs.reserve(atoms.size());
  for (const GraphAtom& a : atoms) gs.push_back(a.realize());
  return gs;
}

Graph GraphTerm::realize() const {
  if (atoms.empty()) return Graph(1);
  return ProductView(atom_graphs()).realize();
}

std::string GraphTerm::sort_key() const {
  std::ostringstream os;
  for (const GraphAtom& a : atoms) os << a.sort_key() << "*";
  return os.str();
}

GraphTerm term_from_graph(const Graph& g) {
  GraphAtom a;
  a.base = g.order() <= Guards::canon_vertices() ? canonical_label(g) : g;
  GraphTerm t;
  if (a.base.order() > 1) t.atoms.push_back(std::move(a));
  return t;
}

GraphTerm term_join(const std::vector<GraphTerm>& parts) {
  if (parts.empty()) throw std::invalid_argument("term_join: needs at least one part");
  if (parts.size() == 1) return parts[0];
  GraphAtom a;
  a.base = Graph(1);
  a.parts = parts;
  std::sort(a.parts.begin(), a.parts.end(),
            [](const GraphTerm& l, const GraphTerm& r) { return l.sort_key() < r.sort_key(); });
  GraphTerm t;
  t.atoms.push_back(std::move(a));
  return t;
}

GrphInstance::Element GrphInstance::combine(const Element& a, const Element& b) const {
  GraphTerm out;
  out.atoms = a.atoms;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  std::erase_if(out.atoms, [](const GraphAtom& at) { return at.order() <= 1; });
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const GraphAtom& l, const GraphAtom& r) { return l.sort_key() < r.sort_key(); });
  return out;
}

bool GrphInstance::equal(const Element& a, const Element& b) const {
  if (a.order() != b.order()) return false;
  if (a.order() <= Guards::canon_vertices())
    return canonical_label(a.realize()) == canonical_label(b.realize());
  return a.sort_key() == b.sort_key();
}

std::string GrphInstance::describe(const Element& a) const {
  if (a.atoms.empty()) return "K1";
  std::ostringstream os;
  os << a.order() << " vertices";
  os << " (";
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    if (i) os << "*";
    const GraphAtom& at = a.atoms[i];
    if (at.is_join())
      os << "join/" << at.order();
    else
      os << at.base.order();
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Join expansion: a term is a product of atoms, a join atom is a disjoint
// choice of parts, so the term's vertex set partitions into pure-product
// cells. Cells are enumerated with the first atom's choice varying slowest.
// ---------------------------------------------------------------------------

namespace {

struct Cell {
  std::vector<Graph> factors;
  // Maps factor digits (row-major over `factors`) to the term vertex index.
  std::function<std::int64_t(const std::vector<int>&)> to_term;
};

struct AtomChoice {
  std::vector<Graph> factors;
  // Maps this choice's digit block to the atom-local vertex index.
  std::function<std::int64_t(const std::vector<int>&, std::size_t)> local;
};

std::optional<std::vector<Cell>> expand_cells(const GraphTerm& t, std::size_t cap);

std::optional<std::vector<AtomChoice>> atom_choices(const GraphAtom& a, std::size_t cap) {
  std::vector<AtomChoice> out;
  if (!a.is_join()) {
    AtomChoice c;
    c.factors = {a.base};
    c.local = [](const std::vector<int>& d, std::size_t at) {
      return static_cast<std::int64_t>(d[at]);
    };
    out.push_back(std::move(c));
    return out;
  }
  std::int64_t offset = 0;
  for (const GraphTerm& part : a.parts) {
    auto sub = expand_cells(part, cap);
    if (!sub) return std::nullopt;
    for (Cell& sc : *sub) {
      AtomChoice c;
      c.factors = sc.factors;
      const std::size_t width = sc.factors.size();
      c.local = [off = offset, fn = sc.to_term, width](const std::vector<int>& d, std::size_t at) {
        std::vector<int> block(d.begin() + at, d.begin() + at + width);
        return off + fn(block);
      };
      out.push_back(std::move(c));
      if (out.size() > cap) return std::nullopt;
    }
    offset += part.order();
  }
  return out;
}

std::optional<std::vector<Cell>> expand_cells(const GraphTerm& t, std::size_t cap) {
  std::vector<Cell> cells;
  {
    Cell unit;
    unit.to_term = [](const std::vector<int>&) { return std::int64_t(0); };
    cells.push_back(std::move(unit));
  }
  for (const GraphAtom& atom : t.atoms) {
    auto choices = atom_choices(atom, cap);
    if (!choices) return std::nullopt;
    const std::int64_t atom_order = atom.order();
    std::vector<Cell> next;
    for (const Cell& cell : cells) {
      for (const AtomChoice& ch : *choices) {
        Cell merged;
        merged.factors = cell.factors;
        merged.factors.insert(merged.factors.end(), ch.factors.begin(), ch.factors.end());
        const std::size_t split = cell.factors.size();
        merged.to_term = [prev = cell.to_term, loc = ch.local, split,
                          atom_order](const std::vector<int>& d) {
          std::vector<int> head(d.begin(), d.begin() + split);
          return prev(head) * atom_order + loc(d, split);
        };
        next.push_back(std::move(merged));
        if (next.size() > cap) return std::nullopt;
      }
    }
    cells = std::move(next);
  }
  return cells;
}

// Inverse of the enumeration: which cell a term vertex lies in, and its
// factor digits there.
std::pair<std::size_t, std::vector<int>> locate_in_term(const GraphTerm& t, std::int64_t idx);

std::size_t count_cells(const GraphTerm& t) {
  std::size_t n = 1;
  for (const GraphAtom& a : t.atoms) {
    if (!a.is_join()) continue;
    std::size_t c = 0;
    for (const GraphTerm& p : a.parts) c += count_cells(p);
    n *= c;
  }
  return n;
}

std::pair<std::size_t, std::vector<int>> locate_in_atom(const GraphAtom& a, std::int64_t idx) {
  if (!a.is_join()) return {0, {static_cast<int>(idx)}};
  std::size_t ordinal_base = 0;
  for (const GraphTerm& p : a.parts) {
    const std::int64_t sz = p.order();
    if (idx < sz) {
      auto [sub_ord, digits] = locate_in_term(p, idx);
      return {ordinal_base + sub_ord, std::move(digits)};
    }
    idx -= sz;
    ordinal_base += count_cells(p);
  }
  throw std::logic_error("locate_in_atom: index out of range");
}

std::pair<std::size_t, std::vector<int>> locate_in_term(const GraphTerm& t, std::int64_t idx) {
  // Decode atom digits most-significant-first.
  std::vector<std::int64_t> radix(t.atoms.size(), 1);
  for (int i = static_cast<int>(t.atoms.size()) - 2; i >= 0; --i)
    radix[i] = radix[i + 1] * t.atoms[i + 1].order();
  std::size_t ordinal = 0;
  std::vector<int> digits;
  for (std::size_t i = 0; i < t.atoms.size(); ++i) {
    const std::int64_t d = idx / radix[i];
    idx %= radix[i];
    std::size_t choices = 1;
    if (t.atoms[i].is_join()) {
      choices = 0;
      for (const GraphTerm& p : t.atoms[i].parts) choices += count_cells(p);
    }
    auto [ord, sub] = locate_in_atom(t.atoms[i], d);
    ordinal = ordinal * choices + ord;
    digits.insert(digits.end(), sub.begin(), sub.end());
  }
  return {ordinal, std::move(digits)};
}

std::int64_t factors_order(const std::vector<Graph>& fs) {
  std::int64_t n = 1;
  for (const Graph& g : fs) {
    n *= g.order();
    if (n > (std::int64_t(1) << 40)) return n;
  }
  return n;
}

std::vector<int> flat_to_digits(const std::vector<Graph>& fs, std::int64_t idx) {
  std::vector<int> d(fs.size());
  for (int i = static_cast<int>(fs.size()) - 1; i >= 0; --i) {
    d[i] = static_cast<int>(idx % fs[i].order());
    idx /= fs[i].order();
  }
  return d;
}

std::int64_t digits_to_flat(const std::vector<Graph>& fs, const std::vector<int>& d) {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) idx = idx * fs[i].order() + d[i];
  return idx;
}

// ---------------------------------------------------------------------------
// Small-factor invariants used by the strategies
// ---------------------------------------------------------------------------

int factor_clique_lower(const Graph& g, const Budget& budget) {
  if (g.order() <= kBlockExactCap) {
    CliqueResult r = clique_number(g, budget);
    return r.size;  // exact on Yes, still a valid witness size on Unknown
  }
  return static_cast<int>(greedy_clique(g).size());
}

std::optional<Rat> factor_chi_f(const Graph& g) {
  if (g.order() > Guards::frac_chromatic_vertices()) return std::nullopt;
  return fractional_chromatic(g);
}

// ---------------------------------------------------------------------------
// Ordering between pure products: hom (∗source) → (∗target)?
// The returned hom is on row-major flat indices of the factor lists.
// ---------------------------------------------------------------------------

struct PureLeq {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::int64_t> hom;
  std::string detail;
};

bool all_complete(const std::vector<Graph>& fs) {
  return std::all_of(fs.begin(), fs.end(), [](const Graph& g) { return g.is_complete(); });
}

bool any_edge(const std::vector<Graph>& fs) {
  return std::any_of(fs.begin(), fs.end(), [](const Graph& g) { return !g.is_edgeless(); });
}

void verify_pure_hom(const std::vector<Graph>& target, const std::vector<Graph>& source,
                     const std::vector<std::int64_t>& hom) {
  const std::int64_t sn = factors_order(source);
  if (static_cast<std::int64_t>(hom.size()) != sn)
    throw std::logic_error("graph order witness has the wrong size");
  ProductView sv(source);
  ProductView tv(target);
  for (std::int64_t u = 0; u < sn; ++u) {
    if (hom[u] < 0 || hom[u] >= tv.order())
      throw std::logic_error("graph order witness maps out of range");
    for (std::int64_t v = u + 1; v < sn; ++v)
      if (sv.adjacent(u, v) && !tv.adjacent(hom[u], hom[v]))
        throw std::logic_error("graph order witness fails adjacency preservation");
  }
}

// Builds a clique of the product of `fs` of size at least `m` by splitting
// the factor list into contiguous blocks, taking an exact or greedy clique in
// each materialized block, and crossing them; returns flat indices, or
// nothing if no decomposition reaches m.
std::optional<std::vector<std::int64_t>> product_clique(const std::vector<Graph>& fs, int m,
                                                        const Budget& budget) {
  const int k = static_cast<int>(fs.size());
  // DP over prefixes: best clique-size product using contiguous blocks.
  std::vector<double> best(k + 1, 0);
  std::vector<int> cut(k + 1, -1);       // previous cut position
  std::vector<std::vector<int>> bw(k + 1);  // clique witness of the last block
  best[0] = 1;
  for (int end = 1; end <= k; ++end) {
    std::int64_t size = 1;
    for (int start = end - 1; start >= 0; --start) {
      size *= fs[start].order();
      if (size > kBlockRealizeCap) break;
      std::vector<Graph> block(fs.begin() + start, fs.begin() + end);
      Graph bg = ProductView(block).realize();
      std::vector<int> witness;
      if (bg.order() <= kBlockExactCap) {
        CliqueResult r = clique_number(bg, budget);
        witness = r.witness;
      } else {
        witness = greedy_clique(bg);
      }
      const double value = best[start] * static_cast<double>(witness.size());
      if (value > best[end]) {
        best[end] = value;
        cut[end] = start;
        bw[end] = witness;
      }
    }
    if (best[end] == 0) return std::nullopt;  // a factor exceeded every block cap
  }
  if (best[k] < m) return std::nullopt;
  // Reconstruct blocks.
  struct Block {
    int start, end;
    std::vector<int> clique;  // block-product flat vertices
  };
  std::vector<Block> blocks;
  for (int end = k; end > 0; end = cut[end]) blocks.push_back({cut[end], end, bw[end]});
  std::reverse(blocks.begin(), blocks.end());
  // Map i < m to digits over block clique sizes, then to factor digits.
  std::vector<std::int64_t> capacities;
  for (const Block& b : blocks) capacities.push_back(static_cast<std::int64_t>(b.clique.size()));
  std::vector<std::int64_t> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    std::int64_t rest = i;
    std::vector<int> digits;  // over all factors
    digits.reserve(k);
    std::vector<std::int64_t> choice(blocks.size());
    for (int b = static_cast<int>(blocks.size()) - 1; b >= 0; --b) {
      choice[b] = rest % capacities[b];
      rest /= capacities[b];
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::vector<Graph> block(fs.begin() + blocks[b].start, fs.begin() + blocks[b].end);
      std::vector<int> d = flat_to_digits(block, blocks[b].clique[choice[b]]);
      digits.insert(digits.end(), d.begin(), d.end());
    }
    out.push_back(digits_to_flat(fs, digits));
  }
  return out;
}

PureLeq pure_leq(std::vector<Graph> target, std::vector<Graph> source, const Budget& budget) {
  // Neutral factors contribute nothing to flat indices; drop them.
  std::erase_if(target, [](const Graph& g) { return g.order() <= 1; });
  std::erase_if(source, [](const Graph& g) { return g.order() <= 1; });

  PureLeq out;
  const std::int64_t sn = factors_order(source);
  const std::int64_t tn = factors_order(target);
  auto accept = [&](std::vector<std::int64_t> hom, std::string detail) {
    verify_pure_hom(target, source, hom);
    out.verdict = Verdict::Yes;
    out.hom = std::move(hom);
    out.detail = std::move(detail);
    return out;
  };

  if (sn == 1) return accept({0}, "single-vertex source");
  if (!any_edge(source)) {
    if (sn > kSourceRealizeCap) {
      out.detail = "edgeless source too large to materialize the witness";
      return out;
    }
    return accept(std::vector<std::int64_t>(sn, 0), "edgeless source maps to one vertex");
  }
  if (tn == 1) {
    out.verdict = Verdict::No;
    out.detail = "source has an edge but the target is a single vertex";
    return out;
  }

  // Structural embedding: source factors a sub-multiset of target factors.
  {
    std::vector<std::string> tkeys;
    for (const Graph& g : target) tkeys.push_back(g.adjacency_key() + "/" + std::to_string(g.order()));
    std::vector<int> slot(source.size(), -1);
    std::vector<bool> used(target.size(), false);
    bool ok = true;
    for (std::size_t i = 0; i < source.size() && ok; ++i) {
      const std::string key = source[i].adjacency_key() + "/" + std::to_string(source[i].order());
      ok = false;
      for (std::size_t j = 0; j < target.size(); ++j)
        if (!used[j] && tkeys[j] == key) {
          used[j] = true;
          slot[i] = static_cast<int>(j);
          ok = true;
          break;
        }
    }
    if (ok && sn <= kSourceRealizeCap) {
      std::vector<std::int64_t> hom(sn);
      for (std::int64_t u = 0; u < sn; ++u) {
        std::vector<int> sd = flat_to_digits(source, u);
        std::vector<int> td(target.size(), 0);
        for (std::size_t i = 0; i < source.size(); ++i) td[slot[i]] = sd[i];
        hom[u] = digits_to_flat(target, td);
      }
      return accept(std::move(hom), source.size() == target.size()
                                        ? "identical factor multisets"
                                        : "factor sub-multiset embedding");
    }
  }

  const bool src_complete = all_complete(source);
  const bool tgt_complete = all_complete(target);

  // Exact fractional covering values, when the factors are small enough.
  auto product_chi_f = [&](const std::vector<Graph>& fs) -> std::optional<Rat> {
    Rat prod = 1;
    for (const Graph& g : fs) {
      auto cf = factor_chi_f(g);
      if (!cf) return std::nullopt;
      prod *= *cf;
    }
    return prod;
  };

  if (src_complete) {
    const std::int64_t m64 = sn;
    if (m64 > kSourceRealizeCap) {
      out.detail = "complete source too large to materialize the witness";
      return out;
    }
    const int m = static_cast<int>(m64);
    if (tn <= kExplicitCliqueCap) {
      Graph tg = ProductView(target).realize();
      CliqueAtLeast r = clique_at_least(tg, m, budget);
      if (r.verdict == Verdict::Yes) {
        std::vector<std::int64_t> hom(r.witness.begin(), r.witness.end());
        return accept(std::move(hom), "clique embedding found by exact search");
      }
      if (r.verdict == Verdict::No) {
        out.verdict = Verdict::No;
        out.detail = "exhaustive: the target clique number is below " + std::to_string(m);
        return out;
      }
      out.detail = "clique search exhausted its budget";
      return out;
    }
    if (auto clique = product_clique(target, m, budget))
      return accept(std::move(*clique), "clique embedding composed from factor blocks");
    if (auto cf = product_chi_f(target); cf && *cf < m) {
      out.verdict = Verdict::No;
      out.detail = "fractional covering bound " + rat_to_string(*cf) +
                   " excludes a clique of " + std::to_string(m);
      return out;
    }
    out.detail = "no clique embedding found within the block caps";
    return out;
  }

  if (tgt_complete) {
    // χ(source) ≤ tn suffices; product coloring from per-factor colorings.
    std::vector<std::vector<int>> colorings(source.size());
    std::int64_t color_product = 1;
    for (std::size_t i = 0; i < source.size(); ++i) {
      ColoringResult c = source[i].order() <= kBlockExactCap
                             ? chromatic_number(source[i], budget)
                             : ColoringResult{};
      if (c.verdict == Verdict::Unknown) {
        greedy_coloring(source[i], &colorings[i]);
        color_product *= 1 + *std::max_element(colorings[i].begin(), colorings[i].end());
      } else {
        colorings[i] = c.coloring;
        color_product *= c.number;
      }
    }
    if (color_product <= tn && sn <= kSourceRealizeCap) {
      std::vector<std::int64_t> radix(source.size(), 1);
      for (int i = static_cast<int>(source.size()) - 2; i >= 0; --i)
        radix[i] = radix[i + 1] *
                   (1 + *std::max_element(colorings[i + 1].begin(), colorings[i + 1].end()));
      std::vector<std::int64_t> hom(sn);
      for (std::int64_t u = 0; u < sn; ++u) {
        std::vector<int> sd = flat_to_digits(source, u);
        std::int64_t color = 0;
        for (std::size_t i = 0; i < source.size(); ++i)
          color += colorings[i][sd[i]] * radix[i];
        hom[u] = color;
      }
      return accept(std::move(hom), "product coloring into the complete target");
    }
    if (sn <= kCsvSourceCap * 4) {
      Graph sg = ProductView(source).realize();
      ColoringAtMost c = coloring_at_most(sg, static_cast<int>(tn), budget);
      if (c.verdict == Verdict::Yes) {
        std::vector<std::int64_t> hom(c.coloring.begin(), c.coloring.end());
        return accept(std::move(hom), "proper coloring found by exact search");
      }
      if (c.verdict == Verdict::No) {
        out.verdict = Verdict::No;
        out.detail = "exhaustive: the source needs more colors than the target order";
        return out;
      }
    }
    if (auto cf = product_chi_f(source); cf && *cf > tn) {
      out.verdict = Verdict::No;
      out.detail = "fractional covering bound " + rat_to_string(*cf) +
                   " exceeds the target order " + std::to_string(tn);
      return out;
    }
    out.detail = "coloring strategies inconclusive";
    return out;
  }

  // Necessary conditions that refute without any search.
  {
    std::int64_t clique_lb = 1;
    for (const Graph& g : source) clique_lb *= factor_clique_lower(g, budget);
    auto tgt_cf = product_chi_f(target);
    if (tgt_cf && Rat(Int(clique_lb)) > *tgt_cf) {
      out.verdict = Verdict::No;
      out.detail = "source contains a clique of " + std::to_string(clique_lb) +
                   " but the target's fractional covering bound is " + rat_to_string(*tgt_cf);
      return out;
    }
    auto src_cf = product_chi_f(source);
    if (src_cf && tgt_cf && *src_cf > *tgt_cf) {
      out.verdict = Verdict::No;
      out.detail = "fractional covering bound decreases: " + rat_to_string(*src_cf) + " > " +
                   rat_to_string(*tgt_cf);
      return out;
    }
  }

  // Factor-to-factor matching: a system of distinct representatives with a
  // homomorphism per matched pair lifts coordinatewise.
  if (source.size() <= target.size()) {
    const std::size_t ns = source.size();
    const std::size_t nt = target.size();
    std::vector<std::vector<std::optional<HomResult>>> cell(ns,
                                                            std::vector<std::optional<HomResult>>(nt));
    auto edge = [&](std::size_t i, std::size_t j) -> bool {
      if (!cell[i][j]) {
        if (source[i].order() <= kCsvSourceCap && target[j].order() <= kCsvTargetCap)
          cell[i][j] = hom_search(source[i], target[j], budget);
        else
          cell[i][j] = HomResult{};  // Unknown
      }
      return cell[i][j]->verdict == Verdict::Yes;
    };
    std::vector<int> match_t(nt, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> augment =
        [&](std::size_t i, std::vector<bool>& seen) -> bool {
      for (std::size_t j = 0; j < nt; ++j) {
        if (seen[j] || !edge(i, j)) continue;
        seen[j] = true;
        if (match_t[j] < 0 || augment(match_t[j], seen)) {
          match_t[j] = static_cast<int>(i);
          return true;
        }
      }
      return false;
    };
    bool all_matched = true;
    for (std::size_t i = 0; i < ns && all_matched; ++i) {
      std::vector<bool> seen(nt, false);
      all_matched = augment(i, seen);
    }
    if (all_matched && sn <= kSourceRealizeCap) {
      std::vector<int> slot(ns, -1);
      for (std::size_t j = 0; j < nt; ++j)
        if (match_t[j] >= 0) slot[match_t[j]] = static_cast<int>(j);
      std::vector<std::int64_t> hom(sn);
      for (std::int64_t u = 0; u < sn; ++u) {
        std::vector<int> sd = flat_to_digits(source, u);
        std::vector<int> td(nt, 0);
        for (std::size_t i = 0; i < ns; ++i) td[slot[i]] = cell[i][slot[i]]->map[sd[i]];
        hom[u] = digits_to_flat(target, td);
      }
      return accept(std::move(hom), "coordinatewise factor matching");
    }
  }

  // General backtracking on the materialized graphs, when small enough.
  if (sn <= kCsvSourceCap && tn <= kCsvTargetCap) {
    Graph sg = ProductView(source).realize();
    Graph tg = ProductView(target).realize();
    HomResult h = hom_search(sg, tg, budget);
    if (h.verdict == Verdict::Yes) {
      std::vector<std::int64_t> hom(h.map.begin(), h.map.end());
      return accept(std::move(hom), "map found by exact search");
    }
    if (h.verdict == Verdict::No) {
      out.verdict = Verdict::No;
      out.detail = "exhaustive search found no map";
      return out;
    }
    out.detail = "search exhausted its budget";
    return out;
  }

  out.detail = "no strategy applied at this size";
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Term-level ordering with join expansion
// ---------------------------------------------------------------------------

GraphLeqWitness graph_leq_witness(const GraphTerm& a, const GraphTerm& b, const Budget& budget) {
  GraphLeqWitness out;
  auto tc = expand_cells(a, kCellCap);
  auto sc = expand_cells(b, kCellCap);
  if (!tc || !sc) {
    out.detail = "join expansion exceeds the cell cap";
    return out;
  }

  if (tc->size() == 1 && sc->size() == 1) {
    PureLeq r = pure_leq((*tc)[0].factors, (*sc)[0].factors, budget);
    out.verdict = r.verdict;
    out.detail = std::move(r.detail);
    if (r.verdict == Verdict::Yes) {
      // Lift cell-flat indices to term indices.
      out.hom.resize(r.hom.size());
      const auto& scell = (*sc)[0];
      const auto& tcell = (*tc)[0];
      for (std::int64_t u = 0; u < static_cast<std::int64_t>(r.hom.size()); ++u) {
        std::vector<int> sd = flat_to_digits(scell.factors, u);
        std::vector<int> td = flat_to_digits(tcell.factors, r.hom[u]);
        out.hom[scell.to_term(sd)] = tcell.to_term(td);
      }
    }
    return out;
  }

  // Distinct source cells are all mutually adjacent (joins), so mapping each
  // into a distinct target cell via its own pure map is a homomorphism.
  const std::size_t ns = sc->size();
  const std::size_t nt = tc->size();
  std::vector<std::vector<std::optional<PureLeq>>> cellmat(ns,
                                                           std::vector<std::optional<PureLeq>>(nt));
  auto edge = [&](std::size_t i, std::size_t j) -> bool {
    if (!cellmat[i][j]) cellmat[i][j] = pure_leq((*tc)[j].factors, (*sc)[i].factors, budget);
    return cellmat[i][j]->verdict == Verdict::Yes;
  };
  std::vector<int> match_t(nt, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment =
      [&](std::size_t i, std::vector<bool>& seen) -> bool {
    for (std::size_t j = 0; j < nt; ++j) {
      if (seen[j] || !edge(i, j)) continue;
      seen[j] = true;
      if (match_t[j] < 0 || augment(match_t[j], seen)) {
        match_t[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  bool all_matched = ns <= nt;
  for (std::size_t i = 0; i < ns && all_matched; ++i) {
    std::vector<bool> seen(nt, false);
    all_matched = augment(i, seen);
  }
  if (!all_matched) {
    out.detail = "no assignment of source alternatives to target alternatives was found";
    return out;
  }
  std::vector<int> slot(ns, -1);
  for (std::size_t j = 0; j < nt; ++j)
    if (match_t[j] >= 0) slot[match_t[j]] = static_cast<int>(j);

  const std::int64_t sn = b.order();
  if (sn > kSourceRealizeCap) {
    out.detail = "source too large to verify a composed witness";
    return out;
  }
  out.hom.assign(sn, 0);
  for (std::int64_t u = 0; u < sn; ++u) {
    auto [ci, digits] = locate_in_term(b, u);
    const Cell& scell = (*sc)[ci];
    const Cell& tcell = (*tc)[slot[ci]];
    const std::int64_t local = digits_to_flat(scell.factors, digits);
    const std::int64_t mapped = cellmat[ci][slot[ci]]->hom[local];
    out.hom[u] = tcell.to_term(flat_to_digits(tcell.factors, mapped));
  }
  // Global verification against the real adjacency of both terms.
  {
    ProductView sv(b.atoms.empty() ? std::vector<Graph>{Graph(1)} : b.atom_graphs());
    ProductView tv(a.atoms.empty() ? std::vector<Graph>{Graph(1)} : a.atom_graphs());
    for (std::int64_t u = 0; u < sn; ++u)
      for (std::int64_t v = u + 1; v < sn; ++v)
        if (sv.adjacent(u, v) && !tv.adjacent(out.hom[u], out.hom[v]))
          throw std::logic_error("graph order witness fails adjacency preservation");
  }
  out.verdict = Verdict::Yes;
  out.detail = "alternatives matched cell-by-cell";
  return out;
}

TriState GrphInstance::leq(const Element& a, const Element& b, const Budget& budget) const {
  GraphLeqWitness w = graph_leq_witness(a, b, budget);
  return TriState{w.verdict, w.detail};
}

// ---------------------------------------------------------------------------
// Invariant reports
// ---------------------------------------------------------------------------

SandwichReport sandwich_check(const Graph& g, const Budget& budget, const Rat& tol) {
  SandwichReport rep;
  CliqueResult cl = clique_number(g, budget);
  ThetaResult th = lovasz_complement(g, tol);
  ColoringResult ch = chromatic_number(g, budget);
  rep.clique = cl.size;
  rep.lovasz_value = th.value;
  rep.lovasz_lower = th.lower;
  rep.lovasz_upper = th.upper;
  rep.chromatic = ch.number;
  if (cl.verdict == Verdict::Yes && th.verdict == Verdict::Yes && ch.verdict == Verdict::Yes)
    rep.verdict = Verdict::Yes;
  rep.holds = Rat(cl.size) <= th.upper && th.lower <= Rat(ch.number);
  return rep;
}

CapacityBounds capacity_bounds(const Graph& g, int max_power, const Rat& tol,
                               const Budget& budget) {
  if (max_power < 1) throw std::invalid_argument("capacity_bounds: max_power must be at least 1");
  if (g.is_edgeless())
    throw std::invalid_argument(
        "capacity_bounds: the graph has no edge, so no copies ever yield a bit");
  CapacityBounds out;
  std::vector<Graph> factors;
  for (int n = 1; n <= max_power; ++n) {
    factors.push_back(g);
    ProductView view(factors);
    if (view.order() > kExplicitCliqueCap) break;
    CliqueResult r = clique_number(view.realize(), budget);
    if (r.verdict != Verdict::Yes) continue;
    const double rate = std::log2(static_cast<double>(r.size)) / n;
    if (rate > out.lower) {
      out.lower = rate;
      out.best_power = n;
      out.best_clique = r.size;
    }
  }
  ThetaResult th = lovasz_complement(g, tol);
  out.lovasz_upper = th.upper;
  out.chi_f = fractional_chromatic(g);
  const double lov = std::log2(rat_to_double(th.upper));
  const double frac = std::log2(rat_to_double(out.chi_f));
  if (lov <= frac) {
    out.upper = lov;
    out.upper_source = "orthogonality bound";
  } else {
    out.upper = frac;
    out.upper_source = "fractional covering bound";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distributive catalyst
// ---------------------------------------------------------------------------

CatalystConstruction distribute_catalyst(const GraphTerm& x, const GraphTerm& y, int n,
                                         const std::vector<std::int64_t>& power_witness) {
  if (n < 1) throw std::invalid_argument("distribute_catalyst: n must be at least 1");
  const std::int64_t xo = x.order();
  const std::int64_t yo = y.order();
  std::int64_t xpow = 1;
  std::int64_t ypow = 1;
  for (int i = 0; i < n; ++i) {
    xpow *= xo;
    ypow *= yo;
    if (xpow > kSourceRealizeCap * 4 || ypow > kSourceRealizeCap * 4)
      throw std::invalid_argument("distribute_catalyst: power too large to verify");
  }
  if (static_cast<std::int64_t>(power_witness.size()) != ypow)
    throw std::invalid_argument("distribute_catalyst: witness has the wrong size");
  const Graph xg = x.realize();
  const Graph yg = y.realize();
  {
    ProductView xs(std::vector<Graph>(n, xg));
    ProductView ys(std::vector<Graph>(n, yg));
    for (std::int64_t u = 0; u < ypow; ++u) {
      if (power_witness[u] < 0 || power_witness[u] >= xpow)
        throw std::invalid_argument("distribute_catalyst: witness maps out of range");
      for (std::int64_t v = u + 1; v < ypow; ++v)
        if (ys.adjacent(u, v) && !xs.adjacent(power_witness[u], power_witness[v]))
          throw std::invalid_argument("distribute_catalyst: witness fails verification");
    }
  }

  GrphInstance inst;
  // Cell k (1-based): (k-1) copies of x and (n-k) copies of y.
  std::vector<GraphTerm> cells;
  std::vector<std::vector<Graph>> cell_factors;
  for (int k = 1; k <= n; ++k) {
    GraphTerm cell;
    std::vector<Graph> fs;
    for (int i = 0; i < k - 1; ++i) {
      cell = inst.combine(cell, x);
      fs.push_back(xg);
    }
    for (int i = 0; i < n - k; ++i) {
      cell = inst.combine(cell, y);
      fs.push_back(yg);
    }
    cells.push_back(cell);
    cell_factors.push_back(std::move(fs));
  }

  CatalystConstruction out;
  // The join graph follows construction order: cell k = 1 first.
  std::vector<std::int64_t> offsets(n, 0);
  {
    Graph zg = cell_factors[0].empty() ? Graph(1) : ProductView(cell_factors[0]).realize();
    for (int k = 1; k < n; ++k) {
      offsets[k] = zg.order();
      Graph next = cell_factors[k].empty() ? Graph(1) : ProductView(cell_factors[k]).realize();
      zg = graph_join(zg, next);
    }
    out.z_graph = zg;
  }
  {
    std::vector<GraphTerm> ordered = cells;  // keep construction order in the term too
    out.z = term_join(ordered);
  }

  const std::int64_t zo = out.z_graph.order();
  out.source_order = yo * zo;
  out.target_order = xo * zo;
  out.hom.assign(out.source_order, 0);

  ProductView xs(std::vector<Graph>(n, xg));
  ProductView ys(std::vector<Graph>(n, yg));
  for (std::int64_t v = 0; v < yo; ++v) {
    for (std::int64_t w = 0; w < zo; ++w) {
      // offsets is ascending; find the largest k with offsets[k-1] <= w.
      int k = n;
      while (k > 1 && w < offsets[k - 1]) --k;
      const std::int64_t local = w - offsets[k - 1];
      std::vector<int> d = cell_factors[k - 1].empty()
                               ? std::vector<int>{}
                               : flat_to_digits(cell_factors[k - 1], local);
      std::int64_t tx;     // target x-coordinate
      std::int64_t tcell;  // target z-vertex
      if (k >= 2) {
        // d = (a_1..a_{k-1}, b_1..b_{n-k}) → x-slot a_1,
        // cell k-1 digits (a_2..a_{k-1}, v, b_1..b_{n-k}).
        tx = d[0];
        std::vector<int> nd;
        nd.insert(nd.end(), d.begin() + 1, d.begin() + (k - 1));
        nd.push_back(static_cast<int>(v));
        nd.insert(nd.end(), d.begin() + (k - 1), d.end());
        tcell = offsets[k - 2] + digits_to_flat(cell_factors[k - 2], nd);
      } else {
        // Full power of y: (v, b_1..b_{n-1}) through the power witness.
        std::vector<int> yd;
        yd.push_back(static_cast<int>(v));
        yd.insert(yd.end(), d.begin(), d.end());
        const std::int64_t mapped = power_witness[ys.index(yd)];
        std::vector<int> xd = xs.digits(mapped);
        tx = xd[0];
        std::vector<int> nd(xd.begin() + 1, xd.end());
        tcell = offsets[n - 1] +
                (cell_factors[n - 1].empty() ? 0 : digits_to_flat(cell_factors[n - 1], nd));
      }
      out.hom[v * zo + w] = tx * zo + tcell;
    }
  }

  // Verify the constructed witness end to end.
  ProductView sv(std::vector<Graph>{yg, out.z_graph});
  ProductView tv(std::vector<Graph>{xg, out.z_graph});
  for (std::int64_t u = 0; u < out.source_order; ++u)
    for (std::int64_t v2 = u + 1; v2 < out.source_order; ++v2)
      if (sv.adjacent(u, v2) && !tv.adjacent(out.hom[u], out.hom[v2]))
        throw std::logic_error("distribute_catalyst: constructed witness fails verification");
  return out;
}

}  // namespace remono
