// remono — command-line front end for the resource-conversion library.
//
// Subcommand groups mirror the library modules:
//   graph    invariants | hom | product | capacity | catalyst
//   cone     contains | close | dual | separate | rate | numerical | extend
//   rxn      reach | laws | monotones | forder
//   channel  graph | verify | search | tensor
//   major    leq | renyi | rate
//   numsg    normalize | gaps
//   rate     slice | bounds          (generic over a named instance)
//
// Exit codes:
//   0   computed / the queried property holds
//   1   refuted (a definite No)
//   2   unknown: the search budget was exhausted before a verdict
//   64  usage error (bad flags, precondition violations, guard limits)
//   65  malformed input document (diagnostics carry file:line)
//
// Machine output (--format machine) is a single JSON document on stdout with
// deterministic key order; all exact rationals appear as "p/q" strings and
// embedded graph/channel/cone/distribution documents appear as text in the
// same format the library's own readers accept, so they round-trip.

#include "CLI11.hpp"
#include "json.hpp"

#include "remono/budget.hpp"
#include "remono/channel.hpp"
#include "remono/cone.hpp"
#include "remono/distribution.hpp"
#include "remono/graph.hpp"
#include "remono/graph_alg.hpp"
#include "remono/graph_monoid.hpp"
#include "remono/io.hpp"
#include "remono/lovasz.hpp"
#include "remono/monoid.hpp"
#include "remono/numsg.hpp"
#include "remono/rational.hpp"
#include "remono/rxn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace remono;

// Thrown after the diagnostic has already been printed to stderr.
struct CliFailure {
  int code;
};

[[noreturn]] void fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  throw CliFailure{64};
}

[[noreturn]] void fail_input(const std::string& where, int line, const std::string& msg) {
  std::cerr << "error: " << where << ":" << line << ": " << msg << "\n";
  throw CliFailure{65};
}

// ---------------------------------------------------------------------------
// Global options and output plumbing

struct RawOpts {
  std::uint64_t budget_nodes = 2'000'000;
  std::uint32_t budget_depth = 64;
  std::string tol = "1/1000000";
  int jobs = 1;
  std::string format = "human";
};

struct Ctx {
  Budget budget;
  Rat tol;
  int jobs = 1;
  bool machine = false;
};

Ctx make_ctx(const RawOpts& raw) {
  Ctx ctx;
  ctx.budget.nodes = raw.budget_nodes;
  ctx.budget.depth = raw.budget_depth;
  auto tol = rat_from_string(raw.tol);
  if (!tol) fail_usage("--tol: expected a rational like 1/1000000");
  ctx.tol = *tol;
  if (ctx.tol <= 0) fail_usage("--tol: must be positive");
  if (raw.jobs < 1) fail_usage("--jobs: must be at least 1");
  ctx.jobs = raw.jobs;
  ctx.machine = (raw.format == "machine");
  return ctx;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Yes: return 0;
    case Verdict::No: return 1;
    default: return 2;
  }
}

void emit(const Ctx& ctx, const ordered_json& doc) {
  if (ctx.machine) std::cout << doc.dump(2) << "\n";
}

ordered_json jvec(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (const Rat& x : v) a.push_back(rat_to_string(x));
  return a;
}

ordered_json jmat(const Mat& m) {
  ordered_json a = ordered_json::array();
  for (const Vec& row : m) a.push_back(jvec(row));
  return a;
}

std::string row_str(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += rat_to_string(v[i]);
  }
  return s;
}

void print_rows(const std::string& title, const Mat& m) {
  std::cout << title << (m.empty() ? " (none)" : "") << "\n";
  for (const Vec& row : m) std::cout << "  " << row_str(row) << "\n";
}

// ---------------------------------------------------------------------------
// Input loading

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    throw CliFailure{65};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_graph(const std::string& path) {
  GraphParseError err{0, ""};
  auto g = parse_graph_text(read_file(path), &err);
  if (!g) fail_input(path, err.line, err.message);
  return *g;
}

StochasticChannel load_channel(const std::string& path) {
  DocParseError err;
  auto c = parse_channel_text(read_file(path), &err);
  if (!c) fail_input(path, err.line, err.message);
  return *c;
}

FiniteDistribution load_distribution(const std::string& path) {
  DocParseError err;
  auto d = parse_distribution_text(read_file(path), &err);
  if (!d) fail_input(path, err.line, err.message);
  return *d;
}

RationalCone load_cone(const std::string& path) {
  DocParseError err;
  auto c = parse_cone_text(read_file(path), &err);
  if (!c) fail_input(path, err.line, err.message);
  return *c;
}

ReactionSystem load_reactions(const std::string& path) {
  DocParseError err;
  auto r = parse_reactions_text(read_file(path), &err);
  if (!r) fail_input(path, err.line, err.message);
  return *r;
}

std::map<std::string, Multiset> load_atoms(const std::string& path) {
  DocParseError err;
  auto t = parse_atom_table_text(read_file(path), &err);
  if (!t) fail_input(path, err.line, err.message);
  return *t;
}

Vec parse_vec_flag(const std::string& flag, const std::string& text) {
  std::string err;
  auto v = parse_vector_inline(text, &err);
  if (!v) fail_usage(flag + ": " + err);
  return *v;
}

Mat parse_mat_flag(const std::string& flag, const std::string& text) {
  Mat rows;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, ';')) rows.push_back(parse_vec_flag(flag, part));
  if (rows.empty()) fail_usage(flag + ": expected rows separated by ';'");
  for (const Vec& r : rows)
    if (r.size() != rows.front().size()) fail_usage(flag + ": rows differ in length");
  return rows;
}

Multiset parse_multiset_flag(const std::string& flag, const std::string& text) {
  std::string err;
  auto m = parse_multiset_inline(text, &err);
  if (!m) fail_usage(flag + ": " + err);
  return *m;
}

std::vector<std::uint64_t> parse_uints_flag(const std::string& flag, const std::string& text) {
  std::vector<std::uint64_t> out;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(part, &pos);
    } catch (const std::exception&) {
      fail_usage(flag + ": expected comma-separated nonnegative integers");
    }
    while (pos < part.size() && std::isspace(static_cast<unsigned char>(part[pos]))) ++pos;
    if (pos != part.size()) fail_usage(flag + ": trailing characters in '" + part + "'");
    out.push_back(v);
  }
  if (out.empty()) fail_usage(flag + ": expected at least one integer");
  return out;
}

ExtRat parse_order_flag(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return ExtRat::infinity();
  auto t = rat_from_string(text);
  if (!t) fail_usage("--order: expected a nonnegative rational or 'inf'");
  if (*t < 0) fail_usage("--order: must be nonnegative");
  return ExtRat::of(*t);
}

// ---------------------------------------------------------------------------
// graph group

int cmd_graph_invariants(const Ctx& ctx, const std::string& file) {
  Graph g = load_graph(file);
  ordered_json doc{{"command", "graph.invariants"}};
  doc["vertices"] = g.order();
  doc["edges"] = g.edge_count();

  if (g.order() <= Guards::lovasz_vertices()) {
    SandwichReport rep = sandwich_check(g, ctx.budget, ctx.tol);
    doc["verdict"] = verdict_name(rep.verdict);
    doc["clique"] = rep.clique;
    doc["orthogonality"] = ordered_json{{"value", rep.lovasz_value},
                                        {"lower", rat_to_string(rep.lovasz_lower)},
                                        {"upper", rat_to_string(rep.lovasz_upper)},
                                        {"tol", rat_to_string(ctx.tol)}};
    doc["chromatic"] = rep.chromatic;
    bool have_frac = g.order() <= Guards::frac_chromatic_vertices();
    Rat frac;
    if (have_frac) {
      frac = fractional_chromatic(g);
      doc["fractional_chromatic"] = rat_to_string(frac);
    }
    doc["sandwich_holds"] = rep.holds;
    if (!ctx.machine) {
      std::cout << "vertices: " << g.order() << "\nedges: " << g.edge_count() << "\n";
      std::cout << "clique number: " << rep.clique << "\n";
      std::cout << "orthogonality bound: " << rep.lovasz_value << " in ["
                << rat_to_string(rep.lovasz_lower) << ", " << rat_to_string(rep.lovasz_upper)
                << "] (tol " << rat_to_string(ctx.tol) << ")\n";
      std::cout << "chromatic number: " << rep.chromatic << "\n";
      if (have_frac) std::cout << "fractional chromatic: " << rat_to_string(frac) << "\n";
      std::cout << "sandwich clique <= orthogonality <= chromatic: "
                << (rep.holds ? "holds" : "violated") << "\n";
    }
    emit(ctx, doc);
    if (rep.verdict == Verdict::Unknown) return 2;
    return rep.holds ? 0 : 1;
  }

  // Above the semidefinite guard: exact invariants only.
  CliqueResult cl = clique_number(g, ctx.budget);
  ColoringResult co = chromatic_number(g, ctx.budget);
  Verdict v = (cl.verdict == Verdict::Yes && co.verdict == Verdict::Yes) ? Verdict::Yes
                                                                         : Verdict::Unknown;
  doc["verdict"] = verdict_name(v);
  doc["clique"] = cl.size;
  doc["chromatic"] = co.number;
  doc["orthogonality_skipped"] = "vertex count above the semidefinite guard";
  if (!ctx.machine) {
    std::cout << "vertices: " << g.order() << "\nedges: " << g.edge_count() << "\n";
    std::cout << "clique number: " << cl.size
              << (cl.verdict == Verdict::Yes ? "" : " (lower bound; budget exhausted)") << "\n";
    std::cout << "chromatic number: " << co.number
              << (co.verdict == Verdict::Yes ? "" : " (upper bound; budget exhausted)") << "\n";
    std::cout << "orthogonality bound: skipped (vertex count above the semidefinite guard)\n";
  }
  emit(ctx, doc);
  return v == Verdict::Yes ? 0 : 2;
}

int cmd_graph_hom(const Ctx& ctx, const std::string& source, const std::string& target) {
  Graph s = load_graph(source);
  Graph t = load_graph(target);
  HomResult r = hom_search(s, t, ctx.budget);
  ordered_json doc{{"command", "graph.hom"}, {"verdict", verdict_name(r.verdict)}};
  doc["source_order"] = s.order();
  doc["target_order"] = t.order();
  if (r.verdict == Verdict::Yes) doc["map"] = r.map;
  doc["nodes"] = r.nodes;
  if (!r.note.empty()) doc["note"] = r.note;
  if (!ctx.machine) {
    std::cout << "homomorphism " << source << " -> " << target << ": " << verdict_name(r.verdict)
              << "\n";
    if (r.verdict == Verdict::Yes) {
      std::cout << "map:";
      for (int img : r.map) std::cout << ' ' << img;
      std::cout << "\n";
    }
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
    std::cout << "search nodes: " << r.nodes << "\n";
  }
  emit(ctx, doc);
  return verdict_exit(r.verdict);
}

int cmd_graph_product(const Ctx& ctx, const std::vector<std::string>& files) {
  GrphInstance inst;
  GraphTerm acc = inst.zero();
  for (const std::string& f : files) acc = inst.combine(acc, term_from_graph(load_graph(f)));
  ordered_json doc{{"command", "graph.product"}};
  doc["factors"] = acc.atoms.size();
  doc["order"] = acc.order();
  doc["term"] = inst.describe(acc);
  constexpr std::int64_t kEmitCap = 4096;
  bool materialized = acc.order() <= kEmitCap;
  if (materialized) {
    Graph g = acc.realize();
    doc["edges"] = g.edge_count();
    doc["graph"] = format_graph_text(g);
  } else {
    doc["materialized"] = false;
  }
  if (!ctx.machine) {
    std::cout << "term: " << inst.describe(acc) << "\n";
    std::cout << "order: " << acc.order() << "\n";
    if (materialized)
      std::cout << format_graph_text(acc.realize());
    else
      std::cout << "adjacency not materialized (order above " << kEmitCap << ")\n";
  }
  emit(ctx, doc);
  return 0;
}

int cmd_graph_capacity(const Ctx& ctx, const std::string& file, int max_power) {
  Graph g = load_graph(file);
  CapacityBounds cb = capacity_bounds(g, max_power, ctx.tol, ctx.budget);
  ordered_json doc{{"command", "graph.capacity"}};
  doc["lower"] = cb.lower;
  doc["lower_power"] = cb.best_power;
  doc["lower_clique"] = cb.best_clique;
  doc["upper"] = cb.upper;
  doc["upper_source"] = cb.upper_source;
  doc["orthogonality_upper"] = rat_to_string(cb.lovasz_upper);
  doc["fractional_covering"] = rat_to_string(cb.chi_f);
  doc["tol"] = rat_to_string(ctx.tol);
  if (!ctx.machine) {
    std::cout << "lower bound: " << cb.lower << " bits/use (clique " << cb.best_clique
              << " at power " << cb.best_power << ")\n";
    std::cout << "upper bound: " << cb.upper << " bits/use (" << cb.upper_source << ")\n";
    std::cout << "certified orthogonality upper: " << rat_to_string(cb.lovasz_upper) << "\n";
    std::cout << "fractional covering: " << rat_to_string(cb.chi_f) << "\n";
  }
  emit(ctx, doc);
  return 0;
}

int cmd_graph_catalyst(const Ctx& ctx, const std::string& xfile, const std::string& yfile,
                       int copies) {
  if (copies < 1) fail_usage("--copies: must be at least 1");
  GrphInstance inst;
  GraphTerm x = term_from_graph(load_graph(xfile));
  GraphTerm y = term_from_graph(load_graph(yfile));
  GraphLeqWitness w = graph_leq_witness(nfold(inst, x, copies), nfold(inst, y, copies), ctx.budget);
  ordered_json doc{{"command", "graph.catalyst"}, {"verdict", verdict_name(w.verdict)}};
  doc["copies"] = copies;
  if (w.verdict != Verdict::Yes) {
    doc["detail"] = w.detail;
    if (!ctx.machine) {
      std::cout << "many-copy comparison at " << copies << " copies: " << verdict_name(w.verdict)
                << "\n";
      std::cout << "detail: " << w.detail << "\n";
    }
    emit(ctx, doc);
    return verdict_exit(w.verdict);
  }
  CatalystConstruction cc = distribute_catalyst(x, y, copies, w.hom);
  doc["witness_detail"] = w.detail;
  doc["catalyst_term"] = inst.describe(cc.z);
  doc["catalyst_order"] = cc.z_graph.order();
  doc["source_order"] = cc.source_order;
  doc["target_order"] = cc.target_order;
  constexpr int kEmitCap = 2048;
  if (cc.z_graph.order() <= kEmitCap) doc["catalyst"] = format_graph_text(cc.z_graph);
  if (!ctx.machine) {
    std::cout << "many-copy witness at " << copies << " copies: " << w.detail << "\n";
    std::cout << "catalyst: " << inst.describe(cc.z) << "\n";
    std::cout << "catalyst order: " << cc.z_graph.order() << "\n";
    std::cout << "single-copy conversion verified: source " << cc.source_order << " -> target "
              << cc.target_order << " (map checked edge-by-edge)\n";
  }
  emit(ctx, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// cone group

int cmd_cone_contains(const Ctx& ctx, const std::string& file, const std::string& point) {
  RationalCone c = load_cone(file);
  Vec v = parse_vec_flag("--point", point);
  if (static_cast<int>(v.size()) != c.dim)
    fail_usage("--point: expected " + std::to_string(c.dim) + " coordinates");
  bool inside = cone_contains(c, v);
  ordered_json doc{{"command", "cone.contains"}, {"contains", inside}, {"point", jvec(v)}};
  if (!ctx.machine)
    std::cout << (inside ? "the point lies in the cone" : "the point is outside the cone") << "\n";
  emit(ctx, doc);
  return inside ? 0 : 1;
}

int cmd_cone_close(const Ctx& ctx, const std::string& file) {
  ClosedCone cc = archimedeanize(load_cone(file));
  ordered_json doc{{"command", "cone.close"}, {"dim", cc.dim}};
  doc["facets"] = jmat(cc.facets);
  doc["rays"] = jmat(cc.rays);
  doc["lineality"] = jmat(cc.lins);
  doc["cone"] = format_closed_cone_text(cc);
  if (!ctx.machine) {
    std::cout << "dimension: " << cc.dim << "\n";
    print_rows("facets:", cc.facets);
    print_rows("extreme rays:", cc.rays);
    print_rows("lineality basis:", cc.lins);
  }
  emit(ctx, doc);
  return 0;
}

int cmd_cone_dual(const Ctx& ctx, const std::string& file) {
  ClosedCone cc = archimedeanize(load_cone(file));
  Mat rays = dual_rays(cc);
  ordered_json doc{{"command", "cone.dual"}, {"dim", cc.dim}, {"rays", jmat(rays)}};
  if (!ctx.machine) print_rows("dual extreme rays (monotone functionals):", rays);
  emit(ctx, doc);
  return 0;
}

int cmd_cone_separate(const Ctx& ctx, const std::string& file, const std::string& point) {
  RationalCone c = load_cone(file);
  Vec v = parse_vec_flag("--point", point);
  if (static_cast<int>(v.size()) != c.dim)
    fail_usage("--point: expected " + std::to_string(c.dim) + " coordinates");
  Separation sep = separate(c, v);
  ordered_json doc{{"command", "cone.separate"}, {"in_closure", sep.in_closure}};
  if (!sep.in_closure) doc["functional"] = jvec(sep.functional);
  if (!ctx.machine) {
    if (sep.in_closure)
      std::cout << "the point lies in the closure of the cone\n";
    else
      std::cout << "separating functional: " << row_str(sep.functional)
                << "  (nonnegative on the cone, negative at the point)\n";
  }
  emit(ctx, doc);
  return sep.in_closure ? 0 : 1;
}

int cmd_cone_rate(const Ctx& ctx, const std::string& file, const std::string& from,
                  const std::string& to) {
  RationalCone c = load_cone(file);
  Vec x = parse_vec_flag("--from", from);
  Vec y = parse_vec_flag("--to", to);
  if (static_cast<int>(x.size()) != c.dim || static_cast<int>(y.size()) != c.dim)
    fail_usage("--from/--to: expected " + std::to_string(c.dim) + " coordinates");
  ClosedCone cc = archimedeanize(c);
  ConeRate r = rate_region_cone(cc, x, y);
  ordered_json doc{{"command", "cone.rate"}};
  doc["rmin"] = rat_to_string(r.rmin.infinite ? Rat(0) : r.rmin.value);
  doc["rmax"] = r.rmax.infinite ? ordered_json("infinite") : ordered_json(rat_to_string(r.rmax.value));
  doc["infinite"] = r.rmax.infinite;
  if (r.infinite_because_target_vanishes)
    doc["note"] = "the target vanishes in the pointed quotient";
  if (!ctx.machine) {
    if (r.rmax.infinite)
      std::cout << "maximal rate: infinite"
                << (r.infinite_because_target_vanishes
                        ? " (the target vanishes in the pointed quotient)"
                        : "")
                << "\n";
    else
      std::cout << "maximal rate: " << rat_to_string(r.rmax.value) << "\n";
  }
  emit(ctx, doc);
  return 0;
}

int cmd_cone_numerical(const Ctx& ctx, const std::string& file) {
  ClosedCone cc = archimedeanize(load_cone(file));
  NumericalEvidence ev = is_numerical(cc);
  ordered_json doc{{"command", "cone.numerical"}, {"numerical", ev.numerical}};
  doc["quotient_dim"] = ev.quotient_dim;
  doc["dual_rays"] = ev.dual_ray_count;
  if (ev.embedding) doc["embedding"] = jvec(*ev.embedding);
  if (!ctx.machine) {
    std::cout << "numerical: " << (ev.numerical ? "yes" : "no") << " (quotient dimension "
              << ev.quotient_dim << ", " << ev.dual_ray_count << " dual rays)\n";
    if (ev.embedding)
      std::cout << "order-reflecting functional: " << row_str(*ev.embedding) << "\n";
  }
  emit(ctx, doc);
  return ev.numerical ? 0 : 1;
}

int cmd_cone_extend(const Ctx& ctx, const std::string& gauge_file, const std::string& subspace,
                    const std::string& values, const std::string& basis) {
  RationalCone gauge = load_cone(gauge_file);
  Mat forms;
  for (const ConeCell& cell : gauge.cells) {
    if (!cell.gt.empty())
      fail_usage("the gauge file must contain only non-strict ('ge') rows");
    for (const Vec& row : cell.ge) forms.push_back(row);
  }
  if (forms.empty()) fail_usage("the gauge file supplies no linear forms");
  Mat sub = parse_mat_flag("--subspace", subspace);
  Vec vals = parse_vec_flag("--values", values);
  if (vals.size() != sub.size())
    fail_usage("--values: expected one value per subspace row");
  Mat full;
  if (!basis.empty()) {
    full = parse_mat_flag("--basis", basis);
  } else {
    full.assign(gauge.dim, Vec(gauge.dim, Rat(0)));
    for (int i = 0; i < gauge.dim; ++i) full[i][i] = 1;
  }
  Vec f = hahn_banach_extend(forms, sub, vals, full);
  ordered_json doc{{"command", "cone.extend"}, {"functional", jvec(f)}};
  doc["forms"] = forms.size();
  if (!ctx.machine) {
    std::cout << "extended functional: " << row_str(f) << "\n";
    std::cout << "certified below the gauge (max of " << forms.size()
              << " linear forms) on the whole space\n";
  }
  emit(ctx, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// rxn group

std::string reaction_str(const Reaction& r) {
  return format_multiset(r.lhs) + " -> " + format_multiset(r.rhs);
}

int cmd_rxn_reach(const Ctx& ctx, const std::string& file, const std::string& from,
                  const std::string& to) {
  ReactionSystem sys = load_reactions(file);
  Multiset x = parse_multiset_flag("--from", from);
  Multiset y = parse_multiset_flag("--to", to);
  ReachResult r = reachable_leq(sys, x, y, ctx.budget);
  ordered_json doc{{"command", "rxn.reach"}, {"verdict", verdict_name(r.verdict)}};
  doc["from"] = format_multiset(x);
  doc["to"] = format_multiset(y);
  if (r.verdict == Verdict::Yes) {
    doc["sequence"] = r.sequence;
    ordered_json steps = ordered_json::array();
    for (std::size_t idx : r.sequence) steps.push_back(reaction_str(sys.reactions[idx]));
    doc["steps"] = steps;
  }
  doc["states_explored"] = r.states;
  doc["detail"] = r.detail;
  if (!ctx.machine) {
    std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
    if (r.verdict == Verdict::Yes) {
      std::cout << "path (" << r.sequence.size() << " steps, " << r.states
                << " states explored):\n";
      for (std::size_t idx : r.sequence)
        std::cout << "  #" << idx << ": " << reaction_str(sys.reactions[idx]) << "\n";
    } else {
      std::cout << "detail: " << r.detail << "\n";
    }
  }
  emit(ctx, doc);
  return verdict_exit(r.verdict);
}

ReactionSystem maybe_expand(const Ctx&, ReactionSystem sys, const std::string& atoms_file) {
  if (atoms_file.empty()) return sys;
  return expand_species(sys, load_atoms(atoms_file));
}

int cmd_rxn_laws(const Ctx& ctx, const std::string& file, const std::string& atoms_file) {
  ReactionSystem sys = maybe_expand(ctx, load_reactions(file), atoms_file);
  std::vector<Vec> laws = conservation_laws(sys);
  ordered_json doc{{"command", "rxn.laws"}};
  doc["species"] = sys.species;
  ordered_json jl = ordered_json::array();
  for (const Vec& l : laws) jl.push_back(jvec(l));
  doc["laws"] = jl;
  if (!ctx.machine) {
    std::cout << "species:";
    for (const std::string& s : sys.species) std::cout << ' ' << s;
    std::cout << "\nconserved quantities (" << laws.size() << "):\n";
    for (const Vec& l : laws) std::cout << "  " << row_str(l) << "\n";
  }
  emit(ctx, doc);
  return 0;
}

int cmd_rxn_monotones(const Ctx& ctx, const std::string& file, const std::string& atoms_file) {
  ReactionSystem sys = maybe_expand(ctx, load_reactions(file), atoms_file);
  MonotoneRays mr = monotone_rays(sys);
  ordered_json doc{{"command", "rxn.monotones"}};
  doc["species"] = sys.species;
  doc["rays"] = jmat(mr.rays);
  doc["lineality"] = jmat(mr.lineality);
  if (!ctx.machine) {
    std::cout << "species:";
    for (const std::string& s : sys.species) std::cout << ' ' << s;
    std::cout << "\n";
    print_rows("extreme monotone functionals (f(lhs) >= f(rhs) for every reaction):", mr.rays);
    print_rows("lineality basis (conserved both ways):", mr.lineality);
  }
  emit(ctx, doc);
  return 0;
}

int cmd_rxn_forder(const Ctx& ctx, const std::string& file, const std::string& from,
                   const std::string& to) {
  ReactionSystem sys = load_reactions(file);
  Multiset x = parse_multiset_flag("--from", from);
  Multiset y = parse_multiset_flag("--to", to);
  FunctionalOrderResult r = functional_order_leq(sys, x, y);
  ordered_json doc{{"command", "rxn.forder"}, {"holds", r.holds}};
  doc["from"] = format_multiset(x);
  doc["to"] = format_multiset(y);
  if (r.holds)
    doc["coefficients"] = jvec(r.coefficients);
  else
    doc["separating"] = jvec(r.separating);
  doc["detail"] = r.detail;
  if (!ctx.machine) {
    std::cout << "functional order: " << (r.holds ? "holds" : "refuted") << "\n";
    if (r.holds) {
      std::cout << "reaction coefficients:\n";
      for (std::size_t i = 0; i < r.coefficients.size(); ++i)
        std::cout << "  " << rat_to_string(r.coefficients[i]) << " x ("
                  << reaction_str(sys.reactions[i]) << ")\n";
    } else {
      std::cout << "separating monotone functional: " << row_str(r.separating) << "\n";
    }
    std::cout << "detail: " << r.detail << "\n";
  }
  emit(ctx, doc);
  return r.holds ? 0 : 1;
}

// ---------------------------------------------------------------------------
// channel group

int cmd_channel_graph(const Ctx& ctx, const std::string& file) {
  StochasticChannel c = load_channel(file);
  Graph g = distinguishability_graph(c);
  ordered_json doc{{"command", "channel.graph"}};
  doc["inputs"] = c.in_size;
  doc["outputs"] = c.out_size;
  doc["edges"] = g.edge_count();
  doc["graph"] = format_graph_text(g);
  if (!ctx.machine) {
    std::cout << "inputs: " << c.in_size << ", distinguishable pairs: " << g.edge_count() << "\n";
    std::cout << format_graph_text(g);
  }
  emit(ctx, doc);
  return 0;
}

int cmd_channel_verify(const Ctx& ctx, const std::string& pf, const std::string& qf,
                       const std::string& ef, const std::string& df) {
  StochasticChannel p = load_channel(pf);
  StochasticChannel q = load_channel(qf);
  StochasticChannel enc = load_channel(ef);
  StochasticChannel dec = load_channel(df);
  bool ok = verify_conversion(p, q, enc, dec);
  ordered_json doc{{"command", "channel.verify"}, {"verified", ok}};
  if (ok) doc["induced_hom"] = induced_hom(p, q, enc, dec);
  if (!ctx.machine) {
    std::cout << (ok ? "the witness converts the source channel into the target exactly"
                     : "the witness does not reproduce the target channel")
              << "\n";
  }
  emit(ctx, doc);
  return ok ? 0 : 1;
}

int cmd_channel_search(const Ctx& ctx, const std::string& pf, const std::string& qf, int restarts,
                       int iterations) {
  if (restarts < 1) fail_usage("--restarts: must be at least 1");
  if (iterations < 1) fail_usage("--iterations: must be at least 1");
  StochasticChannel p = load_channel(pf);
  StochasticChannel q = load_channel(qf);
  ConversionSearchResult r = conversion_search(p, q, restarts, iterations, ctx.budget);
  ordered_json doc{{"command", "channel.search"}, {"verdict", verdict_name(r.verdict)}};
  doc["detail"] = r.detail;
  doc["restarts_used"] = r.restarts_used;
  if (r.verdict == Verdict::Yes) {
    doc["enc"] = format_channel_text(*r.enc);
    doc["dec"] = format_channel_text(*r.dec);
    doc["induced_hom"] = induced_hom(p, q, *r.enc, *r.dec);
  }
  if (!ctx.machine) {
    std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
    std::cout << "detail: " << r.detail << "\n";
    if (r.verdict == Verdict::Yes) {
      std::cout << "encoder:\n" << format_channel_text(*r.enc);
      std::cout << "decoder:\n" << format_channel_text(*r.dec);
    }
  }
  emit(ctx, doc);
  return verdict_exit(r.verdict);
}

int cmd_channel_tensor(const Ctx& ctx, const std::string& pf, const std::string& qf) {
  StochasticChannel t = tensor(load_channel(pf), load_channel(qf));
  ordered_json doc{{"command", "channel.tensor"}};
  doc["inputs"] = t.in_size;
  doc["outputs"] = t.out_size;
  doc["channel"] = format_channel_text(t);
  if (!ctx.machine) std::cout << format_channel_text(t);
  emit(ctx, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// major group

int cmd_major_leq(const Ctx& ctx, const std::string& pf, const std::string& qf) {
  ProbMajInstance inst;
  FiniteDistribution p = load_distribution(pf);
  FiniteDistribution q = load_distribution(qf);
  TriState r = inst.leq(p, q, ctx.budget);
  ordered_json doc{{"command", "major.leq"}, {"verdict", verdict_name(r.verdict)},
                   {"detail", r.detail}};
  if (!ctx.machine)
    std::cout << "converts: " << verdict_name(r.verdict) << "\ndetail: " << r.detail << "\n";
  emit(ctx, doc);
  return verdict_exit(r.verdict);
}

int cmd_major_renyi(const Ctx& ctx, const std::string& pf, const std::string& order) {
  FiniteDistribution p = load_distribution(pf);
  ExtRat t = parse_order_flag(order);
  double h = renyi(p, t);
  ordered_json doc{{"command", "major.renyi"}};
  doc["order"] = t.infinite ? ordered_json("infinity") : ordered_json(rat_to_string(t.value));
  doc["bits"] = h;
  doc["tol"] = 1e-12;  // double-precision evaluation of an exact-rational sum
  if (!ctx.machine)
    std::cout << "entropy of order " << (t.infinite ? std::string("infinity") : rat_to_string(t.value))
              << ": " << h << " bits\n";
  emit(ctx, doc);
  return 0;
}

int cmd_major_rate(const Ctx& ctx, const std::string& pf, const std::string& qf, int grid) {
  if (grid < 2) fail_usage("--grid: must be at least 2");
  FiniteDistribution p = load_distribution(pf);
  FiniteDistribution q = load_distribution(qf);
  RenyiRateBound rb = rate_upper_renyi(p, q, grid);
  ordered_json doc{{"command", "major.rate"}};
  doc["infinite"] = rb.infinite;
  if (!rb.infinite) doc["upper"] = rb.value;
  doc["tol"] = 1e-12;  // double-precision evaluation of an exact-rational sum
  doc["attained"] = rb.attained;
  doc["grid_points"] = rb.grid_points;
  if (!ctx.machine) {
    if (rb.infinite)
      std::cout << "rate upper bound: infinite (" << rb.attained << ")\n";
    else
      std::cout << "rate upper bound: " << rb.value << " (" << rb.attained << ")\n";
  }
  emit(ctx, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// numsg group

int cmd_numsg_normalize(const Ctx& ctx, const std::string& generators) {
  NumSubmonoid s = normalize(parse_uints_flag("--generators", generators));
  ordered_json doc{{"command", "numsg.normalize"}};
  doc["divisor"] = s.d;
  doc["normalized"] = s.normalized;
  if (!ctx.machine) {
    std::cout << "common divisor: " << s.d << "\nnormalized generators:";
    for (std::uint64_t g : s.normalized) std::cout << ' ' << g;
    std::cout << "\n";
  }
  emit(ctx, doc);
  return 0;
}

int cmd_numsg_gaps(const Ctx& ctx, const std::string& generators) {
  NumSubmonoid s = normalize(parse_uints_flag("--generators", generators));
  GapsReport rep = gaps(s);
  ordered_json doc{{"command", "numsg.gaps"}};
  doc["divisor"] = s.d;
  doc["normalized"] = s.normalized;
  doc["gaps"] = rep.gaps;
  doc["frobenius"] = rep.frobenius;
  if (!ctx.machine) {
    std::cout << "common divisor: " << s.d << "\nnormalized generators:";
    for (std::uint64_t g : s.normalized) std::cout << ' ' << g;
    std::cout << "\ngaps (" << rep.gaps.size() << "):";
    for (std::uint64_t g : rep.gaps) std::cout << ' ' << g;
    std::cout << "\nfrobenius number: " << rep.frobenius << "\n";
  }
  emit(ctx, doc);
  return 0;
}

// ---------------------------------------------------------------------------
// rate group: slice and bounds, generic over a named instance

template <class I>
int run_rate_slice(const Ctx& ctx, const I& inst, const typename I::Element& x,
                   const typename I::Element& y, std::uint64_t nmax, std::uint64_t mmax,
                   const std::string& instname) {
  Slice s = slice(inst, x, y, nmax, mmax, ctx.budget);
  ordered_json doc{{"command", "rate.slice"}, {"instance", instname}};
  doc["nmax"] = s.nmax;
  doc["mmax"] = s.mmax;
  ordered_json pts = ordered_json::array();
  for (const SlicePoint& p : s.points)
    pts.push_back(ordered_json{{"n", p.n}, {"m", p.m}, {"witness", p.witness}});
  doc["points"] = pts;
  ordered_json unk = ordered_json::array();
  for (const auto& [n, m] : s.unknown) unk.push_back(ordered_json::array({n, m}));
  doc["unknown"] = unk;
  if (!ctx.machine) {
    std::cout << "attained (n, m) pairs in the box n <= " << s.nmax << ", m <= " << s.mmax
              << ":\n";
    for (const SlicePoint& p : s.points) std::cout << "  (" << p.n << ", " << p.m << ")\n";
    std::cout << "unknown cells: " << s.unknown.size() << "\n";
  }
  emit(ctx, doc);
  return s.unknown.empty() ? 0 : 2;
}

template <class I>
int run_rate_bounds(const Ctx& ctx, const I& inst, const typename I::Element& x,
                    const typename I::Element& y, std::uint64_t nmax, std::uint64_t mmax,
                    const std::vector<NamedFunctional<typename I::Element>>& fns,
                    const std::string& instname) {
  RateInterval r = rate_bounds(inst, x, y, nmax, fns, ctx.budget, mmax);
  ordered_json doc{{"command", "rate.bounds"}, {"instance", instname}};
  doc["lower"] = rat_to_string(r.lower);
  if (r.lower_witness)
    doc["lower_witness"] = ordered_json{{"n", r.lower_witness->n}, {"m", r.lower_witness->m}};
  if (std::isfinite(r.upper)) {
    doc["upper"] = r.upper;
    doc["upper_source"] = r.upper_source;
    doc["tol"] = std::max(rat_to_double(ctx.tol), 1e-12);
  } else {
    doc["upper"] = "infinite";
  }
  if (!ctx.machine) {
    std::cout << "lower bound: " << rat_to_string(r.lower);
    if (r.lower_witness)
      std::cout << " (witnessed at n=" << r.lower_witness->n << ", m=" << r.lower_witness->m
                << ")";
    std::cout << "\n";
    if (std::isfinite(r.upper))
      std::cout << "upper bound: " << r.upper << " (" << r.upper_source << ")\n";
    else
      std::cout << "upper bound: infinite (no functional separates)\n";
  }
  emit(ctx, doc);
  return 0;
}

// Additive monotone functionals for the graph instance: both the fractional
// covering number and the certified orthogonality bound are multiplicative
// across product factors and additive across join parts, and both can only
// grow along conversions. Factors above the corresponding guard make the
// functional unavailable (NaN), which rate_bounds skips.
double graph_log2_frac_cover(const GraphTerm& t) {
  double s = 0;
  for (const Graph& g : t.atom_graphs()) {
    if (g.order() > Guards::frac_chromatic_vertices())
      return std::numeric_limits<double>::quiet_NaN();
    s += std::log2(rat_to_double(fractional_chromatic(g)));
  }
  return s;
}

double graph_log2_ortho(const GraphTerm& t, const Rat& tol) {
  double s = 0;
  for (const Graph& g : t.atom_graphs()) {
    if (g.order() > Guards::lovasz_vertices()) return std::numeric_limits<double>::quiet_NaN();
    ThetaResult th = lovasz_complement(g, tol);
    if (th.verdict != Verdict::Yes) return std::numeric_limits<double>::quiet_NaN();
    // The certified upper end keeps the numerator safe; the tolerance smear on
    // the denominator is disclosed alongside the bound.
    s += std::log2(rat_to_double(th.upper));
  }
  return s;
}

std::vector<NamedFunctional<GraphTerm>> graph_functionals(const Ctx& ctx) {
  Rat tol = ctx.tol;
  return {
      {"log2 fractional covering", [](const GraphTerm& t) { return graph_log2_frac_cover(t); }},
      {"log2 orthogonality bound (within tol)",
       [tol](const GraphTerm& t) { return graph_log2_ortho(t, tol); }},
  };
}

std::vector<NamedFunctional<StochasticChannel>> channel_functionals(const Ctx& ctx) {
  Rat tol = ctx.tol;
  return {
      {"log2 fractional covering of the distinguishability graph",
       [](const StochasticChannel& c) {
         return graph_log2_frac_cover(term_from_graph(distinguishability_graph(c)));
       }},
      {"log2 orthogonality bound of the distinguishability graph (within tol)",
       [tol](const StochasticChannel& c) {
         return graph_log2_ortho(term_from_graph(distinguishability_graph(c)), tol);
       }},
  };
}

std::vector<NamedFunctional<FiniteDistribution>> major_functionals() {
  std::vector<NamedFunctional<FiniteDistribution>> fns;
  auto add = [&fns](const std::string& name, const ExtRat& t) {
    fns.push_back({name, [t](const FiniteDistribution& d) { return renyi(d, t); }});
  };
  add("entropy of order 0", ExtRat::of(Rat(0)));
  add("entropy of order 1", ExtRat::of(Rat(1)));
  add("entropy of order 2", ExtRat::of(Rat(2)));
  add("entropy of order infinity", ExtRat::infinity());
  return fns;
}

int cmd_rate(const Ctx& ctx, bool bounds, const std::string& instance, const std::string& xf,
             const std::string& yf, std::uint64_t nmax, std::uint64_t mmax) {
  if (nmax < 1) fail_usage("--nmax: must be at least 1");
  if (mmax == 0) mmax = nmax;
  if (instance == "graph") {
    GrphInstance inst;
    GraphTerm x = term_from_graph(load_graph(xf));
    GraphTerm y = term_from_graph(load_graph(yf));
    return bounds ? run_rate_bounds(ctx, inst, x, y, nmax, mmax, graph_functionals(ctx), instance)
                  : run_rate_slice(ctx, inst, x, y, nmax, mmax, instance);
  }
  if (instance == "channel") {
    ChannelInstance inst;
    StochasticChannel x = load_channel(xf);
    StochasticChannel y = load_channel(yf);
    return bounds
               ? run_rate_bounds(ctx, inst, x, y, nmax, mmax, channel_functionals(ctx), instance)
               : run_rate_slice(ctx, inst, x, y, nmax, mmax, instance);
  }
  if (instance == "major") {
    ProbMajInstance inst;
    FiniteDistribution x = load_distribution(xf);
    FiniteDistribution y = load_distribution(yf);
    return bounds ? run_rate_bounds(ctx, inst, x, y, nmax, mmax, major_functionals(), instance)
                  : run_rate_slice(ctx, inst, x, y, nmax, mmax, instance);
  }
  fail_usage("--instance: expected graph, channel, or major");
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  std::cout << std::setprecision(12);
  CLI::App app{"remono: exact computations in ordered commutative monoids of resources"};
  app.footer(
      "Exit codes: 0 computed/holds, 1 refuted, 2 unknown (budget exhausted),\n"
      "64 usage error, 65 malformed input.\n"
      "REMONO_GUARD_OVERRIDE=<n> raises the internal size guards to n (vertex\n"
      "counts for semidefinite/fractional/canonical routines, cone dimension).\n"
      "Raising guards is unsupported territory: expect long runtimes.");
  app.require_subcommand(1);

  RawOpts raw;
  app.add_option("--budget-nodes", raw.budget_nodes, "Search-node budget (default 2000000)");
  app.add_option("--budget-depth", raw.budget_depth, "Search-depth budget (default 64)");
  app.add_option("--tol", raw.tol, "Semidefinite tolerance as a rational (default 1/1000000)");
  app.add_option("--jobs", raw.jobs,
                 "Worker count (reserved; computations are deterministic single-thread)");
  app.add_option("--format", raw.format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}));

  int rc = 0;
  auto run = [&raw, &rc](auto fn) {
    return [&raw, &rc, fn]() { rc = fn(make_ctx(raw)); };
  };

  // graph ---------------------------------------------------------------
  CLI::App* graph = app.add_subcommand("graph", "Graphs under the disjunctive product");
  graph->require_subcommand(1);
  graph->fallthrough();
  {
    static std::string file;
    CLI::App* c = graph->add_subcommand("invariants",
                                        "Clique, orthogonality, chromatic, sandwich check");
    c->fallthrough();
    c->add_option("file,--file", file, "graph document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_graph_invariants(ctx, file); }));
  }
  {
    static std::string src, dst;
    CLI::App* c = graph->add_subcommand("hom", "Search a homomorphism source -> target");
    c->fallthrough();
    c->add_option("source", src, "graph document")->required();
    c->add_option("target", dst, "graph document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_graph_hom(ctx, src, dst); }));
  }
  {
    static std::vector<std::string> files;
    CLI::App* c = graph->add_subcommand("product", "Disjunctive product of graph documents");
    c->fallthrough();
    c->add_option("files", files, "graph documents")->required()->expected(-1);
    c->callback(run([](const Ctx& ctx) { return cmd_graph_product(ctx, files); }));
  }
  {
    static std::string file;
    static int max_power = 2;
    CLI::App* c = graph->add_subcommand("capacity",
                                        "Zero-error capacity bounds in bits per use");
    c->fallthrough();
    c->add_option("file,--file", file, "graph document")->required();
    c->add_option("--max-power", max_power, "Largest product power for the lower bound")
        ->check(CLI::PositiveNumber);
    c->callback(run([](const Ctx& ctx) { return cmd_graph_capacity(ctx, file, max_power); }));
  }
  {
    static std::string xf, yf;
    static int copies = 2;
    CLI::App* c = graph->add_subcommand(
        "catalyst", "Turn an n-copy conversion witness into a single-copy catalyst");
    c->fallthrough();
    c->add_option("source", xf, "graph document (x)")->required();
    c->add_option("target", yf, "graph document (y)")->required();
    c->add_option("--copies", copies, "Copy count n with n*x >= n*y");
    c->callback(run([](const Ctx& ctx) { return cmd_graph_catalyst(ctx, xf, yf, copies); }));
  }

  // cone ------------------------------------------------------------------
  CLI::App* cone = app.add_subcommand("cone", "Rational polyhedral resource cones");
  cone->require_subcommand(1);
  cone->fallthrough();
  {
    static std::string file, point;
    CLI::App* c = cone->add_subcommand("contains", "Exact membership in the cone");
    c->fallthrough();
    c->add_option("file", file, "cone document")->required();
    c->add_option("--point", point, "comma-separated rationals")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_cone_contains(ctx, file, point); }));
  }
  {
    static std::string file;
    CLI::App* c = cone->add_subcommand("close", "Polyhedral closure (facets, rays, lineality)");
    c->fallthrough();
    c->add_option("file", file, "cone document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_cone_close(ctx, file); }));
  }
  {
    static std::string file;
    CLI::App* c = cone->add_subcommand("dual", "Extreme monotone functionals of the closure");
    c->fallthrough();
    c->add_option("file", file, "cone document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_cone_dual(ctx, file); }));
  }
  {
    static std::string file, point;
    CLI::App* c = cone->add_subcommand("separate",
                                       "Membership in the closure, or a separating functional");
    c->fallthrough();
    c->add_option("file", file, "cone document")->required();
    c->add_option("--point", point, "comma-separated rationals")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_cone_separate(ctx, file, point); }));
  }
  {
    static std::string file, from, to;
    CLI::App* c = cone->add_subcommand("rate", "Maximal conversion rate inside the closure");
    c->fallthrough();
    c->add_option("file,--cone", file, "cone document")->required();
    c->add_option("--from,--x", from, "source vector")->required();
    c->add_option("--to,--y", to, "target vector")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_cone_rate(ctx, file, from, to); }));
  }
  {
    static std::string file;
    CLI::App* c = cone->add_subcommand(
        "numerical", "Whether a single functional reflects the order of the closure");
    c->fallthrough();
    c->add_option("file", file, "cone document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_cone_numerical(ctx, file); }));
  }
  {
    static std::string file, subspace, values, basis;
    CLI::App* c = cone->add_subcommand(
        "extend", "Extend a gauge-dominated functional from a subspace to the whole space");
    c->fallthrough();
    c->add_option("gauge", file, "cone document whose 'ge' rows are the gauge's linear forms")
        ->required();
    c->add_option("--subspace", subspace, "basis rows 'a,b;c,d' of the seeded subspace")
        ->required();
    c->add_option("--values", values, "seed values, one per subspace row")->required();
    c->add_option("--basis", basis, "full-space basis rows (default: standard basis)");
    c->callback(
        run([](const Ctx& ctx) { return cmd_cone_extend(ctx, file, subspace, values, basis); }));
  }

  // rxn ---------------------------------------------------------------------
  CLI::App* rxn = app.add_subcommand("rxn", "Multiset rewriting over reaction rules");
  rxn->require_subcommand(1);
  rxn->fallthrough();
  {
    static std::string file, from, to;
    CLI::App* c = rxn->add_subcommand("reach", "Breadth-first reachability between multisets");
    c->fallthrough();
    c->add_option("file", file, "reaction document")->required();
    c->add_option("--from", from, "source multiset, e.g. '2 H2 + O2'")->required();
    c->add_option("--to", to, "target multiset")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_rxn_reach(ctx, file, from, to); }));
  }
  {
    static std::string file, atoms;
    CLI::App* c = rxn->add_subcommand("laws", "Basis of exactly conserved quantities");
    c->fallthrough();
    c->add_option("file", file, "reaction document")->required();
    c->add_option("--atoms", atoms, "composition table expanding species into atoms");
    c->callback(run([](const Ctx& ctx) { return cmd_rxn_laws(ctx, file, atoms); }));
  }
  {
    static std::string file, atoms;
    CLI::App* c = rxn->add_subcommand("monotones", "Extreme nonincreasing linear functionals");
    c->fallthrough();
    c->add_option("file", file, "reaction document")->required();
    c->add_option("--atoms", atoms, "composition table expanding species into atoms");
    c->callback(run([](const Ctx& ctx) { return cmd_rxn_monotones(ctx, file, atoms); }));
  }
  {
    static std::string file, from, to;
    CLI::App* c = rxn->add_subcommand(
        "forder", "Order defined by nonnegative reaction combinations, with certificates");
    c->fallthrough();
    c->add_option("file", file, "reaction document")->required();
    c->add_option("--from", from, "source multiset")->required();
    c->add_option("--to", to, "target multiset")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_rxn_forder(ctx, file, from, to); }));
  }

  // channel -------------------------------------------------------------
  CLI::App* channel = app.add_subcommand("channel", "Exact-rational noisy channels");
  channel->require_subcommand(1);
  channel->fallthrough();
  {
    static std::string file;
    CLI::App* c = channel->add_subcommand("graph", "Distinguishability graph of a channel");
    c->fallthrough();
    c->add_option("file", file, "channel document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_channel_graph(ctx, file); }));
  }
  {
    static std::string p, q, enc, dec;
    CLI::App* c = channel->add_subcommand("verify", "Check an encode/decode conversion witness");
    c->fallthrough();
    c->add_option("--p", p, "source channel document")->required();
    c->add_option("--q", q, "target channel document")->required();
    c->add_option("--enc", enc, "encoder channel document")->required();
    c->add_option("--dec", dec, "decoder channel document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_channel_verify(ctx, p, q, enc, dec); }));
  }
  {
    static std::string p, q;
    static int restarts = 6, iterations = 8;
    CLI::App* c = channel->add_subcommand("search", "Search encode/decode witnesses");
    c->fallthrough();
    c->add_option("--p", p, "source channel document")->required();
    c->add_option("--q", q, "target channel document")->required();
    c->add_option("--restarts", restarts, "Seed restarts");
    c->add_option("--iterations", iterations, "Alternating steps per restart");
    c->callback(
        run([](const Ctx& ctx) { return cmd_channel_search(ctx, p, q, restarts, iterations); }));
  }
  {
    static std::string p, q;
    CLI::App* c = channel->add_subcommand("tensor", "Parallel composition of two channels");
    c->fallthrough();
    c->add_option("p", p, "channel document")->required();
    c->add_option("q", q, "channel document")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_channel_tensor(ctx, p, q); }));
  }

  // major -----------------------------------------------------------------
  CLI::App* major = app.add_subcommand("major", "Finite distributions under prefix-sum dominance");
  major->require_subcommand(1);
  major->fallthrough();
  {
    static std::string p, q;
    CLI::App* c = major->add_subcommand("leq", "Whether the source converts to the target");
    c->fallthrough();
    c->add_option("p", p, "distribution document (source)")->required();
    c->add_option("q", q, "distribution document (target)")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_major_leq(ctx, p, q); }));
  }
  {
    static std::string p, order = "1";
    CLI::App* c = major->add_subcommand("renyi", "Entropy of a given order in bits");
    c->fallthrough();
    c->add_option("p", p, "distribution document")->required();
    c->add_option("--order", order, "nonnegative rational or 'inf' (default 1)");
    c->callback(run([](const Ctx& ctx) { return cmd_major_renyi(ctx, p, order); }));
  }
  {
    static std::string p, q;
    static int grid = 64;
    CLI::App* c = major->add_subcommand("rate", "Entropy-ratio upper bound on conversion rates");
    c->fallthrough();
    c->add_option("p", p, "distribution document (source)")->required();
    c->add_option("q", q, "distribution document (target)")->required();
    c->add_option("--grid", grid, "Coarse grid size before refinement");
    c->callback(run([](const Ctx& ctx) { return cmd_major_rate(ctx, p, q, grid); }));
  }

  // numsg ---------------------------------------------------------------
  CLI::App* numsg = app.add_subcommand("numsg", "Additively closed sets of nonnegative integers");
  numsg->require_subcommand(1);
  numsg->fallthrough();
  {
    static std::string gens;
    CLI::App* c = numsg->add_subcommand("normalize",
                                        "Factor out the gcd and report the normalized generators");
    c->fallthrough();
    c->add_option("--generators,--gen", gens, "comma-separated positive integers")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_numsg_normalize(ctx, gens); }));
  }
  {
    static std::string gens;
    CLI::App* c = numsg->add_subcommand("gaps", "Gaps and largest gap of the normalized monoid");
    c->fallthrough();
    c->add_option("--generators,--gen", gens, "comma-separated positive integers")->required();
    c->callback(run([](const Ctx& ctx) { return cmd_numsg_gaps(ctx, gens); }));
  }

  // rate ------------------------------------------------------------------
  CLI::App* rate = app.add_subcommand("rate", "Conversion-rate tools over a named instance");
  rate->require_subcommand(1);
  rate->fallthrough();
  {
    static std::string instance, xf, yf;
    static std::uint64_t nmax = 4, mmax = 0;
    CLI::App* c = rate->add_subcommand("slice", "Witnessed (n, m) conversions in a box");
    c->fallthrough();
    c->add_option("--instance", instance, "graph | channel | major")->required();
    c->add_option("--x", xf, "source document")->required();
    c->add_option("--y", yf, "target document")->required();
    c->add_option("--nmax", nmax, "Source copy bound");
    c->add_option("--mmax", mmax, "Target copy bound (default: nmax)");
    c->callback(
        run([](const Ctx& ctx) { return cmd_rate(ctx, false, instance, xf, yf, nmax, mmax); }));
  }
  {
    static std::string instance, xf, yf;
    static std::uint64_t nmax = 4, mmax = 0;
    CLI::App* c = rate->add_subcommand(
        "bounds", "Witnessed lower bound and functional upper bound on the rate");
    c->fallthrough();
    c->add_option("--instance", instance, "graph | channel | major")->required();
    c->add_option("--x", xf, "source document")->required();
    c->add_option("--y", yf, "target document")->required();
    c->add_option("--nmax", nmax, "Source copy bound");
    c->add_option("--mmax", mmax, "Target copy bound (default: nmax)");
    c->callback(
        run([](const Ctx& ctx) { return cmd_rate(ctx, true, instance, xf, yf, nmax, mmax); }));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  } catch (const CliFailure& f) {
    return f.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return rc;
}
