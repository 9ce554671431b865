#include "remono/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace remono {

namespace {

// Splits into (line number, tokens) pairs with comments and blanks removed.
std::vector<std::pair<int, std::vector<std::string>>> tokenize(const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) out.emplace_back(number, std::move(tokens));
  }
  return out;
}

bool fail(DocParseError* err, int line, const std::string& message) {
  if (err) *err = {line, message};
  return false;
}

bool parse_rat_at(const std::string& tok, int line, Rat* out, DocParseError* err) {
  std::optional<Rat> r = rat_from_string(tok);
  if (!r) return fail(err, line, "not a rational: '" + tok + "'");
  *out = *r;
  return true;
}

}  // namespace

std::optional<StochasticChannel> parse_channel_text(const std::string& text,
                                                    DocParseError* err) {
  auto lines = tokenize(text);
  if (lines.empty()) {
    fail(err, 1, "empty channel document");
    return std::nullopt;
  }
  auto& [hline, head] = lines.front();
  if (head[0] != "channel" || head.size() != 3) {
    fail(err, hline, "expected header 'channel <in> <out>'");
    return std::nullopt;
  }
  int in_size = 0, out_size = 0;
  try {
    in_size = std::stoi(head[1]);
    out_size = std::stoi(head[2]);
  } catch (...) {
    fail(err, hline, "alphabet sizes must be integers");
    return std::nullopt;
  }
  if (in_size <= 0 || out_size <= 0) {
    fail(err, hline, "alphabet sizes must be positive");
    return std::nullopt;
  }
  if (static_cast<int>(lines.size()) != 1 + in_size) {
    fail(err, hline,
         "expected " + std::to_string(in_size) + " matrix rows, found " +
             std::to_string(lines.size() - 1));
    return std::nullopt;
  }
  std::vector<std::vector<Rat>> p;
  for (int a = 0; a < in_size; ++a) {
    auto& [lno, toks] = lines[a + 1];
    if (static_cast<int>(toks.size()) != out_size) {
      fail(err, lno,
           "row has " + std::to_string(toks.size()) + " entries, expected " +
               std::to_string(out_size));
      return std::nullopt;
    }
    std::vector<Rat> row(out_size);
    Rat total = 0;
    for (int b = 0; b < out_size; ++b) {
      if (!parse_rat_at(toks[b], lno, &row[b], err)) return std::nullopt;
      if (row[b] < 0 || row[b] > 1) {
        fail(err, lno, "entry " + rat_to_string(row[b]) + " outside [0, 1]");
        return std::nullopt;
      }
      total += row[b];
    }
    if (total != 1) {
      fail(err, lno, "row sums to " + rat_to_string(total) + ", expected 1");
      return std::nullopt;
    }
    p.push_back(std::move(row));
  }
  return make_channel(in_size, out_size, std::move(p));
}

std::string format_channel_text(const StochasticChannel& c) {
  std::ostringstream os;
  os << "channel " << c.in_size << " " << c.out_size << "\n";
  for (int a = 0; a < c.in_size; ++a) {
    for (int b = 0; b < c.out_size; ++b) {
      if (b) os << " ";
      os << rat_to_string(c.p[a][b]);
    }
    os << "\n";
  }
  return os.str();
}

std::optional<FiniteDistribution> parse_distribution_text(const std::string& text,
                                                          DocParseError* err) {
  auto lines = tokenize(text);
  if (lines.empty()) {
    fail(err, 1, "empty distribution document");
    return std::nullopt;
  }
  std::vector<Rat> probs;
  bool saw_header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& [lno, toks] = lines[i];
    std::size_t k = 0;
    if (i == 0) {
      if (toks[0] != "dist") {
        fail(err, lno, "expected header 'dist'");
        return std::nullopt;
      }
      saw_header = true;
      k = 1;
    }
    for (; k < toks.size(); ++k) {
      Rat r;
      if (!parse_rat_at(toks[k], lno, &r, err)) return std::nullopt;
      probs.push_back(r);
    }
  }
  if (!saw_header || probs.empty()) {
    fail(err, lines.front().first, "distribution needs at least one probability");
    return std::nullopt;
  }
  try {
    return make_distribution(std::move(probs));
  } catch (const std::exception& e) {
    fail(err, lines.front().first, e.what());
    return std::nullopt;
  }
}

std::string format_distribution_text(const FiniteDistribution& d) {
  std::ostringstream os;
  os << "dist";
  for (const Rat& x : d.p) os << " " << rat_to_string(x);
  os << "\n";
  return os.str();
}

std::optional<RationalCone> parse_cone_text(const std::string& text, DocParseError* err) {
  auto lines = tokenize(text);
  if (lines.empty()) {
    fail(err, 1, "empty cone document");
    return std::nullopt;
  }
  auto& [hline, head] = lines.front();
  if (head[0] != "cone" || head.size() != 2) {
    fail(err, hline, "expected header 'cone <dim>'");
    return std::nullopt;
  }
  RationalCone cone;
  try {
    cone.dim = std::stoi(head[1]);
  } catch (...) {
    fail(err, hline, "dimension must be an integer");
    return std::nullopt;
  }
  if (cone.dim <= 0) {
    fail(err, hline, "dimension must be positive");
    return std::nullopt;
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto& [lno, toks] = lines[i];
    if (toks[0] == "cell") {
      if (toks.size() != 1) {
        fail(err, lno, "'cell' takes no arguments");
        return std::nullopt;
      }
      cone.cells.emplace_back();
      continue;
    }
    if (toks[0] == "ge" || toks[0] == "gt") {
      if (cone.cells.empty()) {
        fail(err, lno, "row appears before any 'cell'");
        return std::nullopt;
      }
      if (static_cast<int>(toks.size()) != cone.dim + 1) {
        fail(err, lno,
             "expected " + std::to_string(cone.dim) + " coefficients, found " +
                 std::to_string(toks.size() - 1));
        return std::nullopt;
      }
      Vec row(cone.dim);
      for (int j = 0; j < cone.dim; ++j)
        if (!parse_rat_at(toks[j + 1], lno, &row[j], err)) return std::nullopt;
      (toks[0] == "ge" ? cone.cells.back().ge : cone.cells.back().gt).push_back(std::move(row));
      continue;
    }
    fail(err, lno, "expected 'cell', 'ge' or 'gt', found '" + toks[0] + "'");
    return std::nullopt;
  }
  if (cone.cells.empty()) {
    fail(err, hline, "cone document declares no cells");
    return std::nullopt;
  }
  try {
    validate_cone(cone);
  } catch (const std::exception& e) {
    fail(err, hline, e.what());
    return std::nullopt;
  }
  return cone;
}

std::string format_cone_text(const RationalCone& c) {
  std::ostringstream os;
  os << "cone " << c.dim << "\n";
  for (const ConeCell& cell : c.cells) {
    os << "cell\n";
    for (const Vec& row : cell.ge) {
      os << "ge";
      for (const Rat& x : row) os << " " << rat_to_string(x);
      os << "\n";
    }
    for (const Vec& row : cell.gt) {
      os << "gt";
      for (const Rat& x : row) os << " " << rat_to_string(x);
      os << "\n";
    }
  }
  return os.str();
}

std::string format_closed_cone_text(const ClosedCone& c) {
  RationalCone wrap;
  wrap.dim = c.dim;
  wrap.cells.emplace_back();
  wrap.cells.back().ge = c.facets;
  return format_cone_text(wrap);
}

namespace {

// Parses one side of a reaction: "2 H2 + O2" (coefficient optional). The
// lone token "0" denotes the empty side, matching what the formatter emits.
bool parse_side(const std::vector<std::string>& toks, std::size_t begin, std::size_t end,
                int lno, Multiset* out, DocParseError* err) {
  if (end - begin == 1 && toks[begin] == "0") return true;
  std::uint64_t coef = 1;
  bool have_coef = false;
  bool expect_plus = false;
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& t = toks[i];
    if (t == "+") {
      if (!expect_plus) return fail(err, lno, "unexpected '+'");
      expect_plus = false;
      continue;
    }
    if (expect_plus) return fail(err, lno, "expected '+' before '" + t + "'");
    if (!have_coef && !t.empty() && std::isdigit(static_cast<unsigned char>(t[0]))) {
      try {
        const long long v = std::stoll(t);
        if (v <= 0) return fail(err, lno, "stoichiometric coefficients must be positive");
        coef = static_cast<std::uint64_t>(v);
      } catch (...) {
        return fail(err, lno, "bad coefficient '" + t + "'");
      }
      have_coef = true;
      continue;
    }
    (*out)[t] += coef;
    coef = 1;
    have_coef = false;
    expect_plus = true;
  }
  if (have_coef) return fail(err, lno, "dangling coefficient");
  if (!expect_plus && begin != end) return fail(err, lno, "trailing '+'");
  if (begin == end) return fail(err, lno, "empty reaction side");
  return true;
}

}  // namespace

std::optional<ReactionSystem> parse_reactions_text(const std::string& text,
                                                   DocParseError* err) {
  auto lines = tokenize(text);
  ReactionSystem sys;
  bool declared = false;
  std::vector<std::string> order;  // appearance order when not declared
  auto note_species = [&](const Multiset& m) {
    for (const auto& [name, c] : m) {
      (void)c;
      if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    }
  };
  for (auto& [lno, toks] : lines) {
    if (toks[0] == "species") {
      if (declared || !sys.reactions.empty()) {
        fail(err, lno, "'species' must appear once, before any reaction");
        return std::nullopt;
      }
      declared = true;
      sys.species.assign(toks.begin() + 1, toks.end());
      if (sys.species.empty()) {
        fail(err, lno, "'species' declares nothing");
        return std::nullopt;
      }
      continue;
    }
    const auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) {
      fail(err, lno, "reaction line has no '->'");
      return std::nullopt;
    }
    Reaction r;
    const std::size_t pos = static_cast<std::size_t>(arrow - toks.begin());
    if (!parse_side(toks, 0, pos, lno, &r.lhs, err)) return std::nullopt;
    if (!parse_side(toks, pos + 1, toks.size(), lno, &r.rhs, err)) return std::nullopt;
    if (declared) {
      for (const Multiset* side : {&r.lhs, &r.rhs})
        for (const auto& [name, c] : *side) {
          (void)c;
          if (std::find(sys.species.begin(), sys.species.end(), name) ==
              sys.species.end()) {
            fail(err, lno, "species '" + name + "' is not declared");
            return std::nullopt;
          }
        }
    }
    note_species(r.lhs);
    note_species(r.rhs);
    sys.reactions.push_back(std::move(r));
  }
  if (!declared) sys.species = order;
  try {
    validate_system(sys);
  } catch (const std::exception& e) {
    fail(err, lines.empty() ? 1 : lines.front().first, e.what());
    return std::nullopt;
  }
  return sys;
}

std::string format_reactions_text(const ReactionSystem& sys) {
  std::ostringstream os;
  os << "species";
  for (const std::string& s : sys.species) os << " " << s;
  os << "\n";
  for (const Reaction& r : sys.reactions)
    os << format_multiset(r.lhs) << " -> " << format_multiset(r.rhs) << "\n";
  return os.str();
}

std::optional<std::map<std::string, Multiset>> parse_atom_table_text(const std::string& text,
                                                                     DocParseError* err) {
  auto lines = tokenize(text);
  std::map<std::string, Multiset> table;
  for (auto& [lno, toks] : lines) {
    if (toks.size() < 3 || toks[1] != "=") {
      fail(err, lno, "expected '<species> = <atoms>'");
      return std::nullopt;
    }
    if (table.count(toks[0])) {
      fail(err, lno, "species '" + toks[0] + "' defined twice");
      return std::nullopt;
    }
    Multiset atoms;
    if (!parse_side(toks, 2, toks.size(), lno, &atoms, err)) return std::nullopt;
    table[toks[0]] = std::move(atoms);
  }
  return table;
}

std::optional<Multiset> parse_multiset_inline(const std::string& text, std::string* err) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  Multiset m;
  DocParseError derr;
  if (toks.empty()) return m;  // the empty multiset is the neutral element
  if (!parse_side(toks, 0, toks.size(), 1, &m, &derr)) {
    if (err) *err = derr.message;
    return std::nullopt;
  }
  return m;
}

std::optional<Vec> parse_vector_inline(const std::string& text, std::string* err) {
  Vec v;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    std::optional<Rat> r = rat_from_string(cur);
    if (!r) {
      if (err) *err = "not a rational: '" + cur + "'";
      return std::nullopt;
    }
    v.push_back(*r);
  }
  if (v.empty()) {
    if (err) *err = "empty vector";
    return std::nullopt;
  }
  return v;
}

}  // namespace remono
