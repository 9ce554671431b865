#include "remono/channel.hpp"

#include "remono/graph_alg.hpp"
#include "remono/simplex.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace remono {

StochasticChannel make_channel(int in_size, int out_size, std::vector<std::vector<Rat>> p) {
  if (in_size <= 0 || out_size <= 0)
    throw std::invalid_argument("channel: alphabet sizes must be positive");
  if (static_cast<int>(p.size()) != in_size)
    throw std::invalid_argument("channel: expected " + std::to_string(in_size) + " rows");
  for (int a = 0; a < in_size; ++a) {
    if (static_cast<int>(p[a].size()) != out_size)
      throw std::invalid_argument("channel: row " + std::to_string(a) + " has " +
                                  std::to_string(p[a].size()) + " entries, expected " +
                                  std::to_string(out_size));
    Rat total = 0;
    for (const Rat& x : p[a]) {
      if (x < 0 || x > 1)
        throw std::invalid_argument("channel: entry " + rat_to_string(x) + " outside [0, 1]");
      total += x;
    }
    if (total != 1)
      throw std::invalid_argument("channel: row " + std::to_string(a) + " sums to " +
                                  rat_to_string(total) + ", expected 1");
  }
  return StochasticChannel{in_size, out_size, std::move(p)};
}

StochasticChannel identity_channel(int n) {
  std::vector<std::vector<Rat>> p(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) p[i][i] = 1;
  return StochasticChannel{n, n, std::move(p)};
}

StochasticChannel trivial_channel() { return identity_channel(1); }

StochasticChannel tensor(const StochasticChannel& p, const StochasticChannel& q) {
  StochasticChannel out;
  out.in_size = p.in_size * q.in_size;
  out.out_size = p.out_size * q.out_size;
  out.p.assign(out.in_size, std::vector<Rat>(out.out_size, Rat(0)));
  for (int a = 0; a < p.in_size; ++a)
    for (int c = 0; c < q.in_size; ++c)
      for (int b = 0; b < p.out_size; ++b)
        for (int d = 0; d < q.out_size; ++d)
          out.p[a * q.in_size + c][b * q.out_size + d] = p.p[a][b] * q.p[c][d];
  return out;
}

StochasticChannel compose(const StochasticChannel& a, const StochasticChannel& b) {
  if (a.out_size != b.in_size)
    throw std::invalid_argument("compose: inner alphabets differ (" +
                                std::to_string(a.out_size) + " vs " +
                                std::to_string(b.in_size) + ")");
  StochasticChannel out;
  out.in_size = a.in_size;
  out.out_size = b.out_size;
  out.p.assign(out.in_size, std::vector<Rat>(out.out_size, Rat(0)));
  for (int i = 0; i < a.in_size; ++i)
    for (int m = 0; m < a.out_size; ++m) {
      if (a.p[i][m] == 0) continue;
      for (int j = 0; j < b.out_size; ++j) out.p[i][j] += a.p[i][m] * b.p[m][j];
    }
  return out;
}

bool verify_conversion(const StochasticChannel& p, const StochasticChannel& q,
                       const StochasticChannel& enc, const StochasticChannel& dec) {
  if (enc.in_size != q.in_size || enc.out_size != p.in_size)
    throw std::invalid_argument("verify_conversion: encoder shape mismatch");
  if (dec.in_size != p.out_size || dec.out_size != q.out_size)
    throw std::invalid_argument("verify_conversion: decoder shape mismatch");
  return compose(compose(enc, p), dec) == q;
}

Graph distinguishability_graph(const StochasticChannel& p) {
  Graph g(p.in_size);
  for (int a1 = 0; a1 < p.in_size; ++a1)
    for (int a2 = a1 + 1; a2 < p.in_size; ++a2) {
      bool disjoint = true;
      for (int b = 0; b < p.out_size && disjoint; ++b)
        disjoint = p.p[a1][b] == 0 || p.p[a2][b] == 0;
      if (disjoint) g.add_edge(a1, a2);
    }
  return g;
}

std::vector<int> induced_hom(const StochasticChannel& p, const StochasticChannel& q,
                             const StochasticChannel& enc, const StochasticChannel& dec) {
  if (!verify_conversion(p, q, enc, dec))
    throw std::invalid_argument("induced_hom: the witness does not verify");
  std::vector<int> map(q.in_size, -1);
  for (int c = 0; c < q.in_size; ++c)
    for (int a = 0; a < p.in_size; ++a)
      if (enc.p[c][a] > 0) {
        map[c] = a;
        break;
      }
  const Graph fq = distinguishability_graph(q);
  const Graph fp = distinguishability_graph(p);
  if (!verify_hom(fq, fp, map))
    throw std::logic_error("induced_hom: constructed map fails adjacency preservation");
  return map;
}

namespace {

// Minimizes the exact residual sum |compose(compose(enc,p),dec) - q| over one
// side (the other held fixed), subject to row-stochasticity. Returns the
// optimizing matrix and the residual value.
struct HalfStep {
  std::vector<std::vector<Rat>> matrix;
  Rat residual = 0;
  bool ok = false;
};

// Unknowns: an `rows x cols` row-stochastic matrix M minimizing
// sum_{c,d} | sum_m L[c][m] * M[m][?]... | -- we express the bilinear product
// as: given left factor L (q.in x rows) and right constant R (cols x q.out),
// minimize | L * M * R - q | elementwise-L1.
HalfStep solve_side(const std::vector<std::vector<Rat>>& left, int rows, int cols,
                    const std::vector<std::vector<Rat>>& right,
                    const StochasticChannel& q) {
  const int qc = q.in_size, qd = q.out_size;
  const int nm = rows * cols;         // matrix entries
  const int ns = qc * qd;             // residual slacks
  LinearProgram lp;
  lp.nvars = nm + ns;
  lp.nonneg.assign(lp.nvars, true);
  lp.objective.assign(lp.nvars, Rat(0));
  for (int s = 0; s < ns; ++s) lp.objective[nm + s] = 1;
  lp.maximize = false;

  // Row sums are 1.
  for (int r = 0; r < rows; ++r) {
    LinConstraint c;
    c.a.assign(lp.nvars, Rat(0));
    for (int j = 0; j < cols; ++j) c.a[r * cols + j] = 1;
    c.rel = Rel::EQ;
    c.b = 1;
    lp.cons.push_back(std::move(c));
  }
  // -slack <= (L M R)[c][d] - q[c][d] <= slack.
  for (int c = 0; c < qc; ++c)
    for (int d = 0; d < qd; ++d) {
      Vec coef(lp.nvars, Rat(0));
      for (int r = 0; r < rows; ++r) {
        if (left[c][r] == 0) continue;
        for (int j = 0; j < cols; ++j) {
          if (right[j][d] == 0) continue;
          coef[r * cols + j] += left[c][r] * right[j][d];
        }
      }
      const int s = nm + c * qd + d;
      LinConstraint up;
      up.a = coef;
      up.a[s] = -1;
      up.rel = Rel::LE;
      up.b = q.p[c][d];
      lp.cons.push_back(std::move(up));
      LinConstraint lo;
      lo.a = std::move(coef);
      lo.a[s] = 1;
      lo.rel = Rel::GE;
      lo.b = q.p[c][d];
      lp.cons.push_back(std::move(lo));
    }

  LpResult res = lp_solve(lp);
  HalfStep out;
  if (res.status != LpStatus::Optimal) return out;
  out.ok = true;
  out.residual = res.objective;
  out.matrix.assign(rows, std::vector<Rat>(cols, Rat(0)));
  for (int r = 0; r < rows; ++r)
    for (int j = 0; j < cols; ++j) out.matrix[r][j] = res.x[r * cols + j];
  return out;
}

std::vector<std::vector<Rat>> deterministic_rows(int rows, int cols,
                                                 const std::vector<int>& pick) {
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols, Rat(0)));
  for (int r = 0; r < rows; ++r) m[r][pick[r]] = 1;
  return m;
}

}  // namespace

ConversionSearchResult conversion_search(const StochasticChannel& p, const StochasticChannel& q,
                                         int restarts, int iterations, const Budget& budget) {
  ConversionSearchResult out;
  if (p == q) {
    out.verdict = Verdict::Yes;
    out.enc = identity_channel(p.in_size);
    out.dec = identity_channel(p.out_size);
    out.detail = "channels already equal";
    return out;
  }

  // Necessary condition: the target's distinguishability graph must map into
  // the source's. An exhaustive homomorphism refutation refutes conversion.
  const Graph fp = distinguishability_graph(p);
  const Graph fq = distinguishability_graph(q);
  HomResult hom = hom_search(fq, fp, budget);
  if (hom.verdict == Verdict::No) {
    out.verdict = Verdict::No;
    out.detail = "necessary condition fails: no map between distinguishability graphs";
    return out;
  }

  // Encoder seeds, tried in order; all deterministic.
  std::vector<std::vector<std::vector<Rat>>> seeds;
  if (hom.verdict == Verdict::Yes)
    seeds.push_back(deterministic_rows(q.in_size, p.in_size, hom.map));
  {
    std::vector<int> pick(q.in_size);
    for (int c = 0; c < q.in_size; ++c) pick[c] = c % p.in_size;
    seeds.push_back(deterministic_rows(q.in_size, p.in_size, pick));
  }
  seeds.push_back(std::vector<std::vector<Rat>>(
      q.in_size, std::vector<Rat>(p.in_size, Rat(1, p.in_size))));
  std::mt19937 rng(20240901);
  while (static_cast<int>(seeds.size()) < restarts) {
    std::vector<int> pick(q.in_size);
    for (int c = 0; c < q.in_size; ++c)
      pick[c] = static_cast<int>(rng() % static_cast<unsigned>(p.in_size));
    seeds.push_back(deterministic_rows(q.in_size, p.in_size, pick));
  }
  if (static_cast<int>(seeds.size()) > restarts) seeds.resize(std::max(restarts, 1));

  for (std::size_t s = 0; s < seeds.size(); ++s) {
    out.restarts_used = static_cast<int>(s + 1);
    std::vector<std::vector<Rat>> enc = seeds[s];
    std::vector<std::vector<Rat>> dec;
    Rat last_residual = -1;
    for (int it = 0; it < iterations; ++it) {
      // Fix enc; decoder minimizes the residual. Left = enc * p.
      std::vector<std::vector<Rat>> left(q.in_size, std::vector<Rat>(p.out_size, Rat(0)));
      for (int c = 0; c < q.in_size; ++c)
        for (int a = 0; a < p.in_size; ++a) {
          if (enc[c][a] == 0) continue;
          for (int b = 0; b < p.out_size; ++b) left[c][b] += enc[c][a] * p.p[a][b];
        }
      std::vector<std::vector<Rat>> id_right(q.out_size,
                                             std::vector<Rat>(q.out_size, Rat(0)));
      for (int d = 0; d < q.out_size; ++d) id_right[d][d] = 1;
      HalfStep ds = solve_side(left, p.out_size, q.out_size, id_right, q);
      if (!ds.ok) break;
      dec = ds.matrix;
      if (ds.residual == 0) {
        StochasticChannel enc_ch{q.in_size, p.in_size, enc};
        StochasticChannel dec_ch{p.out_size, q.out_size, dec};
        if (verify_conversion(p, q, enc_ch, dec_ch)) {
          out.verdict = Verdict::Yes;
          out.enc = std::move(enc_ch);
          out.dec = std::move(dec_ch);
          out.detail = "witness found and verified exactly";
          return out;
        }
      }
      // Fix dec; encoder minimizes the residual. Right = p * dec.
      std::vector<std::vector<Rat>> right(p.in_size, std::vector<Rat>(q.out_size, Rat(0)));
      for (int a = 0; a < p.in_size; ++a)
        for (int b = 0; b < p.out_size; ++b) {
          if (p.p[a][b] == 0) continue;
          for (int d = 0; d < q.out_size; ++d) right[a][d] += p.p[a][b] * dec[b][d];
        }
      std::vector<std::vector<Rat>> id_left(q.in_size, std::vector<Rat>(q.in_size, Rat(0)));
      for (int c = 0; c < q.in_size; ++c) id_left[c][c] = 1;
      HalfStep es = solve_side(id_left, q.in_size, p.in_size, right, q);
      if (!es.ok) break;
      enc = es.matrix;
      if (es.residual == 0) continue;  // next decoder solve closes the loop
      if (last_residual >= 0 && es.residual >= last_residual) break;  // stalled
      last_residual = es.residual;
    }
  }

  out.detail = "no verified witness found (bilinear search is incomplete)";
  return out;
}

TriState ChannelInstance::leq(const Element& a, const Element& b, const Budget& budget) const {
  ConversionSearchResult r = conversion_search(a, b, restarts, iterations, budget);
  return TriState{r.verdict, r.detail};
}

std::string ChannelInstance::describe(const Element& a) const {
  std::ostringstream os;
  os << a.in_size << "x" << a.out_size << " channel";
  return os.str();
}

}  // namespace remono
