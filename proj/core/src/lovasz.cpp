#include "remono/lovasz.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace remono {

namespace {

using Dense = Eigen::MatrixXd;

// Best rational approximation with denominator at most `max_den`
// (continued-fraction convergents); keeps exact arithmetic downstream small.
Rat approx_rat(double x, long long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("approx_rat: not finite");
  const bool neg = x < 0;
  if (neg) x = -x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(frac);
    if (fl > 9e17) break;
    const long long a = static_cast<long long>(fl);
    if (q0 + a * q1 > max_den && q1 > 0) break;
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    const double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(0);
  Rat r = Rat(Int(p1)) / Rat(Int(q1));
  return neg ? Rat(-r) : r;
}

// Exact positive semidefiniteness via fraction-free-ish symmetric
// elimination: PSD iff all pivots nonnegative and zero pivots have zero rows.
bool psd_exact(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] < 0) return false;
    if (m[k][k] == 0) {
      for (std::size_t j = k; j < n; ++j)
        if (m[k][j] != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rat f = m[i][k] / m[k][k];
      for (std::size_t j = i; j < n; ++j) m[i][j] -= f * m[k][j];
      m[i][k] = 0;
    }
    // Mirror the eliminated column for the symmetric reads above.
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < i; ++j) m[i][j] = m[j][i];
  }
  return true;
}

bool chol_ok(const Dense& m) {
  Eigen::LLT<Dense> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace

ThetaResult lovasz_complement(const Graph& g, const Rat& tol) {
  if (g.order() > Guards::lovasz_vertices())
    throw std::invalid_argument(
        "lovasz_complement: vertex guard exceeded (set REMONO_GUARD_OVERRIDE to raise)");
  if (tol <= 0) throw std::invalid_argument("lovasz_complement: tolerance must be positive");
  const int n = g.order();

  // Constrained index pairs: distinct non-adjacent vertices.
  std::vector<std::pair<int, int>> zeros;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) zeros.emplace_back(u, v);
  const int m = static_cast<int>(zeros.size());

  ThetaResult out;
  if (n == 1) {
    out.verdict = Verdict::Yes;
    out.value = 1;
    out.lower = out.upper = 1;
    return out;
  }

  // Strictly feasible start on both sides.
  Dense X = Dense::Identity(n, n) / n;
  Dense Z = (n + 1) * Dense::Identity(n, n) - Dense::Ones(n, n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m + 1);
  y(0) = n + 1;

  const int max_iter = 120;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double mu = X.cwiseProduct(Z).sum() / n;
    if (mu < 1e-13) break;
    const double sigma = 0.25;
    const Dense Zinv = Z.llt().solve(Dense::Identity(n, n));
    const Dense ZiX = Zinv * X;  // = (X * Zinv)^T

    // Schur system over the multipliers; constraint 0 is the trace.
    Dense M(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    M(0, 0) = ZiX.trace();
    rhs(0) = sigma * mu * Zinv.trace() - X.trace();
    for (int j = 0; j < m; ++j) {
      const auto [a, b] = zeros[j];
      M(0, j + 1) = ZiX(b, a) + ZiX(a, b);
      M(j + 1, 0) = ZiX(a, b) + ZiX(b, a);
      rhs(j + 1) = sigma * mu * 2 * Zinv(a, b) - 2 * X(a, b);
    }
    for (int i = 0; i < m; ++i) {
      const auto [ui, vi] = zeros[i];
      for (int j = 0; j < m; ++j) {
        const auto [uj, vj] = zeros[j];
        M(i + 1, j + 1) = X(ui, uj) * Zinv(vj, vi) + X(ui, vj) * Zinv(uj, vi) +
                          X(vi, uj) * Zinv(vj, ui) + X(vi, vj) * Zinv(uj, ui);
      }
    }
    const Eigen::VectorXd dy = M.partialPivLu().solve(rhs);

    Dense dZ = dy(0) * Dense::Identity(n, n);
    for (int j = 0; j < m; ++j) {
      const auto [a, b] = zeros[j];
      dZ(a, b) += dy(j + 1);
      dZ(b, a) += dy(j + 1);
    }
    Dense dX = sigma * mu * Zinv - X - X * dZ * Zinv;
    dX = ((dX + dX.transpose()) / 2).eval();

    auto step_len = [&](const Dense& base, const Dense& dir) {
      double alpha = 1.0;
      for (int k = 0; k < 60; ++k) {
        if (chol_ok(base + alpha * dir)) return 0.98 * alpha;
        alpha *= 0.7;
      }
      return 0.0;
    };
    const double ap = step_len(X, dX);
    const double ad = step_len(Z, dZ);
    if (ap <= 0 || ad <= 0) break;
    X += ap * dX;
    y += ad * dy;
    Z += ad * dZ;
  }
  out.iterations = iter;

  // ---- Exact primal certificate: rational feasible X with its value. ----
  const long long den = 1'000'000'000'000LL;
  const int nn = n;
  auto primal_value = [&](double mix) -> std::optional<Rat> {
    std::vector<std::vector<Rat>> Xr(nn, std::vector<Rat>(nn, Rat(0)));
    for (int i = 0; i < nn; ++i)
      for (int j = i; j < nn; ++j) {
        if (i != j && !g.has_edge(i, j)) continue;  // exact structural zero
        Rat v = approx_rat(X(i, j), den);
        Xr[i][j] = v;
        Xr[j][i] = v;
      }
    // Blend toward the interior point I/n, then normalize the trace to 1.
    const Rat lam = approx_rat(mix, 1'000'000'000LL);
    Rat trace = 0;
    for (int i = 0; i < nn; ++i) {
      for (int j = 0; j < nn; ++j) {
        Xr[i][j] *= (1 - lam);
        if (i == j) Xr[i][j] += lam / nn;
      }
      trace += Xr[i][i];
    }
    if (trace <= 0) return std::nullopt;
    Rat value = 0;
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) {
        Xr[i][j] /= trace;
        value += Xr[i][j];
      }
    if (!psd_exact(std::move(Xr))) return std::nullopt;
    return value;
  };
  Rat best_lower = 1;  // X = I/n is always feasible with value 1
  for (double mix : {0.0, 1e-9, 1e-7, 1e-5, 1e-3, 1e-1}) {
    auto v = primal_value(mix);
    if (v && *v > best_lower) {
      best_lower = *v;
      break;
    }
    if (v) break;  // feasible but no better; further mixing only shrinks it
  }
  out.lower = best_lower;

  // ---- Exact dual certificate: rational y with PSD slack. ----
  Rat y0 = approx_rat(y(0), den);
  std::vector<Rat> yk(m);
  for (int j = 0; j < m; ++j) yk[j] = approx_rat(y(j + 1), den);
  auto dual_ok = [&](const Rat& shift) {
    std::vector<std::vector<Rat>> Zr(nn, std::vector<Rat>(nn, Rat(-1)));
    for (int i = 0; i < nn; ++i) Zr[i][i] = y0 + shift - 1;
    for (int j = 0; j < m; ++j) {
      const auto [a, b] = zeros[j];
      Zr[a][b] += yk[j];
      Zr[b][a] += yk[j];
    }
    return psd_exact(std::move(Zr));
  };
  // Diagonal dominance gives a shift that always certifies, as a cap for the
  // escalation: rows of the slack are -1 off-diagonal except +y_k on the
  // constrained pairs.
  Rat dominance_shift = 0;
  {
    std::vector<Rat> row_abs(nn, Rat(nn - 1));  // all off-diagonal entries are -1 ...
    for (int j = 0; j < m; ++j) {               // ... except y_k - 1 on constrained pairs
      const auto [a, b] = zeros[j];
      Rat entry = yk[j] - 1;
      Rat mag = entry < 0 ? Rat(-entry) : entry;
      row_abs[a] += mag - 1;
      row_abs[b] += mag - 1;
    }
    for (int i = 0; i < nn; ++i) {
      Rat need = row_abs[i] + 1 - y0;  // diagonal y0 + shift - 1 must cover row_abs
      if (need > dominance_shift) dominance_shift = need;
    }
  }
  Rat shift = 0;
  if (!dual_ok(shift)) {
    Rat bump = Rat(1) / 1'000'000'000'000LL;
    while (bump < dominance_shift && !dual_ok(bump)) bump *= 16;
    shift = (bump < dominance_shift) ? bump : dominance_shift;
  }
  out.upper = y0 + shift;

  out.value = (rat_to_double(out.lower) + rat_to_double(out.upper)) / 2;
  out.verdict = (out.upper - out.lower <= tol) ? Verdict::Yes : Verdict::Unknown;
  return out;
}

}  // namespace remono
