#include "remono/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace remono {

FiniteDistribution make_distribution(std::vector<Rat> probs) {
  if (probs.empty()) throw std::invalid_argument("distribution: needs at least one entry");
  Rat total = 0;
  for (const Rat& x : probs) {
    if (x < 0 || x > 1)
      throw std::invalid_argument("distribution: entry " + rat_to_string(x) +
                                  " outside [0, 1]");
    total += x;
  }
  if (total != 1)
    throw std::invalid_argument("distribution: entries sum to " + rat_to_string(total) +
                                ", expected 1");
  std::sort(probs.begin(), probs.end(), std::greater<Rat>());
  return FiniteDistribution{std::move(probs)};
}

std::size_t support_size(const FiniteDistribution& d) {
  std::size_t n = 0;
  for (const Rat& x : d.p)
    if (x > 0) ++n;
  return n;
}

bool major_leq(const FiniteDistribution& a, const FiniteDistribution& b) {
  const std::size_t n = std::max(a.p.size(), b.p.size());
  Rat pa = 0, pb = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < a.p.size()) pa += a.p[k];
    if (k < b.p.size()) pb += b.p[k];
    if (pa < pb) return false;
  }
  return true;
}

FiniteDistribution dist_product(const FiniteDistribution& a, const FiniteDistribution& b) {
  std::vector<Rat> out;
  out.reserve(a.p.size() * b.p.size());
  for (const Rat& x : a.p)
    for (const Rat& y : b.p) out.push_back(x * y);
  std::sort(out.begin(), out.end(), std::greater<Rat>());
  return FiniteDistribution{std::move(out)};
}

double renyi(const FiniteDistribution& d, const ExtRat& t) {
  if (t.infinite) return -std::log2(rat_to_double(d.p.front()));
  if (t.value < 0) throw std::invalid_argument("renyi: order must be nonnegative");
  if (t.value == 0) return std::log2(static_cast<double>(support_size(d)));
  if (t.value == 1) {
    double h = 0;
    for (const Rat& x : d.p) {
      if (x == 0) continue;
      const double px = rat_to_double(x);
      h -= px * std::log2(px);
    }
    return h;
  }
  const double td = rat_to_double(t.value);
  double s = 0;
  for (const Rat& x : d.p) {
    if (x == 0) continue;
    s += std::pow(rat_to_double(x), td);
  }
  return std::log2(s) / (1.0 - td);
}

namespace {

// H_t(P)/H_t(Q) at finite t > 0 given as a double exponent.
double ratio_at(const FiniteDistribution& p, const FiniteDistribution& q, double t) {
  auto h = [t](const FiniteDistribution& d) {
    double s = 0;
    for (const Rat& x : d.p) {
      if (x == 0) continue;
      s += std::pow(rat_to_double(x), t);
    }
    return std::log2(s) / (1.0 - t);
  };
  return h(p) / h(q);
}

}  // namespace

RenyiRateBound rate_upper_renyi(const FiniteDistribution& p, const FiniteDistribution& q,
                                int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("rate_upper_renyi: grid too small");
  RenyiRateBound out;
  out.grid_points = grid_points;
  if (support_size(q) <= 1) {
    out.infinite = true;
    out.attained = "target is a point mass; every entropy vanishes";
    return out;
  }

  double best = renyi(p, ExtRat{0, false}) / renyi(q, ExtRat{0, false});
  std::string attained = "t=0";
  auto consider = [&](double value, const std::string& name) {
    if (value < best) {
      best = value;
      attained = name;
    }
  };
  consider(renyi(p, ExtRat{1, false}) / renyi(q, ExtRat{1, false}), "t=1");
  consider(renyi(p, ExtRat{0, true}) / renyi(q, ExtRat{0, true}), "t=infinity");

  // Logarithmic grid over [2^-10, 2^10]; the closed formula divides by 1-t,
  // so nudge any grid point that lands exactly on t = 1.
  std::vector<double> ts(grid_points);
  int best_index = -1;
  for (int i = 0; i < grid_points; ++i) {
    const double e = -10.0 + 20.0 * i / (grid_points - 1);
    double t = std::pow(2.0, e);
    if (std::abs(t - 1.0) < 1e-12) t = 1.0 + 1e-9;
    ts[i] = t;
    const double r = ratio_at(p, q, t);
    if (r < best) {
      best = r;
      best_index = i;
      attained = "grid t=" + std::to_string(t);
    }
  }

  // One golden-section refinement around the best grid cell (in log t).
  if (best_index >= 0) {
    const double lo = std::log2(ts[std::max(0, best_index - 1)]);
    const double hi = std::log2(ts[std::min(grid_points - 1, best_index + 1)]);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    auto eval = [&](double e) {
      double t = std::pow(2.0, e);
      if (std::abs(t - 1.0) < 1e-12) t = 1.0 + 1e-9;
      return ratio_at(p, q, t);
    };
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = eval(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = eval(d);
      }
    }
    const double e = (a + b) / 2;
    const double r = eval(e);
    if (r < best) {
      best = r;
      attained = "refined t=" + std::to_string(std::pow(2.0, e));
    }
  }

  out.value = best;
  out.attained = attained;
  return out;
}

TriState ProbMajInstance::leq(const Element& a, const Element& b, const Budget&) const {
  // a converts to b exactly when b majorizes a: concentrating is free,
  // creating randomness is not, and the Renyi entropies (non-increasing along
  // every conversion) certify impossibility.
  if (major_leq(b, a)) return TriState::yes("the target's sorted prefix sums dominate");
  // Locate the first failing prefix for the certificate.
  const std::size_t n = std::max(a.p.size(), b.p.size());
  Rat pa = 0, pb = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < a.p.size()) pa += a.p[k];
    if (k < b.p.size()) pb += b.p[k];
    if (pb < pa)
      return TriState::no("prefix " + std::to_string(k + 1) + " fails: target " +
                          rat_to_string(pb) + " < source " + rat_to_string(pa));
  }
  return TriState::no("prefix dominance fails");
}

bool ProbMajInstance::equal(const Element& a, const Element& b) const {
  // Canonical forms are sorted; compare ignoring trailing zeros.
  std::size_t na = a.p.size(), nb = b.p.size();
  while (na > 0 && a.p[na - 1] == 0) --na;
  while (nb > 0 && b.p[nb - 1] == 0) --nb;
  if (na != nb) return false;
  for (std::size_t i = 0; i < na; ++i)
    if (a.p[i] != b.p[i]) return false;
  return true;
}

std::string ProbMajInstance::describe(const Element& a) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    if (i) os << ", ";
    os << rat_to_string(a.p[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace remono
