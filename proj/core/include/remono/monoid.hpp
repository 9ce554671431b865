#pragma once

// Instance-generic layer for ordered commutative monoids of resources.
//
// An instance supplies an element type with a canonical form, a commutative
// `combine`, a neutral `zero`, and an ordering query `leq`. The convention
// throughout is that ordering queries take (a, b) and decide whether one copy
// of `a` can be converted into one copy of `b` — i.e. whether a is above b.
// Everything else here (powers, annihilators, slices, rate bounds, catalytic
// and many-copy searches, generating-pair checks) is derived from those three
// primitives and works for any instance.

#include "remono/budget.hpp"
#include "remono/rational.hpp"

#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace remono {

// Result of an ordering query. `detail` carries the witness summary on Yes,
// the refutation summary on No, and the exhaustion reason on Unknown.
// Yes and No are final: a larger budget may turn Unknown into either, but
// never flips a settled answer.
struct TriState {
  Verdict verdict = Verdict::Unknown;
  std::string detail;

  static TriState yes(std::string d = {}) { return {Verdict::Yes, std::move(d)}; }
  static TriState no(std::string d = {}) { return {Verdict::No, std::move(d)}; }
  static TriState unknown(std::string d = {}) { return {Verdict::Unknown, std::move(d)}; }
};

template <class I>
concept MonoidInstance = requires(const I& inst, const typename I::Element& a,
                                  const typename I::Element& b, const Budget& budget) {
  typename I::Element;
  { inst.combine(a, b) } -> std::convertible_to<typename I::Element>;
  { inst.zero() } -> std::convertible_to<typename I::Element>;
  { inst.leq(a, b, budget) } -> std::convertible_to<TriState>;
  { inst.equal(a, b) } -> std::convertible_to<bool>;
  { inst.describe(a) } -> std::convertible_to<std::string>;
  // Whether the ordering query is a full decision procedure (No is reachable
  // for every false comparison) rather than a semi-decision.
  { I::complete_order } -> std::convertible_to<bool>;
};

// n-fold combination of x with itself; n = 0 gives the neutral element.
// Computed by repeated combine: canonical forms need not support anything
// faster, and element sizes grow with n anyway.
template <MonoidInstance I>
typename I::Element nfold(const I& inst, const typename I::Element& x, std::uint64_t n) {
  typename I::Element acc = inst.zero();
  for (std::uint64_t i = 0; i < n; ++i) acc = inst.combine(acc, x);
  return acc;
}

// The set of n ≤ limit for which n copies of x convert to n copies of y.
struct AnnihilatorReport {
  std::vector<std::uint64_t> members;  // ascending; always contains 0
  std::vector<std::uint64_t> unknown;  // n whose query exhausted its budget
};

template <MonoidInstance I>
AnnihilatorReport annihilator(const I& inst, const typename I::Element& x,
                              const typename I::Element& y, std::uint64_t limit,
                              const Budget& budget) {
  AnnihilatorReport rep;
  rep.members.push_back(0);
  typename I::Element xn = inst.zero();
  typename I::Element yn = inst.zero();
  for (std::uint64_t n = 1; n <= limit; ++n) {
    xn = inst.combine(xn, x);
    yn = inst.combine(yn, y);
    TriState r = inst.leq(xn, yn, budget);
    if (r.verdict == Verdict::Yes)
      rep.members.push_back(n);
    else if (r.verdict == Verdict::Unknown)
      rep.unknown.push_back(n);
  }
  return rep;
}

// A witnessed point of the two-dimensional slice: n copies of the source
// convert to m copies of the target.
struct SlicePoint {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::string witness;
};

struct Slice {
  std::uint64_t nmax = 0;
  std::uint64_t mmax = 0;
  std::vector<SlicePoint> points;                            // row-major (n, then m)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> unknown;
};

template <MonoidInstance I>
Slice slice(const I& inst, const typename I::Element& x, const typename I::Element& y,
            std::uint64_t nmax, std::uint64_t mmax, const Budget& budget) {
  Slice s;
  s.nmax = nmax;
  s.mmax = mmax;
  std::vector<typename I::Element> xs{inst.zero()};
  std::vector<typename I::Element> ys{inst.zero()};
  for (std::uint64_t n = 1; n <= nmax; ++n) xs.push_back(inst.combine(xs.back(), x));
  for (std::uint64_t m = 1; m <= mmax; ++m) ys.push_back(inst.combine(ys.back(), y));
  for (std::uint64_t n = 0; n <= nmax; ++n)
    for (std::uint64_t m = 0; m <= mmax; ++m) {
      if (n == 0 && m == 0) {
        s.points.push_back({0, 0, "neutral"});
        continue;
      }
      TriState r = inst.leq(xs[n], ys[m], budget);
      if (r.verdict == Verdict::Yes)
        s.points.push_back({n, m, std::move(r.detail)});
      else if (r.verdict == Verdict::Unknown)
        s.unknown.emplace_back(n, m);
    }
  return s;
}

// A numeric functional used for upper rate bounds: any map that is additive
// under combine and monotone under the ordering yields R ≤ f(x)/f(y).
template <class Element>
struct NamedFunctional {
  std::string name;
  std::function<double(const Element&)> eval;
};

struct RateInterval {
  Rat lower = 0;                         // best witnessed slope m/n (exact)
  std::optional<SlicePoint> lower_witness;
  double upper = std::numeric_limits<double>::infinity();
  std::string upper_source;              // functional attaining the upper bound
};

// Lower bound from witnessed slice points over an nmax-by-mmax box
// (mmax defaults to nmax); upper bound from the supplied functionals.
template <MonoidInstance I>
RateInterval rate_bounds(const I& inst, const typename I::Element& x,
                         const typename I::Element& y, std::uint64_t nmax,
                         const std::vector<NamedFunctional<typename I::Element>>& functionals,
                         const Budget& budget, std::uint64_t mmax = 0) {
  if (nmax < 1) throw std::invalid_argument("rate_bounds: nmax must be at least 1");
  if (mmax == 0) mmax = nmax;
  Slice s = slice(inst, x, y, nmax, mmax, budget);
  RateInterval out;
  for (const SlicePoint& p : s.points) {
    if (p.n == 0) continue;
    Rat slope = Rat(p.m) / Rat(p.n);
    bool better = !out.lower_witness || slope > out.lower;
    // Among equal slopes keep the smallest n, and within it the largest m
    // (equal slopes at equal n coincide, so smallest-n suffices).
    if (!better && out.lower_witness && slope == out.lower && p.n < out.lower_witness->n)
      better = true;
    if (better) {
      out.lower = slope;
      out.lower_witness = p;
    }
  }
  for (const auto& f : functionals) {
    double fy = f.eval(y);
    if (!(fy > 0)) continue;
    double bound = f.eval(x) / fy;
    if (bound < out.upper) {
      out.upper = bound;
      out.upper_source = f.name;
    }
  }
  return out;
}

// Search for a catalyst z with x + z ≥ y + z. The neutral element is always
// tried first, so a direct conversion reports catalyst "zero".
struct CatalyticResult {
  Verdict verdict = Verdict::Unknown;
  bool zero_catalyst = false;                 // direct conversion succeeded
  std::optional<std::size_t> catalyst_index;  // index into candidates on Yes
  bool relative_to_candidates = false;        // qualifies a No verdict
  std::string detail;
};

template <MonoidInstance I>
CatalyticResult catalytic_leq(const I& inst, const typename I::Element& x,
                              const typename I::Element& y,
                              const std::vector<typename I::Element>& candidates,
                              const Budget& budget) {
  CatalyticResult out;
  TriState direct = inst.leq(x, y, budget);
  if (direct.verdict == Verdict::Yes) {
    out.verdict = Verdict::Yes;
    out.zero_catalyst = true;
    out.detail = std::move(direct.detail);
    return out;
  }
  bool all_no = (direct.verdict == Verdict::No);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    TriState r = inst.leq(inst.combine(x, candidates[i]), inst.combine(y, candidates[i]), budget);
    if (r.verdict == Verdict::Yes) {
      out.verdict = Verdict::Yes;
      out.catalyst_index = i;
      out.detail = std::move(r.detail);
      return out;
    }
    if (r.verdict != Verdict::No) all_no = false;
  }
  if (all_no) {
    out.verdict = Verdict::No;
    out.relative_to_candidates = true;
    out.detail = "no catalyst among the candidates (and no direct conversion)";
  } else {
    out.verdict = Verdict::Unknown;
    out.detail = "some comparisons exhausted their budget";
  }
  return out;
}

// Least n ≤ nmax with n·x ≥ n·y.
struct ManyCopyResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<std::uint64_t> copies;
  std::string detail;
};

template <MonoidInstance I>
ManyCopyResult manycopy_leq(const I& inst, const typename I::Element& x,
                            const typename I::Element& y, std::uint64_t nmax,
                            const Budget& budget) {
  if (nmax < 1) throw std::invalid_argument("manycopy_leq: nmax must be at least 1");
  ManyCopyResult out;
  typename I::Element xn = inst.zero();
  typename I::Element yn = inst.zero();
  bool all_no = true;
  for (std::uint64_t n = 1; n <= nmax; ++n) {
    xn = inst.combine(xn, x);
    yn = inst.combine(yn, y);
    TriState r = inst.leq(xn, yn, budget);
    if (r.verdict == Verdict::Yes) {
      out.verdict = Verdict::Yes;
      out.copies = n;
      out.detail = std::move(r.detail);
      return out;
    }
    if (r.verdict != Verdict::No) all_no = false;
  }
  if (all_no && I::complete_order) {
    out.verdict = Verdict::No;
    out.detail = "refuted for every copy count up to the bound";
  } else {
    out.verdict = Verdict::Unknown;
    out.detail = "no witnessing copy count up to the bound";
  }
  return out;
}

// Least-lexicographic (n asc, then k asc) witness of a seed-regularized
// conversion: n·x + k·g⁺ ≥ n·y + k·g⁻ with k ≤ eps·n.
struct RegularizedResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> nk;
  std::string detail;
};

template <MonoidInstance I>
RegularizedResult regularized_leq_witness(const I& inst, const typename I::Element& x,
                                          const typename I::Element& y,
                                          const typename I::Element& gplus,
                                          const typename I::Element& gminus, const Rat& eps,
                                          std::uint64_t nmax, const Budget& budget) {
  if (eps <= 0) throw std::invalid_argument("regularized_leq_witness: eps must be positive");
  if (inst.leq(gplus, gminus, budget).verdict != Verdict::Yes)
    throw std::invalid_argument("regularized_leq_witness: seed pair must satisfy g+ >= g-");
  RegularizedResult out;
  bool all_no = true;
  typename I::Element xn = inst.zero();
  typename I::Element yn = inst.zero();
  for (std::uint64_t n = 1; n <= nmax; ++n) {
    xn = inst.combine(xn, x);
    yn = inst.combine(yn, y);
    Rat kcap = eps * Rat(n);
    typename I::Element lhs = xn;
    typename I::Element rhs = yn;
    for (std::uint64_t k = 0; Rat(k) <= kcap; ++k) {
      if (k > 0) {
        lhs = inst.combine(lhs, gplus);
        rhs = inst.combine(rhs, gminus);
      }
      TriState r = inst.leq(lhs, rhs, budget);
      if (r.verdict == Verdict::Yes) {
        out.verdict = Verdict::Yes;
        out.nk = {n, k};
        out.detail = std::move(r.detail);
        return out;
      }
      if (r.verdict != Verdict::No) all_no = false;
    }
  }
  if (all_no && I::complete_order) {
    out.verdict = Verdict::No;
    out.detail = "refuted throughout the searched (n, k) range";
  } else {
    out.verdict = Verdict::Unknown;
    out.detail = "no witness in the searched (n, k) range";
  }
  return out;
}

// For each sample x, the least n ≤ nmax with n·g⁺ ≥ x + n·g⁻ and
// x + n·g⁺ ≥ n·g⁻: both directions of generation from the pair.
struct GeneratingPairReport {
  struct Entry {
    std::size_t sample = 0;
    Verdict verdict = Verdict::Unknown;
    std::optional<std::uint64_t> least_n;
  };
  std::vector<Entry> entries;
  bool verified = false;                   // every sample got a least_n
  std::optional<std::size_t> refuted_sample;
};

template <MonoidInstance I>
GeneratingPairReport generating_pair_check(const I& inst, const typename I::Element& gplus,
                                           const typename I::Element& gminus,
                                           const std::vector<typename I::Element>& samples,
                                           std::uint64_t nmax, const Budget& budget) {
  GeneratingPairReport rep;
  rep.verified = true;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const typename I::Element& x = samples[s];
    GeneratingPairReport::Entry entry;
    entry.sample = s;
    typename I::Element gpn = inst.zero();
    typename I::Element gmn = inst.zero();
    bool all_no = true;
    for (std::uint64_t n = 0; n <= nmax; ++n) {
      if (n > 0) {
        gpn = inst.combine(gpn, gplus);
        gmn = inst.combine(gmn, gminus);
      }
      TriState up = inst.leq(gpn, inst.combine(x, gmn), budget);
      if (up.verdict == Verdict::Yes) {
        TriState down = inst.leq(inst.combine(x, gpn), gmn, budget);
        if (down.verdict == Verdict::Yes) {
          entry.verdict = Verdict::Yes;
          entry.least_n = n;
          break;
        }
        if (down.verdict != Verdict::No) all_no = false;
      } else if (up.verdict != Verdict::No) {
        all_no = false;
      }
    }
    if (!entry.least_n) {
      entry.verdict = (all_no && I::complete_order) ? Verdict::No : Verdict::Unknown;
      rep.verified = false;
      if (entry.verdict == Verdict::No && !rep.refuted_sample) rep.refuted_sample = s;
    }
    rep.entries.push_back(entry);
  }
  return rep;
}

}  // namespace remono
