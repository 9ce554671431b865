#include "remono/numsg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace remono {

NumSubmonoid normalize(const std::vector<std::uint64_t>& generators) {
  if (generators.empty()) throw std::invalid_argument("normalize: empty generator set");
  NumSubmonoid s;
  s.generators = generators;
  std::sort(s.generators.begin(), s.generators.end());
  s.generators.erase(std::unique(s.generators.begin(), s.generators.end()), s.generators.end());
  if (s.generators.front() == 0)
    throw std::invalid_argument("normalize: generators must be positive");
  s.d = 0;
  for (std::uint64_t g : s.generators) s.d = std::gcd(s.d, g);
  for (std::uint64_t g : s.generators) s.normalized.push_back(g / s.d);
  return s;
}

namespace {

// Membership table of the gcd-1 submonoid on [0, limit]; true = member.
std::vector<char> member_table(const std::vector<std::uint64_t>& gens, std::uint64_t limit) {
  std::vector<char> in(limit + 1, 0);
  in[0] = 1;
  for (std::uint64_t n = 1; n <= limit; ++n)
    for (std::uint64_t g : gens)
      if (g <= n && in[n - g]) {
        in[n] = 1;
        break;
      }
  return in;
}

}  // namespace

GapsReport gaps(const std::vector<std::uint64_t>& coprime_generators) {
  if (coprime_generators.empty()) throw std::invalid_argument("gaps: empty generator set");
  std::vector<std::uint64_t> gens = coprime_generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.front() == 0) throw std::invalid_argument("gaps: generators must be positive");
  std::uint64_t g = 0;
  for (std::uint64_t x : gens) g = std::gcd(g, x);
  if (g != 1) throw std::invalid_argument("gaps: generators must have gcd 1");

  const std::uint64_t g1 = gens[0];
  const std::uint64_t g2 = gens.size() > 1 ? gens[1] : gens[0];
  const std::uint64_t cap = 10 * g1 * g2;
  std::vector<char> in = member_table(gens, cap);

  // Once g1 consecutive members appear, every larger number is a member.
  GapsReport rep;
  std::uint64_t run = 0;
  for (std::uint64_t n = 0; n <= cap; ++n) {
    if (in[n]) {
      if (++run == g1) {
        for (std::uint64_t m = 0; m + g1 <= n; ++m)
          if (!in[m]) rep.gaps.push_back(m);
        rep.frobenius = rep.gaps.empty() ? -1 : static_cast<std::int64_t>(rep.gaps.back());
        return rep;
      }
    } else {
      run = 0;
    }
  }
  throw std::logic_error("gaps: termination cap reached without a conclusive run");
}

GapsReport gaps(const NumSubmonoid& s) { return gaps(s.normalized); }

bool membership(const NumSubmonoid& s, std::uint64_t n) {
  if (n % s.d != 0) return false;
  const std::uint64_t m = n / s.d;
  std::vector<char> in = member_table(s.normalized, m);
  return in[m] != 0;
}

AnnihilatorAnalysis analyze_annihilator(const std::vector<std::uint64_t>& points,
                                        std::uint64_t window) {
  AnnihilatorAnalysis out;
  std::set<std::uint64_t> members(points.begin(), points.end());
  out.contains_zero = members.count(0) > 0;

  for (std::uint64_t a : members) {
    if (a == 0) continue;
    for (std::uint64_t b : members) {
      if (b > a) break;
      if (b == 0) continue;
      if (a + b <= window && !members.count(a + b)) {
        out.closed_in_window = false;
        out.violations.emplace_back(b, a);
      }
    }
  }

  out.d = 0;
  for (std::uint64_t a : members)
    if (a != 0) out.d = std::gcd(out.d, a);
  if (out.d == 0) {
    out.summary = "trivial submonoid {0}";
    return out;
  }

  // Ascending scan: a member is a generator when it is not a sum of earlier
  // candidates (dynamic programming over the window).
  std::vector<char> reachable(window + 1, 0);
  reachable[0] = 1;
  for (std::uint64_t a : members) {
    if (a == 0) continue;
    if (!reachable[a]) {
      out.candidate_generators.push_back(a);
      for (std::uint64_t n = a; n <= window; ++n)
        if (reachable[n - a]) reachable[n] = 1;
    }
  }
  for (std::uint64_t g : out.candidate_generators)
    out.normalized_generators.push_back(g / out.d);

  std::ostringstream os;
  os << (out.closed_in_window ? "closed in window; " : "NOT closed in window; ");
  os << "d=" << out.d << "; generators {";
  for (std::size_t i = 0; i < out.candidate_generators.size(); ++i) {
    if (i) os << ",";
    os << out.candidate_generators[i];
  }
  os << "}";
  out.summary = os.str();
  return out;
}

}  // namespace remono
