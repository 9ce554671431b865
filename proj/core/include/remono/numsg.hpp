#pragma once

// Additive submonoids of the natural numbers: gcd normalization onto a
// generator set with gcd 1, membership, the finite gap set and its maximum,
// and structural analysis of truncated annihilator windows.

#include <cstdint>
#include <string>
#include <vector>

namespace remono {

struct NumSubmonoid {
  std::vector<std::uint64_t> generators;  // as given, sorted, deduplicated
  std::uint64_t d = 1;                    // gcd of the generators
  std::vector<std::uint64_t> normalized;  // generators / d, gcd exactly 1
};

// Throws std::invalid_argument on an empty set or a zero generator.
NumSubmonoid normalize(const std::vector<std::uint64_t>& generators);

struct GapsReport {
  std::vector<std::uint64_t> gaps;  // complement of the normalized submonoid
  std::int64_t frobenius = -1;      // largest gap, -1 when there is none
};

// Gap set of the normalized submonoid (requires gcd 1, guaranteed by
// normalize). Dynamic programming runs until a full run of min-generator
// consecutive members appears, capped at 10 times the product of the two
// smallest generators. Throws std::logic_error if the cap is hit first
// (cannot happen for gcd-1 inputs at sane sizes) and std::invalid_argument
// if the raw overload receives generators with gcd != 1.
GapsReport gaps(const NumSubmonoid& s);
GapsReport gaps(const std::vector<std::uint64_t>& coprime_generators);

// Exact decision n in S for the original (unnormalized) submonoid.
bool membership(const NumSubmonoid& s, std::uint64_t n);

struct AnnihilatorAnalysis {
  bool contains_zero = false;
  bool closed_in_window = true;  // additive closure within the truncation
  std::vector<std::pair<std::uint64_t, std::uint64_t>> violations;  // a+b missing
  std::uint64_t d = 0;                              // gcd of the nonzero members
  std::vector<std::uint64_t> candidate_generators;  // minimal within the window
  std::vector<std::uint64_t> normalized_generators;
  std::string summary;
};

// Structural analysis of a truncated member set (for example, the output of
// an annihilator scan up to `window`): checks additive closure inside the
// window and infers the generator set consistent with what was seen.
AnnihilatorAnalysis analyze_annihilator(const std::vector<std::uint64_t>& points,
                                        std::uint64_t window);

}  // namespace remono
