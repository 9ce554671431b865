#ifndef REMONO_RATIONAL_HPP
#define REMONO_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace remono {

// Exact rational scalar used everywhere an order or a certificate is decided.
// Floating point appears only in the semidefinite solver and in entropy
// values, and always travels with an explicit tolerance.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// Serialized form is always "p/q" (or "p" when q == 1); never decimals.
std::string rat_to_string(const Rat& r);

// Accepts "p", "p/q", optional leading '-' on either part. Returns nullopt on
// malformed input instead of throwing, so file loaders can report line numbers.
std::optional<Rat> rat_from_string(const std::string& s);

// Exact conversion of a double (doubles are binary rationals).
Rat rat_from_double(double x);

double rat_to_double(const Rat& r);

// A nonnegative rational extended with +infinity, for rates and bounds.
struct ExtRat {
  Rat value;       // meaningful only when finite
  bool infinite = false;

  static ExtRat infinity() { return ExtRat{Rat(0), true}; }
  static ExtRat of(const Rat& r) { return ExtRat{r, false}; }

  bool operator==(const ExtRat& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator<(const ExtRat& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }
};

std::string ext_rat_to_string(const ExtRat& r);

}  // namespace remono

#endif
