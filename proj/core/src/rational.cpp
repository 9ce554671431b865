#include "remono/rational.hpp"

#include <cctype>

namespace remono {

std::string rat_to_string(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rat(Int(s));
    }
    std::string p = s.substr(0, slash);
    std::string q = s.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) return std::nullopt;
    Int den(q);
    if (den == 0) return std::nullopt;
    return Rat(Int(p), den);
  } catch (...) {
    return std::nullopt;
  }
}

Rat rat_from_double(double x) {
  mpq_t q;
  mpq_init(q);
  mpq_set_d(q, x);
  Rat r(q);
  mpq_clear(q);
  return r;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

std::string ext_rat_to_string(const ExtRat& r) {
  return r.infinite ? "inf" : rat_to_string(r.value);
}

}  // namespace remono
