#include "remono/budget.hpp"

#include <cstdlib>

namespace remono {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

namespace {
int with_override(int def) {
  const char* s = std::getenv("REMONO_GUARD_OVERRIDE");
  if (!s) return def;
  long v = std::strtol(s, nullptr, 10);
  return (v > def) ? static_cast<int>(v) : def;
}
}  // namespace

int Guards::lovasz_vertices() { return with_override(30); }
int Guards::frac_chromatic_vertices() { return with_override(30); }
int Guards::canon_vertices() { return with_override(64); }
int Guards::cone_dimension() { return with_override(8); }

}  // namespace remono
