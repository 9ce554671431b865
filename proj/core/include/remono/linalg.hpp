#ifndef REMONO_LINALG_HPP
#define REMONO_LINALG_HPP

#include "remono/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace remono {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major, rows of equal length

Rat dot(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& a);
bool vec_is_zero(const Vec& a);

// Scales a nonzero rational vector by a positive rational so entries become
// coprime integers; direction is preserved (no sign flip). Zero stays zero.
Vec primitive_direction(const Vec& a);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// Basis of { v : A v = 0 }, rows returned in RREF-derived canonical form.
Mat nullspace(const Mat& a, int dim);

// One solution of A x = b, if consistent.
std::optional<Vec> solve_linear(const Mat& a, const Vec& b);

// Reduce v modulo span(rows of rref_basis) where rref_basis is in RREF with
// the given pivot columns: zeroes out v's pivot coordinates. Canonical coset
// representative used to deduplicate rays modulo a lineality space.
Vec reduce_mod_span(const Vec& v, const Mat& rref_basis,
                    const std::vector<int>& pivots);

}  // namespace remono

#endif
