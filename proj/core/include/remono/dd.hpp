#ifndef REMONO_DD_HPP
#define REMONO_DD_HPP

#include "remono/linalg.hpp"

namespace remono {

// Extreme structure of a polyhedral cone C = { v : row·v >= 0 for all rows }.
// The cone is span(lineality) + cone(rays); rays are the extreme rays of C,
// each reduced modulo the lineality space and scaled to a primitive integer
// direction (no sign flips: a ray and its negative are different rays).
struct DDResult {
  Mat lineality;                 // RREF basis, primitive rows
  std::vector<int> lineality_pivots;
  Mat rays;
};

// Incremental double description over exact rationals.
DDResult extreme_rays(const Mat& rows, int dim);

// Halfspace description of span(lins) + cone(rays): returns rows r with
// r·v >= 0 describing exactly that cone (equalities appear as +/- row pairs).
Mat facets_of(const Mat& rays, const Mat& lins, int dim);

}  // namespace remono

#endif
