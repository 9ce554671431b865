#include "remono/dd.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace remono {

namespace {

// Canonical representative of a ray direction modulo the lineality space.
Vec canonical_ray(const Vec& r, const Mat& lin, const std::vector<int>& piv) {
  return primitive_direction(reduce_mod_span(r, lin, piv));
}

// r is an extreme ray of {v : rows·v >= 0} with lineality dimension ldim
// iff the rows active at r have rank dim - ldim - 1.
bool is_extreme(const Vec& r, const Mat& rows, int dim, int ldim) {
  Mat active;
  for (const Vec& a : rows)
    if (dot(a, r) == 0) active.push_back(a);
  return rank(std::move(active)) == dim - ldim - 1;
}

}  // namespace

DDResult extreme_rays(const Mat& rows, int dim) {
  for (const Vec& a : rows)
    if (static_cast<int>(a.size()) != dim)
      throw std::invalid_argument("extreme_rays: row dimension mismatch");

  Mat processed;
  Mat lin = nullspace(processed, dim);
  std::vector<int> piv = rref(lin);
  for (Vec& l : lin) l = primitive_direction(l);
  Mat rays;

  for (const Vec& a : rows) {
    processed.push_back(a);
    Mat new_lin = nullspace(processed, dim);
    std::vector<int> new_piv = rref(new_lin);
    for (Vec& l : new_lin) l = primitive_direction(l);

    // Generators of the previous cone, lineality spelled out as +/- pairs.
    Mat gens = rays;
    for (const Vec& l : lin) {
      gens.push_back(l);
      gens.push_back(vec_scale(Rat(-1), l));
    }

    Mat plus, zero, minus;
    std::vector<Rat> pv, mv;
    for (const Vec& g : gens) {
      Rat s = dot(a, g);
      if (s > 0) { plus.push_back(g); pv.push_back(s); }
      else if (s < 0) { minus.push_back(g); mv.push_back(s); }
      else zero.push_back(g);
    }

    Mat candidates = plus;
    candidates.insert(candidates.end(), zero.begin(), zero.end());
    for (std::size_t i = 0; i < plus.size(); ++i)
      for (std::size_t j = 0; j < minus.size(); ++j)
        candidates.push_back(
            vec_sub(vec_scale(pv[i], minus[j]), vec_scale(mv[j], plus[i])));

    const int ldim = static_cast<int>(new_lin.size());
    std::set<Vec> seen;
    Mat new_rays;
    for (const Vec& c : candidates) {
      Vec r = canonical_ray(c, new_lin, new_piv);
      if (vec_is_zero(r) || seen.count(r)) continue;
      seen.insert(r);
      if (is_extreme(r, processed, dim, ldim)) new_rays.push_back(std::move(r));
    }
    std::sort(new_rays.begin(), new_rays.end());
    rays = std::move(new_rays);
    lin = std::move(new_lin);
    piv = std::move(new_piv);
  }
  return DDResult{std::move(lin), std::move(piv), std::move(rays)};
}

Mat facets_of(const Mat& rays, const Mat& lins, int dim) {
  Mat rows = rays;
  for (const Vec& l : lins) {
    rows.push_back(l);
    rows.push_back(vec_scale(Rat(-1), l));
  }
  DDResult dual = extreme_rays(rows, dim);
  Mat facets = dual.rays;
  for (const Vec& l : dual.lineality) {
    facets.push_back(l);
    facets.push_back(vec_scale(Rat(-1), l));
  }
  return facets;
}

}  // namespace remono
