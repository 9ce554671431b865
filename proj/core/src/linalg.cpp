#include "remono/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace remono {

Rat dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec vec_add(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Rat& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

Vec primitive_direction(const Vec& a) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Int lcm_den = 1, gcd_num = 0;
  for (const Rat& x : a) {
    if (x == 0) continue;
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
  }
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * lcm_den;
  for (const Rat& x : r) {
    if (x == 0) continue;
    gcd_num = boost::multiprecision::gcd(gcd_num, numerator(x));
  }
  if (gcd_num == 0) return r;  // zero vector
  for (Rat& x : r) x /= gcd_num;
  return r;
}

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    Rat inv = Rat(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);  // drop zero rows
  return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

Mat nullspace(const Mat& a, int dim) {
  Mat m = a;
  for (const Vec& row : m)
    if (static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("nullspace: row dimension mismatch");
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(dim, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat basis;
  for (int c = 0; c < dim; ++c) {
    if (is_pivot[c]) continue;
    Vec v(dim, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("solve_linear: size mismatch");
  if (a.empty()) return Vec{};
  const int cols = static_cast<int>(a[0].size());
  Mat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  std::vector<int> pivots = rref(aug);
  Vec x(cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return std::nullopt;  // 0 = 1 row
    x[pivots[i]] = aug[i][cols];
  }
  return x;
}

Vec reduce_mod_span(const Vec& v, const Mat& rref_basis,
                    const std::vector<int>& pivots) {
  Vec r = v;
  for (std::size_t i = 0; i < rref_basis.size(); ++i) {
    Rat f = r[pivots[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * rref_basis[i][j];
  }
  return r;
}

}  // namespace remono
