#ifndef CENTROID_LINALG_HPP
#define CENTROID_LINALG_HPP

// Small dense helpers for vectors in R^n, n <= 4. Everything here is
// dimension-generic but tuned for tiny sizes; no external linear algebra
// is worth pulling in for 4x4 solves.

#include <cmath>
#include <cstddef>
#include <vector>

#include "centroid/errors.hpp"

namespace centroid {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator*(double s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline Vec negate(const Vec& a) { return -1.0 * a; }

inline Vec normalized(const Vec& a) {
  double n = norm2(a);
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  return (1.0 / n) * a;
}

inline Vec cross3(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// Solves A x = b in place by Gaussian elimination with partial pivoting.
// A is row-major m x m. Returns false when the pivot collapses.
inline bool solve_dense(std::vector<double>& A, std::vector<double>& b,
                        std::size_t m, double pivot_tol = 1e-13) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    double best = std::fabs(A[col * m + col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      double v = std::fabs(A[r * m + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < pivot_tol) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(A[piv * m + c], A[col * m + c]);
      std::swap(b[piv], b[col]);
    }
    double d = A[col * m + col];
    for (std::size_t r = col + 1; r < m; ++r) {
      double f = A[r * m + col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) A[r * m + c] -= f * A[col * m + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t col = m; col-- > 0;) {
    double s = b[col];
    for (std::size_t c = col + 1; c < m; ++c) s -= A[col * m + c] * b[c];
    b[col] = s / A[col * m + col];
  }
  return true;
}

// Orthonormal basis of the hyperplane orthogonal to the unit vector u,
// by Gram-Schmidt against the best-conditioned coordinate axes.
inline std::vector<Vec> orthonormal_complement(const Vec& u) {
  const std::size_t n = u.size();
  std::vector<Vec> basis;
  basis.reserve(n - 1);
  std::vector<Vec> cand;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    cand.push_back(e);
  }
  for (std::size_t i = 0; i < n && basis.size() < n - 1; ++i) {
    Vec v = cand[i];
    double cu = dot(v, u);
    for (std::size_t k = 0; k < n; ++k) v[k] -= cu * u[k];
    for (const Vec& b : basis) {
      double cb = dot(v, b);
      for (std::size_t k = 0; k < n; ++k) v[k] -= cb * b[k];
    }
    double nv = norm2(v);
    if (nv > 1e-8) basis.push_back((1.0 / nv) * v);
  }
  if (basis.size() != n - 1)
    throw FrameFailure("could not build an orthonormal frame");
  return basis;
}

// Deterministic pairwise (tree) summation; the result depends only on the
// element order, never on how the values were produced.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                           std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v, 0, v.size());
}

}  // namespace centroid

#endif
