#ifndef CENTROID_GEOMETRIC_CONSTANTS_HPP
#define CENTROID_GEOMETRIC_CONSTANTS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "centroid/errors.hpp"
#include "centroid/linalg.hpp"
#include "centroid/polytope.hpp"
#include "centroid/rng.hpp"

namespace centroid {

namespace detail {

// Chebyshev inradius of {x : <a_j, x> <= b_j} in R^k with unit normals a_j:
// maximize r subject to <a_j, x> + r <= b_j. The optimum sits on k+1 active
// constraints, so enumerate bases; ties resolve to the lowest index set.
inline double chebyshev_inradius(const std::vector<Vec>& normals,
                                 const std::vector<double>& offsets, int k) {
  const int m = static_cast<int>(normals.size());
  if (m < k + 1) throw LPFailure("chebyshev_inradius: too few constraints");
  double scale = 1.0;
  for (double b : offsets) scale = std::max(scale, std::fabs(b));
  const double feas_tol = 1e-9 * scale;

  double best_r = -1.0;
  std::vector<int> comb(k + 1);
  for (int i = 0; i <= k; ++i) comb[i] = i;
  for (;;) {
    std::vector<double> A((k + 1) * (k + 1)), rhs(k + 1);
    for (int r = 0; r <= k; ++r) {
      for (int c = 0; c < k; ++c) A[r * (k + 1) + c] = normals[comb[r]][c];
      A[r * (k + 1) + k] = 1.0;
      rhs[r] = offsets[comb[r]];
    }
    if (solve_dense(A, rhs, k + 1)) {
      double r_cand = rhs[k];
      if (r_cand > best_r + 1e-12 * scale) {
        bool feasible = true;
        for (int j = 0; j < m && feasible; ++j) {
          double lhs = r_cand;
          for (int c = 0; c < k; ++c) lhs += normals[j][c] * rhs[c];
          feasible = lhs <= offsets[j] + feas_tol;
        }
        if (feasible) best_r = r_cand;
      }
    }
    int i = k;
    while (i >= 0 && comb[i] == m - (k + 1) + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j <= k; ++j) comb[j] = comb[j - 1] + 1;
  }
  if (best_r < 0.0) throw LPFailure("chebyshev_inradius: no feasible basis");
  return best_r;
}

// Inradius of a face (given by vertex indices) within its affine hull.
inline double face_inradius(const Polytope& p, const std::vector<int>& face,
                            int k) {
  Vec c(p.dim, 0.0);
  for (int i : face) c = c + p.vertices[i];
  c = (1.0 / static_cast<double>(face.size())) * c;

  std::vector<Vec> basis;
  const double tol = 1e-10 * std::max(p.max_vertex_norm, 1e-30);
  for (int i : face) {
    Vec v = p.vertices[i] - c;
    for (const Vec& b : basis) {
      double d = dot(v, b);
      for (int j = 0; j < p.dim; ++j) v[j] -= d * b[j];
    }
    double nv = norm2(v);
    if (nv > tol) basis.push_back((1.0 / nv) * v);
  }
  if (static_cast<int>(basis.size()) != k)
    throw LPFailure("face does not span its nominal dimension");

  std::vector<Vec> local;
  for (int i : face) {
    Vec x(k);
    Vec d = p.vertices[i] - c;
    for (int j = 0; j < k; ++j) x[j] = dot(d, basis[j]);
    local.push_back(std::move(x));
  }

  std::vector<Vec> normals;
  std::vector<double> offsets;
  if (k == 1) {
    double lo = 1e300, hi = -1e300;
    for (const Vec& x : local) {
      lo = std::min(lo, x[0]);
      hi = std::max(hi, x[0]);
    }
    normals = {{1.0}, {-1.0}};
    offsets = {hi, -lo};
  } else if (k == 2) {
    std::vector<int> h = hull2(local, std::max(1e-30, max_abs_coord(local)));
    const int m = static_cast<int>(h.size());
    for (int i = 0; i < m; ++i) {
      const Vec& a = local[h[i]];
      const Vec& b = local[h[(i + 1) % m]];
      Vec e = b - a;
      Vec nrm = normalized(Vec{e[1], -e[0]});
      normals.push_back(nrm);
      offsets.push_back(dot(nrm, a));
    }
  } else if (k == 3) {
    auto planes = hull3_facets(local, std::max(1e-30, max_abs_coord(local)));
    for (const auto& f : planes) {
      normals.push_back(f.normal);
      offsets.push_back(f.offset);
    }
  } else {
    throw UnsupportedDimension("face inradius beyond k = 3");
  }
  return chebyshev_inradius(normals, offsets, k);
}

}  // namespace detail

inline GeometricConstants geometric_constants(const Polytope& p) {
  if (!p.has_lattice())
    throw UnsupportedDimension("geometric_constants needs the face lattice");
  GeometricConstants g;
  g.r0 = 1e300;
  for (int k = 1; k < p.dim; ++k)
    for (const auto& face : p.faces[k])
      g.r0 = std::min(g.r0, detail::face_inradius(p, face, k));
  g.h0 = 0.0;
  for (const Facet& f : p.facets) g.h0 = std::max(g.h0, support(p, f.normal));
  g.HK = p.max_vertex_norm;
  g.alpha = 4.0 * (p.dim - 1) * g.h0 / g.r0;
  return g;
}

// ---------------------------------------------------------------------------
// Distance to the tied-support direction set B_K
// ---------------------------------------------------------------------------

// B_K is the union, over faces F with dim F >= 1, of N(F) cap S^{n-1} where
// N(F) is the cone spanned by the unit normals of the facets containing F.
// Each cell is precomputed as its generator list.
inline std::vector<std::vector<Vec>> bad_set_cells(const Polytope& p) {
  if (!p.has_lattice())
    throw UnsupportedDimension("bad set needs the face lattice");
  std::vector<std::vector<int>> facet_sorted;
  for (const Facet& f : p.facets) {
    auto s = f.members;
    std::sort(s.begin(), s.end());
    facet_sorted.push_back(std::move(s));
  }
  std::vector<std::vector<Vec>> cells;
  for (int k = 1; k < p.dim; ++k) {
    for (const auto& face : p.faces[k]) {
      auto fs = face;
      std::sort(fs.begin(), fs.end());
      std::vector<Vec> gens;
      for (std::size_t j = 0; j < p.facets.size(); ++j)
        if (std::includes(facet_sorted[j].begin(), facet_sorted[j].end(),
                          fs.begin(), fs.end()))
          gens.push_back(p.facets[j].normal);
      if (!gens.empty()) cells.push_back(std::move(gens));
    }
  }
  return cells;
}

namespace detail {

// max {<theta, x> : x in cone(gens), |x| = 1}. Exact via basis enumeration
// when the cone projection of theta is nonzero; cells more than 90 degrees
// away fall back to the generator maximum, which cannot affect a minimum
// over all cells because antipodal facet-normal cells stay within 90 degrees.
inline double cone_max_inner(const Vec& theta, const std::vector<Vec>& gens) {
  const int g = static_cast<int>(gens.size());
  double best = -1e300;
  for (const Vec& u : gens) best = std::max(best, dot(theta, u));
  for (int size = 2; size <= g; ++size) {
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    for (;;) {
      std::vector<double> G(size * size), c(size);
      for (int r = 0; r < size; ++r) {
        c[r] = dot(theta, gens[comb[r]]);
        for (int s = 0; s < size; ++s)
          G[r * size + s] = dot(gens[comb[r]], gens[comb[s]]);
      }
      if (solve_dense(G, c, size)) {
        bool nonneg = true;
        for (double l : c) nonneg = nonneg && l >= -1e-12;
        if (nonneg) {
          Vec x(theta.size(), 0.0);
          for (int r = 0; r < size; ++r)
            for (std::size_t d = 0; d < x.size(); ++d)
              x[d] += c[r] * gens[comb[r]][d];
          double nx = norm2(x);
          if (nx > 1e-14) best = std::max(best, nx);
        }
      }
      int i = size - 1;
      while (i >= 0 && comb[i] == g - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return std::min(best, 1.0);
}

inline double distance_to_cells(const Vec& theta,
                                const std::vector<std::vector<Vec>>& cells) {
  double best_inner = -1e300;
  for (const auto& gens : cells)
    best_inner = std::max(best_inner, cone_max_inner(theta, gens));
  double chord2 = std::max(0.0, 2.0 - 2.0 * best_inner);
  if (chord2 < 1e-15) return 0.0;
  return std::sqrt(chord2);
}

}  // namespace detail

inline double distance_to_bad(const Polytope& p, const Vec& theta) {
  require_unit(theta);
  return detail::distance_to_cells(theta, bad_set_cells(p));
}

// ---------------------------------------------------------------------------
// Lemma-1 style check: sup of s_theta / h(theta) off a delta-neighbourhood
// of B_K against 1 - delta r0 / (2 h0)
// ---------------------------------------------------------------------------

struct Lemma1Result {
  double observed_sup = 0.0;
  double bound = 0.0;
  bool pass = false;
  int accepted = 0;
};

inline Lemma1Result verify_lemma1(const Polytope& p, double delta, int m,
                                  std::uint64_t seed) {
  if (m < 1) throw DomainError("verify_lemma1: m must be >= 1");
  GeometricConstants g = geometric_constants(p);
  if (!(delta > 0.0 && delta <= g.h0 / g.HK))
    throw DomainError("verify_lemma1: delta must lie in (0, h0/HK]");
  auto cells = bad_set_cells(p);
  SphereSampler sampler(p.dim, seed);
  Lemma1Result r;
  r.bound = 1.0 - delta * g.r0 / (2.0 * g.h0);
  r.observed_sup = -1e300;
  for (int i = 0; i < m; ++i) {
    Vec theta = sampler.next();
    if (detail::distance_to_cells(theta, cells) < delta) continue;
    double ratio = second_support(p, theta) / support(p, theta);
    r.observed_sup = std::max(r.observed_sup, ratio);
    ++r.accepted;
  }
  if (r.accepted == 0)
    throw NoSamples("verify_lemma1: every sampled direction fell in A(delta)");
  r.pass = r.observed_sup <= r.bound + 1e-12;
  return r;
}

}  // namespace centroid

#endif
