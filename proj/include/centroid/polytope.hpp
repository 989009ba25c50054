#ifndef CENTROID_POLYTOPE_HPP
#define CENTROID_POLYTOPE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "centroid/errors.hpp"
#include "centroid/linalg.hpp"

namespace centroid {

struct Facet {
  Vec normal;               // unit outward normal
  double offset = 0.0;      // <normal, x> <= offset, offset > 0
  std::vector<int> members; // vertex indices on the facet, cyclic order for n=3
};

// Symmetric convex polytope with origin in the interior. `faces[k]` holds the
// k-dimensional faces (k = 1 .. dim-1) as vertex-index subsets; it is empty
// above dim 3 unless the polytope comes from a built-in family with a known
// lattice.
struct Polytope {
  enum class Family { kGeneral, kCube, kCross };

  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
  std::vector<std::vector<std::vector<int>>> faces;  // indexed by k, 0..dim
  double volume = 0.0;
  Family family = Family::kGeneral;
  double family_param = 0.0;  // cube half-side / cross apex distance
  double max_vertex_norm = 0.0;

  bool has_lattice() const {
    for (int k = 1; k < dim; ++k)
      if (faces.size() <= static_cast<std::size_t>(k) || faces[k].empty())
        return false;
    return dim >= 2;
  }
  const std::vector<std::vector<int>>& edges() const { return faces[1]; }
};

struct GeometricConstants {
  double r0 = 0.0;    // min inradius over faces of dim 1..n-1
  double h0 = 0.0;    // max support over facet normals
  double HK = 0.0;    // max support over the sphere = max vertex norm
  double alpha = 0.0; // 4(n-1) h0 / r0
};

namespace detail {

inline double max_abs_coord(const std::vector<Vec>& pts) {
  double m = 0.0;
  for (const Vec& p : pts)
    for (double x : p) m = std::max(m, std::fabs(x));
  return m;
}

inline int matrix_rank(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> basis;
  for (const Vec& p : pts) {
    Vec v = p;
    for (const Vec& b : basis) {
      double c = dot(v, b);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
    double nv = norm2(v);
    if (nv > tol) basis.push_back((1.0 / nv) * v);
    if (basis.size() == pts[0].size()) break;
  }
  return static_cast<int>(basis.size());
}

// 2D convex hull, counter-clockwise, strict turns only (collinear and
// interior points are dropped). Returns indices into pts.
inline std::vector<int> hull2(const std::vector<Vec>& pts, double scale) {
  const double eps = 1e-12 * scale * scale;
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
    return pts[a][1] < pts[b][1];
  });
  auto turn = [&](int o, int a, int b) {
    return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) -
           (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
  };
  std::vector<int> h;
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t start = h.size();
    const auto& order = idx;
    for (std::size_t ii = 0; ii < order.size(); ++ii) {
      int i = pass == 0 ? order[ii] : order[order.size() - 1 - ii];
      while (h.size() >= start + 2 &&
             turn(h[h.size() - 2], h[h.size() - 1], i) <= eps)
        h.pop_back();
      h.push_back(i);
    }
    h.pop_back();
  }
  return h;
}

struct PlaneFacet {
  Vec normal;
  double offset;
  std::vector<int> members;
};

// Brute-force facet enumeration for point sets in R^3. Quadratic-ish in the
// facet count times M^3 over triples; fine at desk scale.
inline std::vector<PlaneFacet> hull3_facets(const std::vector<Vec>& pts,
                                            double scale) {
  const double tol = 1e-9 * std::max(scale, 1e-30);
  const int m = static_cast<int>(pts.size());
  std::vector<PlaneFacet> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        Vec nrm = cross3(pts[j] - pts[i], pts[k] - pts[i]);
        double nn = norm2(nrm);
        if (nn < tol * scale) continue;
        Vec u = (1.0 / nn) * nrm;
        double hi = -1e300, lo = 1e300;
        for (int l = 0; l < m; ++l) {
          double d = dot(u, pts[l]);
          hi = std::max(hi, d);
          lo = std::min(lo, d);
        }
        double c = dot(u, pts[i]);
        if (hi <= c + tol) {
          c = hi;
        } else if (lo >= c - tol) {
          u = negate(u);
          c = -lo;
        } else {
          continue;
        }
        bool dup = false;
        for (const auto& f : out) {
          if (dot(f.normal, u) > 1.0 - 1e-10 && std::fabs(f.offset - c) < tol) {
            dup = true;
            break;
          }
        }
        if (dup) continue;
        PlaneFacet f;
        f.normal = u;
        f.offset = c;
        for (int l = 0; l < m; ++l)
          if (std::fabs(dot(u, pts[l]) - c) <= tol) f.members.push_back(l);
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

// Cyclic order of a convex facet's vertices, by angle around the centroid in
// the facet plane.
inline void order_facet_cycle(const std::vector<Vec>& pts, Facet& f) {
  if (f.members.size() <= 3) return;
  Vec c(pts[0].size(), 0.0);
  for (int i : f.members) c = c + pts[i];
  c = (1.0 / static_cast<double>(f.members.size())) * c;
  std::vector<Vec> frame = orthonormal_complement(f.normal);
  std::sort(f.members.begin(), f.members.end(), [&](int a, int b) {
    Vec da = pts[a] - c, db = pts[b] - c;
    double aa = std::atan2(dot(da, frame[1]), dot(da, frame[0]));
    double ab = std::atan2(dot(db, frame[1]), dot(db, frame[0]));
    return aa < ab;
  });
}

inline double facet_fan_volume(const std::vector<Vec>& pts, const Facet& f,
                               int dim) {
  if (dim == 2) {
    const Vec& a = pts[f.members[0]];
    const Vec& b = pts[f.members[1]];
    return std::fabs(a[0] * b[1] - a[1] * b[0]) / 2.0;
  }
  double v = 0.0;
  const Vec& a = pts[f.members[0]];
  for (std::size_t t = 1; t + 1 < f.members.size(); ++t) {
    const Vec& b = pts[f.members[t]];
    const Vec& c = pts[f.members[t + 1]];
    double det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                 a[1] * (b[0] * c[2] - b[2] * c[0]) +
                 a[2] * (b[0] * c[1] - b[1] * c[0]);
    v += std::fabs(det) / 6.0;
  }
  return v;
}

inline void finalize(Polytope& p) {
  p.max_vertex_norm = 0.0;
  for (const Vec& v : p.vertices)
    p.max_vertex_norm = std::max(p.max_vertex_norm, norm2(v));
  for (const Facet& f : p.facets) {
    if (!(f.offset > 0.0))
      throw DegenerateInput("origin is not interior to the polytope");
    double hi = -1e300;
    for (const Vec& v : p.vertices) hi = std::max(hi, dot(f.normal, v));
    if (std::fabs(hi - f.offset) > 1e-10 * std::max(1.0, std::fabs(f.offset)))
      throw DegenerateInput("facet offset inconsistent with vertex set");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Built-in families (analytic lattice, any dimension)
// ---------------------------------------------------------------------------

// Cube [-a, a]^n.
inline Polytope make_cube(int n, double a) {
  if (n < 2) throw DomainError("make_cube: n must be >= 2");
  Polytope p;
  p.dim = n;
  p.family = Polytope::Family::kCube;
  p.family_param = a;
  const int m = 1 << n;
  for (int mask = 0; mask < m; ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? a : -a;
    p.vertices.push_back(v);
  }
  for (int i = 0; i < n; ++i) {
    for (int s = -1; s <= 1; s += 2) {
      Facet f;
      f.normal = Vec(n, 0.0);
      f.normal[i] = s;
      f.offset = a;
      for (int mask = 0; mask < m; ++mask)
        if (((mask >> i & 1) ? 1 : -1) == s) f.members.push_back(mask);
      p.facets.push_back(std::move(f));
    }
  }
  // k-faces: fix n-k coordinates to signs, the rest run free
  p.faces.assign(n, {});
  for (int k = 1; k < n; ++k) {
    const int nf = n - k;
    std::vector<int> comb(nf);
    for (int i = 0; i < nf; ++i) comb[i] = i;
    for (;;) {
      for (int smask = 0; smask < (1 << nf); ++smask) {
        std::vector<int> face;
        for (int vmask = 0; vmask < m; ++vmask) {
          bool ok = true;
          for (int i = 0; i < nf && ok; ++i)
            ok = ((vmask >> comb[i]) & 1) == ((smask >> i) & 1);
          if (ok) face.push_back(vmask);
        }
        p.faces[k].push_back(std::move(face));
      }
      int i = nf - 1;
      while (i >= 0 && comb[i] == n - nf + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < nf; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  p.volume = std::pow(2.0 * a, n);
  if (n == 3)
    for (Facet& f : p.facets) detail::order_facet_cycle(p.vertices, f);
  detail::finalize(p);
  return p;
}

// Cross-polytope conv(+-a e_i).
inline Polytope make_cross(int n, double a) {
  if (n < 2) throw DomainError("make_cross: n must be >= 2");
  Polytope p;
  p.dim = n;
  p.family = Polytope::Family::kCross;
  p.family_param = a;
  for (int i = 0; i < n; ++i) {
    for (int s = -1; s <= 1; s += 2) {
      Vec v(n, 0.0);
      v[i] = s * a;
      p.vertices.push_back(v);  // index 2i (s=-1), 2i+1 (s=+1)
    }
  }
  auto vertex_index = [](int axis, int sign) { return 2 * axis + (sign > 0); };
  const double len = std::sqrt(static_cast<double>(n));
  for (int smask = 0; smask < (1 << n); ++smask) {
    Facet f;
    f.normal = Vec(n);
    for (int i = 0; i < n; ++i)
      f.normal[i] = ((smask >> i & 1) ? 1.0 : -1.0) / len;
    f.offset = a / len;
    for (int i = 0; i < n; ++i)
      f.members.push_back(vertex_index(i, (smask >> i & 1) ? 1 : -1));
    p.facets.push_back(std::move(f));
  }
  // k-faces: k+1 distinct axes with signs
  p.faces.assign(n, {});
  for (int k = 1; k < n; ++k) {
    const int na = k + 1;
    std::vector<int> comb(na);
    for (int i = 0; i < na; ++i) comb[i] = i;
    for (;;) {
      for (int smask = 0; smask < (1 << na); ++smask) {
        std::vector<int> face;
        for (int i = 0; i < na; ++i)
          face.push_back(vertex_index(comb[i], (smask >> i & 1) ? 1 : -1));
        p.faces[k].push_back(std::move(face));
      }
      int i = na - 1;
      while (i >= 0 && comb[i] == n - na + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < na; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  double lognf = 0.0;
  for (int i = 2; i <= n; ++i) lognf += std::log(static_cast<double>(i));
  p.volume = std::exp(n * std::log(2.0 * a) - lognf);
  detail::finalize(p);
  return p;
}

// ---------------------------------------------------------------------------
// Construction from points
// ---------------------------------------------------------------------------

inline Polytope build_polytope(const std::vector<Vec>& points) {
  if (points.empty()) throw DegenerateInput("no input points");
  const int n = static_cast<int>(points[0].size());
  if (n < 2 || n > 3)
    throw UnsupportedDimension(
        "build_polytope handles n in {2,3}; use the built-in families above");
  for (const Vec& p : points)
    if (static_cast<int>(p.size()) != n)
      throw DegenerateInput("inconsistent point dimensions");
  const double scale = detail::max_abs_coord(points);
  if (scale == 0.0) throw DegenerateInput("all points at the origin");

  // deduplicate
  std::vector<Vec> pts;
  const double dedup_tol = 1e-9 * scale;
  for (const Vec& p : points) {
    bool dup = false;
    for (const Vec& q : pts)
      if (norm2(p - q) < dedup_tol) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(p);
  }
  if (static_cast<int>(pts.size()) < 2 * n)
    throw DegenerateInput("need at least 2n distinct points");

  if (detail::matrix_rank(pts, 1e-9 * scale) < n)
    throw DegenerateInput("points do not span R^n");

  Polytope p;
  p.dim = n;
  p.faces.assign(n, {});

  if (n == 2) {
    std::vector<int> h = detail::hull2(pts, scale);
    for (int i : h) p.vertices.push_back(pts[i]);
    const int m = static_cast<int>(p.vertices.size());
    for (int i = 0; i < m; ++i) {
      const Vec& a = p.vertices[i];
      const Vec& b = p.vertices[(i + 1) % m];
      Vec e = b - a;
      Vec nrm = normalized(Vec{e[1], -e[0]});  // outward for CCW order
      Facet f;
      f.normal = nrm;
      f.offset = dot(nrm, a);
      f.members = {i, (i + 1) % m};
      p.faces[1].push_back(f.members);
      p.facets.push_back(std::move(f));
    }
  } else {
    auto planes = detail::hull3_facets(pts, scale);
    // a point is extreme iff its active facet normals span R^3
    std::vector<int> vertex_of(pts.size(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<Vec> active;
      for (const auto& f : planes)
        if (std::find(f.members.begin(), f.members.end(), static_cast<int>(i)) !=
            f.members.end())
          active.push_back(f.normal);
      if (active.size() >= 3 && detail::matrix_rank(active, 1e-8) == 3) {
        vertex_of[i] = static_cast<int>(p.vertices.size());
        p.vertices.push_back(pts[i]);
      }
    }
    for (const auto& pf : planes) {
      Facet f;
      f.normal = pf.normal;
      f.offset = pf.offset;
      for (int i : pf.members)
        if (vertex_of[i] >= 0) f.members.push_back(vertex_of[i]);
      if (f.members.size() < 3)
        throw DegenerateInput("facet with fewer than 3 extreme vertices");
      detail::order_facet_cycle(p.vertices, f);
      p.facets.push_back(std::move(f));
    }
    p.faces[2].clear();
    std::set<std::pair<int, int>> edge_set;
    for (const Facet& f : p.facets) {
      p.faces[2].push_back(f.members);
      const int m = static_cast<int>(f.members.size());
      for (int i = 0; i < m; ++i) {
        int a = f.members[i], b = f.members[(i + 1) % m];
        edge_set.insert({std::min(a, b), std::max(a, b)});
      }
    }
    for (const auto& e : edge_set) p.faces[1].push_back({e.first, e.second});
  }

  // symmetry concerns the extreme points: interior input points may lack a
  // mirror partner and are simply dropped by the hull
  const double sym_tol = 2e-12 * scale;
  for (const Vec& v : p.vertices) {
    bool found = false;
    for (const Vec& w : p.vertices)
      if (norm2(v + w) <= sym_tol) {
        found = true;
        break;
      }
    if (!found)
      throw NotSymmetric("vertex set is not symmetric about the origin");
  }

  p.volume = 0.0;
  for (const Facet& f : p.facets)
    p.volume += detail::facet_fan_volume(p.vertices, f, n);
  detail::finalize(p);
  return p;
}

// ---------------------------------------------------------------------------
// Basic operations
// ---------------------------------------------------------------------------

inline void require_unit(const Vec& theta) {
  if (std::fabs(norm2(theta) - 1.0) > 1e-12)
    throw DomainError("direction must be a unit vector");
}

inline double support(const Polytope& p, const Vec& theta) {
  require_unit(theta);
  double h = -1e300;
  for (const Vec& v : p.vertices) h = std::max(h, dot(v, theta));
  return h;
}

inline double volume(const Polytope& p) { return p.volume; }

inline Polytope scaled(const Polytope& p, double lambda) {
  Polytope q = p;
  for (Vec& v : q.vertices) v = lambda * v;
  for (Facet& f : q.facets) f.offset *= lambda;
  q.volume = p.volume * std::pow(lambda, p.dim);
  q.family_param = p.family_param * lambda;
  q.max_vertex_norm = p.max_vertex_norm * lambda;
  return q;
}

inline Polytope normalize_unit_volume(const Polytope& p) {
  return scaled(p, std::pow(p.volume, -1.0 / p.dim));
}

inline Polytope polar(const Polytope& p) {
  if (p.family == Polytope::Family::kCube)
    return make_cross(p.dim, 1.0 / p.family_param);
  if (p.family == Polytope::Family::kCross)
    return make_cube(p.dim, 1.0 / p.family_param);
  if (p.dim > 3)
    throw UnsupportedDimension("polar: general polytopes only for n <= 3");
  std::vector<Vec> duals;
  duals.reserve(p.facets.size());
  for (const Facet& f : p.facets) duals.push_back((1.0 / f.offset) * f.normal);
  return build_polytope(duals);
}

// g(theta, s): number of vertices at height >= s (heights within
// 1e-12 * H_K of s count as above).
inline int vertex_count_above(const Polytope& p, const Vec& theta, double s) {
  require_unit(theta);
  const double tol = 1e-12 * p.max_vertex_norm;
  int count = 0;
  for (const Vec& v : p.vertices)
    if (dot(v, theta) >= s - tol) ++count;
  return count;
}

// Second-largest vertex height; requires the maximum to be uniquely
// attained (tolerance 1e-10 * H_K), i.e. theta outside B_K.
inline double second_support(const Polytope& p, const Vec& theta) {
  require_unit(theta);
  double best = -1e300, second = -1e300;
  for (const Vec& v : p.vertices) {
    double h = dot(v, theta);
    if (h > best) {
      second = best;
      best = h;
    } else if (h > second) {
      second = h;
    }
  }
  if (best - second <= 1e-10 * p.max_vertex_norm)
    throw BadDirection("support maximum is tied: theta lies in B_K");
  return second;
}

}  // namespace centroid

#endif
