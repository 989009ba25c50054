#ifndef CENTROID_SECTIONS_HPP
#define CENTROID_SECTIONS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "centroid/errors.hpp"
#include "centroid/linalg.hpp"
#include "centroid/polytope.hpp"

namespace centroid {

// One polynomial piece of a section profile on [lo, hi], stored in powers of
// (hi - t). The shifted basis keeps the piece accurate near its right end,
// which is where t^p weights concentrate.
struct ProfilePiece {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coeffs;  // f(t) = sum_k coeffs[k] (hi - t)^k

  double eval(double t) const {
    double s = hi - t;
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * s + coeffs[k];
    return v;
  }
  // integral of f over [a, b] within the piece
  double integral(double a, double b) const {
    double sa = hi - a, sb = hi - b;
    double v = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      v += coeffs[k] * (std::pow(sa, k + 1.0) - std::pow(sb, k + 1.0)) /
           (k + 1.0);
    return v;
  }
};

// Exact piecewise polynomial t -> |K cap (theta-perp + t theta)| on [0, h].
struct SectionProfile {
  Vec direction;
  int dim = 0;
  double h = 0.0;
  std::vector<double> breakpoints;  // 0 = b_0 < ... < b_m = h
  std::vector<ProfilePiece> pieces;
  std::optional<double> s_theta;  // second support when theta is in G_K
};

namespace detail {

// Vertices of the slice at height t, in an orthonormal frame of theta-perp.
inline std::vector<Vec> slice_points(const Polytope& p,
                                     const std::vector<Vec>& frame,
                                     const std::vector<double>& heights,
                                     double t) {
  const double tol = 1e-10 * std::max(p.max_vertex_norm, 1e-30);
  std::vector<Vec> pts;
  auto push = [&](const Vec& w) {
    Vec x(frame.size());
    for (std::size_t j = 0; j < frame.size(); ++j) x[j] = dot(w, frame[j]);
    pts.push_back(std::move(x));
  };
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    if (std::fabs(heights[i] - t) <= tol) push(p.vertices[i]);
  for (const auto& e : p.edges()) {
    double ha = heights[e[0]], hb = heights[e[1]];
    if ((ha - t) * (hb - t) < 0.0 && std::fabs(hb - ha) > tol) {
      double lam = (t - ha) / (hb - ha);
      push(p.vertices[e[0]] + lam * (p.vertices[e[1]] - p.vertices[e[0]]));
    }
  }
  return pts;
}

inline double polygon_area(const std::vector<Vec>& pts, const std::vector<int>& h) {
  double a = 0.0;
  const int m = static_cast<int>(h.size());
  for (int i = 0; i < m; ++i) {
    const Vec& u = pts[h[i]];
    const Vec& v = pts[h[(i + 1) % m]];
    a += u[0] * v[1] - u[1] * v[0];
  }
  return 0.5 * std::fabs(a);
}

inline double slice_volume_local(std::vector<Vec> pts, int k) {
  if (k == 1) {
    if (pts.size() < 2) return 0.0;
    double lo = 1e300, hi = -1e300;
    for (const Vec& x : pts) {
      lo = std::min(lo, x[0]);
      hi = std::max(hi, x[0]);
    }
    return std::max(0.0, hi - lo);
  }
  if (k == 2) {
    if (pts.size() < 3) return 0.0;
    std::vector<int> h = hull2(pts, std::max(1e-30, max_abs_coord(pts)));
    if (h.size() < 3) return 0.0;
    return polygon_area(pts, h);
  }
  if (k == 3) {
    if (pts.size() < 4) return 0.0;
    // recentre at the vertex mean so the fan apex is interior
    Vec c(3, 0.0);
    for (const Vec& x : pts) c = c + x;
    c = (1.0 / static_cast<double>(pts.size())) * c;
    for (Vec& x : pts) x = x - c;
    auto planes = hull3_facets(pts, std::max(1e-30, max_abs_coord(pts)));
    double v = 0.0;
    for (const auto& pf : planes) {
      Facet f;
      f.normal = pf.normal;
      f.offset = pf.offset;
      f.members = pf.members;
      order_facet_cycle(pts, f);
      v += facet_fan_volume(pts, f, 3);
    }
    return v;
  }
  throw UnsupportedDimension("slice volume beyond three dimensions");
}

}  // namespace detail

// Exact section volume at a single height, by slicing edges and hulling in
// the theta-perp frame. Also used directly by tests as a reference path.
inline double section_volume_at(const Polytope& p, const Vec& theta, double t) {
  require_unit(theta);
  std::vector<Vec> frame = orthonormal_complement(theta);
  std::vector<double> heights(p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    heights[i] = dot(p.vertices[i], theta);
  auto pts = detail::slice_points(p, frame, heights, t);
  return detail::slice_volume_local(std::move(pts), p.dim - 1);
}

inline SectionProfile section_profile(const Polytope& p, const Vec& theta) {
  require_unit(theta);
  if (p.dim > 4)
    throw UnsupportedDimension("section profiles supported for n <= 4");
  SectionProfile prof;
  prof.direction = theta;
  prof.dim = p.dim;

  std::vector<double> heights(p.vertices.size());
  double h = -1e300;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    heights[i] = dot(p.vertices[i], theta);
    h = std::max(h, heights[i]);
  }
  prof.h = h;

  const double merge_tol = 1e-10 * p.max_vertex_norm;
  std::vector<double> bp;
  for (double v : heights)
    if (v > -merge_tol && v < h + merge_tol) bp.push_back(std::min(v, h));
  std::sort(bp.begin(), bp.end());
  std::vector<double> merged;
  for (double v : bp) {
    if (merged.empty() || v - merged.back() > merge_tol)
      merged.push_back(v);
  }
  if (merged.empty() || merged.front() > merge_tol)
    merged.insert(merged.begin(), 0.0);
  else
    merged.front() = 0.0;
  merged.back() = h;
  prof.breakpoints = merged;

  try {
    prof.s_theta = second_support(p, theta);
  } catch (const BadDirection&) {
    prof.s_theta.reset();
  }

  std::vector<Vec> frame = orthonormal_complement(theta);
  const int n = p.dim;
  for (std::size_t j = 0; j + 1 < merged.size(); ++j) {
    const double a = merged[j], b = merged[j + 1];
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    ProfilePiece piece;
    piece.lo = a;
    piece.hi = b;
    // n interior Chebyshev nodes recover the degree <= n-1 polynomial exactly
    std::vector<double> nodes(n), values(n);
    for (int i = 0; i < n; ++i) {
      nodes[i] = mid + rad * std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * n));
      auto pts = detail::slice_points(p, frame, heights, nodes[i]);
      values[i] = detail::slice_volume_local(std::move(pts), n - 1);
    }
    std::vector<double> V(n * n), rhs = values;
    for (int r = 0; r < n; ++r) {
      double s = b - nodes[r];
      double pw = 1.0;
      for (int c = 0; c < n; ++c) {
        V[r * n + c] = pw;
        pw *= s;
      }
    }
    if (!solve_dense(V, rhs, n))
      throw InterpolationInstability("singular interpolation system");
    // drop coefficients whose whole-piece contribution is rounding noise;
    // cone tails then come out as exact monomials in (hi - t)
    double vscale = 0.0;
    for (double val : values) vscale = std::max(vscale, std::fabs(val));
    double len = b - a, lp = 1.0;
    for (int k = 0; k < n; ++k) {
      if (std::fabs(rhs[k]) * lp <= 1e-11 * vscale) rhs[k] = 0.0;
      lp *= len;
    }
    piece.coeffs = rhs;

    // probe at a non-node point; disagreement signals breakpoint trouble
    double probe_t = a + 0.37 * (b - a);
    auto pts = detail::slice_points(p, frame, heights, probe_t);
    double ref = detail::slice_volume_local(std::move(pts), n - 1);
    double fit = piece.eval(probe_t);
    double fscale = std::max({std::fabs(values[0]), std::fabs(ref), 1e-30});
    if (std::fabs(fit - ref) > 1e-7 * fscale)
      throw InterpolationInstability("piece polynomial fails the probe check");
    prof.pieces.push_back(std::move(piece));
  }
  return prof;
}

inline double eval_profile(const SectionProfile& prof, double t) {
  const double slack = 1e-12 * std::max(prof.h, 1.0);
  if (t < -slack || t > prof.h + slack)
    throw OutOfRange("eval_profile: t outside [0, h]");
  t = std::clamp(t, 0.0, prof.h);
  std::size_t j = 0;
  while (j + 1 < prof.pieces.size() && t > prof.pieces[j].hi) ++j;
  return prof.pieces[j].eval(t);
}

// integral of f over [0, h] (exact piecewise integration)
inline double integrate_profile(const SectionProfile& prof) {
  double s = 0.0;
  for (const auto& piece : prof.pieces) s += piece.integral(piece.lo, piece.hi);
  return s;
}

}  // namespace centroid

#endif
