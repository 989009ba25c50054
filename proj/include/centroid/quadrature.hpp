#ifndef CENTROID_QUADRATURE_HPP
#define CENTROID_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "centroid/errors.hpp"
#include "centroid/linalg.hpp"
#include "centroid/special_functions.hpp"

namespace centroid {

// Directions and weights on S^{n-1}; weights sum to the full surface measure.
// Nodes are antipodally closed. `hints` (n = 2 only) are angles where the
// integrand may kink; panel boundaries are pinned there.
struct QuadratureRule {
  int dim = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  std::string kind;
  int resolution = 0;
  std::vector<double> hints;
  std::uint64_t seed = 0;

  double weight_sum() const { return pairwise_sum(weights); }
};

namespace detail {

inline void build_angular(QuadratureRule& rule, int resolution,
                          std::vector<double> hints) {
  rule.kind = "angular-composite";
  const double two_pi = 2.0 * M_PI;
  // close the hint set under the antipodal map and wrap into [0, 2pi)
  std::vector<double> kinks;
  for (double a : hints) {
    double b = std::fmod(a, two_pi);
    if (b < 0) b += two_pi;
    kinks.push_back(b);
    double c = std::fmod(b + M_PI, two_pi);
    kinks.push_back(c);
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end(),
                          [](double a, double b) { return b - a < 1e-12; }),
              kinks.end());
  if (!kinks.empty() && two_pi - kinks.back() + kinks.front() < 1e-12)
    kinks.pop_back();

  std::vector<double> angles;
  std::vector<double> weights;
  auto add_panel = [&](double a, double len, int sub) {
    // composite Simpson with `sub` (even) subintervals; the closing endpoint
    // belongs to the next panel, its boundary weight is added here
    double h = len / sub;
    for (int j = 0; j < sub; ++j) {
      angles.push_back(a + j * h);
      weights.push_back((j == 0 ? 1.0 : (j % 2 ? 4.0 : 2.0)) * h / 3.0);
    }
    return h / 3.0;  // weight owed to the panel's right endpoint
  };

  if (kinks.empty()) {
    int sub = std::max(4, resolution);
    if (sub % 2) ++sub;
    double owed = add_panel(0.0, two_pi, sub);
    weights[0] += owed;  // wraps around
  } else {
    const int np = static_cast<int>(kinks.size());
    std::vector<int> subs(np);
    for (int i = 0; i < np; ++i) {
      double len = (i + 1 < np ? kinks[i + 1] : kinks[0] + two_pi) - kinks[i];
      int s = static_cast<int>(std::llround(resolution * len / two_pi / 2.0));
      subs[i] = 2 * std::max(1, s);
    }
    std::vector<double> owed(np);
    std::vector<std::size_t> first(np);
    for (int i = 0; i < np; ++i) {
      double len = (i + 1 < np ? kinks[i + 1] : kinks[0] + two_pi) - kinks[i];
      first[i] = angles.size();
      owed[i] = add_panel(kinks[i], len, subs[i]);
    }
    for (int i = 0; i < np; ++i)
      weights[first[(i + 1) % np]] += owed[i];
  }

  rule.nodes.reserve(angles.size());
  for (double a : angles) rule.nodes.push_back({std::cos(a), std::sin(a)});
  rule.weights = std::move(weights);
}

using Tri3 = std::array<std::array<double, 3>, 3>;

inline std::array<double, 3> unit3(std::array<double, 3> a) {
  double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  return {a[0] / n, a[1] / n, a[2] / n};
}

inline void emit_geodesic(const Tri3& t, int level, QuadratureRule& rule) {
  if (level == 0) {
    const auto& a = t[0];
    const auto& b = t[1];
    const auto& c = t[2];
    auto ctr = unit3(
        {a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]});
    rule.nodes.push_back(Vec{ctr[0], ctr[1], ctr[2]});
    double bc0 = b[1] * c[2] - b[2] * c[1];
    double bc1 = b[2] * c[0] - b[0] * c[2];
    double bc2 = b[0] * c[1] - b[1] * c[0];
    double triple = a[0] * bc0 + a[1] * bc1 + a[2] * bc2;
    double ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    double bcd = b[0] * c[0] + b[1] * c[1] + b[2] * c[2];
    double ca = c[0] * a[0] + c[1] * a[1] + c[2] * a[2];
    rule.weights.push_back(
        std::fabs(2.0 * std::atan2(triple, 1.0 + ab + bcd + ca)));
    return;
  }
  auto mid = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return unit3({0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1]), 0.5 * (x[2] + y[2])});
  };
  auto ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
  emit_geodesic({t[0], ab, ca}, level - 1, rule);
  emit_geodesic({t[1], bc, ab}, level - 1, rule);
  emit_geodesic({t[2], ca, bc}, level - 1, rule);
  emit_geodesic({ab, bc, ca}, level - 1, rule);
}

inline void build_geodesic(QuadratureRule& rule, int level) {
  rule.kind = "geodesic-subdivision";
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<std::array<double, 3>> v;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-phi, phi}) {
      v.push_back(detail::unit3({0.0, s1, s2}));
      v.push_back(detail::unit3({s1, s2, 0.0}));
      v.push_back(detail::unit3({s2, 0.0, s1}));
    }
  auto dist = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
  };
  // faces by nearest-neighbour adjacency: edges realize the minimal pairwise
  // distance, and every 3-clique of the icosahedral edge graph is a face
  double edge = 1e300;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) edge = std::min(edge, dist(v[i], v[j]));
  auto adjacent = [&](int i, int j) { return dist(v[i], v[j]) < edge * 1.1; };
  std::size_t count = 20u << (2 * level);
  rule.nodes.reserve(count);
  rule.weights.reserve(count);
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      for (int k = j + 1; k < 12; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k))
          emit_geodesic({v[i], v[j], v[k]}, level, rule);
}

inline double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Acklam's rational approximation of the standard normal quantile;
// placement accuracy ~1e-9 is ample for quadrature directions.
inline double inv_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > phigh) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

inline void build_qmc(QuadratureRule& rule, int n, int resolution,
                      std::uint64_t seed) {
  rule.kind = "quasi-mc";
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (n > 8) throw UnsupportedDimension("quasi-mc rule beyond n = 8");
  int m = std::max(1, resolution / 2);
  std::mt19937_64 rng(seed);
  std::vector<double> shift(n);
  for (int j = 0; j < n; ++j)
    shift[j] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double w = sphere_surface(n) / (2.0 * m);
  for (int i = 0; i < m; ++i) {
    Vec z(n);
    for (int j = 0; j < n; ++j) {
      double u = radical_inverse(static_cast<std::uint64_t>(i) + 1, primes[j]) +
                 shift[j];
      u -= std::floor(u);
      u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
      z[j] = inv_normal_cdf(u);
    }
    Vec theta = normalized(z);
    rule.nodes.push_back(theta);
    rule.weights.push_back(w);
    rule.nodes.push_back(negate(theta));
    rule.weights.push_back(w);
  }
}

}  // namespace detail

inline QuadratureRule build_quadrature(int n, int resolution,
                                       std::uint64_t seed = 0,
                                       std::vector<double> hints = {}) {
  if (n < 2) throw DomainError("build_quadrature: n must be >= 2");
  if (resolution < 1) throw DomainError("build_quadrature: resolution >= 1");
  QuadratureRule rule;
  rule.dim = n;
  rule.resolution = resolution;
  rule.seed = seed;
  rule.hints = hints;
  if (n == 2)
    detail::build_angular(rule, resolution, std::move(hints));
  else if (n == 3)
    detail::build_geodesic(rule, resolution);
  else
    detail::build_qmc(rule, n, resolution, seed);
  return rule;
}

// The coarser sibling used for error estimation.
inline QuadratureRule coarser_rule(const QuadratureRule& rule) {
  if (rule.dim == 2)
    return build_quadrature(2, std::max(4, rule.resolution / 2), rule.seed,
                            rule.hints);
  if (rule.dim == 3)
    return build_quadrature(3, std::max(0, rule.resolution - 1), rule.seed);
  return build_quadrature(rule.dim, std::max(2, rule.resolution / 2),
                          rule.seed + 1);
}

}  // namespace centroid

#endif
