#ifndef CENTROID_POLAR_VOLUME_HPP
#define CENTROID_POLAR_VOLUME_HPP

#include <cmath>
#include <vector>

#include "centroid/centroid_support.hpp"
#include "centroid/errors.hpp"
#include "centroid/parallel.hpp"
#include "centroid/polytope.hpp"
#include "centroid/quadrature.hpp"

namespace centroid {

struct PolarVolume {
  double value = 0.0;
  double err_estimate = 0.0;
};

namespace detail {

inline double quad_sum(const SupportEvaluator& h, const QuadratureRule& rule,
                       int threads) {
  std::vector<double> terms(rule.nodes.size());
  parallel_for(rule.nodes.size(), threads, [&](std::size_t i) {
    double v = h.eval(rule.nodes[i]);
    terms[i] = rule.weights[i] * std::pow(v, -rule.dim);
  });
  return pairwise_sum(terms) / rule.dim;
}

}  // namespace detail

// |C^o| = (1/n) Int_{S^{n-1}} h_C(theta)^{-n} dsigma. The error estimate
// compares against the coarser sibling rule (n <= 3) or a half-sample
// jackknife spread (n >= 4).
inline PolarVolume polar_volume(const SupportEvaluator& h,
                                const QuadratureRule& rule, int threads = 1) {
  if (h.dim != rule.dim)
    throw DimensionMismatch("evaluator and rule dimensions differ");
  PolarVolume out;
  out.value = detail::quad_sum(h, rule, threads);
  if (rule.dim <= 3) {
    QuadratureRule coarse = coarser_rule(rule);
    out.err_estimate = std::fabs(out.value - detail::quad_sum(h, coarse, threads));
  } else {
    // antipodal pairs are adjacent; alternate them between the two halves
    std::vector<double> terms(rule.nodes.size());
    parallel_for(rule.nodes.size(), threads, [&](std::size_t i) {
      double v = h.eval(rule.nodes[i]);
      terms[i] = rule.weights[i] * std::pow(v, -rule.dim);
    });
    std::vector<double> half_a, half_b;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 4) {
      half_a.push_back(terms[i] + terms[i + 1]);
      if (i + 3 < terms.size()) half_b.push_back(terms[i + 2] + terms[i + 3]);
    }
    double va = 2.0 * pairwise_sum(half_a) / rule.dim;
    double vb = 2.0 * pairwise_sum(half_b) / rule.dim;
    out.err_estimate = 0.5 * std::fabs(va - vb);
  }
  return out;
}

// Exact |P^o| by dualization and fan triangulation.
inline double polar_volume_exact(const Polytope& p) {
  return volume(polar(p));
}

// Facet-normal angles of a planar polytope, the kink hints for n = 2 rules.
inline std::vector<double> kink_angles(const Polytope& p) {
  if (p.dim != 2) return {};
  std::vector<double> a;
  a.reserve(p.facets.size());
  for (const Facet& f : p.facets)
    a.push_back(std::atan2(f.normal[1], f.normal[0]));
  return a;
}

}  // namespace centroid

#endif
