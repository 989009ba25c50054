#ifndef CENTROID_CONVERGENCE_HPP
#define CENTROID_CONVERGENCE_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "centroid/centroid_support.hpp"
#include "centroid/errors.hpp"
#include "centroid/parallel.hpp"
#include "centroid/polar_volume.hpp"
#include "centroid/polytope.hpp"
#include "centroid/quadrature.hpp"
#include "centroid/rng.hpp"
#include "centroid/sections.hpp"

namespace centroid {

// ---------------------------------------------------------------------------
// Rate experiment R(p) = (p/log p) (|Z_p^o| - |K^o|) / |K^o|
// ---------------------------------------------------------------------------

struct RatePoint {
  double p = 0.0;
  double R = 0.0;
  double err = 0.0;
  double zp_polar = 0.0;
  double k_polar = 0.0;
};

struct BandPoint {
  double p = 0.0;
  double L = 0.0;
  double U = 0.0;
};

struct RateFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double rms = 0.0;
  double p_min = 0.0;
};

struct RateSeries {
  std::string body;
  int n = 0;
  std::vector<RatePoint> points;
  std::vector<BandPoint> band;
  std::optional<RateFit> fit;
};

// Bracket implied by the support-ratio sandwich, valid for every volume-1
// body: L = (p/log p)(((p+1)/n)^{n/p} - 1), U = (p/log p)(B(p+1,n)^{-n/p} - 1).
inline BandPoint rate_band(double p, int n) {
  if (!(p >= 2.0)) throw DomainError("rate_band: p must be >= 2");
  double f = p / std::log(p);
  BandPoint b;
  b.p = p;
  b.L = f * std::expm1((n / p) * std::log((p + 1.0) / n));
  b.U = f * std::expm1(-(n / p) * log_beta(p + 1.0, static_cast<double>(n)));
  return b;
}

// Runs the difference quadrature for one body over many p values, reusing
// the per-node section profiles (they depend on the direction only).
class RateEngine {
 public:
  static RateEngine for_polytope(std::string id, const Polytope& p) {
    if (std::fabs(p.volume - 1.0) > 1e-9)
      throw VolumeNotNormalized("rate experiments need |K| = 1");
    if (p.dim > 3)
      throw UnsupportedDimension("rate experiments supported for n <= 3");
    RateEngine e;
    e.id_ = std::move(id);
    e.n_ = p.dim;
    e.poly_ = p;
    e.polar_exact_ = polar_volume_exact(p);
    e.hints_ = kink_angles(p);
    return e;
  }

  static RateEngine for_ball(std::string id, int n) {
    RateEngine e;
    e.id_ = std::move(id);
    e.n_ = n;
    e.ball_ = true;
    // polar of the volume-1 ball is (1/r) B_2^n
    double r = ball_radius(n);
    e.polar_exact_ = ball_volume(n) * std::pow(r, -n);
    return e;
  }

  const std::string& id() const { return id_; }
  int dim() const { return n_; }
  double polar_exact() const { return polar_exact_; }
  const std::vector<double>& hints() const { return hints_; }

  RatePoint point(double p, const QuadratureRule& rule, int threads = 1) {
    if (!(p >= 2.0)) throw DomainError("rate point: p must be >= 2");
    if (rule.dim != n_) throw DimensionMismatch("rule dimension mismatch");
    ensure_cache(rule, threads);
    double dv = difference(p, cache_->fine, threads);
    double dv_c = difference(p, cache_->coarse, threads);
    double f = p / std::log(p);
    RatePoint out;
    out.p = p;
    out.R = f * dv / polar_exact_;
    out.err = f * std::fabs(dv - dv_c) / polar_exact_;
    out.k_polar = polar_exact_;
    out.zp_polar = polar_exact_ + dv;
    return out;
  }

 private:
  struct NodeCache {
    QuadratureRule rule;
    std::vector<SectionProfile> profiles;  // empty for the ball
    std::vector<double> hk;
  };
  struct Cache {
    NodeCache fine, coarse;
  };

  void ensure_cache(const QuadratureRule& rule, int threads) {
    if (cache_ && cache_->fine.rule.kind == rule.kind &&
        cache_->fine.rule.resolution == rule.resolution &&
        cache_->fine.rule.seed == rule.seed)
      return;
    Cache c;
    c.fine = make_node_cache(rule, threads);
    c.coarse = make_node_cache(coarser_rule(rule), threads);
    cache_ = std::move(c);
  }

  NodeCache make_node_cache(const QuadratureRule& rule, int threads) const {
    NodeCache nc;
    nc.rule = rule;
    nc.hk.resize(rule.nodes.size());
    if (ball_) {
      double r = ball_radius(n_);
      for (auto& h : nc.hk) h = r;
      return nc;
    }
    nc.profiles.resize(rule.nodes.size());
    const Polytope& P = poly_;
    parallel_for(rule.nodes.size(), threads, [&](std::size_t i) {
      nc.profiles[i] = section_profile(P, rule.nodes[i]);
      nc.hk[i] = nc.profiles[i].h;
    });
    return nc;
  }

  // (1/n) Int (h_{Z_p}^{-n} - h_K^{-n}) dsigma as one quadrature
  double difference(double p, const NodeCache& nc, int threads) const {
    std::vector<double> terms(nc.rule.nodes.size());
    const int n = n_;
    if (ball_) {
      double hz = ball_support(n, p);
      double r = ball_radius(n);
      double diff = std::pow(hz, -n) - std::pow(r, -n);
      for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = nc.rule.weights[i] * diff;
    } else {
      parallel_for(terms.size(), threads, [&](std::size_t i) {
        double hz = centroid_support(nc.profiles[i], p);
        terms[i] = nc.rule.weights[i] *
                   (std::pow(hz, -n) - std::pow(nc.hk[i], -n));
      });
    }
    return pairwise_sum(terms) / n;
  }

  std::string id_;
  int n_ = 0;
  bool ball_ = false;
  Polytope poly_;
  double polar_exact_ = 0.0;
  std::vector<double> hints_;
  std::optional<Cache> cache_;
};

inline RatePoint rate_point(const Polytope& p, double pval,
                            const QuadratureRule& rule, int threads = 1) {
  RateEngine e = RateEngine::for_polytope("body", p);
  return e.point(pval, rule, threads);
}

inline RatePoint rate_point_ball(int n, double pval, const QuadratureRule& rule,
                                 int threads = 1) {
  RateEngine e = RateEngine::for_ball("ball", n);
  return e.point(pval, rule, threads);
}

// Least squares for R(p) ~ a + b log(log p)/log p + c / log p.
inline RateFit fit_rate_model(const std::vector<RatePoint>& points,
                              double p_min) {
  std::vector<const RatePoint*> used;
  for (const auto& pt : points)
    if (pt.p >= p_min) used.push_back(&pt);
  if (used.size() < 4)
    throw InsufficientPoints("fit_rate_model needs >= 4 points with p >= p_min");
  double M[9] = {0}, rhs[3] = {0};
  for (const auto* pt : used) {
    double lp = std::log(pt->p);
    double x[3] = {1.0, std::log(lp) / lp, 1.0 / lp};
    for (int i = 0; i < 3; ++i) {
      rhs[i] += x[i] * pt->R;
      for (int j = 0; j < 3; ++j) M[3 * i + j] += x[i] * x[j];
    }
  }
  std::vector<double> A(M, M + 9), y(rhs, rhs + 3);
  if (!solve_dense(A, y, 3))
    throw InsufficientPoints("fit_rate_model: singular normal equations");
  RateFit fit;
  fit.a = y[0];
  fit.b = y[1];
  fit.c = y[2];
  fit.p_min = p_min;
  double ss = 0.0;
  for (const auto* pt : used) {
    double lp = std::log(pt->p);
    double pred = fit.a + fit.b * std::log(lp) / lp + fit.c / lp;
    ss += (pt->R - pred) * (pt->R - pred);
  }
  fit.rms = std::sqrt(ss / used.size());
  return fit;
}

inline RateSeries build_rate_series(RateEngine& engine,
                                    const std::vector<double>& ps,
                                    const QuadratureRule& rule, double p_min,
                                    int threads = 1) {
  RateSeries s;
  s.body = engine.id();
  s.n = engine.dim();
  for (double p : ps) {
    s.points.push_back(engine.point(p, rule, threads));
    s.band.push_back(rate_band(p, engine.dim()));
  }
  try {
    s.fit = fit_rate_model(s.points, p_min);
  } catch (const InsufficientPoints&) {
    s.fit.reset();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Theorem-2 pipeline: K_p = |P^o|^{-1/n} Z_p^o(P_1), P_1 = P^o/|P^o|^{1/n}
// ---------------------------------------------------------------------------

// Evaluator of the gauge of K_p (equivalently the support of K_p^o):
//   |x|_{K_p} = |P^o|^{1/n} h_{Z_p(P_1)}(x/|x|_2) |x|_2.
inline SupportEvaluator theorem2_construct(const Polytope& p, double pval) {
  if (p.dim > 3) throw UnsupportedDimension("theorem2_construct needs n <= 3");
  if (!(pval >= 2.0)) throw DomainError("theorem2_construct: p must be >= 2");
  Polytope po = polar(p);
  double po_vol = po.volume;
  Polytope p1 = normalize_unit_volume(po);
  double scale = std::pow(po_vol, 1.0 / p.dim);
  return {"scaled-polar-centroid", p.dim, [p1, pval, scale](const Vec& theta) {
            return scale * centroid_support(section_profile(p1, theta), pval);
          }};
}

inline double gauge_of(const SupportEvaluator& K, const Vec& x) {
  double nx = norm2(x);
  if (nx == 0.0) return 0.0;
  return nx * K.eval((1.0 / nx) * x);
}

// |K| - |P| for P contained in K, with |K| = (1/n) Int gauge^{-n} dsigma.
inline double symmetric_difference(const Polytope& p, const SupportEvaluator& K,
                                   const QuadratureRule& rule, int threads = 1) {
  for (const Vec& v : p.vertices)
    if (gauge_of(K, v) > 1.0 + 1e-9)
      throw NotContained("symmetric_difference: P is not contained in K");
  PolarVolume pv = polar_volume(K, rule, threads);
  return pv.value - p.volume;
}

// ---------------------------------------------------------------------------
// p-uniform convexity probe with C_p = 1/(p 2^p)
// ---------------------------------------------------------------------------

inline double convexity_margin(const SupportEvaluator& K, double p,
                               const Vec& u, const Vec& v) {
  Vec x = (1.0 / K.eval(u)) * u;
  Vec y = (1.0 / K.eval(v)) * v;
  double d = gauge_of(K, x - y);
  double cp_term =
      d > 0.0 ? std::exp(p * (std::log(d) - std::log(2.0)) - std::log(p)) : 0.0;
  return (1.0 - cp_term) - gauge_of(K, 0.5 * (x + y));
}

// Samples boundary pairs, uniform and adversarially close directions; the
// modulus is tightest for nearly parallel pairs.
inline double uniform_convexity_probe(const SupportEvaluator& K, double p,
                                      int m, std::uint64_t seed) {
  if (m < 1) throw DomainError("uniform_convexity_probe: m must be >= 1");
  if (!(p >= 2.0)) throw DomainError("uniform_convexity_probe: p must be >= 2");
  SphereSampler sampler(K.dim, seed);
  double worst = 1e300;
  const double offsets[] = {0.3, 0.03, 0.003};
  for (int i = 0; i < m; ++i) {
    Vec u = sampler.next();
    Vec v;
    if (i % 4 == 0) {
      v = sampler.next();
    } else {
      Vec w = sampler.next();
      v = normalized(u + offsets[i % 4 - 1] * w);
    }
    worst = std::min(worst, convexity_margin(K, p, u, v));
  }
  return worst;
}

struct ApproximationReport {
  double p = 0.0;
  double ds = 0.0;
  double bound = 0.0;
  bool contained = false;
  double worst_convexity_margin = 0.0;
};

inline ApproximationReport theorem2_report(const Polytope& poly, double p,
                                           const QuadratureRule& rule,
                                           int probe_pairs, std::uint64_t seed,
                                           int threads = 1) {
  SupportEvaluator K = theorem2_construct(poly, p);
  ApproximationReport rep;
  rep.p = p;
  rep.bound = 2.0 * poly.dim * poly.dim * poly.volume * std::log(p) / p;
  rep.ds = symmetric_difference(poly, K, rule, threads);
  rep.contained = true;  // symmetric_difference would have thrown otherwise
  rep.worst_convexity_margin = uniform_convexity_probe(K, p, probe_pairs, seed);
  return rep;
}

}  // namespace centroid

#endif
