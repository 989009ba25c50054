#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "centroid/bodies.hpp"
#include "centroid/convergence.hpp"
#include "centroid/rng.hpp"
#include "oracles.hpp"

using namespace centroid;

namespace {

Polytope unit_square() {
  return build_polytope({{0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}});
}

// gauge of a polytope (Minkowski functional) as a support evaluator; the
// gauge of P equals the support function of P polar
SupportEvaluator gauge_evaluator(const Polytope& p, double scale = 1.0) {
  return {"polytope", p.dim, [p, scale](const Vec& theta) {
            double g = 0.0;
            for (const Facet& f : p.facets)
              g = std::max(g, dot(f.normal, theta) / f.offset);
            return g * scale;
          }};
}

std::vector<double> vertex_angles(const Polytope& p) {
  std::vector<double> a;
  for (const Vec& v : p.vertices) a.push_back(std::atan2(v[1], v[0]));
  return a;
}

}  // namespace

TEST_CASE("rate band values and limits") {
  BandPoint b = rate_band(1024.0, 2);
  // frozen from high-precision evaluation of the two formulas
  REQUIRE(std::fabs(b.L - 1.8112955693124335) <= 1e-9);
  REQUIRE(std::fabs(b.U - 4.0555120183420131) <= 1e-9);
  // limits: L -> n (from below), U -> n^2
  BandPoint far = rate_band(1e9, 2);
  REQUIRE(far.L > 1.9);
  REQUIRE(far.L < 2.0);
  REQUIRE(far.L > rate_band(1e6, 2).L);
  REQUIRE(far.U > 3.9);
  REQUIRE(far.U < 4.1);
  for (double p = 2.0; p <= 1048576.0; p *= 2.0) {
    BandPoint bp = rate_band(p, 2);
    REQUIRE(bp.L < bp.U);
    BandPoint b3 = rate_band(p, 3);
    REQUIRE(b3.L < b3.U);
  }
  REQUIRE_THROWS_AS(rate_band(1.5, 2), DomainError);
}

TEST_CASE("model fit recovers exact coefficients") {
  std::vector<RatePoint> pts;
  for (int e = 8; e <= 16; ++e) {
    double p = std::pow(2.0, e);
    double lp = std::log(p);
    RatePoint r;
    r.p = p;
    r.R = 4.0 - 2.0 * std::log(lp) / lp + 1.0 / lp;
    pts.push_back(r);
  }
  RateFit fit = fit_rate_model(pts, 256.0);
  REQUIRE(std::fabs(fit.a - 4.0) <= 1e-10);
  REQUIRE(std::fabs(fit.b - (-2.0)) <= 1e-9);
  REQUIRE(std::fabs(fit.c - 1.0) <= 1e-9);
  REQUIRE(fit.rms <= 1e-10);
  REQUIRE_THROWS_AS(fit_rate_model(pts, 60000.0), InsufficientPoints);
}

TEST_CASE("square rate points sit inside the band") {
  Polytope square = unit_square();
  RateEngine engine = RateEngine::for_polytope("square", square);
  QuadratureRule rule = build_quadrature(2, 8192, 0, engine.hints());
  RatePoint r1024 = engine.point(1024.0, rule);
  BandPoint band = rate_band(1024.0, 2);
  REQUIRE(r1024.R >= band.L - 3.0 * r1024.err);
  REQUIRE(r1024.R <= band.U + 3.0 * r1024.err);
  RatePoint r1k = engine.point(1024.0, rule);
  REQUIRE(r1k.R == r1024.R);  // cache determinism
  RatePoint r16k = engine.point(16384.0, rule);
  REQUIRE(r16k.R > r1024.R);  // increasing toward n^2
  REQUIRE(std::fabs(r1024.k_polar - 8.0) <= 1e-12);
  REQUIRE(r1024.zp_polar > r1024.k_polar);
  // free-function form agrees
  RatePoint free_pt = rate_point(square, 1024.0, rule);
  REQUIRE(std::fabs(free_pt.R - r1024.R) <= 1e-12);
}

TEST_CASE("disk rate point approaches n(n+1)/2") {
  RateEngine engine = RateEngine::for_ball("disk", 2);
  REQUIRE(std::fabs(engine.polar_exact() - M_PI * M_PI) <= 1e-10);
  QuadratureRule rule = build_quadrature(2, 256);
  RatePoint r = engine.point(16384.0, rule);
  REQUIRE(r.R >= 2.5);
  REQUIRE(r.R <= 3.5);
  REQUIRE(r.err <= 1e-10);  // constant integrand
}

TEST_CASE("series assembly carries points, band and fit") {
  Polytope square = unit_square();
  RateEngine engine = RateEngine::for_polytope("square", square);
  QuadratureRule rule = build_quadrature(2, 4096, 0, engine.hints());
  std::vector<double> ps;
  for (int e = 8; e <= 14; ++e) ps.push_back(std::pow(2.0, e));
  RateSeries s = build_rate_series(engine, ps, rule, 256.0);
  REQUIRE(s.points.size() == ps.size());
  REQUIRE(s.band.size() == ps.size());
  REQUIRE(s.fit.has_value());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    REQUIRE(s.points[i].R >= s.band[i].L - 3.0 * s.points[i].err);
    REQUIRE(s.points[i].R <= s.band[i].U + 3.0 * s.points[i].err);
  }
}

TEST_CASE("theorem-2 evaluator contains P and matches the moment oracle") {
  Polytope square = unit_square();
  SupportEvaluator K = theorem2_construct(square, 64.0);
  REQUIRE(K.kind == "scaled-polar-centroid");
  for (const Vec& v : square.vertices) {
    double g = gauge_of(K, v);
    REQUIRE(g <= 1.0 + 1e-9);
  }
  // membership cross-check through the exact moment oracle: K_p is the
  // |Po|^{-1/n} dilate of Z_p-polar(P1), so the gauge is |Po|^{1/n} h_{Z_p(P1)}
  Polytope po = polar(square);
  Polytope p1 = normalize_unit_volume(po);
  double scale = std::pow(po.volume, 0.5);
  SphereSampler dirs(2, 31);
  for (int i = 0; i < 100; ++i) {
    Vec u = dirs.next();
    double g = K.eval(u);
    double ref =
        scale * std::exp(oracle::polygon_log_moment(p1, u, 64.0) / 64.0);
    REQUIRE(std::fabs(g - ref) <= 1e-9 * ref);
    // points scaled to gauge 0.98 are inside, 1.02 outside
    Vec inside = (0.98 / g) * u;
    Vec outside = (1.02 / g) * u;
    REQUIRE(norm2(inside) * ref <= 1.0);
    REQUIRE(norm2(outside) * ref >= 1.0);
  }
  REQUIRE_THROWS_AS(theorem2_construct(square, 1.0), DomainError);
}

TEST_CASE("homogeneity of the gauge") {
  Polytope square = unit_square();
  SupportEvaluator K = theorem2_construct(square, 16.0);
  SphereSampler dirs(2, 8);
  for (int i = 0; i < 20; ++i) {
    Vec u = dirs.next();
    double g1 = gauge_of(K, u);
    for (double lam : {0.25, 1.7, 9.0}) {
      REQUIRE(std::fabs(gauge_of(K, lam * u) - lam * g1) <= 1e-10 * lam * g1);
    }
  }
  REQUIRE(gauge_of(K, Vec{0.0, 0.0}) == 0.0);
}

TEST_CASE("symmetric difference of P with itself vanishes") {
  Polytope square = unit_square();
  QuadratureRule rule = build_quadrature(2, 4096, 0, vertex_angles(square));
  double ds = symmetric_difference(square, gauge_evaluator(square), rule);
  REQUIRE(std::fabs(ds) <= 1e-6);
  // a strictly smaller K is rejected
  REQUIRE_THROWS_AS(
      symmetric_difference(square, gauge_evaluator(square, 1.0 / 0.9), rule),
      NotContained);
}

TEST_CASE("theorem-2 report on the square") {
  Polytope square = unit_square();
  QuadratureRule rule = build_quadrature(2, 4096);
  ApproximationReport rep = theorem2_report(square, 64.0, rule, 2000, 11);
  REQUIRE(rep.contained);
  REQUIRE(rep.ds > 0.0);
  REQUIRE(std::fabs(rep.bound - 8.0 * std::log(64.0) / 64.0) <= 1e-12);
  REQUIRE(rep.ds <= rep.bound);
  REQUIRE(rep.worst_convexity_margin >= -1e-9);

  ApproximationReport r256 = theorem2_report(square, 256.0, rule, 200, 11);
  ApproximationReport r4096 = theorem2_report(square, 4096.0, rule, 200, 11);
  REQUIRE(r4096.ds <= r256.ds);  // Z_p polar shrinks toward K polar
}

TEST_CASE("theorem-2 volume identity") {
  // |K_p| - |P| = (|Z_p-polar(P1)| - |P1-polar|) / |P-polar|
  Polytope square = unit_square();
  double p = 64.0;
  QuadratureRule rule = build_quadrature(2, 4096);
  SupportEvaluator K = theorem2_construct(square, p);
  double lhs = symmetric_difference(square, K, rule);

  Polytope po = polar(square);
  Polytope p1 = normalize_unit_volume(po);
  PolarVolume zp = polar_volume(make_centroid_support(p1, p), rule);
  double rhs = (zp.value - polar_volume_exact(p1)) / po.volume;
  REQUIRE(std::fabs(lhs - rhs) <= 3.0 * (zp.err_estimate + 1e-7));
}

TEST_CASE("uniform convexity margins") {
  Polytope square = unit_square();
  SupportEvaluator K = theorem2_construct(square, 4.0);
  double worst = uniform_convexity_probe(K, 4.0, 2000, 99);
  REQUIRE(worst >= -1e-9);

  SphereSampler dirs(2, 3);
  Vec u = dirs.next();
  // degenerate pair x = y
  REQUIRE(std::fabs(convexity_margin(K, 4.0, u, u)) <= 1e-12);
  // antipodal pair: margin = 1 - 1/p up to evaluator noise
  REQUIRE(std::fabs(convexity_margin(K, 4.0, u, negate(u)) - 0.75) <= 1e-8);
}
