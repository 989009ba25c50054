// Invariant suites behind `centroid-lab verify`. Every check is deterministic
// given (seed, tol profile); rows are emitted in a fixed order so repeated
// runs produce byte-identical CSV.
#ifndef CENTROID_LAB_VERIFY_SUITES_HPP
#define CENTROID_LAB_VERIFY_SUITES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "centroid/centroid.hpp"

namespace centroid_lab {

using namespace centroid;

struct VerifyRow {
  std::string suite;
  std::string check;
  double value = 0.0;  // the measured residual / indicator
  bool pass = false;
};

struct VerifyConfig {
  std::uint64_t seed = 0;
  int threads = 1;
  bool fast = false;  // tol profile
};

namespace detail {

inline Polytope unit_square() {
  return build_polytope({{0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}});
}

}  // namespace detail

inline void suite_special(const VerifyConfig&, std::vector<VerifyRow>& rows) {
  auto add = [&](const std::string& check, double value, bool pass) {
    rows.push_back({"special", check, value, pass});
  };
  double lg = std::fabs(log_gamma(1.0)) + std::fabs(log_gamma(2.0));
  add("log_gamma_zeros", lg, lg <= 1e-13);
  double s = 0.0;
  for (int k = 2; k <= 100; ++k) s += std::log(static_cast<double>(k));
  double fac = std::fabs(log_gamma(101.0) - s) / s;
  add("log_gamma_factorial", fac, fac <= 1e-13);
  double worst = 0.0;
  for (double x : {0.5, 1.5, 3.25, 11.0, 150.0})
    for (double y : {0.5, 2.0, 7.5}) {
      double r = std::fabs(beta(x + 1.0, y) / beta(x, y) - x / (x + y));
      worst = std::max(worst, r);
    }
  add("beta_recurrence", worst, worst <= 1e-12);
  double ex = std::fabs(beta_ratio_exact(100.0, 2) - 0.831268969681896);
  add("beta_ratio_exact_p100", ex, ex <= 1e-10);
  double ap = std::fabs(beta_ratio_expansion(100.0, 2).value -
                        0.83275926651400722);
  add("beta_ratio_expansion_p100", ap, ap <= 1e-10);
  auto err = [](double p, int n) {
    return std::fabs(beta_ratio_exact(p, n) - beta_ratio_expansion(p, n).value);
  };
  double decay = 0.0;
  for (int n : {2, 3})
    for (double p : {1e2, 1e3})
      decay = std::max(decay, err(10.0 * p, n) / err(p, n));
  add("expansion_decay", decay, decay <= 0.02);
  double capv = 0.0;
  bool cap_ok = true;
  for (int n = 2; n <= 6; ++n)
    for (double d : {0.05, 0.1, 0.2, 0.5, 0.9}) {
      CapBounds b = cap_area_bounds(n, d);
      double exact = cap_area(n, d);
      cap_ok = cap_ok && b.lower <= exact + 1e-12 && exact <= b.upper + 1e-12;
      capv = std::max(capv, std::max(b.lower - exact, exact - b.upper));
    }
  add("cap_sandwich", capv, cap_ok);
}

inline void suite_polytope(const VerifyConfig& cfg,
                           std::vector<VerifyRow>& rows) {
  auto add = [&](const std::string& check, double value, bool pass) {
    rows.push_back({"polytope", check, value, pass});
  };
  Polytope square = detail::unit_square();
  add("square_volume", std::fabs(square.volume - 1.0),
      std::fabs(square.volume - 1.0) <= 1e-12);
  double anchor = std::fabs(square.volume * polar(square).volume - 8.0);
  add("square_duality_anchor", anchor, anchor <= 1e-10);
  Polytope cube = make_unit_cube(3);
  double inv = 0.0;
  for (const Vec& v : polar(polar(cube)).vertices) {
    double best = 1e300;
    for (const Vec& w : cube.vertices) best = std::min(best, norm2(v - w));
    inv = std::max(inv, best);
  }
  add("cube_polar_involution", inv, inv <= 1e-9);
  GeometricConstants g = geometric_constants(square);
  double cres = std::fabs(g.r0 - 0.5) + std::fabs(g.h0 - 0.5) +
                std::fabs(g.HK - std::sqrt(0.5)) + std::fabs(g.alpha - 4.0);
  add("square_constants", cres, cres <= 1e-11);
  int m = cfg.fast ? 2000 : 10000;
  Lemma1Result l1 = verify_lemma1(square, 0.2, m, cfg.seed + 42);
  add("lemma1_square", l1.observed_sup, l1.pass);
  Lemma1Result l2 = verify_lemma1(cube, 0.1, m, cfg.seed + 43);
  add("lemma1_cube", l2.observed_sup, l2.pass);
}

inline void suite_sections(const VerifyConfig& cfg,
                           std::vector<VerifyRow>& rows) {
  auto add = [&](const std::string& check, double value, bool pass) {
    rows.push_back({"sections", check, value, pass});
  };
  std::vector<Polytope> bodies;
  bodies.push_back(detail::unit_square());
  bodies.push_back(make_regular_polygon(6));
  bodies.push_back(make_unit_cube(3));
  double norm_res = 0.0, cont_res = 0.0, brunn = 0.0, tail = 0.0;
  for (const Polytope& body : bodies) {
    SphereSampler dirs(body.dim, cfg.seed + 7);
    int ndirs = cfg.fast ? 4 : 10;
    for (int k = 0; k < ndirs; ++k) {
      Vec theta = dirs.next();
      SectionProfile prof = section_profile(body, theta);
      norm_res = std::max(norm_res,
                          std::fabs(2.0 * integrate_profile(prof) - body.volume) /
                              body.volume);
      for (std::size_t j = 0; j + 1 < prof.pieces.size(); ++j) {
        double b = prof.pieces[j].hi;
        cont_res = std::max(cont_res, std::fabs(prof.pieces[j].eval(b) -
                                                prof.pieces[j + 1].eval(b)));
      }
      double f0 = eval_profile(prof, 0.0);
      for (int i = 0; i <= 200; ++i) {
        double t = prof.h * i / 200.0;
        double f = eval_profile(prof, t);
        brunn = std::max(brunn, (f - f0) / f0);
        double lower = std::pow(1.0 - t / prof.h, body.dim - 1) * f0;
        brunn = std::max(brunn, (lower - f) / f0);
      }
      if (prof.s_theta) {
        double st = *prof.s_theta, fst = eval_profile(prof, st);
        for (int i = 0; i <= 40; ++i) {
          double t = st + (prof.h - st) * i / 40.0;
          double lhs = eval_profile(prof, t) *
                       std::pow(1.0 - st / prof.h, body.dim - 1);
          double rhs = fst * std::pow(1.0 - t / prof.h, body.dim - 1);
          tail = std::max(tail, std::fabs(lhs - rhs) / std::max(1e-30, fst));
        }
      }
    }
  }
  add("normalization", norm_res, norm_res <= 1e-9);
  add("continuity", cont_res, cont_res <= 1e-9);
  add("brunn_sandwich", brunn, brunn <= 1e-9);
  add("cone_tail", tail, tail <= 1e-9);
}

inline void suite_support(const VerifyConfig& cfg,
                          std::vector<VerifyRow>& rows) {
  auto add = [&](const std::string& check, double value, bool pass) {
    rows.push_back({"support", check, value, pass});
  };
  Polytope square = detail::unit_square();
  Polytope cross = make_unit_cross(2);
  double worst = 0.0;
  for (double p = 1.0; p <= 1024.0; p *= 2.0) {
    double expect = 0.5 * std::pow(p + 1.0, -1.0 / p);
    worst = std::max(worst, std::fabs(centroid_support(square, p, {1.0, 0.0}) -
                                      expect) /
                                expect);
    double a = 1.0 / std::sqrt(2.0);
    double ex = a * std::pow(2.0 * beta(p + 1.0, 2.0), 1.0 / p);
    worst = std::max(
        worst, std::fabs(centroid_support(cross, p, {1.0, 0.0}) - ex) / ex);
  }
  add("closed_form_anchors", worst, worst <= 1e-10);
  double hi = std::fabs(centroid_support(square, 1e5, {1.0, 0.0}) -
                        0.5 * std::pow(1e5 + 1.0, -1e-5));
  add("high_p_anchor", hi, hi <= 1e-8);

  double viol = 0.0;
  std::vector<Polytope> bodies;
  bodies.push_back(square);
  bodies.push_back(make_unit_cube(3));
  int ndirs = cfg.fast ? 10 : 40;
  for (const Polytope& body : bodies) {
    SphereSampler dirs(body.dim, cfg.seed + 11);
    for (int i = 0; i < ndirs; ++i) {
      Vec theta = dirs.next();
      SectionProfile prof = section_profile(body, theta);
      double hk = support(body, theta);
      for (double p = 1.0; p <= 4096.0; p *= 4.0) {
        double ratio = centroid_support(prof, p) / hk;
        double lower = std::exp(log_beta(p + 1.0, body.dim) / p);
        double upper = std::exp(
            (std::log(static_cast<double>(body.dim)) - std::log(p + 1.0)) / p);
        viol = std::max(viol, std::max(lower - ratio, ratio - upper));
      }
    }
  }
  add("prop1_sandwich", viol, viol <= 1e-9);

  SectionProfile prof = section_profile(square, normalized(Vec{0.8, 0.6}));
  double tp = t_peak(prof, 100.0);
  double tres = std::fabs(tp - 100.0 / 101.0 * prof.h) / prof.h;
  add("t_peak_formula", tres, tres <= 1e-8);
  double conc = concentration_ratio(prof, 1e4, 0.1);
  add("concentration", conc, conc >= 1.0 - 1e-3);
}

inline void suite_quadrature(const VerifyConfig& cfg,
                             std::vector<VerifyRow>& rows) {
  auto add = [&](const std::string& check, double value, bool pass) {
    rows.push_back({"quadrature", check, value, pass});
  };
  int res2 = cfg.fast ? 2048 : 8192;
  int lvl3 = cfg.fast ? 5 : 7;
  QuadratureRule r2 = build_quadrature(2, res2);
  double ws2 = std::fabs(r2.weight_sum() - 2.0 * M_PI) / (2.0 * M_PI);
  add("weight_sum_n2", ws2, ws2 <= 1e-12);
  QuadratureRule r3 = build_quadrature(3, cfg.fast ? 4 : 5);
  double ws3 = std::fabs(r3.weight_sum() - 4.0 * M_PI) / (4.0 * M_PI);
  add("weight_sum_n3", ws3, ws3 <= 1e-12);
  QuadratureRule r4 = build_quadrature(4, 4096, cfg.seed + 7);
  double ws4 = std::fabs(r4.weight_sum() - sphere_surface(4)) / sphere_surface(4);
  add("weight_sum_n4", ws4, ws4 <= 1e-12);

  Polytope square = detail::unit_square();
  QuadratureRule aligned = build_quadrature(2, res2, 0, kink_angles(square));
  PolarVolume sq = polar_volume(make_polytope_support(square), aligned,
                                cfg.threads);
  add("square_polar", std::fabs(sq.value - 8.0), std::fabs(sq.value - 8.0) <= 1e-8);
  PolarVolume disk = polar_volume(make_ball_support(2), r2, cfg.threads);
  add("disk_polar", std::fabs(disk.value - M_PI * M_PI),
      std::fabs(disk.value - M_PI * M_PI) <= 1e-9);
  Polytope cube = make_unit_cube(3);
  PolarVolume cb = polar_volume(make_polytope_support(cube),
                                build_quadrature(3, lvl3), cfg.threads);
  double cberr = std::fabs(cb.value - 32.0 / 3.0);
  add("cube_polar", cberr, cberr <= (cfg.fast ? 2e-3 : 1e-4));
}

inline void suite_convergence(const VerifyConfig& cfg,
                              std::vector<VerifyRow>& rows) {
  auto add = [&](const std::string& check, double value, bool pass) {
    rows.push_back({"convergence", check, value, pass});
  };
  Polytope square = detail::unit_square();
  RateEngine engine = RateEngine::for_polytope("square", square);
  QuadratureRule rule =
      build_quadrature(2, cfg.fast ? 2048 : 8192, 0, engine.hints());
  bool in_band = true;
  double margin = 0.0;
  for (double p : {64.0, 1024.0}) {
    RatePoint r = engine.point(p, rule, cfg.threads);
    BandPoint b = rate_band(p, 2);
    in_band = in_band && r.R >= b.L - 3.0 * r.err && r.R <= b.U + 3.0 * r.err;
    margin = std::max(margin, std::max(b.L - r.R, r.R - b.U));
  }
  add("rate_band", margin, in_band);

  QuadratureRule smooth = build_quadrature(2, cfg.fast ? 2048 : 4096);
  ApproximationReport rep = theorem2_report(square, 64.0, smooth,
                                            cfg.fast ? 1000 : 4000,
                                            cfg.seed + 5, cfg.threads);
  add("theorem2_bound", rep.ds / rep.bound, rep.ds <= rep.bound);
  add("convexity_margin", rep.worst_convexity_margin,
      rep.worst_convexity_margin >= -1e-9);

  std::vector<RatePoint> pts;
  for (int e = 8; e <= 16; ++e) {
    double p = std::pow(2.0, e), lp = std::log(p);
    RatePoint r;
    r.p = p;
    r.R = 4.0 - 2.0 * std::log(lp) / lp + 1.0 / lp;
    pts.push_back(r);
  }
  RateFit fit = fit_rate_model(pts, 256.0);
  double fres = std::fabs(fit.a - 4.0) + std::fabs(fit.b + 2.0) +
               std::fabs(fit.c - 1.0);
  add("fit_recovery", fres, fres <= 1e-9);
}

inline std::vector<VerifyRow> run_suites(const std::string& which,
                                         const VerifyConfig& cfg) {
  std::vector<VerifyRow> rows;
  auto want = [&](const char* name) {
    return which == "all" || which == name;
  };
  if (want("special")) suite_special(cfg, rows);
  if (want("polytope")) suite_polytope(cfg, rows);
  if (want("sections")) suite_sections(cfg, rows);
  if (want("support")) suite_support(cfg, rows);
  if (want("quadrature")) suite_quadrature(cfg, rows);
  if (want("convergence")) suite_convergence(cfg, rows);
  return rows;
}

}  // namespace centroid_lab

#endif
