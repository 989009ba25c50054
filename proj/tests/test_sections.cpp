#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "centroid/bodies.hpp"
#include "centroid/rng.hpp"
#include "centroid/sections.hpp"
#include "oracles.hpp"

using namespace centroid;

namespace {

Polytope unit_square() {
  return build_polytope({{0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}});
}

Vec dir2(double deg) {
  double r = deg * M_PI / 180.0;
  return {std::cos(r), std::sin(r)};
}

}  // namespace

TEST_CASE("square profile along e1 is the unit chord") {
  SectionProfile prof = section_profile(unit_square(), {1.0, 0.0});
  REQUIRE(prof.pieces.size() == 1);
  REQUIRE(std::fabs(prof.h - 0.5) <= 1e-15);
  REQUIRE(std::fabs(eval_profile(prof, 0.3) - 1.0) <= 1e-12);
  REQUIRE(std::fabs(eval_profile(prof, 0.0) - 1.0) <= 1e-12);
  REQUIRE_FALSE(prof.s_theta.has_value());  // theta lies in B_K
  REQUIRE_THROWS_AS(eval_profile(prof, 0.6), OutOfRange);
  REQUIRE_THROWS_AS(eval_profile(prof, -0.1), OutOfRange);
}

TEST_CASE("square profile along the diagonal") {
  double s = 1.0 / std::sqrt(2.0);
  SectionProfile prof = section_profile(unit_square(), {s, s});
  REQUIRE(prof.pieces.size() == 1);
  REQUIRE(std::fabs(prof.h - s) <= 1e-14);
  // f(t) = sqrt(2) (1 - sqrt(2) t)
  REQUIRE(std::fabs(eval_profile(prof, 0.0) - std::sqrt(2.0)) <= 1e-12);
  for (double t : {0.1, 0.3, 0.5, 0.7}) {
    double tt = t * prof.h;
    double expect = std::sqrt(2.0) * (1.0 - std::sqrt(2.0) * tt);
    REQUIRE(std::fabs(eval_profile(prof, tt) - expect) <= 1e-12);
  }
  REQUIRE(prof.s_theta.has_value());
  REQUIRE(std::fabs(*prof.s_theta) <= 1e-12);
}

TEST_CASE("square profile at 30 degrees has the cone tail") {
  SectionProfile prof = section_profile(unit_square(), dir2(30));
  REQUIRE(prof.pieces.size() == 2);
  REQUIRE(std::fabs(prof.breakpoints[1] - 0.18301270189221932) <= 1e-12);
  REQUIRE(std::fabs(prof.h - 0.6830127018922193) <= 1e-12);
  REQUIRE(prof.s_theta.has_value());
  // vanishes at the top vertex
  REQUIRE(std::fabs(eval_profile(prof, prof.h)) <= 1e-12);
  // cone-tail identity on [s_theta, h]
  double st = *prof.s_theta;
  double fst = eval_profile(prof, st);
  for (int i = 0; i <= 50; ++i) {
    double t = st + (prof.h - st) * i / 50.0;
    double lhs = eval_profile(prof, t) * std::pow(1.0 - st / prof.h, prof.dim - 1);
    double rhs = fst * std::pow(1.0 - t / prof.h, prof.dim - 1);
    REQUIRE(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST_CASE("profiles agree with the halfspace-clipping reference") {
  std::vector<Polytope> bodies;
  bodies.push_back(unit_square());
  bodies.push_back(make_regular_polygon(6));
  bodies.push_back(make_unit_cube(3));
  bodies.push_back(make_unit_cross(3));
  for (const Polytope& body : bodies) {
    SphereSampler dirs(body.dim, 911);
    for (int k = 0; k < 5; ++k) {
      Vec theta = dirs.next();
      SectionProfile prof = section_profile(body, theta);
      SphereSampler ts(2, 13 + k);
      double f0 = eval_profile(prof, 0.0);
      for (int i = 0; i < 100; ++i) {
        double t = ts.uniform01() * prof.h;
        double ref = oracle::section_volume(body, theta, t);
        REQUIRE(std::fabs(eval_profile(prof, t) - ref) <= 1e-8 * f0);
      }
    }
  }
}

TEST_CASE("brunn sandwich and midpoint concavity") {
  std::vector<Polytope> bodies;
  bodies.push_back(unit_square());
  bodies.push_back(make_unit_cube(3));
  bodies.push_back(make_unit_cross(3));
  for (const Polytope& body : bodies) {
    SphereSampler dirs(body.dim, 4242);
    for (int k = 0; k < 4; ++k) {
      Vec theta = dirs.next();
      SectionProfile prof = section_profile(body, theta);
      double f0 = eval_profile(prof, 0.0);
      const double nm1 = prof.dim - 1;
      // Brunn sandwich on a 1000-point grid
      for (int i = 0; i <= 1000; ++i) {
        double t = prof.h * i / 1000.0;
        double f = eval_profile(prof, t);
        REQUIRE(f <= f0 + 1e-9 * f0);
        double lower = std::pow(1.0 - t / prof.h, nm1) * f0;
        REQUIRE(f >= lower - 1e-9 * f0);
      }
      // midpoint concavity of f^{1/(n-1)} on a 256-point grid per piece
      for (const auto& piece : prof.pieces) {
        for (int i = 0; i + 2 <= 256; i += 2) {
          double x = piece.lo + (piece.hi - piece.lo) * i / 256.0;
          double y = piece.lo + (piece.hi - piece.lo) * (i + 2) / 256.0;
          double gx = std::pow(std::max(0.0, piece.eval(x)), 1.0 / nm1);
          double gy = std::pow(std::max(0.0, piece.eval(y)), 1.0 / nm1);
          double gm = std::pow(std::max(0.0, piece.eval(0.5 * (x + y))), 1.0 / nm1);
          REQUIRE(gm >= 0.5 * (gx + gy) - 1e-9 * std::max(1.0, gx));
        }
      }
    }
  }
}

TEST_CASE("profile normalization and continuity") {
  std::vector<Polytope> bodies;
  bodies.push_back(unit_square());
  bodies.push_back(make_regular_polygon(8));
  bodies.push_back(make_unit_cube(3));
  bodies.push_back(make_unit_cross(3));
  for (const Polytope& body : bodies) {
    SphereSampler dirs(body.dim, 7);
    for (int k = 0; k < 6; ++k) {
      Vec theta = dirs.next();
      SectionProfile prof = section_profile(body, theta);
      // 2 Int_0^h f = |K| by symmetry
      REQUIRE(std::fabs(2.0 * integrate_profile(prof) - body.volume) <=
              1e-9 * body.volume);
      // adjacent pieces agree at the shared breakpoint
      for (std::size_t j = 0; j + 1 < prof.pieces.size(); ++j) {
        double b = prof.pieces[j].hi;
        double left = prof.pieces[j].eval(b);
        double right = prof.pieces[j + 1].eval(b);
        REQUIRE(std::fabs(left - right) <= 1e-9 * std::max(1.0, left));
      }
      // positive inside
      for (double u : {0.05, 0.35, 0.65, 0.95})
        REQUIRE(eval_profile(prof, u * prof.h) > 0.0);
    }
  }
}

TEST_CASE("rotation covariance under the square symmetries") {
  Polytope square = unit_square();
  Vec theta = dir2(23.0);
  SectionProfile base = section_profile(square, theta);
  // rotations by 90/180/270 degrees and the axis reflection
  std::vector<Vec> images = {
      {-theta[1], theta[0]}, {-theta[0], -theta[1]}, {theta[1], -theta[0]},
      {theta[0], -theta[1]}};
  for (const Vec& img : images) {
    SectionProfile rot = section_profile(square, img);
    REQUIRE(rot.breakpoints.size() == base.breakpoints.size());
    for (std::size_t i = 0; i < rot.breakpoints.size(); ++i)
      REQUIRE(std::fabs(rot.breakpoints[i] - base.breakpoints[i]) <= 1e-12);
    for (int i = 0; i <= 64; ++i) {
      double t = base.h * i / 64.0;
      REQUIRE(std::fabs(eval_profile(rot, t) - eval_profile(base, t)) <= 1e-12);
    }
  }
}

TEST_CASE("four-dimensional built-in profiles") {
  Polytope c4 = make_unit_cube(4);
  SectionProfile prof = section_profile(c4, {1.0, 0.0, 0.0, 0.0});
  REQUIRE(prof.pieces.size() == 1);
  REQUIRE(std::fabs(eval_profile(prof, 0.2) - 1.0) <= 1e-10);
  Vec diag = {0.5, 0.5, 0.5, 0.5};
  SectionProfile pd = section_profile(c4, diag);
  REQUIRE(std::fabs(2.0 * integrate_profile(pd) - 1.0) <= 1e-9);
  REQUIRE(std::fabs(eval_profile(pd, pd.h)) <= 1e-10);
}
