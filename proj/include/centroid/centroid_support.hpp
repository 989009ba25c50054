#ifndef CENTROID_CENTROID_SUPPORT_HPP
#define CENTROID_CENTROID_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "centroid/errors.hpp"
#include "centroid/linalg.hpp"
#include "centroid/polytope.hpp"
#include "centroid/sections.hpp"
#include "centroid/special_functions.hpp"

namespace centroid {

namespace detail {

// J(p, k; a, b) = Int_a^b u^p (1-u)^k du via regularized incomplete beta
// differences. Complements are passed explicitly: near u = 1 they carry the
// information that would otherwise be lost to rounding.
inline double power_moment(double p, int k, double a, double ac, double b,
                           double bc) {
  if (b <= a) return 0.0;
  double ia = ibeta_reg(p + 1.0, k + 1.0, a, ac);
  double ib = bc <= 0.0 ? 1.0 : ibeta_reg(p + 1.0, k + 1.0, b, bc);
  double diff = ib - ia;
  if (diff <= 0.0) return 0.0;  // monotone; negatives are rounding noise
  return std::exp(log_beta(p + 1.0, k + 1.0)) * diff;
}

struct UPoint {
  double u;
  double uc;  // 1 - u
};

// Int_{lo.u}^{hi.u} u^p f(h u) du for one profile piece, with the piece
// polynomial re-expanded in powers of (1 - u).
inline double piece_u_moment(const ProfilePiece& piece, double h, double p,
                             const UPoint& lo, const UPoint& hi) {
  const int deg = static_cast<int>(piece.coeffs.size()) - 1;
  const double d = (h - piece.hi) / h;  // shift between (hi - t)/h and (1 - u)
  double total = 0.0;
  double total_abs = 0.0;
  double hp = 1.0;
  std::vector<double> ch(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    ch[k] = piece.coeffs[k] * hp;
    hp *= h;
  }
  for (int m = 0; m <= deg; ++m) {
    double e = 0.0;
    double binom = 1.0;
    double dp = 1.0;
    for (int k = m; k <= deg; ++k) {
      e += ch[k] * binom * dp;
      binom = binom * (k + 1.0) / (k + 1.0 - m);
      dp *= -d;
    }
    if (e == 0.0) continue;
    double J = power_moment(p, m, lo.u, lo.uc, hi.u, hi.uc);
    total += e * J;
    total_abs += std::fabs(e) * J;
  }
  if (total < 0.0) {
    if (total < -1e-6 * total_abs)
      throw PrecisionLoss("piece moment went negative beyond rounding budget");
    total = 0.0;
  }
  return total;
}

}  // namespace detail

// Int_{u0}^{u1} u^p f(h u) du over the whole profile, 0 <= u0 <= u1 <= 1.
inline double profile_u_moment(const SectionProfile& prof, double p, double u0,
                               double u1) {
  const double h = prof.h;
  double total = 0.0;
  for (const auto& piece : prof.pieces) {
    detail::UPoint lo{piece.lo / h, (h - piece.lo) / h};
    detail::UPoint hi{piece.hi / h, (h - piece.hi) / h};
    if (lo.u < u0) lo = {u0, 1.0 - u0};
    if (hi.u > u1) hi = {u1, 1.0 - u1};
    if (hi.u <= lo.u) continue;
    total += detail::piece_u_moment(piece, h, p, lo, hi);
  }
  return total;
}

// h_{Z_p}(theta) from a prebuilt profile:
//   h_{Z_p}^p = 2 Int_0^h t^p f(t) dt = 2 h^{p+1} Int_0^1 u^p f(hu) du,
// assembled in the log domain so large p cannot overflow.
inline double centroid_support(const SectionProfile& prof, double p) {
  double s = profile_u_moment(prof, p, 0.0, 1.0);
  if (!(s > 0.0)) throw PrecisionLoss("moment integral collapsed to zero");
  return prof.h * std::exp(std::log(2.0 * prof.h * s) / p);
}

// h_{Z_p(K)}(theta) for a volume-1 polytope.
inline double centroid_support(const Polytope& p, double pval, const Vec& theta) {
  if (std::fabs(p.volume - 1.0) > 1e-9)
    throw VolumeNotNormalized("centroid_support requires |K| = 1");
  if (!(pval >= 1.0 && pval <= 1e5))
    throw DomainError("centroid_support: p must lie in [1, 1e5]");
  return centroid_support(section_profile(p, theta), pval);
}

// h_{Z_p} of the volume-1 Euclidean ball (independent of direction):
//   h^p = kappa_{n-1} r^{p+n} B((p+1)/2, (n+1)/2), r = vol(B_2^n)^{-1/n}.
inline double ball_support(int n, double p) {
  if (n < 2) throw DomainError("ball_support: n must be >= 2");
  if (!(p >= 1.0)) throw DomainError("ball_support: p must be >= 1");
  double log_r = -std::log(ball_volume(n)) / n;
  double log_hp = std::log(ball_volume(n - 1)) + (p + n) * log_r +
                  log_beta(0.5 * (p + 1.0), 0.5 * (n + 1.0));
  return std::exp(log_hp / p);
}

// radius of the volume-1 ball (its support function)
inline double ball_radius(int n) {
  return std::pow(ball_volume(n), -1.0 / n);
}

// ---------------------------------------------------------------------------
// Proposition-1 style sandwich
// ---------------------------------------------------------------------------

struct Prop1Band {
  double lower = 0.0;
  double ratio = 0.0;
  double upper = 0.0;
};

inline Prop1Band prop1_band(const Polytope& p, double pval, const Vec& theta) {
  Prop1Band b;
  b.lower = std::exp(log_beta(pval + 1.0, static_cast<double>(p.dim)) / pval);
  b.upper = std::exp((std::log(static_cast<double>(p.dim)) -
                      std::log(pval + 1.0)) / pval);
  b.ratio = centroid_support(p, pval, theta) / support(p, theta);
  return b;
}

// ---------------------------------------------------------------------------
// Peak of t^p f(t) and mass concentration around it
// ---------------------------------------------------------------------------

namespace detail {

// log f concavity makes phi(t) = p log t + log f(t) unimodal per piece
inline double golden_max(const std::function<double(double)>& phi, double a,
                         double b, double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = phi(x1), f2 = phi(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = phi(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = phi(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// Numeric maximizer of g_p(t) = t^p f(t) on [0, h]; golden section per piece
// plus breakpoint comparison, ties resolved toward larger t.
inline double t_peak(const SectionProfile& prof, double p) {
  auto phi_of = [&](const ProfilePiece& piece) {
    return [&piece, p](double t) {
      if (t <= 0.0) return -1e300;
      double f = piece.eval(t);
      if (f <= 0.0) return -1e300;
      return p * std::log(t) + std::log(f);
    };
  };
  double best_t = 0.0, best_phi = -1e300;
  auto consider = [&](double t, double phi) {
    const double tie = 1e-12 * (1.0 + std::fabs(best_phi));
    if (phi > best_phi + tie || (phi >= best_phi - tie && t > best_t)) {
      best_phi = std::max(best_phi, phi);
      best_t = t;
    }
  };
  for (const auto& piece : prof.pieces) {
    auto phi = phi_of(piece);
    double t = detail::golden_max(phi, piece.lo, piece.hi, 1e-12);
    consider(t, phi(t));
    consider(piece.hi, phi(piece.hi));
    if (piece.lo > 0.0) consider(piece.lo, phi(piece.lo));
  }
  return best_t;
}

// Fraction of Int t^p f carried by the window [t_p(1-eps), min(t_p(1+eps), h)].
inline double concentration_ratio(const SectionProfile& prof, double p,
                                  double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("concentration_ratio: eps must lie in (0,1)");
  double tp = t_peak(prof, p);
  double lo = std::max(0.0, tp * (1.0 - eps));
  double hi = std::min(prof.h, tp * (1.0 + eps));
  double num = profile_u_moment(prof, p, lo / prof.h, hi / prof.h);
  double den = profile_u_moment(prof, p, 0.0, 1.0);
  if (!(den > 0.0)) throw PrecisionLoss("total moment vanished");
  return std::min(1.0, num / den);
}

// ---------------------------------------------------------------------------
// Support evaluators
// ---------------------------------------------------------------------------

// A direction -> h(theta) callable on unit vectors. For the
// scaled-polar-centroid kind the value is the gauge of K_p = lambda
// Z_p^o(P1), i.e. the support function of its polar.
struct SupportEvaluator {
  std::string kind;
  int dim = 0;
  std::function<double(const Vec&)> eval;
};

inline SupportEvaluator make_polytope_support(const Polytope& p) {
  return {"polytope", p.dim, [p](const Vec& theta) { return support(p, theta); }};
}

inline SupportEvaluator make_centroid_support(const Polytope& p, double pval) {
  if (std::fabs(p.volume - 1.0) > 1e-9)
    throw VolumeNotNormalized("centroid evaluator requires |K| = 1");
  return {"centroid-of-polytope", p.dim, [p, pval](const Vec& theta) {
            return centroid_support(section_profile(p, theta), pval);
          }};
}

inline SupportEvaluator make_ball_support(int n) {
  double r = ball_radius(n);
  return {"analytic-ball", n, [r](const Vec&) { return r; }};
}

inline SupportEvaluator make_ball_centroid_support(int n, double p) {
  double h = ball_support(n, p);
  return {"analytic-ball", n, [h](const Vec&) { return h; }};
}

}  // namespace centroid

#endif
