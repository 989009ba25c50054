#ifndef CENTROID_SPECIAL_FUNCTIONS_HPP
#define CENTROID_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <string>

#include "centroid/errors.hpp"

namespace centroid {

// ---------------------------------------------------------------------------
// Gamma / Beta
// ---------------------------------------------------------------------------

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be positive");
  static const double c[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // recurrence keeps the Lanczos kernel in its sweet spot
    return log_gamma(x + 1.0) - std::log(x);
  }
  double z = x - 1.0;
  double series = c[0];
  for (int k = 1; k < 9; ++k) series += c[k] / (z + k);
  double t = z + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

inline double log_beta(double x, double y) {
  return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

inline double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta: arguments must be positive");
  return std::exp(log_beta(x, y));
}

namespace detail {

// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 4000;
  constexpr double kEps = 1e-16;
  constexpr double kFpMin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw PrecisionLoss("incomplete beta continued fraction did not converge (a=" +
                      std::to_string(a) + ", b=" + std::to_string(b) +
                      ", x=" + std::to_string(x) + ")");
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b). The complement xc = 1 - x is taken
// as an explicit argument so callers that know it exactly do not lose digits
// near x = 1.
inline double ibeta_reg(double a, double b, double x, double xc) {
  if (x <= 0.0) return 0.0;
  if (xc <= 0.0) return 1.0;
  double lf = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
              a * std::log(x) + b * std::log(xc);
  double front = std::exp(lf);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * detail::beta_cf(a, b, x) / a;
  return 1.0 - front * detail::beta_cf(b, a, xc) / b;
}

inline double ibeta_reg(double a, double b, double x) {
  return ibeta_reg(a, b, x, 1.0 - x);
}

// ---------------------------------------------------------------------------
// Beta-ratio asymptotics
// ---------------------------------------------------------------------------

// B(p+1, n)^{n/p}, evaluated in the log domain.
inline double beta_ratio_exact(double p, int n) {
  return std::exp((n / p) * log_beta(p + 1.0, static_cast<double>(n)));
}

// Four correction summands of the B(p+1,n)^{n/p} expansion, in order:
//   -n^2/p log p,  n/p log Gamma(n),  n^4/(2p^2) (log p)^2,
//   -n^3/p^2 log Gamma(n) log p.
struct ExpansionResult {
  double value = 0.0;
  std::array<double, 4> terms{};
};

inline ExpansionResult beta_ratio_expansion(double p, int n) {
  double lp = std::log(p);
  double lg = log_gamma(static_cast<double>(n));
  double nn = static_cast<double>(n);
  ExpansionResult r;
  r.terms[0] = -(nn * nn / p) * lp;
  r.terms[1] = (nn / p) * lg;
  r.terms[2] = (nn * nn * nn * nn / (2.0 * p * p)) * lp * lp;
  r.terms[3] = -(nn * nn * nn / (p * p)) * lg * lp;
  r.value = 1.0 + r.terms[0] + r.terms[1] + r.terms[2] + r.terms[3];
  return r;
}

// ---------------------------------------------------------------------------
// Sphere and ball measures
// ---------------------------------------------------------------------------

// (k-1)-dimensional surface measure of the unit sphere S^{k-1} in R^k.
inline double sphere_surface(int k) {
  return 2.0 * std::pow(M_PI, 0.5 * k) / std::exp(log_gamma(0.5 * k));
}

// Volume of the unit ball B_2^k.
inline double ball_volume(int k) {
  return std::pow(M_PI, 0.5 * k) / std::exp(log_gamma(0.5 * k + 1.0));
}

// ---------------------------------------------------------------------------
// Spherical caps
// ---------------------------------------------------------------------------

// Surface measure of C(theta, delta) = {phi : |phi - theta|_2 <= delta},
// via sigma(C) = vol(S^{n-2}) * Int_0^alpha sin^{n-2} t dt, cos alpha =
// 1 - delta^2/2. The sin-power integral is an incomplete Beta:
//   Int_0^alpha sin^m t dt = 1/2 B(sin^2 alpha; (m+1)/2, 1/2).
inline double cap_area(int n, double delta) {
  if (n < 2) throw DomainError("cap_area: n must be >= 2");
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("cap_area: delta must lie in (0,1)");
  double cos_a = 1.0 - 0.5 * delta * delta;
  double alpha = std::acos(cos_a);
  if (n == 2) return 2.0 * alpha;
  // sin^2 = (1-cos)(1+cos), exact split; complement is cos^2
  double x = (0.5 * delta * delta) * (2.0 - 0.5 * delta * delta);
  double xc = cos_a * cos_a;
  double m = static_cast<double>(n - 2);
  double sinint = 0.5 * beta(0.5 * (m + 1.0), 0.5) *
                  ibeta_reg(0.5 * (m + 1.0), 0.5, x, xc);
  return sphere_surface(n - 1) * sinint;
}

// Two-sided bounds on the cap area:
//   kappa (1 - d^2/4)^{(n-1)/2} d^{n-1}  <=  sigma(C)  <=
//   kappa (1 - d^2/4)^{(n-1)/2} (1 + d^4/4)^{1/2} / (1 - d^2/2) d^{n-1}
// with kappa = vol_{n-1}(B_2^{n-1}).
struct CapBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline CapBounds cap_area_bounds(int n, double delta) {
  if (n < 2) throw DomainError("cap_area_bounds: n must be >= 2");
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("cap_area_bounds: delta must lie in (0,1)");
  double d2 = delta * delta;
  double base = ball_volume(n - 1) * std::pow(1.0 - 0.25 * d2, 0.5 * (n - 1)) *
                std::pow(delta, n - 1);
  CapBounds b;
  b.lower = base;
  b.upper = base * std::sqrt(1.0 + 0.25 * d2 * d2) / (1.0 - 0.5 * d2);
  return b;
}

}  // namespace centroid

#endif
