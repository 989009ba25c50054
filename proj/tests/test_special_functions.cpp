#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "centroid/special_functions.hpp"

using namespace centroid;

TEST_CASE("log_gamma anchors") {
  REQUIRE(std::fabs(log_gamma(1.0)) <= 1e-13);
  REQUIRE(std::fabs(log_gamma(2.0)) <= 1e-13);

  // log(100!) by direct summation
  double s = 0.0;
  for (int k = 2; k <= 100; ++k) s += std::log(static_cast<double>(k));
  REQUIRE(std::fabs(log_gamma(101.0) - s) <= 1e-13 * s);
}

TEST_CASE("log_gamma against the C library on a grid") {
  for (double x : {0.05, 0.1, 0.31, 0.5, 0.77, 1.5, 2.25, 3.7, 10.3, 100.5,
                   1234.5, 1e4 + 0.5, 1e5 + 1.0}) {
    double mine = log_gamma(x);
    double ref = std::lgamma(x);
    REQUIRE(std::fabs(mine - ref) <= 1e-13 * std::max(1.0, std::fabs(ref)));
  }
  REQUIRE_THROWS_AS(log_gamma(0.0), DomainError);
  REQUIRE_THROWS_AS(log_gamma(-3.0), DomainError);
}

TEST_CASE("beta values and identities") {
  REQUIRE(std::fabs(beta(1.0, 1.0) - 1.0) <= 1e-14);
  REQUIRE(std::fabs(beta(101.0, 2.0) - 1.0 / 10302.0) <= 1e-12 / 10302.0);
  REQUIRE(std::fabs(beta(3.0, 2.0) - 1.0 / 12.0) <= 1e-12 / 12.0);
  for (double x : {0.5, 1.0, 2.5, 7.0, 40.0}) {
    for (double y : {0.5, 1.0, 3.25, 11.0}) {
      REQUIRE(std::fabs(beta(x, y) - beta(y, x)) <= 1e-12 * beta(x, y));
      double lhs = beta(x + 1.0, y) / beta(x, y);
      REQUIRE(std::fabs(lhs - x / (x + y)) <= 1e-12);
    }
  }
}

TEST_CASE("regularized incomplete beta basics") {
  // I_x(1,1) = x
  for (double x : {0.1, 0.25, 0.5, 0.9})
    REQUIRE(std::fabs(ibeta_reg(1.0, 1.0, x) - x) <= 1e-14);
  // complement identity
  for (double a : {0.5, 2.0, 17.0, 300.5}) {
    for (double b : {1.0, 2.0, 4.0}) {
      for (double x : {0.01, 0.3, 0.7, 0.99}) {
        double s = ibeta_reg(a, b, x) + ibeta_reg(b, a, 1.0 - x, x);
        REQUIRE(std::fabs(s - 1.0) <= 1e-13);
      }
    }
  }
  REQUIRE(ibeta_reg(5.0, 3.0, 0.0) == 0.0);
  REQUIRE(ibeta_reg(5.0, 3.0, 1.0) == 1.0);
}

TEST_CASE("beta ratio exact") {
  // frozen from high-precision evaluation
  REQUIRE(std::fabs(beta_ratio_exact(100.0, 2) - 0.831268969681896) <= 1e-12);
  double v = beta_ratio_exact(1.0, 2);  // B(2,2)^2 = 1/36
  REQUIRE(std::fabs(v - 1.0 / 36.0) <= 1e-12);
  for (int n : {2, 3, 4}) {
    for (double p : {1.0, 2.0, 10.0, 1e3, 1e5}) {
      double r = beta_ratio_exact(p, n);
      REQUIRE(r > 0.0);
      REQUIRE(r < 1.0);
    }
  }
}

TEST_CASE("beta ratio expansion at n=2, p=100") {
  ExpansionResult e = beta_ratio_expansion(100.0, 2);
  REQUIRE(std::fabs(e.value - 0.83275926651400722) <= 1e-12);
  REQUIRE(std::fabs(e.terms[0] - (-0.18420680743952364)) <= 1e-12);
  REQUIRE(e.terms[1] == 0.0);  // log Gamma(2) = 0
  REQUIRE(std::fabs(e.terms[2] - 0.016966073953) <= 1e-9);
  REQUIRE(e.terms[3] == 0.0);
  double total = 1.0;
  for (double t : e.terms) total += t;
  REQUIRE(e.value == total);
  double diff = std::fabs(beta_ratio_exact(100.0, 2) - e.value);
  REQUIRE(std::fabs(diff - 1.4902968e-3) <= 1e-9);
}

TEST_CASE("expansion error decays like the printed scale") {
  auto err = [](double p, int n) {
    return std::fabs(beta_ratio_exact(p, n) - beta_ratio_expansion(p, n).value);
  };
  for (int n : {2, 3}) {
    for (double p : {1e2, 1e3}) {
      REQUIRE(err(10.0 * p, n) / err(p, n) <= 0.02);
    }
  }
  // large-p consistency
  REQUIRE(std::fabs(beta_ratio_exact(1e4, 3) - beta_ratio_expansion(1e4, 3).value) <=
          1e-6);
}

TEST_CASE("cap area values") {
  // n = 3: sigma = 2 pi (1 - cos alpha) = pi delta^2
  REQUIRE(std::fabs(cap_area(3, 0.5) - 0.25 * M_PI) <= 1e-12);
  // n = 2: arc length 2 acos(1 - delta^2/2)
  REQUIRE(std::fabs(cap_area(2, 0.1) - 2.0 * std::acos(0.995)) <= 1e-14);
  // shrinks to zero
  REQUIRE(cap_area(3, 1e-4) < 1e-7);
  // monotone in delta
  double prev = 0.0;
  for (double d : {0.1, 0.3, 0.5, 0.7, 0.9, 0.999}) {
    double a = cap_area(4, d);
    REQUIRE(a > prev);
    prev = a;
  }
  REQUIRE_THROWS_AS(cap_area(3, 0.0), DomainError);
  REQUIRE_THROWS_AS(cap_area(3, 1.0), DomainError);
  REQUIRE_THROWS_AS(cap_area(1, 0.5), DomainError);
}

TEST_CASE("cap bounds sandwich the exact area") {
  for (int n = 2; n <= 6; ++n) {
    for (double d : {0.05, 0.1, 0.2, 0.5, 0.9}) {
      CapBounds b = cap_area_bounds(n, d);
      double exact = cap_area(n, d);
      REQUIRE(b.lower <= exact + 1e-12);
      REQUIRE(exact <= b.upper + 1e-12);
      REQUIRE(b.lower < b.upper);
    }
  }
  CapBounds b = cap_area_bounds(3, 0.5);
  REQUIRE(std::fabs(b.lower - 0.736310778185) <= 1e-9);
  REQUIRE(std::fabs(b.upper - 0.848046753797) <= 1e-9);
  double exact = cap_area(3, 0.5);
  REQUIRE(std::fabs(exact - 0.7853982) <= 1e-7);
  REQUIRE((b.lower <= exact && exact <= b.upper));
}
