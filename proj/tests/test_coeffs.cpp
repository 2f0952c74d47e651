#include "doctest.h"

#include "tcm/coeffs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace tcm;

namespace {

constexpr double pi = std::numbers::pi;

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1e-300, std::abs(b)); }

// Plain product formula with std::tgamma, valid away from the pole cases
// (l >= 2, j < k < n).
double d_plain(int n, int j, int k, int s, int l, int i, int m) {
  auto G = [](double x) { return std::tgamma(x); };
  double binom = 1.0;
  for (int t = 0; t < i; ++t) binom *= static_cast<double>(m - t) / (t + 1);
  const double a = G((n - k + j + 1) / 2.0) * G((k + 1) / 2.0) / (G((n + 1) / 2.0) * G((j + 1) / 2.0));
  return std::pow(-1.0, i) / (std::pow(4 * pi, m) * G(m + 1)) * binom / std::pow(pi, i) * G(i + l - 1) /
         G(l - 1) * a * G((n - k + j) / 2.0 + 1) / G((n - k + j + s) / 2.0 + 1) * G((j + s) / 2.0 - m + 1) /
         G(j / 2.0 + 1) * G((n - k) / 2.0 + m) / G((n - k) / 2.0);
}

}  // namespace

TEST_CASE("alpha") {
  CHECK(alpha(2, 0, 1) == doctest::Approx(2 / pi).epsilon(1e-14));
  CHECK(alpha(3, 1, 2) == doctest::Approx(pi / 4).epsilon(1e-14));
  for (int n = 1; n <= 6; ++n) {
    for (int j = 0; j <= n; ++j) CHECK(alpha(n, j, n) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(alpha(2, 2, 1), std::domain_error);
  CHECK_THROWS_AS(alpha(2, 0, 3), std::domain_error);
}

TEST_CASE("normalising constants") {
  CHECK(c_norm(2, 1, 0, 0, 0) == doctest::Approx(1.0));
  for (int n = 1; n <= 5; ++n) CHECK(c_norm(n, 0, 2, 3, 2) == 1.0);
  CHECK(c_norm(2, 2, 0, 0, 1) == doctest::Approx(pi));
  // 0 < j < n: (1/(r!s!)) omega_{n-j}/omega_{n-j+s} omega_{j+2l}/omega_j, with omega_d = 2 pi^{d/2}/Gamma(d/2)
  auto om = [](int d) { return 2 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0); };
  CHECK(c_norm(4, 2, 1, 2, 1) == doctest::Approx(1.0 / 2 * om(2) / om(4) * om(4) / om(2)));
  CHECK(c_norm(3, 1, 2, 1, 2) == doctest::Approx(1.0 / 2 * om(2) / om(3) * om(5) / om(1)));
  CHECK(c_norm(3, 0, 1, 2, 0) == doctest::Approx(0.5 * om(3) / om(5)));
  CHECK_THROWS_AS(c_norm(2, 2, 0, 1, 0), std::domain_error);
  CHECK_THROWS_AS(c_norm(2, 3, 0, 0, 0), std::domain_error);
}

TEST_CASE("d coefficients") {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j < k; ++j) {
        for (int l = 0; l <= 3; ++l) CHECK(d_coeff(n, j, k, 0, l, 0, 0) == alpha(n, j, k));
      }
    }
  }
  CHECK(d_coeff(4, 1, 4, 4, 2, 0, 0) == 1.0);
  CHECK(d_coeff(4, 1, 4, 4, 2, 1, 2) == 0.0);
  CHECK(d_coeff(3, 1, 2, 2, 0, 0, 1) == doctest::Approx(1.0 / 64).epsilon(1e-14));
  // redefined value at k = j
  CHECK(d_coeff(3, 1, 1, 2, 0, 1, 1) == equal_dim_coeff(3, 1, 2));
  CHECK(d_coeff(3, 1, 1, 2, 0, 0, 1) == 0.0);
  CHECK(d_coeff(3, 1, 1, 3, 0, 1, 1) == 0.0);
  for (int n = 3; n <= 6; ++n) {
    for (int k = 2; k < n; ++k) {
      for (int j = 0; j < k; ++j) {
        for (int s = 1; s <= 6; ++s) {
          for (int m = 0; m <= s / 2; ++m) {
            for (int i = 0; i <= m; ++i) {
              CHECK(rel_close(d_coeff(n, j, k, s, 3, i, m), d_plain(n, j, k, s, 3, i, m), 1e-11));
            }
          }
        }
      }
    }
  }
  CHECK_THROWS_AS(d_coeff(3, 1, 2, 2, 0, 0, 2), std::domain_error);
}

TEST_CASE("prefactor for j = k") {
  CHECK(equal_dim_coeff(3, 1, 3) == 0.0);
  for (int n = 1; n <= 5; ++n) CHECK(equal_dim_coeff(n, n, 0) == 1.0);
  CHECK(equal_dim_coeff(4, 4, 2) == 0.0);
  CHECK(equal_dim_coeff(3, 1, 2) == doctest::Approx(1 / (4 * pi * pi)).epsilon(1e-14));
  CHECK(equal_dim_coeff(2, 1, 2) == doctest::Approx(1 / (8 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("single-sum coefficients") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int s = 0; s <= 8; ++s) {
        for (int m = 0; m <= s / 2; ++m) CHECK(rel_close(iota(n, k, s, m), d_coeff(n, k - 1, k, s, 1, 0, m), 1e-12));
        for (int m = 0; m < s / 2; ++m) CHECK(kappa_coeff(n, 1, s, m) == 0.0);
      }
    }
  }
  for (int n = 3; n <= 6; ++n) {
    for (int k = 2; k < n; ++k) {
      for (int s = 0; s <= 8; ++s) {
        const double want = -4 * pi * pi * (s + 2) / (n - 1) * std::tgamma(n / 2.0) * std::tgamma((k + s + 1) / 2.0) /
                            (std::tgamma((n + s + 1) / 2.0) * std::tgamma(k / 2.0));
        CHECK(rel_close(lambda_coeff(n, k, s, 0), want, 1e-12));
      }
    }
  }
  CHECK_THROWS_AS(iota(3, 3, 2, 0), std::domain_error);
  CHECK_THROWS_AS(lambda_coeff(3, 1, 2, 0), std::domain_error);
  CHECK_THROWS_AS(lambda_coeff(4, 2, 2, 3), std::domain_error);
}
