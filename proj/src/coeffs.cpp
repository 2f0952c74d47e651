#include "tcm/coeffs.hpp"

#include "tcm/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tcm {

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma at twice_arg / 2.
double g2(int twice_arg) { return gamma_half(HalfInt::from_twice(twice_arg)); }

void require(bool ok, const char* fn, const char* what) {
  if (!ok) throw std::domain_error(std::string(fn) + ": " + what);
}

}  // namespace

double alpha(int n, int j, int k) {
  require(0 <= j && j <= k && k <= n, "alpha", "requires 0 <= j <= k <= n");
  return g2(n - k + j + 1) * g2(k + 1) / (g2(n + 1) * g2(j + 1));
}

double c_norm(int n, int j, int r, int s, int l) {
  require(n >= 1 && 0 <= j && j <= n, "c_norm", "requires 0 <= j <= n");
  require(r >= 0 && s >= 0 && l >= 0, "c_norm", "negative index");
  const double inv_rs = 1.0 / (factorial(r) * factorial(s));
  if (j == n) {
    require(s == 0, "c_norm", "j = n requires s = 0");
    return omega(n + 2 * l) / (factorial(r) * omega(n));
  }
  if (j == 0) {
    if (l >= 1) return 1.0;
    return inv_rs * omega(n) / omega(n + s);
  }
  return inv_rs * (omega(n - j) / omega(n - j + s)) * (omega(j + 2 * l) / omega(j));
}

double equal_dim_coeff(int n, int k, int s) {
  require(0 <= k && k <= n && s >= 0, "equal_dim_coeff", "requires 0 <= k <= n, s >= 0");
  if (s % 2 != 0) return 0.0;
  const int h = s / 2;
  return pochhammer(HalfInt::from_twice(n - k), h) /
         (std::pow(2.0 * kPi, s) * factorial(h));
}

double d_coeff(int n, int j, int k, int s, int l, int i, int m) {
  require(0 <= j && j <= k && k <= n, "d_coeff", "requires 0 <= j <= k <= n");
  require(s >= 0 && l >= 0 && i >= 0 && m >= 0, "d_coeff", "negative index");
  require(m <= s / 2, "d_coeff", "requires m <= floor(s/2)");
  if (i > m) return 0.0;
  if (k == j) {
    // Only Q^0 phi_n^{r,0,l+s/2} survives; the redefined coefficient.
    if (s % 2 != 0 || m != s / 2 || i != s / 2) return 0.0;
    return equal_dim_coeff(n, j, s);
  }
  if (s == 0) return alpha(n, j, k);
  if (k == n) return (i == 0 && m == 0) ? 1.0 : 0.0;

  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  double v = sign / (std::pow(4.0 * kPi, m) * factorial(m));
  v *= binomial(m, i) / std::pow(kPi, i);
  v *= factorial_ratio_continued(l, i);
  v *= alpha(n, j, k);
  v *= g2(n - k + j + 2) / g2(n - k + j + s + 2);
  v *= g2(j + s - 2 * m + 2) / g2(j + 2);
  v *= pochhammer(HalfInt::from_twice(n - k), m);
  return v;
}

double iota(int n, int k, int s, int m) {
  require(0 < k && k < n, "iota", "requires 0 < k < n");
  require(s >= 0 && 0 <= m && m <= s / 2, "iota", "requires 0 <= m <= floor(s/2)");
  return g2(n) * g2(k + s + 1 - 2 * m) * g2(n - k + 2 * m) /
         (std::pow(4.0 * kPi, m) * factorial(m) * g2(n + s + 1) * g2(k) * g2(n - k));
}

double lambda_coeff(int n, int k, int s, int m) {
  require(1 < k && k < n, "lambda_coeff", "requires 1 < k < n");
  require(s >= 0 && 0 <= m && m <= s / 2 + 1, "lambda_coeff", "requires 0 <= m <= floor(s/2)+1");
  const double common = g2(n) / (g2(n + s + 1) * g2(k) * g2(n - k));
  if (m == 0) {
    return -4.0 * kPi * kPi * (s + 2) / (n - 1) * g2(n) * g2(k + s + 1) / (g2(n + s + 1) * g2(k));
  }
  const int h = s / 2;
  if (m == h + 1) {
    return 2.0 * kPi / ((n - 1) * std::pow(4.0 * kPi, h) * factorial(h)) * common *
           g2(k + s + 1 - 2 * h) * g2(n - k + 2 * h);
  }
  const double bracket = 2.0 * m * (0.5 * (k + s + 1) - m) - (s - 2 * m + 2) * (0.5 * (n - k) + m - 1);
  return kPi / ((n - 1) * std::pow(4.0 * kPi, m - 1) * factorial(m)) * common *
         g2(k + s + 1 - 2 * m) * g2(n - k + 2 * m - 2) * bracket;
}

double kappa_coeff(int n, int k, int s, int m) {
  require(1 <= k && k < n, "kappa_coeff", "requires 1 <= k < n");
  require(s >= 0 && 0 <= m && m <= s / 2, "kappa_coeff", "requires 0 <= m <= floor(s/2)");
  if (k == 1 && m == s / 2) return line_coeff(n, s);
  if (s % 2 == 1 && 2 * m == s - 1) {
    const int h = (s - 1) / 2;
    return k * (n + s - 2) / (2.0 * (n - 1)) / (std::pow(4.0 * kPi, h) * factorial(h)) * g2(n) *
           g2(n - k + s - 1) / (g2(n + s + 1) * g2(n - k));
  }
  return (k - 1.0) / (n - 1) / (std::pow(4.0 * kPi, m) * factorial(m)) * g2(n) *
         g2(k + s - 1 - 2 * m) * g2(n - k + 2 * m) / (g2(n + s - 1) * g2(k) * g2(n - k));
}

double line_coeff(int n, int s) {
  require(n >= 2 && s >= 0, "line_coeff", "requires n >= 2, s >= 0");
  const int h = s / 2;
  return g2(s - 2 * h + 2) / (std::sqrt(kPi) * std::pow(4.0 * kPi, h) * factorial(h)) * g2(n) *
         g2(n + 1 + 2 * h) / (g2(n + 1) * g2(n + s + 1));
}

}  // namespace tcm
