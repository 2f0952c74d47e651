#include "tcm/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tcm {

double gamma_half(HalfInt x) {
  const int tw = x.twice();
  if (tw <= 0) {
    throw std::domain_error("gamma_half: argument must be positive, got " +
                            std::to_string(x.value()));
  }
  if (tw % 2 == 0) {
    // Gamma(m) = (m - 1)!
    return factorial(tw / 2 - 1);
  }
  // Gamma(m + 1/2) = sqrt(pi) * prod_{t < m} (t + 1/2)
  const int m = (tw - 1) / 2;
  double v = std::sqrt(std::numbers::pi);
  for (int t = 0; t < m; ++t) v *= t + 0.5;
  return v;
}

double gamma_ratio_continued(HalfInt c, int m) {
  if (c.twice() < 0) throw std::domain_error("gamma_ratio_continued: c must be >= 0");
  if (m < 0) throw std::domain_error("gamma_ratio_continued: m must be >= 0");
  // (-1)^m Gamma(c+1)/Gamma(c-m+1) = (-1)^m prod_{t<m} (c - t); the product
  // hits zero exactly when c is an integer below m.
  double v = 1.0;
  for (int t = 0; t < m; ++t) v *= -(c.value() - t);
  return v;
}

double pochhammer(HalfInt a, int m) {
  if (m < 0) throw std::domain_error("pochhammer: m must be >= 0");
  if (a.twice() <= 0) return gamma_ratio_continued(-a, m);
  double v = 1.0;
  for (int t = 0; t < m; ++t) v *= a.value() + t;
  return v;
}

double factorial_ratio_continued(int l, int i) {
  if (l < 0 || i < 0) throw std::domain_error("factorial_ratio_continued: negative index");
  return pochhammer(HalfInt::integer(l - 1), i);
}

double omega(int d) {
  if (d < 1) throw std::domain_error("omega: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma_half(HalfInt::from_twice(d));
}

double kappa_ball(int d) {
  if (d < 0) throw std::domain_error("kappa_ball: dimension must be >= 0");
  if (d == 0) return 1.0;
  return std::pow(std::numbers::pi, 0.5 * d) / gamma_half(HalfInt::from_twice(d + 2));
}

double factorial(int m) {
  if (m < 0) throw std::domain_error("factorial: negative argument");
  double v = 1.0;
  for (int t = 2; t <= m; ++t) v *= t;
  return v;
}

double binomial(int m, int i) {
  if (i < 0 || i > m) return 0.0;
  double v = 1.0;
  for (int t = 1; t <= i; ++t) v = v * (m - i + t) / t;
  return v;
}

}  // namespace tcm
