#pragma once

// Gamma function at half-integers, sphere/ball constants and the
// continuation rules for Gamma and factorial quotients at poles.

namespace tcm {

/// A value in (1/2)Z, stored as twice its value so that arithmetic stays exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int v) { return HalfInt(2 * v); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr bool operator==(const HalfInt&) const = default;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Gamma(x) for x in {1/2, 1, 3/2, ...}. Throws std::domain_error otherwise.
double gamma_half(HalfInt x);

/// Gamma(-c + m) / Gamma(-c) for half-integer c >= 0, read through the
/// continuation (-1)^m Gamma(c+1) / Gamma(c-m+1) with 1/Gamma(pole) = 0.
double gamma_ratio_continued(HalfInt c, int m);

/// Pochhammer symbol Gamma(a + m) / Gamma(a), continued at non-positive a.
double pochhammer(HalfInt a, int m);

/// (i + l - 2)! / (l - 2)!, i.e. Gamma(i + l - 1) / Gamma(l - 1) with the
/// pole continuation for l in {0, 1}.
double factorial_ratio_continued(int l, int i);

/// Surface area of the unit sphere S^{d-1}; d >= 1.
double omega(int d);

/// Volume of the unit ball B^d; d >= 0.
double kappa_ball(int d);

double factorial(int m);
double binomial(int m, int i);

}  // namespace tcm
