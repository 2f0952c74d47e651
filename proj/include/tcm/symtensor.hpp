#pragma once

#include "tcm/linalg.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace tcm {

/// Largest tensor rank supported by the monomial tables.
inline constexpr int kMaxRank = 24;

/// Exponent vector of a monomial y^beta in at most kMaxDim variables.
using MultiIndex = std::array<std::uint8_t, kMaxDim>;

/// Symmetric tensor of rank p over R^n, stored as the coefficients of the
/// homogeneous polynomial T(y, ..., y) = sum_beta coeff[beta] y^beta.
///
/// The symmetric product of tensors is the product of their polynomials, and
/// the tensor coordinate T(e^beta) is coeff[beta] / multinomial(p; beta).
class SymTensor {
 public:
  SymTensor() : SymTensor(1, 0) {}
  SymTensor(int dim, int rank);

  static SymTensor zero(int dim, int rank) { return SymTensor(dim, rank); }
  static SymTensor scalar(int dim, double value);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Monomials in storage order: lexicographically descending exponents.
  std::span<const MultiIndex> monomials() const;
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  double coeff(const MultiIndex& beta) const;
  void set_coeff(const MultiIndex& beta, double v);
  /// Tensor coordinate T(e_1^{beta_1}, ..., e_n^{beta_n}).
  double coordinate(const MultiIndex& beta) const;
  double coordinate_at(std::size_t k) const;

  /// Polynomial value T(y, ..., y).
  double evaluate(const Vec& y) const;
  /// Scalar value of a rank-0 tensor.
  double value() const;
  bool is_zero() const;

  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(double a);
  /// this += a * o
  SymTensor& add_scaled(const SymTensor& o, double a);

  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(SymTensor a, double s) { return a *= s; }
  friend SymTensor operator*(double s, SymTensor a) { return a *= s; }
  /// Symmetric tensor product.
  friend SymTensor operator*(const SymTensor& a, const SymTensor& b);

  bool operator==(const SymTensor& o) const = default;

 private:
  int dim_;
  int rank_;
  std::vector<double> coeffs_;
};

/// Index of beta within the storage order of (dim, rank).
std::size_t monomial_index(int dim, int rank, const MultiIndex& beta);
double multinomial(int rank, const MultiIndex& beta);

SymTensor sym_product(const SymTensor& a, const SymTensor& b);
SymTensor power(const SymTensor& t, int q);
SymTensor add_scaled(const SymTensor& t, const SymTensor& u, double a);

/// Metric tensor Q, polynomial |y|^2.
SymTensor metric_tensor(int n);
/// Q(L) for the subspace spanned by the orthonormal columns of frame,
/// polynomial |p_L y|^2. Throws std::invalid_argument for non-orthonormal frames.
SymTensor subspace_metric_tensor(const Mat& frame);
/// x^r, polynomial <x, y>^r.
SymTensor vector_power(const Vec& x, int r);

/// Max over tensor coordinates of |T - U|.
double max_abs_coordinate_diff(const SymTensor& t, const SymTensor& u);
double max_abs_coordinate(const SymTensor& t);

/// Rotated tensor rho T, i.e. the polynomial y -> T(rho^T y).
SymTensor rotated(const SymTensor& t, const Mat& rho);

/// Coefficient-wise |a| * b bound used to propagate standard errors through
/// products with an exactly known factor.
SymTensor abs_product(const SymTensor& exact, const SymTensor& stderr_tensor);
/// Coefficient-wise sqrt(a^2 + b^2).
SymTensor hypot(const SymTensor& a, const SymTensor& b);

}  // namespace tcm
