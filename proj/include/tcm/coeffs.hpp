#pragma once

// Closed-form coefficients of the Crofton and kinematic formulae for
// tensorial curvature measures. All functions validate their index ranges
// and throw std::domain_error instead of evaluating a Gamma pole.

namespace tcm {

/// Classical Crofton constant for V_j of sections with k-flats; 0 <= j <= k <= n.
double alpha(int n, int j, int k);

/// Normalising constant c_{n,j}^{r,s,l} of the generalized tensorial curvature measure.
double c_norm(int n, int j, int r, int s, int l);

/// Coefficient d_{n,j,k}^{s,l,i,m} of the Crofton formula for j < k, with the
/// k = n tautology value and the redefined value at k = j. Indices with i > m
/// carry the factor binom(m, i) = 0.
double d_coeff(int n, int j, int k, int s, int l, int i, int m);

/// Prefactor of the j = k Crofton formula.
double equal_dim_coeff(int n, int k, int s);

/// Coefficient of Q^m phi_{n-1}^{r,s-2m,1} for sections of phi_{k-1}^{r,s,1}; 0 < k < n.
double iota(int n, int k, int s, int m);
/// Coefficient of Q^m phi_{n-1}^{r,s-2m+2,0} for the same integral; 1 < k < n,
/// 0 <= m <= floor(s/2) + 1.
double lambda_coeff(int n, int k, int s, int m);
/// Coefficient of Q^m phi_{n-1}^{r,s-2m,0} for sections of phi_{k-1}^{r,s,0};
/// 1 < k < n. For k = 1 the values with m < floor(s/2) are returned (they
/// vanish) and m = floor(s/2) is delegated to line_coeff.
double kappa_coeff(int n, int k, int s, int m);
/// Single coefficient of Q^{floor(s/2)} phi_{n-1}^{r,s-2floor(s/2),0} for
/// sections of phi_0^{r,s,0} with lines.
double line_coeff(int n, int s);

}  // namespace tcm
