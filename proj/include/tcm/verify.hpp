#pragma once

#include "tcm/conemoment.hpp"
#include "tcm/measures.hpp"
#include "tcm/polytope.hpp"
#include "tcm/symtensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tcm {

struct SamplingOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  double margin = 0.05;
  int threads = 0;            // 0: all cores
  MomentBudget budget;        // cone moments of the sampled sections
  int max_attempts = 1000;    // resampling cap for grazing positions
};

/// Monte-Carlo estimate of a tensor-valued integral.
struct McEstimate {
  SymTensor mean;
  SymTensor std_error;
  std::uint64_t samples = 0;
  std::uint64_t rejections = 0;  // grazing positions that were resampled
  std::uint64_t hits = 0;        // samples with a nonempty intersection
  std::uint64_t cone_mc_samples = 0;  // Monte-Carlo draws spent on cone moments
};

/// Right-hand side of the Crofton formula for sections of phi_j^{r,s,l} with k-flats.
MeasureValue crofton_rhs(const Polytope& p, const Region& beta, int j, int k, int r, int s, int l,
                         const MomentBudget& budget = {});
/// Integral over k-flats E of phi_j^{r,s,l}(P cap E, beta cap E).
McEstimate crofton_lhs(const Polytope& p, const Region& beta, int j, int k, int r, int s, int l,
                       const SamplingOptions& opt);

/// Single-sum expansions of the Crofton right-hand side for j = k - 1.
enum class Expansion {
  iota,         // l = 1, in terms of Q^m phi_{n-1}^{r,s-2m,1}
  lambda,       // l = 1, in terms of Q^m phi_{n-1}^{r,s-2m+2,0}
  kappa,        // l = 0, in terms of Q^m phi_{n-1}^{r,s-2m,0}
  single_line,  // k = 1, l = 0
};
MeasureValue expansion_rhs(const Polytope& p, const Region& beta, Expansion e, int k, int r, int s,
                           const MomentBudget& budget = {});

/// Right-hand side of the kinematic formula for phi_j^{r,s,l}(P cap gP', beta cap g beta').
MeasureValue kinematic_rhs(const Polytope& p, const Region& beta, const Polytope& other,
                           const Region& other_beta, int j, int r, int s, int l,
                           const MomentBudget& budget = {});
McEstimate kinematic_lhs(const Polytope& p, const Region& beta, const Polytope& other,
                         const Region& other_beta, int j, int r, int s, int l,
                         const SamplingOptions& opt);

struct CoordinateCheck {
  MultiIndex beta{};
  double lhs = 0, lhs_se = 0, rhs = 0, rhs_se = 0;
  double z = 0;  // |lhs - rhs| / max(combined stderr, 1e-9 / 3); pass iff z <= 3
  bool pass = true;
};

struct VerificationReport {
  std::string theorem;
  int n = 0, j = 0, k = 0, r = 0, s = 0, l = 0;
  std::vector<CoordinateCheck> coords;
  double max_z = 0;
  bool pass = true;
  std::uint64_t samples = 0;
  std::uint64_t rejections = 0;
  std::uint64_t hits = 0;
  double wall_time = 0;
  std::vector<std::string> notes;
};

/// Coordinatewise comparison: |lhs - rhs| <= max(3 sqrt(se_l^2 + se_r^2), 1e-9).
VerificationReport compare(const std::string& theorem, const McEstimate& lhs, const MeasureValue& rhs);

VerificationReport crofton_verify(const Polytope& p, const Region& beta, int j, int k, int r, int s,
                                  int l, const SamplingOptions& opt);
VerificationReport kinematic_verify(const Polytope& p, const Polytope& other, const Region& beta,
                                    const Region& other_beta, int j, int r, int s, int l,
                                    const SamplingOptions& opt);

/// All (j, m, r, s, l) with 2m + 2l + r + s = p, l = 0 for j in {0, n-1},
/// s = l = 0 for j = n.
std::vector<MeasureIndex> enumerate_indices(int n, int p);

struct RankResult {
  int rank = 0;
  int expected = 0;
  int rows = 0;
  std::vector<double> singular_values;
  std::vector<MeasureIndex> indices;
};

/// Numerical rank of the evaluation matrix of all enumerated valuations on
/// random polytopes and localized regions.
RankResult independence_rank(int n, int p, int trials, std::uint64_t seed);

struct SteinerRow {
  double eps = 0;
  double mc = 0;
  double std_error = 0;
  double exact = 0;
  double rel_error = 0;
  bool pass = true;
};

struct SteinerReport {
  std::vector<double> intrinsic_volumes;
  std::vector<SteinerRow> rows;
  std::uint64_t samples = 0;
  bool pass = true;
};

/// Monte-Carlo volume of P + eps B^n against the Steiner polynomial.
SteinerReport steiner_check(const Polytope& p, const std::vector<double>& eps, std::uint64_t samples,
                            std::uint64_t seed, int threads = 0, double rel_tol = 0.005);

/// beta cap other; the universe is neutral.
Region intersect_regions(const Region& a, const Region& b);

}  // namespace tcm
