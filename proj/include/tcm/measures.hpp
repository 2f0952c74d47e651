#pragma once

#include "tcm/conemoment.hpp"
#include "tcm/polytope.hpp"
#include "tcm/symtensor.hpp"

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace tcm {

/// Index of the valuation Q^m phi_j^{r,s,l}.
struct MeasureIndex {
  int j = 0;
  int r = 0;
  int s = 0;
  int l = 0;
  int m = 0;

  int rank() const { return r + s + 2 * l + 2 * m; }
  auto operator<=>(const MeasureIndex&) const = default;
};

struct MeasureValue {
  SymTensor tensor;
  SymTensor std_error;  // zero when every cone moment was exact
  int faces = 0;        // faces that contributed
  std::uint64_t mc_samples = 0;
  bool exact = true;
};

/// Evaluates many indices on one polytope, caching triangulations, face
/// metric tensors and cone moments.
class MeasureEvaluator {
 public:
  explicit MeasureEvaluator(const Polytope& p, MomentBudget budget = {});

  MeasureValue evaluate(const MeasureIndex& idx, const Region& beta = Region::universe());
  const Polytope& polytope() const { return p_; }

  /// Integral of x^r over F intersected with beta, F = faces(j)[f].
  SymTensor face_moment(int j, int f, int r, const Region& beta);
  const MomentResult& cone_moment(int j, int f, int s);
  const SymTensor& face_metric_power(int j, int f, int l);

 private:
  const Polytope& p_;
  MomentBudget budget_;
  std::map<std::pair<int, int>, std::vector<Simplex>> simplices_;
  std::map<std::tuple<int, int, int>, SymTensor> face_moments_;
  std::map<std::tuple<int, int, int>, MomentResult> cone_moments_;
  std::map<std::tuple<int, int, int>, SymTensor> metric_powers_;
};

/// phi_j^{r,s,l}(P, beta), times Q^m.
MeasureValue tensorial_measure(const Polytope& p, const MeasureIndex& idx, const Region& beta = Region::universe(),
                 const MomentBudget& budget = {});

/// Scalar curvature measure C_q(P, beta).
double curvature_measure(const Polytope& p, int q, const Region& beta = Region::universe(),
                         const MomentBudget& budget = {});
double intrinsic_volume(const Polytope& p, int q, const MomentBudget& budget = {});

/// Max coordinate difference between phi_{n-1}^{r,s',1} and
/// 2pi/(n-1) (Q phi_{n-1}^{r,s',0} - 2pi (s'+2) phi_{n-1}^{r,s'+2,0}).
double tcm_relation_check(const Polytope& p, const Region& beta, int r, int s_prime);

}  // namespace tcm
