#pragma once

#include "tcm/polytope.hpp"
#include "tcm/symtensor.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcm {

enum class MomentMethod { point, arc, full_sphere, quadrature, monte_carlo };

std::string to_string(MomentMethod m);

struct MomentBudget {
  std::uint64_t samples = 200000;  // Monte-Carlo draws per cone
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;        // distinguishes cones sharing a seed
  int quadrature_order = 24;       // Gauss-Legendre points per axis
  bool force_monte_carlo = false;
};

struct MomentResult {
  SymTensor tensor;
  SymTensor std_error;  // zero unless method == monte_carlo
  MomentMethod method = MomentMethod::point;
  std::uint64_t samples = 0;
};

/// Raised when the acceptance rate of the sampler stays below 1e-4.
class ConeMomentError : public std::runtime_error {
 public:
  ConeMomentError(const std::string& what, MomentResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const MomentResult& partial() const { return partial_; }

 private:
  MomentResult partial_;
};

/// Integral of u^s over N intersected with the unit sphere, with respect to
/// the (dim lin N - 1)-dimensional Hausdorff measure.
MomentResult cone_sphere_moment(const Cone& cone, int s, const MomentBudget& budget = {});

/// Same moment of the whole unit sphere of the subspace spanned by frame.
SymTensor full_sphere_moment(const Mat& frame, int s);

/// Integral of (cos t a + sin t b)^s for t in [0, theta].
SymTensor arc_moment(const Vec& a, const Vec& b, double theta, int s);

/// Gauss-Legendre nodes and weights on [0, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Quadrature& gauss_legendre(int order);

}  // namespace tcm
