#pragma once

#include "tcm/linalg.hpp"
#include "tcm/polytope.hpp"
#include "tcm/rng.hpp"

namespace tcm {

/// Haar-distributed rotation in SO(n).
Mat random_rotation(int n, CounterRng& rng);

/// The flat base + span(frame) together with its estimator weight.
struct FlatSample {
  Mat frame;  // n x k, orthonormal
  Vec base;
  double weight = 0.0;
};

/// Draws k-flats rho(E_k + t) + c with rho Haar and t uniform in the
/// radius-R ball of E_k^perp, so that E[w f(E)] is the integral of f over
/// the affine Grassmannian for any f supported on flats meeting P.
class FlatSampler {
 public:
  FlatSampler(const Polytope& p, int k, double margin = 0.05);

  FlatSample sample(CounterRng& rng) const;

  int k() const { return k_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  double weight() const { return weight_; }

 private:
  int n_;
  int k_;
  Vec center_;
  double radius_;
  double weight_;
};

struct MotionSample {
  Mat rotation;
  Vec translation;
  double weight = 0.0;
};

/// Draws rigid motions g = (rho, t) with rho Haar and t uniform in a box that
/// contains every t for which P meets rho P' + t.
class MotionSampler {
 public:
  MotionSampler(const Polytope& p, const Polytope& other, double margin = 0.05);

  MotionSample sample(CounterRng& rng) const;

  double half_width() const { return half_width_; }
  double weight() const { return weight_; }

 private:
  int n_;
  Vec center_p_;
  Vec center_other_;
  double half_width_;
  double weight_;
};

}  // namespace tcm
