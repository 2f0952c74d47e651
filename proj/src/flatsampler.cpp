#include "tcm/flatsampler.hpp"

#include "tcm/specialfn.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tcm {

Mat random_rotation(int n, CounterRng& rng) {
  std::normal_distribution<double> gauss;
  Mat g(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) g(r, c) = gauss(rng);
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat rr = qr.matrixQR();
  for (int c = 0; c < n; ++c) {
    if (rr(c, c) < 0) q.col(c) = -q.col(c);
  }
  if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
  return q;
}

FlatSampler::FlatSampler(const Polytope& p, int k, double margin)
    : n_(p.ambient_dim()), k_(k), center_(p.centroid()) {
  if (k < 1 || k > n_ - 1) throw std::invalid_argument("FlatSampler: need 1 <= k <= n - 1");
  if (margin < 0) throw std::invalid_argument("FlatSampler: negative margin");
  radius_ = p.circumradius() + margin;
  weight_ = kappa_ball(n_ - k) * std::pow(radius_, n_ - k);
}

FlatSample FlatSampler::sample(CounterRng& rng) const {
  const Mat rho = random_rotation(n_, rng);
  const int d = n_ - k_;
  std::normal_distribution<double> gauss;
  Vec dir(d);
  for (int i = 0; i < d; ++i) dir[i] = gauss(rng);
  const double rad = radius_ * std::pow(rng.uniform(), 1.0 / d);
  Vec t = Vec::Zero(n_);
  t.tail(d) = dir / dir.norm() * rad;
  FlatSample out;
  out.frame = rho.leftCols(k_);
  out.base = center_ + rho * t;
  out.weight = weight_;
  return out;
}

MotionSampler::MotionSampler(const Polytope& p, const Polytope& other, double margin)
    : n_(p.ambient_dim()), center_p_(p.centroid()), center_other_(other.centroid()) {
  if (other.ambient_dim() != n_) throw std::invalid_argument("MotionSampler: dimension mismatch");
  if (margin < 0) throw std::invalid_argument("MotionSampler: negative margin");
  half_width_ = p.circumradius() + other.circumradius() + margin;
  weight_ = std::pow(2.0 * half_width_, n_);
}

MotionSample MotionSampler::sample(CounterRng& rng) const {
  MotionSample out;
  out.rotation = random_rotation(n_, rng);
  Vec t(n_);
  for (int i = 0; i < n_; ++i) t[i] = half_width_ * (2.0 * rng.uniform() - 1.0);
  out.translation = center_p_ - out.rotation * center_other_ + t;
  out.weight = weight_;
  return out;
}

}  // namespace tcm
