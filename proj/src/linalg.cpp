#include "tcm/linalg.hpp"

namespace tcm {

namespace {

// Greedy Gram-Schmidt: repeatedly adds the candidate with the largest
// residual against the current basis.
Mat greedy_basis(std::vector<Vec> residuals, int n, const Mat& start, double tol) {
  Mat basis = start;
  for (;;) {
    if (basis.cols() >= n) break;
    int best = -1;
    double best_norm = tol;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      Vec& r = residuals[i];
      for (int c = 0; c < basis.cols(); ++c) r -= basis.col(c).dot(r) * basis.col(c);
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    Vec b = residuals[best] / best_norm;
    // one re-orthogonalisation pass for stability
    for (int c = 0; c < basis.cols(); ++c) b -= basis.col(c).dot(b) * basis.col(c);
    b.normalize();
    basis.conservativeResize(n, basis.cols() + 1);
    basis.col(basis.cols() - 1) = b;
    residuals[best].setZero();
  }
  return basis;
}

}  // namespace

Mat affine_frame(std::span<const Vec> points, const Vec& base, double tol) {
  const int n = static_cast<int>(base.size());
  std::vector<Vec> res;
  res.reserve(points.size());
  for (const Vec& p : points) res.push_back(p - base);
  return greedy_basis(std::move(res), n, Mat(n, 0), tol);
}

Mat orthogonal_complement(const Mat& frame, int n) {
  std::vector<Vec> res;
  for (int i = 0; i < n; ++i) res.push_back(Vec::Unit(n, i));
  const Mat full = greedy_basis(std::move(res), n, frame, 1e-8);
  return full.rightCols(full.cols() - frame.cols());
}

Mat project_out(const Mat& vectors, const Mat& frame, double tol) {
  const int n = static_cast<int>(vectors.rows());
  std::vector<Vec> res;
  for (int c = 0; c < vectors.cols(); ++c) res.push_back(vectors.col(c));
  const Mat full = greedy_basis(std::move(res), n, frame, tol);
  return full.rightCols(full.cols() - frame.cols());
}

bool is_orthonormal(const Mat& frame, double tol) {
  const Mat g = frame.transpose() * frame;
  if (g.size() == 0) return true;
  return (g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace tcm
