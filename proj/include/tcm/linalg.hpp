#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace tcm {

/// Largest ambient dimension handled by the geometry and tensor code.
inline constexpr int kMaxDim = 4;

// Fixed-capacity dynamic types: no heap traffic in the sampling loops.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Orthonormal basis (as columns) of span{points[i] - base}, built greedily by
/// largest residual. Directions with residual below tol are dropped.
Mat affine_frame(std::span<const Vec> points, const Vec& base, double tol);

/// Orthonormal basis of the orthogonal complement of the column span of frame
/// (frame must have orthonormal columns) in R^n.
Mat orthogonal_complement(const Mat& frame, int n);

/// Orthonormal basis of the projection of the columns of `vectors` onto the
/// orthogonal complement of `frame`.
Mat project_out(const Mat& vectors, const Mat& frame, double tol);

bool is_orthonormal(const Mat& frame, double tol);

}  // namespace tcm
