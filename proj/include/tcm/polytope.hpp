#pragma once

#include "tcm/linalg.hpp"
#include "tcm/symtensor.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace tcm {

/// Default tolerance for tightness, membership and deduplication.
inline constexpr double kGeomTol = 1e-9;

struct Halfspace {
  Vec normal;     // outer normal
  double offset;  // <normal, x> <= offset
};

struct Facet {
  Vec normal;  // unit outer normal, lies in the direction space of aff(P)
  double offset;
  std::vector<int> vertices;  // sorted
};

struct Face {
  int dim = 0;
  std::vector<int> vertices;  // sorted
  std::vector<int> facets;    // facets of P containing this face
  Vec point;                  // relative-interior point (vertex centroid)
  Mat frame;                  // orthonormal basis of the direction space
};

class EmptyPolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Convex polytope in R^n (n <= 4), possibly lower-dimensional, with both
/// representations and its complete face lattice. Immutable after construction.
class Polytope {
 public:
  /// Convex hull of the given points (non-extreme points are discarded).
  static Polytope from_vertices(std::span<const Vec> points, double tol = kGeomTol);
  /// Bounded intersection of halfspaces in R^n.
  static Polytope from_halfspaces(std::span<const Halfspace> halfspaces, int n,
                                  double tol = kGeomTol);

  int ambient_dim() const { return n_; }
  /// Dimension of the affine hull.
  int dim() const { return static_cast<int>(hull_frame_.cols()); }
  bool full_dimensional() const { return dim() == n_; }

  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Face>& faces(int j) const;
  /// Faces of dimension j - 1 contained in faces(j)[idx].
  std::vector<int> subfaces(int j, int idx) const;

  const Vec& hull_point() const { return hull_point_; }
  const Mat& hull_frame() const { return hull_frame_; }
  /// Orthonormal basis of (aff P)^perp.
  const Mat& normal_frame() const { return normal_frame_; }

  /// Facet inequalities, plus the pairs of opposite inequalities that cut out
  /// aff(P) when P is lower-dimensional.
  std::vector<Halfspace> halfspaces() const;

  bool contains(const Vec& x, double tol = kGeomTol) const;
  Vec centroid() const;
  /// max |v - centroid| over vertices.
  double circumradius() const;
  double tol() const { return tol_; }

  /// rho P + t for an orthogonal rho.
  Polytope transformed(const Mat& rho, const Vec& t) const;
  Polytope scaled(double lambda) const;

 private:
  friend struct PolytopeBuilder;
  Polytope() = default;
  void build_faces();

  int n_ = 0;
  double tol_ = kGeomTol;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<Face>> faces_;
  Vec hull_point_;
  Mat hull_frame_;
  Mat normal_frame_;
};

/// Finitely generated convex cone N = C (+) L with C pointed and L a linear
/// subspace, plus a membership oracle u in N <=> max_w <u, w> <= tol.
class Cone {
 public:
  Cone(int n, std::vector<Vec> pointed_generators, Mat pointed_frame, Mat lineality_frame,
       std::vector<Vec> membership, double tol = kGeomTol);

  int ambient_dim() const { return n_; }
  /// dim lin(N)
  int dim() const { return pointed_dim() + lineality_dim(); }
  int pointed_dim() const { return static_cast<int>(pointed_frame_.cols()); }
  int lineality_dim() const { return static_cast<int>(lineality_frame_.cols()); }

  /// Unit generators of the pointed part.
  const std::vector<Vec>& pointed_generators() const { return pointed_generators_; }
  /// Pointed generators followed by +/- the lineality basis.
  std::vector<Vec> generators() const;
  const Mat& pointed_frame() const { return pointed_frame_; }
  const Mat& lineality_frame() const { return lineality_frame_; }
  /// Orthonormal basis of lin(N).
  Mat frame() const;

  bool contains(const Vec& u, double tol = kGeomTol) const;

 private:
  int n_;
  std::vector<Vec> pointed_generators_;
  Mat pointed_frame_;
  Mat lineality_frame_;
  std::vector<Vec> membership_;
  double tol_;
};

/// Normal cone N(P, F) of P at F = P.faces(j)[idx].
Cone normal_cone(const Polytope& p, int j, int idx);

/// Borel window: the whole space or a convex polyhedron.
class Region {
 public:
  static Region universe() { return Region(); }
  /// Throws std::invalid_argument for an unbounded polyhedron unless allowed.
  static Region from_halfspaces(std::vector<Halfspace> halfspaces, int n,
                                bool allow_unbounded = false);
  static Region box(const Vec& lo, const Vec& hi);

  bool is_universe() const { return universe_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  bool contains(const Vec& x, double tol = kGeomTol) const;

  Region transformed(const Mat& rho, const Vec& t) const;
  Region scaled(double lambda) const;

 private:
  Region() = default;
  bool universe_ = true;
  std::vector<Halfspace> halfspaces_;
};

bool is_bounded(std::span<const Halfspace> halfspaces, int n);

enum class CutStatus { ok, empty, grazing };

struct Cut {
  CutStatus status = CutStatus::empty;
  std::optional<Polytope> polytope;
};

/// P intersected with the affine flat {base + frame y}. Non-transversal
/// positions (a vertex with more than k tight facets, the flat inside a facet
/// hyperplane, or a lower-dimensional intersection) are reported as grazing.
Cut intersect_flat(const Polytope& p, const Mat& frame, const Vec& base);

/// P intersected with rho P' + t; grazing positions reported as for flats.
Cut intersect_moved(const Polytope& p, const Polytope& other, const Mat& rho, const Vec& t);

/// F intersected with a region, as a polytope of the same dimension as F, or
/// nullopt if the intersection is empty or lower-dimensional.
std::optional<Polytope> clip_face(const Polytope& p, int j, int idx, const Region& region);

/// A j-simplex given by its j + 1 vertices.
using Simplex = std::vector<Vec>;

/// Recursive fan triangulation of the face P.faces(j)[idx].
std::vector<Simplex> triangulate(const Polytope& p, int j, int idx);
/// Triangulation of P itself (its top-dimensional face).
std::vector<Simplex> triangulate(const Polytope& p);

double simplex_volume(const Simplex& s);
/// Integral of x^r over the simplex with respect to its j-dimensional
/// Hausdorff measure, as a rank-r tensor.
SymTensor simplex_moment(const Simplex& s, int r);

/// Euclidean distance from x to a full-dimensional P.
double distance(const Polytope& p, const Vec& x);

}  // namespace tcm
