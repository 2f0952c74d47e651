#include "tcm/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace tcm {

namespace {

struct FlatConstraint {
  Vec a;  // unit normal in flat coordinates
  double b;
};

struct Enumeration {
  std::vector<Vec> points;              // flat coordinates
  std::vector<std::vector<int>> tight;  // tight constraint indices per point
};

double det_small(const Mat& m) {
  switch (m.rows()) {
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default: return m.determinant();
  }
}

// Brute-force vertex enumeration of {y in R^k : a_i y <= b_i}.
Enumeration enumerate_vertices(std::span<const FlatConstraint> cons, int k, double tol) {
  Enumeration out;
  const int m = static_cast<int>(cons.size());
  if (m < k) return out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  Mat a(k, k);
  Vec b(k);
  for (;;) {
    for (int r = 0; r < k; ++r) {
      a.row(r) = cons[idx[r]].a.transpose();
      b[r] = cons[idx[r]].b;
    }
    if (std::abs(det_small(a)) > 1e-12) {
      const Vec y = a.partialPivLu().solve(b);
      bool feasible = true;
      for (int i = 0; i < m && feasible; ++i) feasible = cons[i].a.dot(y) <= cons[i].b + tol;
      if (feasible) {
        bool dup = false;
        for (const Vec& p : out.points) {
          if ((p - y).cwiseAbs().maxCoeff() <= 10 * tol) {
            dup = true;
            break;
          }
        }
        if (!dup) out.points.push_back(y);
      }
    }
    // next k-combination
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int r = pos + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
  out.tight.resize(out.points.size());
  for (std::size_t v = 0; v < out.points.size(); ++v) {
    for (int i = 0; i < m; ++i) {
      if (std::abs(cons[i].a.dot(out.points[v]) - cons[i].b) <= 10 * tol) out.tight[v].push_back(i);
    }
  }
  return out;
}

int affine_rank(std::span<const Vec> pts, double tol) {
  if (pts.empty()) return -1;
  return static_cast<int>(affine_frame(pts, pts.front(), tol).cols());
}

// Null vector of a (d-1) x d matrix via signed maximal minors.
Vec null_vector(const Mat& m) {
  const int d = static_cast<int>(m.cols());
  Vec nv(d);
  for (int i = 0; i < d; ++i) {
    Mat minor(d - 1, d - 1);
    for (int c = 0, cc = 0; c < d; ++c) {
      if (c == i) continue;
      minor.col(cc++) = m.col(c);
    }
    nv[i] = ((i % 2 == 0) ? 1.0 : -1.0) * (d == 1 ? 1.0 : det_small(minor));
  }
  return nv;
}

double scale_of(std::span<const Vec> pts) {
  double s = 1.0;
  for (const Vec& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

}  // namespace

struct PolytopeBuilder {
  static Polytope assemble(int n, const Vec& origin, const Mat& frame,
                           const std::vector<Vec>& flat_points,
                           const std::vector<FlatConstraint>& cons,
                           const std::vector<std::vector<int>>& tight, double tol) {
    Polytope p;
    p.n_ = n;
    p.tol_ = tol;
    const int k = static_cast<int>(frame.cols());
    for (const Vec& y : flat_points) p.vertices_.push_back(origin + frame * y);
    // facets: constraints whose tight vertex sets have affine rank k - 1
    std::map<int, std::vector<int>> by_constraint;
    for (std::size_t v = 0; v < tight.size(); ++v) {
      for (int c : tight[v]) by_constraint[c].push_back(static_cast<int>(v));
    }
    std::set<std::vector<int>> seen;
    for (const auto& [c, verts] : by_constraint) {
      std::vector<Vec> pts;
      for (int v : verts) pts.push_back(flat_points[v]);
      if (affine_rank(pts, tol) != k - 1) continue;
      if (!seen.insert(verts).second) continue;
      Facet f;
      f.normal = frame * cons[c].a;
      f.offset = cons[c].b + f.normal.dot(origin);
      f.vertices = verts;
      p.facets_.push_back(std::move(f));
    }
    p.hull_frame_ = frame;
    p.hull_point_ = p.centroid();
    p.normal_frame_ = orthogonal_complement(frame, n);
    p.build_faces();
    return p;
  }
};

namespace {

struct FlatResult {
  CutStatus status = CutStatus::empty;
  std::optional<Polytope> polytope;
  std::vector<Vec> ambient_points;  // when lower-dimensional
};

// Intersection of ambient halfspaces with the flat origin + frame * y.
FlatResult build_in_flat(int n, const Vec& origin, const Mat& frame,
                         std::span<const Halfspace> hs, double tol, bool strict) {
  FlatResult out;
  const int k = static_cast<int>(frame.cols());
  std::vector<FlatConstraint> cons;
  cons.reserve(hs.size());
  bool parallel_tight = false;
  for (const Halfspace& h : hs) {
    const double an = h.normal.norm();
    Vec a = frame.transpose() * h.normal / an;
    const double b = (h.offset - h.normal.dot(origin)) / an;
    const double na = a.norm();
    if (na < 1e-12) {
      if (b < -tol) return out;
      if (b <= tol) parallel_tight = true;
      continue;
    }
    cons.push_back({a / na, b / na});
  }
  Enumeration en = enumerate_vertices(cons, k, tol);
  if (en.points.empty()) return out;
  std::size_t max_tight = 0;
  for (const auto& t : en.tight) max_tight = std::max(max_tight, t.size());
  const int rank = affine_rank(en.points, tol);
  if (rank < k) {
    out.status = CutStatus::grazing;
    for (const Vec& y : en.points) out.ambient_points.push_back(origin + frame * y);
    return out;
  }
  if (strict && (parallel_tight || max_tight > static_cast<std::size_t>(k))) {
    out.status = CutStatus::grazing;
    return out;
  }
  out.status = CutStatus::ok;
  out.polytope = PolytopeBuilder::assemble(n, origin, frame, en.points, cons, en.tight, tol);
  return out;
}

}  // namespace

Polytope Polytope::from_vertices(std::span<const Vec> points, double tol) {
  if (points.empty()) throw EmptyPolytopeError("from_vertices: no points");
  const int n = static_cast<int>(points.front().size());
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("from_vertices: unsupported dimension");
  const double t = tol * scale_of(points);
  std::vector<Vec> pts;
  for (const Vec& p : points) {
    if (p.size() != n) throw std::invalid_argument("from_vertices: inconsistent dimensions");
    bool dup = false;
    for (const Vec& q : pts) dup = dup || (p - q).cwiseAbs().maxCoeff() <= 10 * t;
    if (!dup) pts.push_back(p);
  }
  Vec origin = Vec::Zero(n);
  for (const Vec& p : pts) origin += p;
  origin /= static_cast<double>(pts.size());
  const Mat frame = affine_frame(pts, origin, t);
  const int d = static_cast<int>(frame.cols());
  std::vector<Vec> ys;
  for (const Vec& p : pts) ys.push_back(frame.transpose() * (p - origin));

  std::vector<FlatConstraint> cons;
  if (d == 1) {
    int lo = 0, hi = 0;
    for (int i = 0; i < static_cast<int>(ys.size()); ++i) {
      if (ys[i][0] < ys[lo][0]) lo = i;
      if (ys[i][0] > ys[hi][0]) hi = i;
    }
    cons.push_back({Vec::Constant(1, -1.0), -ys[lo][0]});
    cons.push_back({Vec::Constant(1, 1.0), ys[hi][0]});
  } else if (d >= 2) {
    const int m = static_cast<int>(ys.size());
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::set<std::vector<int>> seen;
    for (;;) {
      Mat rows(d - 1, d);
      for (int r = 1; r < d; ++r) rows.row(r - 1) = (ys[idx[r]] - ys[idx[0]]).transpose();
      Vec a = null_vector(rows);
      double scale = 1.0;
      for (int r = 0; r < d - 1; ++r) scale *= std::max(rows.row(r).norm(), 1e-300);
      if (a.norm() > 1e-12 * scale) {
        a.normalize();
        double b = a.dot(ys[idx[0]]);
        int above = 0, below = 0;
        for (const Vec& y : ys) {
          const double s = a.dot(y) - b;
          if (s > t) ++above;
          if (s < -t) ++below;
        }
        if (above == 0 || below == 0) {
          if (above > 0) {
            a = -a;
            b = -b;
          }
          std::vector<int> tight_set;
          for (int v = 0; v < m; ++v) {
            if (std::abs(a.dot(ys[v]) - b) <= 10 * t) tight_set.push_back(v);
          }
          if (seen.insert(tight_set).second) cons.push_back({a, b});
        }
      }
      int pos = d - 1;
      while (pos >= 0 && idx[pos] == m - d + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int r = pos + 1; r < d; ++r) idx[r] = idx[r - 1] + 1;
    }
  }

  // keep extreme points only: tight facet normals must span R^d
  std::vector<Vec> keep;
  for (const Vec& y : ys) {
    if (d == 0) {
      keep.push_back(y);
      continue;
    }
    std::vector<Vec> normals;
    for (const FlatConstraint& c : cons) {
      if (std::abs(c.a.dot(y) - c.b) <= 10 * t) normals.push_back(c.a);
    }
    if (static_cast<int>(affine_frame(normals, Vec::Zero(d), 1e-9).cols()) == d) keep.push_back(y);
  }
  std::vector<std::vector<int>> tight(keep.size());
  for (std::size_t v = 0; v < keep.size(); ++v) {
    for (std::size_t c = 0; c < cons.size(); ++c) {
      if (std::abs(cons[c].a.dot(keep[v]) - cons[c].b) <= 10 * t) tight[v].push_back(static_cast<int>(c));
    }
  }
  return PolytopeBuilder::assemble(n, origin, frame, keep, cons, tight, t);
}

Polytope Polytope::from_halfspaces(std::span<const Halfspace> halfspaces, int n, double tol) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("from_halfspaces: unsupported dimension");
  if (!is_bounded(halfspaces, n)) throw std::invalid_argument("from_halfspaces: unbounded polyhedron");
  double scale = 1.0;
  for (const Halfspace& h : halfspaces) scale = std::max(scale, std::abs(h.offset) / h.normal.norm());
  FlatResult r = build_in_flat(n, Vec::Zero(n), Mat::Identity(n, n), halfspaces, tol * scale, false);
  if (r.status == CutStatus::empty) throw EmptyPolytopeError("from_halfspaces: empty polytope");
  if (r.status == CutStatus::grazing) return from_vertices(r.ambient_points, tol);
  return std::move(*r.polytope);
}

void Polytope::build_faces() {
  const int d = dim();
  faces_.assign(d + 1, {});
  const int nv = static_cast<int>(vertices_.size());
  std::set<std::vector<int>> sets;
  std::vector<std::vector<int>> order;
  auto add = [&](std::vector<int> s) {
    if (!s.empty() && sets.insert(s).second) order.push_back(std::move(s));
  };
  std::vector<int> all(nv);
  std::iota(all.begin(), all.end(), 0);
  add(all);
  for (int v = 0; v < nv; ++v) add({v});
  for (const Facet& f : facets_) add(f.vertices);
  // closure under pairwise intersection
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      std::vector<int> inter;
      std::set_intersection(order[a].begin(), order[a].end(), order[b].begin(), order[b].end(),
                            std::back_inserter(inter));
      add(std::move(inter));
    }
  }
  for (const std::vector<int>& s : sets) {
    Face f;
    f.vertices = s;
    std::vector<Vec> pts;
    for (int v : s) pts.push_back(vertices_[v]);
    f.point = Vec::Zero(n_);
    for (const Vec& p : pts) f.point += p;
    f.point /= static_cast<double>(pts.size());
    f.frame = (s.size() == all.size()) ? hull_frame_ : affine_frame(pts, pts.front(), tol_);
    f.dim = static_cast<int>(f.frame.cols());
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      if (std::includes(facets_[i].vertices.begin(), facets_[i].vertices.end(), s.begin(), s.end())) {
        f.facets.push_back(static_cast<int>(i));
      }
    }
    if (f.dim > d) throw DegenerateGeometryError("build_faces: face dimension exceeds polytope dimension");
    faces_[f.dim].push_back(std::move(f));
  }
}

const std::vector<Face>& Polytope::faces(int j) const {
  static const std::vector<Face> none;
  if (j < 0 || j >= static_cast<int>(faces_.size())) return none;
  return faces_[j];
}

std::vector<int> Polytope::subfaces(int j, int idx) const {
  std::vector<int> out;
  if (j <= 0) return out;
  const Face& f = faces_[j][idx];
  const auto& lower = faces_[j - 1];
  for (std::size_t g = 0; g < lower.size(); ++g) {
    if (std::includes(f.vertices.begin(), f.vertices.end(), lower[g].vertices.begin(),
                      lower[g].vertices.end())) {
      out.push_back(static_cast<int>(g));
    }
  }
  return out;
}

std::vector<Halfspace> Polytope::halfspaces() const {
  std::vector<Halfspace> hs;
  for (const Facet& f : facets_) hs.push_back({f.normal, f.offset});
  for (int c = 0; c < normal_frame_.cols(); ++c) {
    const Vec w = normal_frame_.col(c);
    const double o = w.dot(hull_point_);
    hs.push_back({w, o});
    hs.push_back({-w, -o});
  }
  return hs;
}

bool Polytope::contains(const Vec& x, double tol) const {
  for (const Facet& f : facets_) {
    if (f.normal.dot(x) > f.offset + tol) return false;
  }
  for (int c = 0; c < normal_frame_.cols(); ++c) {
    if (std::abs(normal_frame_.col(c).dot(x - hull_point_)) > tol) return false;
  }
  return true;
}

Vec Polytope::centroid() const {
  Vec c = Vec::Zero(n_);
  for (const Vec& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

double Polytope::circumradius() const {
  const Vec c = centroid();
  double r = 0.0;
  for (const Vec& v : vertices_) r = std::max(r, (v - c).norm());
  return r;
}

Polytope Polytope::transformed(const Mat& rho, const Vec& t) const {
  Polytope p = *this;
  for (Vec& v : p.vertices_) v = rho * v + t;
  for (Facet& f : p.facets_) {
    f.normal = rho * f.normal;
    f.offset += f.normal.dot(t);
  }
  for (auto& level : p.faces_) {
    for (Face& f : level) {
      f.point = rho * f.point + t;
      f.frame = rho * f.frame;
    }
  }
  p.hull_point_ = rho * hull_point_ + t;
  p.hull_frame_ = rho * hull_frame_;
  p.normal_frame_ = rho * normal_frame_;
  return p;
}

Polytope Polytope::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("Polytope::scaled: factor must be positive");
  Polytope p = *this;
  for (Vec& v : p.vertices_) v *= lambda;
  for (Facet& f : p.facets_) f.offset *= lambda;
  for (auto& level : p.faces_) {
    for (Face& f : level) f.point *= lambda;
  }
  p.hull_point_ *= lambda;
  return p;
}

Cone::Cone(int n, std::vector<Vec> pointed_generators, Mat pointed_frame, Mat lineality_frame,
           std::vector<Vec> membership, double tol)
    : n_(n),
      pointed_generators_(std::move(pointed_generators)),
      pointed_frame_(std::move(pointed_frame)),
      lineality_frame_(std::move(lineality_frame)),
      membership_(std::move(membership)),
      tol_(tol) {
  for (Vec& g : pointed_generators_) g.normalize();
}

std::vector<Vec> Cone::generators() const {
  std::vector<Vec> g = pointed_generators_;
  for (int c = 0; c < lineality_frame_.cols(); ++c) {
    g.push_back(lineality_frame_.col(c));
    g.push_back(-lineality_frame_.col(c));
  }
  return g;
}

Mat Cone::frame() const {
  Mat f(n_, dim());
  for (int c = 0; c < pointed_dim(); ++c) f.col(c) = pointed_frame_.col(c);
  for (int c = 0; c < lineality_dim(); ++c) f.col(pointed_dim() + c) = lineality_frame_.col(c);
  return f;
}

bool Cone::contains(const Vec& u, double tol) const {
  for (const Vec& w : membership_) {
    if (u.dot(w) > tol) return false;
  }
  return true;
}

Cone normal_cone(const Polytope& p, int j, int idx) {
  const Face& f = p.faces(j).at(idx);
  std::vector<Vec> gens;
  for (int fi : f.facets) gens.push_back(p.facets()[fi].normal);
  Mat pointed = project_out(p.hull_frame(), f.frame, 1e-9);
  std::vector<Vec> membership;
  for (const Vec& v : p.vertices()) membership.push_back(v - f.point);
  return Cone(p.ambient_dim(), std::move(gens), std::move(pointed), p.normal_frame(),
              std::move(membership), p.tol());
}

Region Region::from_halfspaces(std::vector<Halfspace> halfspaces, int n, bool allow_unbounded) {
  for (Halfspace& h : halfspaces) {
    if (h.normal.size() != n) throw std::invalid_argument("Region: halfspace dimension mismatch");
    const double nn = h.normal.norm();
    if (nn == 0.0) throw std::invalid_argument("Region: zero normal");
    h.normal /= nn;
    h.offset /= nn;
  }
  if (!allow_unbounded && !is_bounded(halfspaces, n)) {
    throw std::invalid_argument("Region: unbounded polyhedron (pass allow_unbounded)");
  }
  Region r;
  r.universe_ = false;
  r.halfspaces_ = std::move(halfspaces);
  return r;
}

Region Region::box(const Vec& lo, const Vec& hi) {
  const int n = static_cast<int>(lo.size());
  std::vector<Halfspace> hs;
  for (int i = 0; i < n; ++i) {
    if (!(lo[i] < hi[i])) throw std::invalid_argument("Region::box: empty box");
    hs.push_back({Vec::Unit(n, i), hi[i]});
    hs.push_back({-Vec::Unit(n, i), -lo[i]});
  }
  return from_halfspaces(std::move(hs), n);
}

bool Region::contains(const Vec& x, double tol) const {
  for (const Halfspace& h : halfspaces_) {
    if (h.normal.dot(x) > h.offset + tol) return false;
  }
  return true;
}

Region Region::transformed(const Mat& rho, const Vec& t) const {
  Region r = *this;
  for (Halfspace& h : r.halfspaces_) {
    h.normal = rho * h.normal;
    h.offset += h.normal.dot(t);
  }
  return r;
}

Region Region::scaled(double lambda) const {
  Region r = *this;
  for (Halfspace& h : r.halfspaces_) h.offset *= lambda;
  return r;
}

bool is_bounded(std::span<const Halfspace> halfspaces, int n) {
  // The recession cone {d : A d <= 0} is trivial iff the polytope
  // {A d <= 0, |d_i| <= 1} has the origin as its only vertex.
  std::vector<FlatConstraint> cons;
  for (const Halfspace& h : halfspaces) cons.push_back({h.normal / h.normal.norm(), 0.0});
  for (int i = 0; i < n; ++i) {
    cons.push_back({Vec::Unit(n, i), 1.0});
    cons.push_back({-Vec::Unit(n, i), 1.0});
  }
  const Enumeration en = enumerate_vertices(cons, n, 1e-12);
  for (const Vec& y : en.points) {
    if (y.norm() > 1e-9) return false;
  }
  return true;
}

Cut intersect_flat(const Polytope& p, const Mat& frame, const Vec& base) {
  if (frame.cols() < 1) throw std::invalid_argument("intersect_flat: flat dimension must be >= 1");
  const auto hs = p.halfspaces();
  FlatResult r = build_in_flat(p.ambient_dim(), base, frame, hs, p.tol() * std::max(1.0, p.circumradius()), true);
  return Cut{r.status, std::move(r.polytope)};
}

Cut intersect_moved(const Polytope& p, const Polytope& other, const Mat& rho, const Vec& t) {
  const int n = p.ambient_dim();
  std::vector<Halfspace> hs = p.halfspaces();
  for (Halfspace h : other.halfspaces()) {
    h.normal = rho * h.normal;
    h.offset += h.normal.dot(t);
    hs.push_back(std::move(h));
  }
  const double scale = std::max({1.0, p.circumradius(), other.circumradius()});
  FlatResult r = build_in_flat(n, Vec::Zero(n), Mat::Identity(n, n), hs, p.tol() * scale, true);
  return Cut{r.status, std::move(r.polytope)};
}

std::optional<Polytope> clip_face(const Polytope& p, int j, int idx, const Region& region) {
  const Face& f = p.faces(j).at(idx);
  if (j == 0) {
    const Vec& v = p.vertices()[f.vertices.front()];
    if (!region.contains(v, p.tol())) return std::nullopt;
    return Polytope::from_vertices(std::span<const Vec>(&v, 1), p.tol());
  }
  std::vector<Halfspace> hs;
  for (const Facet& fc : p.facets()) hs.push_back({fc.normal, fc.offset});
  for (const Halfspace& h : region.halfspaces()) hs.push_back(h);
  FlatResult r = build_in_flat(p.ambient_dim(), f.point, f.frame, hs, p.tol() * std::max(1.0, p.circumradius()), false);
  if (r.status != CutStatus::ok) return std::nullopt;
  return std::move(r.polytope);
}

namespace {

void triangulate_into(const Polytope& p, int j, int idx, std::vector<Simplex>& out) {
  const Face& f = p.faces(j)[idx];
  if (j == 0) {
    out.push_back({p.vertices()[f.vertices.front()]});
    return;
  }
  const int apex = f.vertices.front();
  for (int g : p.subfaces(j, idx)) {
    const auto& gv = p.faces(j - 1)[g].vertices;
    if (std::binary_search(gv.begin(), gv.end(), apex)) continue;
    std::vector<Simplex> sub;
    triangulate_into(p, j - 1, g, sub);
    for (Simplex& s : sub) {
      s.push_back(p.vertices()[apex]);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<Simplex> triangulate(const Polytope& p, int j, int idx) {
  std::vector<Simplex> raw;
  triangulate_into(p, j, idx, raw);
  const double scale = std::max(1.0, p.circumradius());
  std::vector<Simplex> out;
  for (Simplex& s : raw) {
    if (j == 0 || simplex_volume(s) >= 1e-12 * std::pow(scale, j)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Simplex> triangulate(const Polytope& p) { return triangulate(p, p.dim(), 0); }

double simplex_volume(const Simplex& s) {
  const int j = static_cast<int>(s.size()) - 1;
  if (j == 0) return 1.0;
  const int n = static_cast<int>(s.front().size());
  Eigen::MatrixXd g(n, j);
  for (int c = 0; c < j; ++c) g.col(c) = s[c + 1] - s[0];
  const double gram = (g.transpose() * g).determinant();
  double fact = 1.0;
  for (int t = 2; t <= j; ++t) fact *= t;
  return std::sqrt(std::max(gram, 0.0)) / fact;
}

SymTensor simplex_moment(const Simplex& s, int r) {
  const int j = static_cast<int>(s.size()) - 1;
  const int n = static_cast<int>(s.front().size());
  const double vol = simplex_volume(s);
  if (r == 0) return SymTensor::scalar(n, vol);
  // integral of (sum_i lambda_i v_i)^r over the simplex equals
  // vol * j! r! / (j + r)! * h_r(<v_0, y>, ..., <v_j, y>)
  std::vector<SymTensor> h;
  for (int t = 0; t <= r; ++t) h.push_back(t == 0 ? SymTensor::scalar(n, 1.0) : vector_power(s[0], t));
  for (int i = 1; i <= j; ++i) {
    std::vector<SymTensor> pw;
    for (int u = 0; u <= r; ++u) pw.push_back(vector_power(s[i], u));
    std::vector<SymTensor> next;
    for (int t = 0; t <= r; ++t) {
      SymTensor acc(n, t);
      for (int u = 0; u <= t; ++u) acc += pw[u] * h[t - u];
      next.push_back(std::move(acc));
    }
    h = std::move(next);
  }
  double factor = vol;
  for (int t = 1; t <= r; ++t) factor *= static_cast<double>(t) / (j + t);
  return h[r] * factor;
}

double distance(const Polytope& p, const Vec& x) {
  if (!p.full_dimensional()) throw std::invalid_argument("distance: polytope must be full-dimensional");
  if (p.contains(x, 0.0)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < p.dim(); ++j) {
    for (const Face& f : p.faces(j)) {
      const Vec proj = f.point + f.frame * (f.frame.transpose() * (x - f.point));
      const double dist = (x - proj).norm();
      if (dist >= best) continue;
      if (j == 0 || p.contains(proj, 1e-12)) best = dist;
    }
  }
  return best;
}

}  // namespace tcm
