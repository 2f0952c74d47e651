#include "tcm/conemoment.hpp"

#include "tcm/rng.hpp"
#include "tcm/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

namespace tcm {

std::string to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::point: return "point";
    case MomentMethod::arc: return "arc";
    case MomentMethod::full_sphere: return "full-sphere";
    case MomentMethod::quadrature: return "quadrature";
    case MomentMethod::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

namespace {

double g2(int twice) { return gamma_half(HalfInt::from_twice(twice)); }

// Integral over the unit sphere of a b-dimensional subspace of <z, y>^q is
// |p y|^q * 2 pi^{(b-1)/2} Gamma((q+1)/2) / Gamma((q+b)/2) for even q.
double full_sphere_constant(int b, int q) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (b - 1)) * g2(q + 1) / g2(q + b);
}

Quadrature make_gauss_legendre(int order) {
  Quadrature q;
  q.nodes.resize(order);
  q.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    q.nodes[i] = 0.5 * (1.0 - x);
    q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

// Moment of a pointed 3-dimensional cone: spherical polygon split into small
// spherical triangles, each integrated through its central projection.
std::vector<SymTensor> spherical_polygon_moments(const std::vector<Vec>& gens3, const Mat& frame,
                                                 const std::vector<int>& ranks, int order) {
  const int n = static_cast<int>(frame.rows());
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> g;
  for (const Vec& v : gens3) {
    g.emplace_back(v[0], v[1], v[2]);
    g.back().normalize();
    center += g.back();
  }
  center.normalize();
  Eigen::Vector3d e1 = (g[0] - g[0].dot(center) * center).normalized();
  Eigen::Vector3d e2 = center.cross(e1);
  std::vector<std::pair<double, int>> ang;
  for (int i = 0; i < static_cast<int>(g.size()); ++i) ang.emplace_back(std::atan2(g[i].dot(e2), g[i].dot(e1)), i);
  std::sort(ang.begin(), ang.end());

  using Tri = std::array<Eigen::Vector3d, 3>;
  std::vector<Tri> work, tris;
  for (std::size_t k = 1; k + 1 < ang.size(); ++k) {
    work.push_back({g[ang[0].second], g[ang[k].second], g[ang[k + 1].second]});
  }
  const double max_edge = 0.5;
  while (!work.empty()) {
    Tri t = work.back();
    work.pop_back();
    double longest = 0.0;
    for (int e = 0; e < 3; ++e) longest = std::max(longest, std::acos(std::clamp(t[e].dot(t[(e + 1) % 3]), -1.0, 1.0)));
    if (longest <= max_edge) {
      tris.push_back(t);
      continue;
    }
    const Eigen::Vector3d m01 = (t[0] + t[1]).normalized();
    const Eigen::Vector3d m12 = (t[1] + t[2]).normalized();
    const Eigen::Vector3d m20 = (t[2] + t[0]).normalized();
    work.push_back({t[0], m01, m20});
    work.push_back({m01, t[1], m12});
    work.push_back({m20, m12, t[2]});
    work.push_back({m01, m12, m20});
  }

  const Quadrature& gl = gauss_legendre(order);
  std::vector<SymTensor> out;
  for (int r : ranks) out.emplace_back(n, r);
  for (const Tri& t : tris) {
    const double det = std::abs(t[0].dot(t[1].cross(t[2])));
    for (int iu = 0; iu < order; ++iu) {
      const double u = gl.nodes[iu];
      for (int iv = 0; iv < order; ++iv) {
        const double v = gl.nodes[iv];
        const Eigen::Vector3d p = t[0] + u * (t[1] - t[0]) + u * v * (t[2] - t[1]);
        const double np = p.norm();
        const double w = gl.weights[iu] * gl.weights[iv] * det * u / (np * np * np);
        const Eigen::Vector3d x3 = p / np;
        const Vec y = frame * Vec(x3);
        for (std::size_t k = 0; k < ranks.size(); ++k) out[k].add_scaled(vector_power(y, ranks[k]), w);
      }
    }
  }
  return out;
}

MomentResult monte_carlo_moment(const Cone& cone, int s, const MomentBudget& budget) {
  const int n = cone.ambient_dim();
  const Mat frame = cone.frame();
  const int d = static_cast<int>(frame.cols());
  CounterRng rng(budget.seed, budget.stream);
  std::normal_distribution<double> gauss;
  const std::size_t size = SymTensor(n, s).size();
  std::vector<double> sum(size, 0.0), sum2(size, 0.0);
  std::uint64_t accepted = 0;
  const std::uint64_t total = std::max<std::uint64_t>(budget.samples, 2);
  Vec z(d);
  for (std::uint64_t i = 0; i < total; ++i) {
    for (int c = 0; c < d; ++c) z[c] = gauss(rng);
    const Vec u = frame * z / z.norm();
    if (!cone.contains(u, 0.0)) continue;
    ++accepted;
    const SymTensor p = vector_power(u, s);
    const auto c = p.coeffs();
    for (std::size_t k = 0; k < size; ++k) {
      sum[k] += c[k];
      sum2[k] += c[k] * c[k];
    }
  }
  const double area = omega(d);
  const double nt = static_cast<double>(total);
  MomentResult res;
  res.tensor = SymTensor(n, s);
  res.std_error = SymTensor(n, s);
  res.method = MomentMethod::monte_carlo;
  res.samples = total;
  for (std::size_t k = 0; k < size; ++k) {
    const double mean = sum[k] / nt;
    const double var = std::max(sum2[k] / nt - mean * mean, 0.0) * nt / (nt - 1.0);
    res.tensor.coeffs()[k] = area * mean;
    res.std_error.coeffs()[k] = area * std::sqrt(var / nt);
  }
  if (static_cast<double>(accepted) < 1e-4 * nt) {
    throw ConeMomentError("cone_sphere_moment: acceptance rate below 1e-4", std::move(res));
  }
  return res;
}

}  // namespace

const Quadrature& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre(order)).first;
  return it->second;
}

SymTensor full_sphere_moment(const Mat& frame, int s) {
  const int n = static_cast<int>(frame.rows());
  const int b = static_cast<int>(frame.cols());
  if (s % 2 != 0 || b == 0) return SymTensor(n, s);
  return power(subspace_metric_tensor(frame), s / 2) * full_sphere_constant(b, s);
}

SymTensor arc_moment(const Vec& a, const Vec& b, double theta, int s) {
  const int n = static_cast<int>(a.size());
  // I[p][q] = integral of cos^p sin^q over [0, theta]
  std::vector<std::vector<double>> I(s + 1, std::vector<double>(s + 1, 0.0));
  const double c = std::cos(theta), sn = std::sin(theta);
  for (int deg = 0; deg <= s; ++deg) {
    for (int p = 0; p <= deg; ++p) {
      const int q = deg - p;
      double v;
      if (p >= 2) {
        v = (std::pow(c, p - 1) * std::pow(sn, q + 1) + (p - 1) * I[p - 2][q]) / deg;
      } else if (q >= 2) {
        v = (-std::pow(c, p + 1) * std::pow(sn, q - 1) + (q - 1) * I[p][q - 2]) / deg;
      } else if (p == 0 && q == 0) {
        v = theta;
      } else if (p == 1 && q == 0) {
        v = sn;
      } else if (p == 0 && q == 1) {
        v = 1.0 - c;
      } else {
        v = 0.5 * sn * sn;
      }
      I[p][q] = v;
    }
  }
  SymTensor out(n, s);
  for (int k = 0; k <= s; ++k) {
    out.add_scaled(vector_power(a, k) * vector_power(b, s - k), binomial(s, k) * I[k][s - k]);
  }
  return out;
}

MomentResult cone_sphere_moment(const Cone& cone, int s, const MomentBudget& budget) {
  if (s < 0) throw std::invalid_argument("cone_sphere_moment: s must be >= 0");
  const int n = cone.ambient_dim();
  const int a = cone.pointed_dim();
  const int b = cone.lineality_dim();
  MomentResult res;
  res.std_error = SymTensor(n, s);
  if (a + b == 0) {
    res.tensor = SymTensor(n, s);
    res.method = MomentMethod::full_sphere;
    return res;
  }
  if (budget.force_monte_carlo || a >= 4) return monte_carlo_moment(cone, s, budget);

  if (a == 0) {
    res.tensor = full_sphere_moment(cone.lineality_frame(), s);
    res.method = MomentMethod::full_sphere;
    return res;
  }

  // ranks of the pointed moment that meet a nonzero lineality moment
  std::vector<int> ranks;
  for (int i = 0; i <= s; ++i) {
    if (b > 0 ? (s - i) % 2 == 0 : i == s) ranks.push_back(i);
  }

  const Mat& pf = cone.pointed_frame();
  const auto& gens = cone.pointed_generators();
  if (gens.empty()) throw DegenerateGeometryError("cone_sphere_moment: pointed part without generators");
  std::vector<SymTensor> pointed;
  if (a == 1) {
    const Vec g = pf.col(0) * (pf.col(0).dot(gens[0]) >= 0 ? 1.0 : -1.0);
    for (int i : ranks) pointed.push_back(vector_power(g, i));
    res.method = MomentMethod::point;
  } else if (a == 2) {
    const Vec c0 = pf.transpose() * gens[0];
    const double phi0 = std::atan2(c0[1], c0[0]);
    double lo = 0.0, hi = 0.0;
    for (const Vec& g : gens) {
      const Vec cg = pf.transpose() * g;
      double d = std::atan2(cg[1], cg[0]) - phi0;
      if (d > std::numbers::pi) d -= 2 * std::numbers::pi;
      if (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    const double start = phi0 + lo;
    Vec e(2), f(2);
    e << std::cos(start), std::sin(start);
    f << -std::sin(start), std::cos(start);
    const Vec ea = pf * e, fa = pf * f;
    for (int i : ranks) pointed.push_back(arc_moment(ea, fa, hi - lo, i));
    res.method = MomentMethod::arc;
  } else {
    std::vector<Vec> g3;
    for (const Vec& g : gens) g3.push_back(pf.transpose() * g);
    pointed = spherical_polygon_moments(g3, pf, ranks, budget.quadrature_order);
    res.method = MomentMethod::quadrature;
  }

  if (b == 0) {
    res.tensor = std::move(pointed.back());
    return res;
  }
  res.tensor = SymTensor(n, s);
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    const int i = ranks[k];
    const double w = binomial(s, i) * g2(i + a) * g2(s - i + b) / (2.0 * g2(s + a + b));
    res.tensor.add_scaled(pointed[k] * full_sphere_moment(cone.lineality_frame(), s - i), w);
  }
  return res;
}

}  // namespace tcm
