#include "tcm/verify.hpp"

#include "tcm/coeffs.hpp"
#include "tcm/flatsampler.hpp"
#include "tcm/parallel.hpp"
#include "tcm/rng.hpp"
#include "tcm/specialfn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tcm {

namespace {

constexpr std::uint64_t kBatch = 1024;
constexpr double kAbsFloor = 1e-9;

struct Sums {
  std::vector<double> sum, sum2;
  std::uint64_t rejections = 0, hits = 0, cone_mc = 0;
};

struct SampleInfo {
  std::uint64_t rejections = 0;
  bool hit = false;
  std::uint64_t cone_mc = 0;
};

// Runs sample(i, rng, out_coeffs) for i < N in fixed-size batches and reduces
// in batch order, so the estimate does not depend on the thread count.
template <class Fn>
McEstimate run_estimate(int n, int rank, const SamplingOptions& opt, Fn&& sample) {
  const std::size_t size = SymTensor(n, rank).size();
  const std::uint64_t total = opt.samples;
  if (total < 2) throw std::invalid_argument("need at least 2 samples");
  const std::size_t batches = static_cast<std::size_t>((total + kBatch - 1) / kBatch);
  std::vector<Sums> parts(batches);
  parallel_for(batches, opt.threads, [&](std::size_t b) {
    Sums& s = parts[b];
    s.sum.assign(size, 0.0);
    s.sum2.assign(size, 0.0);
    std::vector<double> v(size);
    const std::uint64_t lo = b * kBatch, hi = std::min<std::uint64_t>(total, lo + kBatch);
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::fill(v.begin(), v.end(), 0.0);
      CounterRng rng(opt.seed, i);
      const SampleInfo info = sample(i, rng, v);
      s.rejections += info.rejections;
      s.hits += info.hit ? 1 : 0;
      s.cone_mc += info.cone_mc;
      for (std::size_t k = 0; k < size; ++k) {
        s.sum[k] += v[k];
        s.sum2[k] += v[k] * v[k];
      }
    }
  });
  McEstimate est;
  est.mean = SymTensor(n, rank);
  est.std_error = SymTensor(n, rank);
  est.samples = total;
  std::vector<double> sum(size, 0.0), sum2(size, 0.0);
  for (const Sums& s : parts) {
    for (std::size_t k = 0; k < size; ++k) {
      sum[k] += s.sum[k];
      sum2[k] += s.sum2[k];
    }
    est.rejections += s.rejections;
    est.hits += s.hits;
    est.cone_mc_samples += s.cone_mc;
  }
  const double nt = static_cast<double>(total);
  for (std::size_t k = 0; k < size; ++k) {
    const double mean = sum[k] / nt;
    const double var = std::max(sum2[k] / nt - mean * mean, 0.0) * nt / (nt - 1.0);
    est.mean.coeffs()[k] = mean;
    est.std_error.coeffs()[k] = std::sqrt(var / nt);
  }
  return est;
}

void accumulate(MeasureValue& acc, const MeasureValue& term, double coeff) {
  acc.tensor.add_scaled(term.tensor, coeff);
  acc.std_error = hypot(acc.std_error, term.std_error * std::abs(coeff));
  acc.exact = acc.exact && term.exact;
  acc.mc_samples += term.mc_samples;
}

MeasureValue zero_value(int n, int rank) {
  MeasureValue v;
  v.tensor = SymTensor(n, rank);
  v.std_error = SymTensor(n, rank);
  return v;
}

void check_crofton_indices(int n, int j, int k, int r, int s, int l) {
  if (j < 0 || j > k || k > n || k < 0) throw std::invalid_argument("crofton: need 0 <= j <= k <= n");
  if (r < 0 || s < 0 || l < 0) throw std::invalid_argument("crofton: negative tensor index");
  if (j == 0 && l != 0) throw std::invalid_argument("crofton: l must be 0 for j = 0");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Region intersect_regions(const Region& a, const Region& b) {
  if (a.is_universe()) return b;
  if (b.is_universe()) return a;
  std::vector<Halfspace> hs = a.halfspaces();
  hs.insert(hs.end(), b.halfspaces().begin(), b.halfspaces().end());
  return Region::from_halfspaces(std::move(hs), static_cast<int>(hs.front().normal.size()), true);
}

MeasureValue crofton_rhs(const Polytope& p, const Region& beta, int j, int k, int r, int s, int l,
                         const MomentBudget& budget) {
  const int n = p.ambient_dim();
  check_crofton_indices(n, j, k, r, s, l);
  MeasureEvaluator ev(p, budget);
  MeasureValue out = zero_value(n, r + s + 2 * l);
  if (j == k) {
    if (s % 2 != 0) return out;
    accumulate(out, ev.evaluate({n, r, 0, s / 2 + l, 0}, beta), equal_dim_coeff(n, k, s));
    return out;
  }
  for (int m = 0; m <= s / 2; ++m) {
    for (int i = 0; i <= m; ++i) {
      const double d = d_coeff(n, j, k, s, l, i, m);
      if (d == 0.0) continue;
      if (m - i < 0) throw std::logic_error("crofton_rhs: nonzero coefficient on a negative power of Q");
      accumulate(out, ev.evaluate({n - k + j, r, s - 2 * m, l + i, m - i}, beta), d);
    }
  }
  return out;
}

McEstimate crofton_lhs(const Polytope& p, const Region& beta, int j, int k, int r, int s, int l,
                       const SamplingOptions& opt) {
  const int n = p.ambient_dim();
  check_crofton_indices(n, j, k, r, s, l);
  const MeasureIndex idx{j, r, s, l, 0};
  if (k == n) {
    const MeasureValue v = tensorial_measure(p, idx, beta, opt.budget);
    McEstimate est;
    est.mean = v.tensor;
    est.std_error = v.std_error;
    est.cone_mc_samples = v.mc_samples;
    return est;
  }
  const FlatSampler sampler(p, k, opt.margin);
  return run_estimate(n, idx.rank(), opt, [&](std::uint64_t i, CounterRng& rng, std::vector<double>& out) {
    std::uint64_t rejected = 0;
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
      const FlatSample f = sampler.sample(rng);
      Cut cut = intersect_flat(p, f.frame, f.base);
      if (cut.status == CutStatus::grazing) {
        ++rejected;
        continue;
      }
      if (cut.status == CutStatus::empty) return SampleInfo{rejected, false, 0};
      MomentBudget b = opt.budget;
      b.stream = derive_key(opt.seed ^ 0x5bd1e995ULL, i);
      MeasureEvaluator ev(*cut.polytope, b);
      const MeasureValue v = ev.evaluate(idx, beta);
      const auto c = v.tensor.coeffs();
      for (std::size_t q = 0; q < c.size(); ++q) out[q] = f.weight * c[q];
      return SampleInfo{rejected, true, v.mc_samples};
    }
    throw std::runtime_error("crofton_lhs: too many grazing flats");
  });
}

MeasureValue expansion_rhs(const Polytope& p, const Region& beta, Expansion e, int k, int r, int s,
                           const MomentBudget& budget) {
  const int n = p.ambient_dim();
  MeasureEvaluator ev(p, budget);
  const int l = (e == Expansion::iota || e == Expansion::lambda) ? 1 : 0;
  MeasureValue out = zero_value(n, r + s + 2 * l);
  switch (e) {
    case Expansion::iota:
      for (int m = 0; m <= s / 2; ++m) accumulate(out, ev.evaluate({n - 1, r, s - 2 * m, 1, m}, beta), iota(n, k, s, m));
      break;
    case Expansion::lambda:
      for (int m = 0; m <= s / 2 + 1; ++m) {
        accumulate(out, ev.evaluate({n - 1, r, s - 2 * m + 2, 0, m}, beta), lambda_coeff(n, k, s, m));
      }
      break;
    case Expansion::kappa:
      for (int m = 0; m <= s / 2; ++m) accumulate(out, ev.evaluate({n - 1, r, s - 2 * m, 0, m}, beta), kappa_coeff(n, k, s, m));
      break;
    case Expansion::single_line:
      if (k != 1) throw std::invalid_argument("expansion_rhs: single_line needs k = 1");
      accumulate(out, ev.evaluate({n - 1, r, s - 2 * (s / 2), 0, s / 2}, beta), line_coeff(n, s));
      break;
  }
  return out;
}

MeasureValue kinematic_rhs(const Polytope& p, const Region& beta, const Polytope& other,
                           const Region& other_beta, int j, int r, int s, int l, const MomentBudget& budget) {
  const int n = p.ambient_dim();
  check_crofton_indices(n, j, n, r, s, l);
  MeasureEvaluator ev(p, budget);
  MeasureEvaluator ev_other(other, budget);
  MeasureValue out = zero_value(n, r + s + 2 * l);
  for (int q = j; q <= n; ++q) {
    const int k = n - q + j;
    const MeasureValue cm = ev_other.evaluate({k, 0, 0, 0, 0}, other_beta);
    const double c = cm.tensor.value();
    if (c == 0.0) continue;
    for (int m = 0; m <= s / 2; ++m) {
      for (int i = 0; i <= m; ++i) {
        const double d = d_coeff(n, j, k, s, l, i, m);
        if (d == 0.0) continue;
        MeasureValue term = ev.evaluate({q, r, s - 2 * m, l + i, m - i}, beta);
        // noise of the scalar factor enters through |phi| * se(C)
        const double cse = cm.std_error.value();
        if (cse > 0) {
          SymTensor abs_t = term.tensor;
          for (double& x : abs_t.coeffs()) x = std::abs(x) * cse;
          term.std_error = hypot(term.std_error * std::abs(c), abs_t);
          term.tensor *= c;
          accumulate(out, term, d);
        } else {
          accumulate(out, term, d * c);
        }
      }
    }
  }
  return out;
}

McEstimate kinematic_lhs(const Polytope& p, const Region& beta, const Polytope& other,
                         const Region& other_beta, int j, int r, int s, int l, const SamplingOptions& opt) {
  const int n = p.ambient_dim();
  check_crofton_indices(n, j, n, r, s, l);
  const MeasureIndex idx{j, r, s, l, 0};
  const MotionSampler sampler(p, other, opt.margin);
  return run_estimate(n, idx.rank(), opt, [&](std::uint64_t i, CounterRng& rng, std::vector<double>& out) {
    std::uint64_t rejected = 0;
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
      const MotionSample g = sampler.sample(rng);
      Cut cut = intersect_moved(p, other, g.rotation, g.translation);
      if (cut.status == CutStatus::grazing) {
        ++rejected;
        continue;
      }
      if (cut.status == CutStatus::empty) return SampleInfo{rejected, false, 0};
      const Region region = intersect_regions(beta, other_beta.transformed(g.rotation, g.translation));
      MomentBudget b = opt.budget;
      b.stream = derive_key(opt.seed ^ 0x5bd1e995ULL, i);
      MeasureEvaluator ev(*cut.polytope, b);
      const MeasureValue v = ev.evaluate(idx, region);
      const auto c = v.tensor.coeffs();
      for (std::size_t q = 0; q < c.size(); ++q) out[q] = g.weight * c[q];
      return SampleInfo{rejected, true, v.mc_samples};
    }
    throw std::runtime_error("kinematic_lhs: too many grazing motions");
  });
}

VerificationReport compare(const std::string& theorem, const McEstimate& lhs, const MeasureValue& rhs) {
  VerificationReport rep;
  rep.theorem = theorem;
  rep.samples = lhs.samples;
  rep.rejections = lhs.rejections;
  rep.hits = lhs.hits;
  const auto monomials = lhs.mean.monomials();
  for (std::size_t q = 0; q < lhs.mean.size(); ++q) {
    CoordinateCheck c;
    c.beta = monomials[q];
    c.lhs = lhs.mean.coordinate_at(q);
    c.lhs_se = lhs.std_error.coordinate_at(q);
    c.rhs = rhs.tensor.coordinate_at(q);
    c.rhs_se = rhs.std_error.coordinate_at(q);
    const double diff = std::abs(c.lhs - c.rhs);
    const double se = std::hypot(c.lhs_se, c.rhs_se);
    c.z = diff / std::max(se, kAbsFloor / 3.0);
    c.pass = diff <= std::max(3.0 * se, kAbsFloor);
    rep.max_z = std::max(rep.max_z, c.z);
    rep.pass = rep.pass && c.pass;
    rep.coords.push_back(c);
  }
  return rep;
}

VerificationReport crofton_verify(const Polytope& p, const Region& beta, int j, int k, int r, int s, int l,
                                  const SamplingOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const MeasureValue rhs = crofton_rhs(p, beta, j, k, r, s, l, opt.budget);
  const McEstimate lhs = crofton_lhs(p, beta, j, k, r, s, l, opt);
  VerificationReport rep = compare(j == k ? "crofton.j_eq_k" : "crofton.j_lt_k", lhs, rhs);
  rep.n = p.ambient_dim();
  rep.j = j;
  rep.k = k;
  rep.r = r;
  rep.s = s;
  rep.l = l;
  if (k == p.ambient_dim()) rep.notes.push_back("k = n: both sides are evaluated exactly");
  if (j < k && l <= 1) {
    rep.notes.push_back("the l = 0 and l = 1 formulas hold for general convex bodies; only polytopes are checked here");
  }
  rep.wall_time = seconds_since(t0);
  return rep;
}

VerificationReport kinematic_verify(const Polytope& p, const Polytope& other, const Region& beta,
                                    const Region& other_beta, int j, int r, int s, int l,
                                    const SamplingOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const MeasureValue rhs = kinematic_rhs(p, beta, other, other_beta, j, r, s, l, opt.budget);
  const McEstimate lhs = kinematic_lhs(p, beta, other, other_beta, j, r, s, l, opt);
  VerificationReport rep = compare("kinematic", lhs, rhs);
  rep.n = p.ambient_dim();
  rep.j = j;
  rep.k = p.ambient_dim();
  rep.r = r;
  rep.s = s;
  rep.l = l;
  rep.wall_time = seconds_since(t0);
  return rep;
}

std::vector<MeasureIndex> enumerate_indices(int n, int p) {
  std::vector<MeasureIndex> out;
  for (int j = 0; j <= n; ++j) {
    for (int m = 0; 2 * m <= p; ++m) {
      const bool l_free = j != 0 && j != n - 1 && j != n;
      for (int l = 0; 2 * m + 2 * l <= p; ++l) {
        if (l > 0 && !l_free) break;
        const int rest = p - 2 * m - 2 * l;
        for (int s = 0; s <= rest; ++s) {
          if (j == n && s > 0) break;
          out.push_back({j, rest - s, s, l, m});
        }
      }
    }
  }
  return out;
}

namespace {

Polytope random_simplex(int n, CounterRng& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    std::vector<Vec> pts;
    for (int v = 0; v <= n; ++v) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = gauss(rng);
      pts.push_back(x);
    }
    Polytope p = Polytope::from_vertices(pts);
    if (!p.full_dimensional()) continue;
    double vol = 0.0;
    for (const Simplex& s : triangulate(p)) vol += simplex_volume(s);
    double longest = 0.0;
    for (const Vec& a : pts) {
      for (const Vec& b : pts) longest = std::max(longest, (a - b).norm());
    }
    if (vol >= 0.05 * std::pow(longest, n) / factorial(n)) return p;
  }
}

Polytope random_box(int n, CounterRng& rng) {
  const Mat rho = random_rotation(n, rng);
  Vec side(n), shift(n);
  for (int i = 0; i < n; ++i) {
    side[i] = 0.5 + rng.uniform();
    shift[i] = rng.uniform() - 0.5;
  }
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = ((mask >> i) & 1) ? side[i] : 0.0;
    pts.push_back(rho * x + shift);
  }
  return Polytope::from_vertices(pts);
}

// Distance from the centroid of F to the union of the faces not containing F.
double localization_radius(const Polytope& p, int j, int f) {
  const Face& face = p.faces(j)[f];
  double best = std::numeric_limits<double>::infinity();
  for (int q = 0; q < p.dim(); ++q) {
    for (const Face& g : p.faces(q)) {
      if (std::includes(g.vertices.begin(), g.vertices.end(), face.vertices.begin(), face.vertices.end())) continue;
      const Vec proj = g.point + g.frame * (g.frame.transpose() * (face.point - g.point));
      if (q == 0 || p.contains(proj, 1e-12)) best = std::min(best, (proj - face.point).norm());
    }
  }
  return best;
}

}  // namespace

RankResult independence_rank(int n, int p, int trials, std::uint64_t seed) {
  if (n < 2 || p < 0) throw std::invalid_argument("independence_rank: need n >= 2 and p >= 0");
  RankResult res;
  res.indices = enumerate_indices(n, p);
  res.expected = static_cast<int>(res.indices.size());
  const int cols = res.expected;
  std::vector<std::vector<double>> rows;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    const Polytope poly = (t % 2 == 0) ? random_simplex(n, rng) : random_box(n, rng);
    std::vector<Region> regions{Region::universe()};
    for (int q = 0; q <= n; ++q) {
      const int nf = static_cast<int>(poly.faces(q).size());
      const int f = static_cast<int>(rng() % static_cast<std::uint64_t>(nf));
      const double h = 0.25 * localization_radius(poly, q, f);
      const Vec c = poly.faces(q)[f].point;
      regions.push_back(Region::box(c - Vec::Constant(n, h), c + Vec::Constant(n, h)));
    }
    MeasureEvaluator ev(poly);
    for (const Region& beta : regions) {
      std::vector<SymTensor> vals;
      for (const MeasureIndex& idx : res.indices) vals.push_back(ev.evaluate(idx, beta).tensor);
      const std::size_t size = vals.front().size();
      for (std::size_t q = 0; q < size; ++q) {
        std::vector<double> row(cols);
        for (int c = 0; c < cols; ++c) row[c] = vals[c].coordinate_at(q);
        rows.push_back(std::move(row));
      }
    }
  }
  Eigen::MatrixXd a(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < cols; ++c) a(i, c) = rows[i][c];
  }
  for (int c = 0; c < cols; ++c) {
    const double nrm = a.col(c).norm();
    if (nrm > 0) a.col(c) /= nrm;
  }
  res.rows = static_cast<int>(rows.size());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  for (int i = 0; i < sv.size(); ++i) {
    res.singular_values.push_back(sv[i]);
    if (sv[i] > 1e-8 * smax) ++res.rank;
  }
  return res;
}

SteinerReport steiner_check(const Polytope& p, const std::vector<double>& eps, std::uint64_t samples,
                            std::uint64_t seed, int threads, double rel_tol) {
  if (!p.full_dimensional()) throw std::invalid_argument("steiner_check: polytope must be full-dimensional");
  const int n = p.ambient_dim();
  SteinerReport rep;
  rep.samples = samples;
  for (int q = 0; q <= n; ++q) rep.intrinsic_volumes.push_back(intrinsic_volume(p, q));
  Vec lo = p.vertices().front(), hi = lo;
  for (const Vec& v : p.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  for (std::size_t e = 0; e < eps.size(); ++e) {
    const double eps_e = eps[e];
    if (eps_e < 0) throw std::invalid_argument("steiner_check: negative eps");
    SteinerRow row;
    row.eps = eps_e;
    for (int q = 0; q <= n; ++q) row.exact += kappa_ball(n - q) * rep.intrinsic_volumes[q] * std::pow(eps_e, n - q);
    const Vec blo = lo.array() - eps_e, bhi = hi.array() + eps_e;
    const double box = (bhi - blo).prod();
    const std::size_t batches = static_cast<std::size_t>((samples + kBatch - 1) / kBatch);
    std::vector<std::uint64_t> hits(batches, 0);
    const std::uint64_t key = derive_key(seed, e);
    parallel_for(batches, threads, [&](std::size_t b) {
      const std::uint64_t lo_i = b * kBatch, hi_i = std::min<std::uint64_t>(samples, lo_i + kBatch);
      Vec x(n);
      for (std::uint64_t i = lo_i; i < hi_i; ++i) {
        CounterRng rng(key, i);
        for (int c = 0; c < n; ++c) x[c] = blo[c] + (bhi[c] - blo[c]) * rng.uniform();
        if (distance(p, x) <= eps_e) ++hits[b];
      }
    });
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    const double frac = static_cast<double>(total) / static_cast<double>(samples);
    row.mc = box * frac;
    row.std_error = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    row.rel_error = row.exact > 0 ? std::abs(row.mc - row.exact) / row.exact : std::abs(row.mc);
    row.pass = row.rel_error <= rel_tol;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace tcm
