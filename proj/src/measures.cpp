#include "tcm/measures.hpp"

#include "tcm/coeffs.hpp"
#include "tcm/rng.hpp"
#include "tcm/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tcm {

MeasureEvaluator::MeasureEvaluator(const Polytope& p, MomentBudget budget) : p_(p), budget_(budget) {}

SymTensor MeasureEvaluator::face_moment(int j, int f, int r, const Region& beta) {
  const int n = p_.ambient_dim();
  if (beta.is_universe()) {
    const auto key = std::make_tuple(j, f, r);
    auto it = face_moments_.find(key);
    if (it != face_moments_.end()) return it->second;
    auto sit = simplices_.find({j, f});
    if (sit == simplices_.end()) sit = simplices_.emplace(std::make_pair(j, f), triangulate(p_, j, f)).first;
    SymTensor acc(n, r);
    for (const Simplex& s : sit->second) acc += simplex_moment(s, r);
    return face_moments_.emplace(key, std::move(acc)).first->second;
  }
  SymTensor acc(n, r);
  const std::optional<Polytope> clipped = clip_face(p_, j, f, beta);
  if (!clipped) return acc;
  for (const Simplex& s : triangulate(*clipped)) acc += simplex_moment(s, r);
  return acc;
}

const MomentResult& MeasureEvaluator::cone_moment(int j, int f, int s) {
  const auto key = std::make_tuple(j, f, s);
  auto it = cone_moments_.find(key);
  if (it != cone_moments_.end()) return it->second;
  MomentBudget b = budget_;
  b.stream = derive_key(budget_.stream, (static_cast<std::uint64_t>(j) << 40) ^
                                            (static_cast<std::uint64_t>(f) << 8) ^ static_cast<std::uint64_t>(s));
  return cone_moments_.emplace(key, cone_sphere_moment(normal_cone(p_, j, f), s, b)).first->second;
}

const SymTensor& MeasureEvaluator::face_metric_power(int j, int f, int l) {
  const auto key = std::make_tuple(j, f, l);
  auto it = metric_powers_.find(key);
  if (it != metric_powers_.end()) return it->second;
  SymTensor t = l == 0 ? SymTensor::scalar(p_.ambient_dim(), 1.0)
                       : power(subspace_metric_tensor(p_.faces(j)[f].frame), l);
  return metric_powers_.emplace(key, std::move(t)).first->second;
}

MeasureValue MeasureEvaluator::evaluate(const MeasureIndex& idx, const Region& beta) {
  const int n = p_.ambient_dim();
  const int rank = std::max(0, idx.rank());
  MeasureValue out;
  out.tensor = SymTensor(n, rank);
  out.std_error = SymTensor(n, rank);
  if (idx.j < 0 || idx.j > n || idx.r < 0 || idx.s < 0 || idx.l < 0 || idx.m < 0) return out;
  if (idx.j == 0 && idx.l >= 1) return out;
  if (idx.j == n && idx.s != 0) return out;
  if (idx.j > p_.dim()) return out;

  SymTensor sum(n, idx.r + idx.s + 2 * idx.l);
  SymTensor err(n, idx.r + idx.s + 2 * idx.l);
  if (idx.j == n) {
    sum = face_metric_power(n, 0, idx.l) * face_moment(n, 0, idx.r, beta);
    sum *= c_norm(n, n, idx.r, 0, idx.l);
    out.faces = 1;
  } else {
    const double scale = c_norm(n, idx.j, idx.r, idx.s, idx.l) / omega(n - idx.j);
    const int nf = static_cast<int>(p_.faces(idx.j).size());
    for (int f = 0; f < nf; ++f) {
      const SymTensor fm = face_moment(idx.j, f, idx.r, beta);
      if (fm.is_zero()) continue;
      const MomentResult& cm = cone_moment(idx.j, f, idx.s);
      const SymTensor left = face_metric_power(idx.j, f, idx.l) * fm;
      sum.add_scaled(left * cm.tensor, scale);
      if (cm.method == MomentMethod::monte_carlo) {
        err = hypot(err, abs_product(left, cm.std_error) * std::abs(scale));
        out.exact = false;
        out.mc_samples += cm.samples;
      }
      ++out.faces;
    }
  }
  if (idx.m > 0) {
    const SymTensor qm = power(metric_tensor(n), idx.m);
    out.tensor = qm * sum;
    out.std_error = abs_product(qm, err);
  } else {
    out.tensor = std::move(sum);
    out.std_error = std::move(err);
  }
  return out;
}

MeasureValue tensorial_measure(const Polytope& p, const MeasureIndex& idx, const Region& beta, const MomentBudget& budget) {
  MeasureEvaluator ev(p, budget);
  return ev.evaluate(idx, beta);
}

double curvature_measure(const Polytope& p, int q, const Region& beta, const MomentBudget& budget) {
  if (q < 0 || q > p.ambient_dim()) throw std::invalid_argument("curvature_measure: q out of range");
  return tensorial_measure(p, {q, 0, 0, 0, 0}, beta, budget).tensor.value();
}

double intrinsic_volume(const Polytope& p, int q, const MomentBudget& budget) {
  return curvature_measure(p, q, Region::universe(), budget);
}

double tcm_relation_check(const Polytope& p, const Region& beta, int r, int s_prime) {
  const int n = p.ambient_dim();
  if (n < 2 || s_prime < 0) throw std::invalid_argument("tcm_relation_check: need n >= 2 and s' >= 0");
  MeasureEvaluator ev(p);
  const SymTensor lhs = ev.evaluate({n - 1, r, s_prime, 1, 0}, beta).tensor;
  const SymTensor a = ev.evaluate({n - 1, r, s_prime, 0, 1}, beta).tensor;
  const SymTensor b = ev.evaluate({n - 1, r, s_prime + 2, 0, 0}, beta).tensor;
  const double pi = std::numbers::pi;
  SymTensor rhs = a;
  rhs.add_scaled(b, -2.0 * pi * (s_prime + 2));
  rhs *= 2.0 * pi / (n - 1);
  return max_abs_coordinate_diff(lhs, rhs);
}

}  // namespace tcm
