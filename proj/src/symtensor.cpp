#include "tcm/symtensor.hpp"

#include "tcm/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tcm {

namespace {

struct MonomialTable {
  std::vector<MultiIndex> monomials;
  std::vector<int> lookup;  // mixed-radix code of the first dim-1 exponents
  std::vector<double> multinomials;
};

void enumerate(int dim, int rank, int pos, int remaining, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
  if (pos == dim - 1) {
    cur[pos] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = static_cast<std::uint8_t>(e);
    enumerate(dim, rank, pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

int code_of(int dim, int rank, const MultiIndex& beta) {
  int code = 0;
  int radix = 1;
  for (int i = 0; i + 1 < dim; ++i) {
    code += beta[i] * radix;
    radix *= rank + 1;
  }
  return code;
}

class Tables {
 public:
  Tables() {
    for (int dim = 1; dim <= kMaxDim; ++dim) {
      for (int rank = 0; rank <= kMaxRank; ++rank) {
        MonomialTable& t = table(dim, rank);
        MultiIndex cur{};
        enumerate(dim, rank, 0, rank, cur, t.monomials);
        int size = 1;
        for (int i = 0; i + 1 < dim; ++i) size *= rank + 1;
        t.lookup.assign(size, -1);
        for (std::size_t k = 0; k < t.monomials.size(); ++k) {
          t.lookup[code_of(dim, rank, t.monomials[k])] = static_cast<int>(k);
          double m = factorial(rank);
          for (int i = 0; i < dim; ++i) m /= factorial(t.monomials[k][i]);
          t.multinomials.push_back(m);
        }
      }
    }
  }
  const MonomialTable& get(int dim, int rank) const {
    if (dim < 1 || dim > kMaxDim || rank < 0 || rank > kMaxRank) {
      throw std::out_of_range("SymTensor: unsupported (dim, rank) = (" + std::to_string(dim) +
                              ", " + std::to_string(rank) + ")");
    }
    return tables_[(dim - 1) * (kMaxRank + 1) + rank];
  }

 private:
  MonomialTable& table(int dim, int rank) { return tables_[(dim - 1) * (kMaxRank + 1) + rank]; }
  std::array<MonomialTable, kMaxDim*(kMaxRank + 1)> tables_;
};

const MonomialTable& tables(int dim, int rank) {
  static const Tables instance;
  return instance.get(dim, rank);
}

void require_same_shape(const SymTensor& a, const SymTensor& b, const char* what) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch (dim " +
                                std::to_string(a.dim()) + " rank " + std::to_string(a.rank()) +
                                " vs dim " + std::to_string(b.dim()) + " rank " +
                                std::to_string(b.rank()) + ")");
  }
}

}  // namespace

std::size_t monomial_index(int dim, int rank, const MultiIndex& beta) {
  const MonomialTable& t = tables(dim, rank);
  int total = 0;
  for (int i = 0; i < dim; ++i) total += beta[i];
  for (int i = dim; i < kMaxDim; ++i) {
    if (beta[i] != 0) throw std::invalid_argument("monomial_index: exponent beyond dimension");
  }
  if (total != rank) throw std::invalid_argument("monomial_index: total degree != rank");
  return static_cast<std::size_t>(t.lookup[code_of(dim, rank, beta)]);
}

double multinomial(int rank, const MultiIndex& beta) {
  double m = factorial(rank);
  for (int i = 0; i < kMaxDim; ++i) m /= factorial(beta[i]);
  return m;
}

SymTensor::SymTensor(int dim, int rank)
    : dim_(dim), rank_(rank), coeffs_(tables(dim, rank).monomials.size(), 0.0) {}

SymTensor SymTensor::scalar(int dim, double value) {
  SymTensor t(dim, 0);
  t.coeffs_[0] = value;
  return t;
}

std::span<const MultiIndex> SymTensor::monomials() const { return tables(dim_, rank_).monomials; }

double SymTensor::coeff(const MultiIndex& beta) const {
  return coeffs_[monomial_index(dim_, rank_, beta)];
}

void SymTensor::set_coeff(const MultiIndex& beta, double v) {
  coeffs_[monomial_index(dim_, rank_, beta)] = v;
}

double SymTensor::coordinate(const MultiIndex& beta) const {
  return coeffs_[monomial_index(dim_, rank_, beta)] / multinomial(rank_, beta);
}

double SymTensor::coordinate_at(std::size_t k) const {
  return coeffs_[k] / tables(dim_, rank_).multinomials[k];
}

double SymTensor::evaluate(const Vec& y) const {
  if (y.size() != dim_) throw std::invalid_argument("SymTensor::evaluate: dimension mismatch");
  const auto& mons = tables(dim_, rank_).monomials;
  double total = 0.0;
  for (std::size_t k = 0; k < mons.size(); ++k) {
    double term = coeffs_[k];
    for (int i = 0; i < dim_; ++i) term *= std::pow(y[i], mons[k][i]);
    total += term;
  }
  return total;
}

double SymTensor::value() const {
  if (rank_ != 0) throw std::logic_error("SymTensor::value: tensor is not a scalar");
  return coeffs_[0];
}

bool SymTensor::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

SymTensor& SymTensor::operator+=(const SymTensor& o) { return add_scaled(o, 1.0); }
SymTensor& SymTensor::operator-=(const SymTensor& o) { return add_scaled(o, -1.0); }

SymTensor& SymTensor::operator*=(double a) {
  for (double& c : coeffs_) c *= a;
  return *this;
}

SymTensor& SymTensor::add_scaled(const SymTensor& o, double a) {
  require_same_shape(*this, o, "SymTensor::add_scaled");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += a * o.coeffs_[k];
  return *this;
}

SymTensor operator*(const SymTensor& a, const SymTensor& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("sym_product: dimension mismatch");
  const int dim = a.dim_;
  const int rank = a.rank_ + b.rank_;
  SymTensor out(dim, rank);
  const auto& ma = tables(dim, a.rank_).monomials;
  const auto& mb = tables(dim, b.rank_).monomials;
  const MonomialTable& mo = tables(dim, rank);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const double ca = a.coeffs_[i];
    if (ca == 0.0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      const double cb = b.coeffs_[j];
      if (cb == 0.0) continue;
      MultiIndex sum{};
      for (int d = 0; d < dim; ++d) sum[d] = static_cast<std::uint8_t>(ma[i][d] + mb[j][d]);
      out.coeffs_[mo.lookup[code_of(dim, rank, sum)]] += ca * cb;
    }
  }
  return out;
}

SymTensor sym_product(const SymTensor& a, const SymTensor& b) { return a * b; }

SymTensor power(const SymTensor& t, int q) {
  if (q < 0) throw std::invalid_argument("power: negative exponent");
  SymTensor out = SymTensor::scalar(t.dim(), 1.0);
  for (int i = 0; i < q; ++i) out = out * t;
  return out;
}

SymTensor add_scaled(const SymTensor& t, const SymTensor& u, double a) {
  SymTensor out = t;
  out.add_scaled(u, a);
  return out;
}

SymTensor metric_tensor(int n) {
  SymTensor q(n, 2);
  for (int i = 0; i < n; ++i) {
    MultiIndex b{};
    b[i] = 2;
    q.set_coeff(b, 1.0);
  }
  return q;
}

SymTensor subspace_metric_tensor(const Mat& frame) {
  const int n = static_cast<int>(frame.rows());
  if (!is_orthonormal(frame, 1e-10)) {
    throw std::invalid_argument("subspace_metric_tensor: frame is not orthonormal");
  }
  SymTensor q(n, 2);
  for (int c = 0; c < frame.cols(); ++c) q += vector_power(frame.col(c), 2);
  return q;
}

SymTensor vector_power(const Vec& x, int r) {
  const int n = static_cast<int>(x.size());
  SymTensor out(n, r);
  const auto& mons = tables(n, r).monomials;
  const auto& mult = tables(n, r).multinomials;
  for (std::size_t k = 0; k < mons.size(); ++k) {
    double v = mult[k];
    for (int i = 0; i < n && v != 0.0; ++i) {
      for (int e = 0; e < mons[k][i]; ++e) v *= x[i];
    }
    out.coeffs()[k] = v;
  }
  return out;
}

double max_abs_coordinate_diff(const SymTensor& t, const SymTensor& u) {
  require_same_shape(t, u, "max_abs_coordinate_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    m = std::max(m, std::abs(t.coordinate_at(k) - u.coordinate_at(k)));
  }
  return m;
}

double max_abs_coordinate(const SymTensor& t) {
  double m = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) m = std::max(m, std::abs(t.coordinate_at(k)));
  return m;
}

SymTensor rotated(const SymTensor& t, const Mat& rho) {
  const int n = t.dim();
  if (rho.rows() != n || rho.cols() != n) throw std::invalid_argument("rotated: bad matrix shape");
  std::vector<std::vector<SymTensor>> col_powers(n);
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e <= t.rank(); ++e) col_powers[i].push_back(vector_power(rho.col(i), e));
  }
  SymTensor out(n, t.rank());
  const auto mons = t.monomials();
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (t.coeffs()[k] == 0.0) continue;
    SymTensor term = SymTensor::scalar(n, t.coeffs()[k]);
    for (int i = 0; i < n; ++i) {
      if (mons[k][i] > 0) term = term * col_powers[i][mons[k][i]];
    }
    out += term;
  }
  return out;
}

SymTensor abs_product(const SymTensor& exact, const SymTensor& err) {
  SymTensor a = exact;
  for (double& c : a.coeffs()) c = std::abs(c);
  SymTensor b = err;
  for (double& c : b.coeffs()) c = std::abs(c);
  return a * b;
}

SymTensor hypot(const SymTensor& a, const SymTensor& b) {
  require_same_shape(a, b, "hypot");
  SymTensor out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.coeffs()[k] = std::hypot(a.coeffs()[k], b.coeffs()[k]);
  return out;
}

}  // namespace tcm
