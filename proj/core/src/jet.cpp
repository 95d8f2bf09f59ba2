#include "trop/jet.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace trop {

namespace {

void enumerate_rec(int vars, int var, int remaining, MultiIndex& current,
                   std::vector<MultiIndex>& out) {
  if (var == vars - 1) {
    current[var] = static_cast<std::uint8_t>(remaining);
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int take = remaining; take >= 0; --take) {
    current[var] = static_cast<std::uint8_t>(take);
    enumerate_rec(vars, var + 1, remaining - take, current, out);
  }
  current[var] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int vars, int degree) : vars_(vars), degree_(degree) {
  if (vars < 1 || vars > kMaxDim) throw std::invalid_argument("MonomialBasis: bad variable count");
  if (degree < 0) throw std::invalid_argument("MonomialBasis: negative degree");

  MultiIndex current{};
  for (int total = 0; total <= degree; ++total) {
    enumerate_rec(vars_, 0, total, current, exponents_);
  }

  // Dense ranking table over base-(degree+1) packed exponents.
  std::size_t packed_size = 1;
  for (int v = 0; v < vars_; ++v) packed_size *= static_cast<std::size_t>(degree + 1);
  if (packed_size > (std::size_t(1) << 24)) {
    throw std::invalid_argument("MonomialBasis: degree/dimension too large");
  }
  index_map_.assign(packed_size, -1);
  auto pack = [&](const MultiIndex& beta) {
    std::size_t key = 0;
    for (int v = vars_ - 1; v >= 0; --v) key = key * (degree_ + 1) + beta[v];
    return key;
  };
  for (std::size_t i = 0; i < exponents_.size(); ++i) index_map_[pack(exponents_[i])] = static_cast<std::int64_t>(i);

  if (exponents_.size() <= 2048) {
    product_.assign(exponents_.size() * exponents_.size(), -1);
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      for (std::size_t j = 0; j < exponents_.size(); ++j) {
        MultiIndex sum{};
        int total = 0;
        for (int v = 0; v < vars_; ++v) {
          sum[v] = static_cast<std::uint8_t>(exponents_[i][v] + exponents_[j][v]);
          total += sum[v];
        }
        if (total <= degree_) product_[i * exponents_.size() + j] = static_cast<int>(index_map_[pack(sum)]);
      }
    }
  }
}

int MonomialBasis::index_of(const MultiIndex& beta) const {
  int total = 0;
  for (int v = 0; v < vars_; ++v) total += beta[v];
  for (int v = vars_; v < kMaxDim; ++v) {
    if (beta[v] != 0) return -1;
  }
  if (total > degree_) return -1;
  std::size_t key = 0;
  for (int v = vars_ - 1; v >= 0; --v) key = key * (degree_ + 1) + beta[v];
  return static_cast<int>(index_map_[key]);
}

void MonomialBasis::monomials_at(const Vec& u, std::vector<double>& out) const {
  out.resize(exponents_.size());
  // Per-variable power tables.
  double powers[kMaxDim][32];
  for (int v = 0; v < vars_; ++v) {
    powers[v][0] = 1.0;
    for (int k = 1; k <= degree_; ++k) powers[v][k] = powers[v][k - 1] * u(v);
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    double m = 1.0;
    for (int v = 0; v < vars_; ++v) m *= powers[v][exponents_[i][v]];
    out[i] = m;
  }
}

const MonomialBasis& MonomialBasis::get(int vars, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{vars, degree}];
  if (!slot) slot.reset(new MonomialBasis(vars, degree));
  return *slot;
}

Jet::Jet(int vars, int degree) : basis_(&MonomialBasis::get(vars, degree)), coef_(basis_->size(), 0.0) {}

double Jet::coef(const MultiIndex& beta) const {
  const int i = basis_->index_of(beta);
  if (i < 0) throw std::out_of_range("multi-index outside jet degree");
  return coef_[static_cast<std::size_t>(i)];
}

Jet& Jet::operator+=(const Jet& other) {
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += other.coef_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= other.coef_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coef_) c *= s;
  return *this;
}

Jet Jet::operator*(const Jet& other) const {
  Jet out(vars(), degree());
  const std::size_t size = coef_.size();
  for (std::size_t i = 0; i < size; ++i) {
    const double a = coef_[i];
    if (a == 0.0) continue;
    for (std::size_t j = 0; j < size; ++j) {
      const double b = other.coef_[j];
      if (b == 0.0) continue;
      const int target = basis_->product_index(i, j);
      if (target >= 0) out.coef_[static_cast<std::size_t>(target)] += a * b;
    }
  }
  return out;
}

double Jet::eval(const Vec& u, int max_degree) const {
  thread_local std::vector<double> monomials;
  basis_->monomials_at(u, monomials);
  double acc = 0.0;
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    if (multi_index_order(basis_->exponent(i)) > max_degree) continue;
    acc += coef_[i] * monomials[i];
  }
  return acc;
}

Jet jet_pow(const Jet& s, double p) {
  const double c = s.constant();
  if (!(c > 0.0)) throw std::domain_error("jet_pow: nonpositive constant term");
  const int degree = s.degree();

  // s = c (1 + w) with w(0) = 0; s^p = c^p sum_k binom(p,k) w^k, exact at
  // this truncation order because w^k has valuation k.
  Jet w = s;
  w *= 1.0 / c;
  w.coef(std::size_t{0}) -= 1.0;

  Jet result(s.vars(), degree);
  result.coef(std::size_t{0}) = 1.0;
  Jet w_power = w;
  double binom = 1.0;
  for (int k = 1; k <= degree; ++k) {
    binom *= (p - (k - 1)) / k;
    Jet term = w_power;
    term *= binom;
    result += term;
    if (k < degree) w_power = w_power * w;
  }
  result *= std::pow(c, p);
  return result;
}

double multi_index_factorial(const MultiIndex& beta) {
  double f = 1.0;
  for (int v = 0; v < kMaxDim; ++v) {
    for (int k = 2; k <= beta[v]; ++k) f *= k;
  }
  return f;
}

}  // namespace trop
