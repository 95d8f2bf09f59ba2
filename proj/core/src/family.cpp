#include "trop/family.hpp"

#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace trop {

FamilySpec::FamilySpec(std::vector<std::size_t> part, std::vector<RationalMatrix> mats)
    : partition(std::move(part)), matrices(std::move(mats)) {
  m = matrices.size();
  if (partition.size() != m) {
    throw std::invalid_argument("partition size does not match number of matrices");
  }
  n = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
  for (const auto& a : matrices) {
    if (a.rows() != n || a.cols() != n) {
      throw std::invalid_argument("family matrices must be n x n with n the partition sum");
    }
  }
  for (std::size_t nk : partition) {
    if (nk == 0) throw std::invalid_argument("partition entries must be positive");
  }
}

Subspace FamilySpec::hypothesis_null_space(std::size_t j) const { return null_space(matrices.at(j)); }

Subspace FamilySpec::complement_intersection(std::size_t k) const {
  Subspace acc = Subspace::full(n);
  bool first = true;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == k) continue;
    Subspace nj = hypothesis_null_space(j);
    acc = first ? nj : intersect(acc, nj);
    first = false;
  }
  return acc;
}

std::size_t FamilySpec::block_offset(std::size_t k) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < k; ++i) off += partition[i];
  return off;
}

RationalMatrix canonical_projection(const std::vector<std::size_t>& partition, std::size_t j) {
  const std::size_t n = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
  std::size_t off = 0;
  for (std::size_t i = 0; i < j; ++i) off += partition[i];
  RationalMatrix p(n, n);
  for (std::size_t i = 0; i < partition[j]; ++i) p.at(off + i, off + i) = 1;
  return p;
}

FamilySpec canonical_family(const std::vector<std::size_t>& partition) {
  std::vector<RationalMatrix> mats;
  for (std::size_t j = 0; j < partition.size(); ++j) {
    mats.push_back(canonical_projection(partition, j));
  }
  return FamilySpec(partition, std::move(mats));
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "[ok]   " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  return out.str();
}

ValidationReport validate_family(const FamilySpec& spec) {
  ValidationReport report;
  auto add = [&](std::string name, bool pass, std::string detail) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  {
    const bool ok = spec.m > 1 && spec.m <= spec.n;
    add("family size", ok,
        "m = " + std::to_string(spec.m) + ", n = " + std::to_string(spec.n) +
            (ok ? "" : " (need 1 < m <= n)"));
  }
  {
    std::size_t total = std::accumulate(spec.partition.begin(), spec.partition.end(), std::size_t{0});
    add("partition sum", total == spec.n,
        "sum n_i = " + std::to_string(total) + ", n = " + std::to_string(spec.n));
  }

  // dim N_j = n - n_j, i.e. rank A_j = n_j.
  std::vector<Subspace> null_spaces;
  for (std::size_t j = 0; j < spec.m; ++j) {
    Subspace nj = spec.hypothesis_null_space(j);
    null_spaces.push_back(nj);
    const std::size_t want = spec.n - spec.partition[j];
    add("null space dimension A" + std::to_string(j + 1), nj.dim() == want,
        "dim = " + std::to_string(nj.dim()) + ", expected " + std::to_string(want));
  }

  {
    RationalMatrix sum = RationalMatrix::zero(spec.n, spec.n);
    for (const auto& a : spec.matrices) sum = sum + a;
    const bool ok = rank(sum) == spec.n;
    add("sum invertible", ok, ok ? "rank n" : "A_1 + ... + A_m is singular");
  }

  // Direct sum of the complementary intersections.
  std::vector<Subspace> inters;
  bool dims_ok = true;
  std::size_t dim_total = 0;
  for (std::size_t k = 0; k < spec.m; ++k) {
    Subspace w = spec.complement_intersection(k);
    dim_total += w.dim();
    if (w.dim() != spec.partition[k]) dims_ok = false;
    inters.push_back(std::move(w));
  }
  add("intersection dimensions", dims_ok,
      dims_ok ? "dim of each complementary intersection matches its block"
              : "some complementary intersection has wrong dimension");
  {
    bool span_ok = dim_total == spec.n;
    if (span_ok) {
      std::vector<RationalVector> all;
      for (const auto& w : inters) {
        for (const auto& b : w.basis()) all.push_back(b);
      }
      RationalMatrix stacked(all.size(), spec.n);
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < spec.n; ++j) stacked.at(i, j) = all[i][j];
      }
      span_ok = rank(stacked) == spec.n;
    }
    add("direct sum spans", span_ok,
        span_ok ? "concatenated intersection bases have rank n"
                : "intersections do not span (total dim " + std::to_string(dim_total) + ")");
  }
  {
    bool pairwise_ok = true;
    for (std::size_t i = 0; i < inters.size() && pairwise_ok; ++i) {
      for (std::size_t k = i + 1; k < inters.size(); ++k) {
        if (sum_dim(inters[i], inters[k]) != inters[i].dim() + inters[k].dim()) {
          pairwise_ok = false;
          break;
        }
      }
    }
    add("pairwise trivial overlap", pairwise_ok,
        pairwise_ok ? "" : "two complementary intersections overlap nontrivially");
  }
  return report;
}

namespace {

RationalMatrix random_integer_matrix(std::size_t n, std::mt19937_64& rng) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Raw engine output mapped by hand; keeps draws identical across
      // standard library implementations.
      const std::uint64_t u = rng();
      m.at(i, j) = Rational(static_cast<std::int64_t>(u % 7) - 3);
    }
  }
  return m;
}

}  // namespace

FamilySpec random_family(std::size_t n, const std::vector<std::size_t>& partition,
                         std::uint64_t seed) {
  const std::size_t total = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
  if (total != n) throw std::invalid_argument("partition does not sum to n");

  std::mt19937_64 rng(seed);
  constexpr int kMaxRetries = 1000;

  auto draw_invertible = [&]() {
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
      RationalMatrix m = random_integer_matrix(n, rng);
      if (determinant(m) != 0) return m;
    }
    throw std::runtime_error("random_family: retry budget exhausted drawing an invertible matrix");
  };

  const RationalMatrix b0 = draw_invertible();
  const RationalMatrix c0 = draw_invertible();
  const RationalMatrix c0_inv = *inverse(c0);

  std::vector<RationalMatrix> mats;
  for (std::size_t j = 0; j < partition.size(); ++j) {
    mats.push_back(b0 * canonical_projection(partition, j) * c0_inv);
  }
  return FamilySpec(partition, std::move(mats));
}

}  // namespace trop
