#include "epat/normality.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <vector>

namespace epat {

namespace {

struct Masks {
  // rows[i]: bit j set iff entry (i,j); cols[j]: bit i set iff entry (i,j).
  std::vector<std::uint64_t> rows, cols;
};

Masks masks_of(const BinaryMatrix& b) {
  Masks m;
  m.rows.resize(b.order());
  m.cols.resize(b.order());
  for (int i = 0; i < b.order(); ++i) m.rows[i] = b.row(i);
  for (int j = 0; j < b.order(); ++j) m.cols[j] = b.col(j);
  return m;
}

bool normal_masks(const Masks& m, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (std::popcount(m.rows[i] & m.rows[j]) != std::popcount(m.cols[i] & m.cols[j]))
        return false;
  return true;
}

bool pair_condition_masks(const Masks& a, const Masks& b, int n) {
  // Both sides are symmetric matrices, so i <= j suffices.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int lhs =
          std::popcount(a.rows[i] & b.rows[j]) + std::popcount(b.rows[i] & a.rows[j]);
      const int rhs =
          std::popcount(a.cols[i] & b.cols[j]) + std::popcount(b.cols[i] & a.cols[j]);
      if (lhs != rhs) return false;
    }
  return true;
}

std::vector<Masks> class_masks(const Pattern& p) {
  std::vector<Masks> ms(p.class_count());
  for (auto& m : ms) {
    m.rows.assign(p.order(), 0);
    m.cols.assign(p.order(), 0);
  }
  for (int i = 0; i < p.order(); ++i)
    for (int j = 0; j < p.order(); ++j) {
      Masks& m = ms[p.cell(i, j)];
      m.rows[i] |= 1ull << j;
      m.cols[j] |= 1ull << i;
    }
  return ms;
}

}  // namespace

bool is_normal_binary(const BinaryMatrix& b) {
  return normal_masks(masks_of(b), b.order());
}

bool pair_condition(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.order() != b.order()) throw DomainError("pair_condition: order mismatch");
  return pair_condition_masks(masks_of(a), masks_of(b), a.order());
}

bool is_normal_lemma2(const Pattern& p) {
  const int n = p.order();
  const auto ms = class_masks(p);
  for (const auto& m : ms)
    if (!normal_masks(m, n)) return false;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (!pair_condition_masks(ms[i], ms[j], n)) return false;
  return true;
}

CommutatorPolynomial::CommutatorPolynomial(const Pattern& p) {
  const int n = p.order();
  terms_.rows = terms_.cols = n;
  terms_.entries.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Poly& e = terms_.at(a, b);
      for (int t = 0; t < n; ++t) {
        poly_add(e, monomial(p.cell(a, t), p.cell(b, t)), 1);   // (A A^T)(a,b)
        poly_add(e, monomial(p.cell(t, a), p.cell(t, b)), -1);  // (A^T A)(a,b)
      }
    }
}

long long CommutatorPolynomial::term(int p, int q, int a, int b) const {
  const Poly& e = terms_.at(p, q);
  auto it = e.find(monomial(a, b));
  return it == e.end() ? 0 : it->second;
}

std::size_t CommutatorPolynomial::term_count() const {
  std::size_t s = 0;
  for (const auto& e : terms_.entries) s += e.size();
  return s;
}

CommutatorPolynomial commutator(const Pattern& p) { return CommutatorPolynomial(p); }

bool is_normal_symbolic(const Pattern& p) { return CommutatorPolynomial(p).is_zero(); }

bool is_normal_binary_assignments(const Pattern& p) {
  const int k = p.class_count();
  if (k > kMaxAssignmentClasses)
    throw CapacityError("binary-assignment oracle limited to " +
                        std::to_string(kMaxAssignmentClasses) + " classes, pattern has " +
                        std::to_string(k));
  const int n = p.order();
  const auto ms = class_masks(p);
  Masks ind;
  ind.rows.resize(n);
  ind.cols.resize(n);
  for (std::uint32_t subset = 1; subset < (1u << k); ++subset) {
    std::fill(ind.rows.begin(), ind.rows.end(), 0);
    std::fill(ind.cols.begin(), ind.cols.end(), 0);
    for (int c = 0; c < k; ++c) {
      if (!((subset >> c) & 1u)) continue;
      for (int i = 0; i < n; ++i) {
        ind.rows[i] |= ms[c].rows[i];
        ind.cols[i] |= ms[c].cols[i];
      }
    }
    if (!normal_masks(ind, n)) return false;
  }
  return true;
}

bool is_normal_random_specialization(const Pattern& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const int n = p.order();
  const int k = p.class_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-1000, 1000);
  std::vector<long long> value(k);
  std::vector<long long> m(static_cast<std::size_t>(n) * n);
  for (int trial = 0; trial < trials; ++trial) {
    for (int c = 0; c < k; ++c) value[c] = dist(rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m[static_cast<std::size_t>(i) * n + j] = value[p.cell(i, j)];
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        long long lhs = 0, rhs = 0;
        for (int t = 0; t < n; ++t) {
          lhs += m[static_cast<std::size_t>(i) * n + t] * m[static_cast<std::size_t>(j) * n + t];
          rhs += m[static_cast<std::size_t>(t) * n + i] * m[static_cast<std::size_t>(t) * n + j];
        }
        if (lhs != rhs) return false;
      }
  }
  return true;
}

bool eq3_filter(const BinaryMatrix& b) {
  const auto prof = row_col_profile(b);
  for (int i = 0; i < b.order(); ++i)
    if (prof.r[i] != prof.c[i] || prof.r_off[i] != prof.c_off[i]) return false;
  return true;
}

bool eq3_partial_filter(int order, std::span<const ClassId> prefix) {
  const int n = order;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  if (prefix.size() > nn) throw DomainError("prefix longer than the cell grid");
  int k = 0;
  for (ClassId c : prefix) k = std::max(k, static_cast<int>(c) + 1);
  if (k == 0) return true;
  std::vector<int> row_cnt(static_cast<std::size_t>(n) * k, 0);
  std::vector<int> col_cnt(static_cast<std::size_t>(n) * k, 0);
  for (std::size_t t = 0; t < prefix.size(); ++t) {
    const int i = static_cast<int>(t) / n, j = static_cast<int>(t) % n;
    ++row_cnt[static_cast<std::size_t>(i) * k + prefix[t]];
    ++col_cnt[static_cast<std::size_t>(j) * k + prefix[t]];
  }
  const int assigned = static_cast<int>(prefix.size());
  for (int m = 0; m < n; ++m) {
    // Assigned cells in row m / column m of a row-major prefix.
    const int in_row = std::clamp(assigned - m * n, 0, n);
    const int in_col = m < assigned ? (assigned - 1 - m) / n + 1 : 0;
    const int rem_row = n - in_row;
    const int rem_col = n - in_col;
    for (int c = 0; c < k; ++c) {
      const int rc = row_cnt[static_cast<std::size_t>(m) * k + c];
      const int cc = col_cnt[static_cast<std::size_t>(m) * k + c];
      // Final row and column counts for class c must be equal; both can only
      // grow by the free cells left in that line.
      if (rc > cc + rem_col || cc > rc + rem_row) return false;
    }
  }
  return true;
}

}  // namespace epat
