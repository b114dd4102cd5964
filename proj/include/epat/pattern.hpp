// Entry patterns (set partitions of an n x n cell grid) and bit-packed 0-1
// matrices. All types are immutable values after construction; every operation
// here is a pure function, safe to call concurrently.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "epat/errors.hpp"

namespace epat {

// Hard cap so a bit-packed row always fits one machine word.
inline constexpr int kMaxOrder = 32;

using ClassId = std::uint16_t;

/// First-occurrence (restricted-growth) relabeling of an arbitrary id grid.
std::vector<ClassId> relabel_to_rgs(std::span<const int> raw);
std::vector<ClassId> relabel_to_rgs(std::span<const ClassId> raw);

/// An order-n matrix of indeterminates, stored as the set partition of its
/// n^2 cells. cells() is always a restricted-growth string: cells[0] == 0,
/// every label is at most one past the prefix maximum, and class ids are
/// contiguous 0..class_count()-1.
class Pattern {
 public:
  Pattern() = default;

  /// Validates the restricted-growth invariant; throws DomainError otherwise.
  static Pattern from_cells(int order, std::vector<ClassId> cells);
  /// Relabels an arbitrary id grid to restricted-growth form.
  static Pattern from_raw_ids(int order, std::span<const int> raw);

  int order() const { return order_; }
  int class_count() const { return class_count_; }
  ClassId cell(int i, int j) const {
    return cells_[static_cast<std::size_t>(i) * order_ + j];
  }
  const std::vector<ClassId>& cells() const { return cells_; }

  bool operator==(const Pattern&) const = default;
  auto operator<=>(const Pattern&) const = default;

 private:
  int order_ = 0;
  int class_count_ = 0;
  std::vector<ClassId> cells_;
};

/// 0-1 matrix of order <= kMaxOrder, one bit-packed row per 64-bit word.
/// Bit j of row(i) is entry (i,j).
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(int order);
  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BinaryMatrix identity(int order);
  static BinaryMatrix ones(int order);  // J_n

  int order() const { return order_; }
  int get(int i, int j) const { return static_cast<int>((rows_[i] >> j) & 1u); }
  void set(int i, int j, int value);
  std::uint64_t row(int i) const { return rows_[i]; }
  std::uint64_t col(int j) const;

  BinaryMatrix transpose() const;
  int ones_count() const;

  bool operator==(const BinaryMatrix&) const = default;
  auto operator<=>(const BinaryMatrix&) const = default;

 private:
  int order_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Row/column sums, plus the off-diagonal variants of Eq. (3)-style checks.
struct RowColProfile {
  std::vector<int> r;
  std::vector<int> c;
  std::vector<int> r_off;
  std::vector<int> c_off;
};

/// Builds the pattern whose classes are the equality classes of the tokens,
/// in first-occurrence order. Invariant under bijective token renaming.
Pattern pattern_from_labels(const std::vector<std::vector<std::string>>& rows);

/// Indicator matrix of the cells holding class `cls`.
BinaryMatrix coefficient_matrix(const Pattern& p, int cls);
/// All coefficient matrices; they are pairwise disjoint and sum to J_n.
std::vector<BinaryMatrix> coefficient_matrices(const Pattern& p);

bool is_symmetric(const Pattern& p);

/// Swaps (i,j)/(j,i), then relabels. Note the relabeling: a pattern can equal
/// its transpose_pattern without being symmetric (the relabel may restore the
/// original string, e.g. for the order-3 circulant).
Pattern transpose_pattern(const Pattern& p);

/// Moves cell (i,j) to (perm(i),perm(j)), then relabels.
Pattern permute_pattern(const Pattern& p, const std::vector<int>& perm);

/// Identifies all classes within each group, then relabels. `groups` must
/// partition 0..class_count()-1.
Pattern merge_classes(const Pattern& p, const std::vector<std::vector<int>>& groups);

int ones_count(const BinaryMatrix& b);
RowColProfile row_col_profile(const BinaryMatrix& b);

// Text format: first line "n", then n lines of n whitespace-separated tokens.
// Canonical serialization uses tokens x0, x1, ... in restricted-growth order.
Pattern read_pattern(std::istream& in);
Pattern parse_pattern(const std::string& text);
std::string to_text(const Pattern& p);
void write_pattern(std::ostream& out, const Pattern& p);

std::vector<int> identity_permutation(int n);
std::vector<int> inverse_permutation(const std::vector<int>& perm);

/// Calls fn(cells) for every restricted-growth string of the given length,
/// in lexicographic order.
template <class F>
void for_each_rgs(int length, F&& fn) {
  if (length <= 0) return;
  std::vector<ClassId> cells(length, 0);
  std::vector<ClassId> maxp(length, 0);  // maxp[t] = max(cells[0..t])
  for (;;) {
    fn(static_cast<const std::vector<ClassId>&>(cells));
    int t = length - 1;
    while (t >= 1 && cells[t] > maxp[t - 1]) --t;  // position already at its cap
    if (t < 1) return;
    ++cells[t];
    maxp[t] = std::max(maxp[t - 1], cells[t]);
    for (int s = t + 1; s < length; ++s) {
      cells[s] = 0;
      maxp[s] = maxp[s - 1];
    }
  }
}

}  // namespace epat
