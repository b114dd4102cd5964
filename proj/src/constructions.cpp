#include "epat/constructions.hpp"

#include <algorithm>
#include <unordered_map>

#include "epat/normality.hpp"

namespace epat {

Pattern circulant3(int z, int u, int v) {
  const std::vector<int> raw = {z, u, v, v, z, u, u, v, z};
  return Pattern::from_raw_ids(3, raw);
}

int max_distinct_classes(int n) {
  if (n < 3) throw DomainError("max_distinct_classes requires n >= 3");
  return n * (n - 3) / 2 + 3;
}

namespace {

// Raw id codes for the extremal grid; relabeling maps them to
// row-major-first-occurrence class ids.
struct ExtremalCodes {
  int n;
  int x(int i, int j) const {  // 0-based block coordinates, i,j < n-3
    const int a = std::min(i, j), b = std::max(i, j);
    return a * n + b;
  }
  int y(int i) const { return n * n + i; }
  int z() const { return 2 * n * n; }
  int u() const { return 2 * n * n + 1; }
  int v() const { return 2 * n * n + 2; }
};

std::vector<int> extremal_raw(int n) {
  if (n < 3) throw DomainError("extremal requires n >= 3");
  if (n > kMaxOrder) throw CapacityError("extremal order exceeds the hard cap");
  const ExtremalCodes c{n};
  const int m = n - 3;
  std::vector<int> raw(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> int& { return raw[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) at(i, j) = c.x(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = m; j < n; ++j) {
      at(i, j) = c.y(i);  // constant rows in the border
      at(j, i) = c.y(i);
    }
  const int zc = c.z(), uc = c.u(), vc = c.v();
  const int circ[3][3] = {{zc, uc, vc}, {vc, zc, uc}, {uc, vc, zc}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) at(m + i, m + j) = circ[i][j];
  return raw;
}

}  // namespace

Pattern extremal(int n) {
  const auto raw = extremal_raw(n);
  return Pattern::from_raw_ids(n, raw);
}

std::vector<BinaryMatrix> lemma4_catalog(int n, int ones) {
  if (n < 2) throw DomainError("lemma4_catalog requires n >= 2");
  if (n > kMaxOrder) throw CapacityError("order exceeds the hard cap");
  if (ones < 1 || ones > 3) throw DomainError("lemma4_catalog covers ones counts 1..3");
  auto pad = [n](const std::vector<std::vector<int>>& block) {
    BinaryMatrix b(n);
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j)
        if (block[i][j]) b.set(static_cast<int>(i), static_cast<int>(j), 1);
    return b;
  };
  switch (ones) {
    case 1:
      return {pad({{1}})};
    case 2:
      return {pad({{1, 0}, {0, 1}}), pad({{0, 1}, {1, 0}})};
    default:
      if (n < 3) throw DomainError("lemma4_catalog(n, 3) needs n >= 3 for the order-3 forms");
      return {pad({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
              pad({{1, 1}, {1, 0}}),
              pad({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}),
              pad({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})};
  }
}

Pattern with_k_classes(int n, int k) {
  const int kmax = max_distinct_classes(n);  // also validates n >= 3
  if (k < 2 || k > kmax)
    throw DomainError("class count must lie in [2, " + std::to_string(kmax) + "]");
  const Pattern base = extremal(n);
  if (k == kmax) return base;

  // Recover the restricted-growth id of each named class from the raw codes.
  const auto raw = extremal_raw(n);
  const auto rgs = relabel_to_rgs(std::span<const int>(raw));
  std::unordered_map<int, int> id_of;
  for (std::size_t t = 0; t < raw.size(); ++t) id_of.emplace(raw[t], rgs[t]);

  // Merge order: x_{ij} lexicographically, then y_1..y_{n-3}, then z, then u.
  // v is never merged, and u only as the final step down to k = 2, so the
  // u/v asymmetry survives every admissible k.
  const ExtremalCodes c{n};
  std::vector<int> mergeable;
  for (int i = 0; i < n - 3; ++i)
    for (int j = i; j < n - 3; ++j) mergeable.push_back(id_of.at(c.x(i, j)));
  for (int i = 0; i < n - 3; ++i) mergeable.push_back(id_of.at(c.y(i)));
  mergeable.push_back(id_of.at(c.z()));
  mergeable.push_back(id_of.at(c.u()));

  const int merges = kmax - k;
  std::vector<std::vector<int>> groups;
  groups.emplace_back(mergeable.begin(), mergeable.begin() + merges + 1);
  std::vector<char> pooled(base.class_count(), 0);
  for (int cls : groups[0]) pooled[cls] = 1;
  for (int cls = 0; cls < base.class_count(); ++cls)
    if (!pooled[cls]) groups.push_back({cls});
  return merge_classes(base, groups);
}

namespace {

bool mirrored_from(const Pattern& q, int row) {
  for (int j = 0; j < q.order(); ++j)
    if (q.cell(row, j) != q.cell(j, row)) return false;
  return true;
}

// Permutation sending src[t] -> t with the remaining indices in ascending order.
std::vector<int> placing_permutation(int n, const std::vector<int>& src) {
  std::vector<int> sigma(n, -1);
  for (std::size_t t = 0; t < src.size(); ++t) sigma[src[t]] = static_cast<int>(t);
  int next = static_cast<int>(src.size());
  for (int i = 0; i < n; ++i)
    if (sigma[i] < 0) sigma[i] = next++;
  return sigma;
}

}  // namespace

BorderedFormReport bordered_form_check(const Pattern& p, int cls) {
  const BinaryMatrix a = coefficient_matrix(p, cls);
  const int f = a.ones_count();
  if (f != 1 && f != 2)
    throw DomainError("bordered_form_check needs a class with one or two cells");
  if (!is_normal_lemma2(p)) throw DomainError("bordered_form_check needs a normal pattern");

  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < p.order(); ++i)
    for (int j = 0; j < p.order(); ++j)
      if (a.get(i, j)) pos.emplace_back(i, j);

  BorderedFormReport rep;
  if (f == 1) {
    const auto [i, j] = pos[0];
    if (i != j) {
      rep.detail = "singleton class off the diagonal";
      return rep;
    }
    rep.form = BorderedFormReport::Form::single_diagonal;
    rep.witness = placing_permutation(p.order(), {i});
    const Pattern q = permute_pattern(p, rep.witness);
    rep.ok = mirrored_from(q, 0);
    if (!rep.ok) rep.detail = "border rows and columns are not mirrored";
    return rep;
  }

  const auto [i1, j1] = pos[0];
  const auto [i2, j2] = pos[1];
  if (i1 == j1 && i2 == j2) {
    rep.form = BorderedFormReport::Form::twin_diagonal;
    rep.witness = placing_permutation(p.order(), {i1, i2});
    const Pattern q = permute_pattern(p, rep.witness);
    rep.ok = q.cell(0, 1) == q.cell(1, 0) && mirrored_from(q, 0) && mirrored_from(q, 1);
  } else if (i1 == j2 && i2 == j1 && i1 != j1) {
    rep.form = BorderedFormReport::Form::exchange_pair;
    rep.witness = placing_permutation(p.order(), {i1, j1});
    const Pattern q = permute_pattern(p, rep.witness);
    rep.ok = mirrored_from(q, 0) && mirrored_from(q, 1);
  } else {
    rep.detail = "two-cell class is neither twin-diagonal nor an exchange pair";
    return rep;
  }
  if (!rep.ok && rep.detail.empty()) rep.detail = "border rows and columns are not mirrored";
  return rep;
}

bool block_normality(const IdGrid& b1, const IdGrid& b2, const IdGrid& b3) {
  if (b1.rows != b1.cols || b3.rows != b3.cols) throw DomainError("corner blocks must be square");
  if (b2.rows != b1.rows || b2.cols != b3.rows)
    throw DomainError("blocks are not conformal for [[B1,B2],[B2^T,B3]]");
  for (int i = 0; i < b1.rows; ++i)
    for (int j = i + 1; j < b1.cols; ++j)
      if (b1.at(i, j) != b1.at(j, i)) throw DomainError("B1 must be symmetric");
  const PolyMatrix comm =
      poly_sub(grid_product(b3, false, b3, true), grid_product(b3, true, b3, false));
  if (!comm.is_zero()) return false;
  return grid_product(b2, false, b3, false) == grid_product(b2, false, b3, true);
}

Pattern assemble_blocks(const IdGrid& b1, const IdGrid& b2, const IdGrid& b3) {
  if (b1.rows != b1.cols || b3.rows != b3.cols) throw DomainError("corner blocks must be square");
  if (b2.rows != b1.rows || b2.cols != b3.rows)
    throw DomainError("blocks are not conformal for [[B1,B2],[B2^T,B3]]");
  const int p = b1.rows, q = b3.rows, n = p + q;
  std::vector<int> raw(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> int& { return raw[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) at(i, j) = b1.at(i, j);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      at(i, p + j) = b2.at(i, j);
      at(p + j, i) = b2.at(i, j);
    }
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) at(p + i, p + j) = b3.at(i, j);
  return Pattern::from_raw_ids(n, raw);
}

}  // namespace epat
