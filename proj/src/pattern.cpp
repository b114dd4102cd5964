#include "epat/pattern.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace epat {

namespace {

void check_order(int order) {
  if (order < 1) throw DomainError("order must be positive");
  if (order > kMaxOrder)
    throw CapacityError("order " + std::to_string(order) + " exceeds the hard cap of " +
                        std::to_string(kMaxOrder));
}

}  // namespace

std::vector<ClassId> relabel_to_rgs(std::span<const int> raw) {
  std::vector<ClassId> out(raw.size());
  std::unordered_map<int, ClassId> map;
  map.reserve(raw.size());
  ClassId next = 0;
  for (std::size_t t = 0; t < raw.size(); ++t) {
    auto [it, inserted] = map.try_emplace(raw[t], next);
    if (inserted) ++next;
    out[t] = it->second;
  }
  return out;
}

std::vector<ClassId> relabel_to_rgs(std::span<const ClassId> raw) {
  std::vector<int> tmp(raw.begin(), raw.end());
  return relabel_to_rgs(std::span<const int>(tmp));
}

Pattern Pattern::from_cells(int order, std::vector<ClassId> cells) {
  check_order(order);
  const std::size_t nn = static_cast<std::size_t>(order) * order;
  if (cells.size() != nn)
    throw DomainError("cell count does not match order: expected " + std::to_string(nn) +
                      ", got " + std::to_string(cells.size()));
  ClassId maxp = 0;
  if (cells[0] != 0) throw DomainError("cells is not a restricted-growth string (cells[0] != 0)");
  for (std::size_t t = 1; t < nn; ++t) {
    if (cells[t] > maxp + 1)
      throw DomainError("cells is not a restricted-growth string (jump at index " +
                        std::to_string(t) + ")");
    maxp = std::max(maxp, cells[t]);
  }
  Pattern p;
  p.order_ = order;
  p.class_count_ = static_cast<int>(maxp) + 1;
  p.cells_ = std::move(cells);
  return p;
}

Pattern Pattern::from_raw_ids(int order, std::span<const int> raw) {
  check_order(order);
  const std::size_t nn = static_cast<std::size_t>(order) * order;
  if (raw.size() != nn) throw DomainError("cell count does not match order");
  return from_cells(order, relabel_to_rgs(raw));
}

BinaryMatrix::BinaryMatrix(int order) {
  check_order(order);
  order_ = order;
  rows_.assign(order, 0);
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  BinaryMatrix b(static_cast<int>(rows.size()));
  for (int i = 0; i < b.order_; ++i) {
    if (static_cast<int>(rows[i].size()) != b.order_)
      throw DomainError("ragged 0-1 matrix input");
    for (int j = 0; j < b.order_; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) throw DomainError("entries must be 0 or 1");
      b.set(i, j, rows[i][j]);
    }
  }
  return b;
}

BinaryMatrix BinaryMatrix::identity(int order) {
  BinaryMatrix b(order);
  for (int i = 0; i < order; ++i) b.set(i, i, 1);
  return b;
}

BinaryMatrix BinaryMatrix::ones(int order) {
  BinaryMatrix b(order);
  for (int i = 0; i < order; ++i) b.rows_[i] = (order == 64) ? ~0ull : ((1ull << order) - 1);
  return b;
}

void BinaryMatrix::set(int i, int j, int value) {
  if (value)
    rows_[i] |= (1ull << j);
  else
    rows_[i] &= ~(1ull << j);
}

std::uint64_t BinaryMatrix::col(int j) const {
  std::uint64_t m = 0;
  for (int i = 0; i < order_; ++i) m |= ((rows_[i] >> j) & 1u) << i;
  return m;
}

BinaryMatrix BinaryMatrix::transpose() const {
  BinaryMatrix t(order_);
  for (int j = 0; j < order_; ++j) t.rows_[j] = col(j);
  return t;
}

int BinaryMatrix::ones_count() const {
  int s = 0;
  for (auto r : rows_) s += std::popcount(r);
  return s;
}

Pattern pattern_from_labels(const std::vector<std::vector<std::string>>& rows) {
  const int n = static_cast<int>(rows.size());
  check_order(n);
  std::vector<ClassId> cells(static_cast<std::size_t>(n) * n);
  std::unordered_map<std::string, ClassId> map;
  ClassId next = 0;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw DomainError("ragged input: row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " tokens, expected " +
                        std::to_string(n));
    for (int j = 0; j < n; ++j) {
      auto [it, inserted] = map.try_emplace(rows[i][j], next);
      if (inserted) ++next;
      cells[static_cast<std::size_t>(i) * n + j] = it->second;
    }
  }
  return Pattern::from_cells(n, std::move(cells));
}

BinaryMatrix coefficient_matrix(const Pattern& p, int cls) {
  if (cls < 0 || cls >= p.class_count())
    throw DomainError("class id " + std::to_string(cls) + " out of range (pattern has " +
                      std::to_string(p.class_count()) + " classes)");
  BinaryMatrix b(p.order());
  for (int i = 0; i < p.order(); ++i)
    for (int j = 0; j < p.order(); ++j)
      if (p.cell(i, j) == cls) b.set(i, j, 1);
  return b;
}

std::vector<BinaryMatrix> coefficient_matrices(const Pattern& p) {
  std::vector<BinaryMatrix> out;
  out.reserve(p.class_count());
  for (int c = 0; c < p.class_count(); ++c) out.emplace_back(p.order());
  for (int i = 0; i < p.order(); ++i)
    for (int j = 0; j < p.order(); ++j) out[p.cell(i, j)].set(i, j, 1);
  return out;
}

bool is_symmetric(const Pattern& p) {
  for (int i = 0; i < p.order(); ++i)
    for (int j = i + 1; j < p.order(); ++j)
      if (p.cell(i, j) != p.cell(j, i)) return false;
  return true;
}

Pattern transpose_pattern(const Pattern& p) {
  const int n = p.order();
  std::vector<int> raw(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      raw[static_cast<std::size_t>(j) * n + i] = p.cell(i, j);
  return Pattern::from_raw_ids(n, raw);
}

namespace {

void check_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) throw DomainError("permutation length mismatch");
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) throw DomainError("not a permutation of 0..n-1");
    seen[v] = 1;
  }
}

}  // namespace

Pattern permute_pattern(const Pattern& p, const std::vector<int>& perm) {
  const int n = p.order();
  check_permutation(perm, n);
  std::vector<int> raw(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      raw[static_cast<std::size_t>(perm[i]) * n + perm[j]] = p.cell(i, j);
  return Pattern::from_raw_ids(n, raw);
}

Pattern merge_classes(const Pattern& p, const std::vector<std::vector<int>>& groups) {
  const int k = p.class_count();
  std::vector<int> group_of(k, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw DomainError("empty merge group");
    for (int cls : groups[g]) {
      if (cls < 0 || cls >= k) throw DomainError("merge group contains out-of-range class id");
      if (group_of[cls] != -1) throw DomainError("class id appears in two merge groups");
      group_of[cls] = static_cast<int>(g);
    }
  }
  for (int c = 0; c < k; ++c)
    if (group_of[c] == -1)
      throw DomainError("merge groups do not cover class id " + std::to_string(c));
  const int n = p.order();
  std::vector<int> raw(static_cast<std::size_t>(n) * n);
  for (std::size_t t = 0; t < raw.size(); ++t) raw[t] = group_of[p.cells()[t]];
  return Pattern::from_raw_ids(n, raw);
}

int ones_count(const BinaryMatrix& b) { return b.ones_count(); }

RowColProfile row_col_profile(const BinaryMatrix& b) {
  const int n = b.order();
  RowColProfile p;
  p.r.resize(n);
  p.c.resize(n);
  p.r_off.resize(n);
  p.c_off.resize(n);
  for (int i = 0; i < n; ++i) {
    p.r[i] = std::popcount(b.row(i));
    p.c[i] = std::popcount(b.col(i));
    p.r_off[i] = p.r[i] - b.get(i, i);
    p.c_off[i] = p.c[i] - b.get(i, i);
  }
  return p;
}

Pattern read_pattern(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input: expected order line", 1, 1);
  std::istringstream hdr(line);
  long order = 0;
  std::string extra;
  if (!(hdr >> order)) throw ParseError("first line must be the order n", 1, 1);
  if (hdr >> extra) throw ParseError("unexpected token after order", 1, 2);
  if (order < 1 || order > kMaxOrder)
    throw ParseError("order must be in 1.." + std::to_string(kMaxOrder), 1, 1);
  const int n = static_cast<int>(order);
  std::vector<std::vector<std::string>> rows;
  int lineno = 1;
  while (static_cast<int>(rows.size()) < n) {
    if (!std::getline(in, line))
      throw ParseError("unexpected end of input: expected " + std::to_string(n) + " rows, got " +
                           std::to_string(rows.size()),
                       lineno + 1, 1);
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;  // blank lines between rows are tolerated
    if (static_cast<int>(tokens.size()) != n)
      throw ParseError("expected " + std::to_string(n) + " tokens, got " +
                           std::to_string(tokens.size()),
                       lineno, static_cast<int>(tokens.size()) + 1);
    rows.push_back(std::move(tokens));
  }
  return pattern_from_labels(rows);
}

Pattern parse_pattern(const std::string& text) {
  std::istringstream in(text);
  return read_pattern(in);
}

std::string to_text(const Pattern& p) {
  std::ostringstream out;
  write_pattern(out, p);
  return out.str();
}

void write_pattern(std::ostream& out, const Pattern& p) {
  out << p.order() << '\n';
  for (int i = 0; i < p.order(); ++i) {
    for (int j = 0; j < p.order(); ++j) {
      if (j) out << ' ';
      out << 'x' << p.cell(i, j);
    }
    out << '\n';
  }
}

std::vector<int> identity_permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  check_permutation(perm, static_cast<int>(perm.size()));
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace epat
