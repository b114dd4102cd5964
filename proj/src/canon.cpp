#include "epat/canon.hpp"

#include <algorithm>
#include <numeric>

namespace epat {

namespace {

void check_canon_order(int n) {
  if (n > kMaxCanonOrder)
    throw CapacityError("canonicalization limited to order " + std::to_string(kMaxCanonOrder) +
                        " (brute-force n! scan)");
}

}  // namespace

CanonicalKey canonical_key(const Pattern& p) {
  const int n = p.order();
  check_canon_order(n);
  const auto& cells = p.cells();
  const std::size_t nn = cells.size();

  std::vector<int> sigma = identity_permutation(n);
  std::vector<int> inv(n);
  std::vector<ClassId> best;
  std::vector<int> witness;
  std::vector<ClassId> cand(nn);
  std::vector<int> map(p.class_count());

  do {
    for (int i = 0; i < n; ++i) inv[sigma[i]] = i;
    std::fill(map.begin(), map.end(), -1);
    int next = 0;
    bool better = best.empty();
    bool worse = false;
    std::size_t t = 0;
    for (int a = 0; a < n && !worse; ++a) {
      const int ia = inv[a] * n;
      for (int b = 0; b < n; ++b, ++t) {
        int& m = map[cells[ia + inv[b]]];
        if (m < 0) m = next++;
        cand[t] = static_cast<ClassId>(m);
        if (!better) {
          if (cand[t] < best[t]) {
            better = true;
          } else if (cand[t] > best[t]) {
            worse = true;
            break;
          }
        }
      }
    }
    if (better && !worse) {
      best = cand;
      witness = sigma;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  return CanonicalKey{std::move(best), std::move(witness)};
}

Pattern canonical_representative(const Pattern& p) {
  return Pattern::from_cells(p.order(), canonical_key(p).cells);
}

bool are_equivalent(const Pattern& p, const Pattern& q) {
  if (p.order() != q.order()) throw DomainError("are_equivalent: order mismatch");
  return canonical_key(p).cells == canonical_key(q).cells;
}

std::optional<std::vector<int>> similarity_witness(const Pattern& from, const Pattern& to) {
  if (from.order() != to.order()) throw DomainError("similarity_witness: order mismatch");
  const int n = from.order();
  check_canon_order(n);
  std::vector<int> sigma = identity_permutation(n);
  do {
    if (permute_pattern(from, sigma) == to) return sigma;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

std::vector<std::uint8_t> canonical_binary_cells(const BinaryMatrix& b) {
  const int n = b.order();
  check_canon_order(n);
  std::vector<int> sigma = identity_permutation(n);
  std::vector<int> inv(n);
  std::vector<std::uint8_t> best;
  std::vector<std::uint8_t> cand(static_cast<std::size_t>(n) * n);
  do {
    for (int i = 0; i < n; ++i) inv[sigma[i]] = i;
    bool better = best.empty();
    bool worse = false;
    std::size_t t = 0;
    for (int a = 0; a < n && !worse; ++a)
      for (int bcol = 0; bcol < n; ++bcol, ++t) {
        cand[t] = static_cast<std::uint8_t>(b.get(inv[a], inv[bcol]));
        if (!better) {
          if (cand[t] < best[t]) {
            better = true;
          } else if (cand[t] > best[t]) {
            worse = true;
            break;
          }
        }
      }
    if (better && !worse) best = cand;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

bool is_binary_perm_similar(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.order() != b.order()) throw DomainError("is_binary_perm_similar: order mismatch");
  if (a.ones_count() != b.ones_count()) return false;
  return canonical_binary_cells(a) == canonical_binary_cells(b);
}

}  // namespace epat
