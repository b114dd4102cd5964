// Pattern equivalence under simultaneous row/column permutation combined with
// relabeling of the indeterminates. The canonical key is the lexicographic
// minimum of the relabeled cell string over all n! permutations; transpose is
// deliberately not part of the group.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "epat/pattern.hpp"

namespace epat {

// Brute-force n! scan; every search use has n <= 6.
inline constexpr int kMaxCanonOrder = 10;

struct CanonicalKey {
  std::vector<ClassId> cells;  // lexicographically minimal relabeled string
  std::vector<int> witness;    // lexicographically smallest permutation achieving it

  bool operator==(const CanonicalKey&) const = default;
};

/// Deterministic: relabel(permute(p, witness)).cells == cells.
CanonicalKey canonical_key(const Pattern& p);
Pattern canonical_representative(const Pattern& p);
bool are_equivalent(const Pattern& p, const Pattern& q);

/// Explicit similarity witness: the smallest sigma with
/// permute(from, sigma) relabeled == to, if one exists.
std::optional<std::vector<int>> similarity_witness(const Pattern& from, const Pattern& to);

/// Fixed-label canonical form of a 0-1 matrix: minimal permuted row-major 0/1
/// string. No class relabeling, so a matrix is never identified with its
/// complement.
std::vector<std::uint8_t> canonical_binary_cells(const BinaryMatrix& b);
bool is_binary_perm_similar(const BinaryMatrix& a, const BinaryMatrix& b);

struct SimilarityClass {
  CanonicalKey key;
  Pattern representative;         // canonical: its key cells equal `key.cells`
  std::uint64_t member_count = 0; // labeled patterns seen by the producing enumeration
};

}  // namespace epat
