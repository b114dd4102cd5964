// Enumeration and permutation-similarity classification of normal 0-1
// matrices with a prescribed ones count.
#pragma once

#include <cstdint>
#include <vector>

#include "epat/pattern.hpp"

namespace epat {

inline constexpr std::uint64_t kMaxPlacementEnumeration = 10'000'000;

struct BinarySimilarityClass {
  std::vector<std::uint8_t> key;  // canonical 0/1 row-major string
  BinaryMatrix representative;    // matrix realizing the key
  std::uint64_t member_count = 0;
};

struct ClassificationReport {
  int order = 0;
  int ones = 0;
  std::uint64_t total_matrices = 0;  // normal matrices with exactly `ones` ones
  std::vector<BinarySimilarityClass> classes;  // sorted lexicographically by key
};

/// Enumerates all C(n^2, m) placements, filters by normality, groups by the
/// binary canonical key. Throws CapacityError past kMaxPlacementEnumeration.
ClassificationReport classify_normal_binary(int n, int m);

/// All normal 0-1 matrices of order n with exactly m ones, in lexicographic
/// placement order (not deduplicated).
std::vector<BinaryMatrix> catalog_for_occupancy(int n, int m);

}  // namespace epat
