// Shared helpers for the test suites: seeded random patterns, permutations
// and id grids.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "epat/pattern.hpp"
#include "epat/poly.hpp"

namespace epat::testutil {

// Random restricted-growth pattern; fresh classes stop appearing at k_cap.
inline Pattern random_pattern(int n, std::mt19937_64& rng, int k_cap) {
  const int nn = n * n;
  std::vector<ClassId> cells(nn, 0);
  int used = 1;
  for (int t = 1; t < nn; ++t) {
    const int top = used < k_cap ? used : used - 1;
    std::uniform_int_distribution<int> dist(0, top);
    const int id = dist(rng);
    cells[t] = static_cast<ClassId>(id);
    if (id == used) ++used;
  }
  return Pattern::from_cells(n, std::move(cells));
}

inline Pattern random_symmetric_pattern(int n, std::mt19937_64& rng, int k_cap) {
  std::vector<int> raw(static_cast<std::size_t>(n) * n, 0);
  int used = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int top = used < k_cap ? used : used - 1;
      std::uniform_int_distribution<int> dist(0, top);
      const int id = dist(rng);
      raw[static_cast<std::size_t>(i) * n + j] = id;
      raw[static_cast<std::size_t>(j) * n + i] = id;
      if (id == used) ++used;
    }
  return Pattern::from_raw_ids(n, raw);
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  auto p = identity_permutation(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline IdGrid random_grid(int rows, int cols, std::mt19937_64& rng, int id_range) {
  IdGrid g;
  g.rows = rows;
  g.cols = cols;
  g.ids.resize(static_cast<std::size_t>(rows) * cols);
  std::uniform_int_distribution<int> dist(0, id_range - 1);
  for (auto& v : g.ids) v = dist(rng);
  return g;
}

inline IdGrid random_symmetric_grid(int order, std::mt19937_64& rng, int id_range) {
  IdGrid g = random_grid(order, order, rng, id_range);
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j) g.ids[static_cast<std::size_t>(j) * order + i] = g.at(i, j);
  return g;
}

}  // namespace epat::testutil
