// Minimal symbolic machinery for the commutator oracle and the block
// criterion: matrices whose entries are integer quadratic forms in the class
// indeterminates. Nothing more general is provided on purpose.
#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "epat/errors.hpp"
#include "epat/pattern.hpp"

namespace epat {

// Monomial x_a * x_b, stored with a <= b.
using Monomial = std::pair<int, int>;

inline Monomial monomial(int a, int b) { return a <= b ? Monomial{a, b} : Monomial{b, a}; }

// Quadratic form: monomial -> integer coefficient; zero coefficients absent.
using Poly = std::map<Monomial, long long>;

inline void poly_add(Poly& p, Monomial m, long long coeff) {
  auto it = p.find(m);
  if (it == p.end()) {
    if (coeff != 0) p.emplace(m, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) p.erase(it);
}

/// A rectangular grid of indeterminate ids; entries are single variables.
/// Ids are arbitrary nonnegative integers (not necessarily restricted-growth),
/// so blocks of a larger pattern can share one id space.
struct IdGrid {
  int rows = 0;
  int cols = 0;
  std::vector<int> ids;  // row-major

  int at(int i, int j) const { return ids[static_cast<std::size_t>(i) * cols + j]; }

  static IdGrid from_pattern(const Pattern& p) {
    IdGrid g;
    g.rows = g.cols = p.order();
    g.ids.assign(p.cells().begin(), p.cells().end());
    return g;
  }
};

struct PolyMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Poly> entries;

  Poly& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
  const Poly& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (const auto& e : entries)
      if (!e.empty()) return false;
    return true;
  }
  bool operator==(const PolyMatrix&) const = default;
};

/// A * B with optional transposes, as a matrix of quadratic forms.
inline PolyMatrix grid_product(const IdGrid& a, bool transpose_a, const IdGrid& b,
                               bool transpose_b) {
  const int ar = transpose_a ? a.cols : a.rows;
  const int ac = transpose_a ? a.rows : a.cols;
  const int br = transpose_b ? b.cols : b.rows;
  const int bc = transpose_b ? b.rows : b.cols;
  if (ac != br) throw DomainError("grid product dimension mismatch");
  PolyMatrix m;
  m.rows = ar;
  m.cols = bc;
  m.entries.resize(static_cast<std::size_t>(ar) * bc);
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < bc; ++j) {
      Poly& e = m.at(i, j);
      for (int t = 0; t < ac; ++t) {
        const int av = transpose_a ? a.at(t, i) : a.at(i, t);
        const int bv = transpose_b ? b.at(j, t) : b.at(t, j);
        poly_add(e, monomial(av, bv), 1);
      }
    }
  return m;
}

inline PolyMatrix poly_sub(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw DomainError("poly matrix shape mismatch");
  PolyMatrix out = a;
  for (std::size_t t = 0; t < out.entries.size(); ++t)
    for (const auto& [m, c] : b.entries[t]) poly_add(out.entries[t], m, -c);
  return out;
}

}  // namespace epat
