// Normality oracles. The pairwise coefficient-matrix criterion is the
// production check; the symbolic commutator and the 0/1-assignment sweep are
// independent cross-validation oracles, and the random-specialization check is
// a one-sided Monte-Carlo oracle (false is conclusive, true is evidence).
// All arithmetic is exact integer arithmetic; there are no tolerances.
#pragma once

#include <cstdint>
#include <span>

#include "epat/pattern.hpp"
#include "epat/poly.hpp"

namespace epat {

// 2^k guard for the subset-assignment oracle.
inline constexpr int kMaxAssignmentClasses = 20;

/// B B^T == B^T B over the integers.
bool is_normal_binary(const BinaryMatrix& b);

/// A B^T + B A^T == A^T B + B^T A (the mixed pair condition).
bool pair_condition(const BinaryMatrix& a, const BinaryMatrix& b);

/// Every coefficient matrix is normal and every pair satisfies pair_condition.
bool is_normal_lemma2(const Pattern& p);

/// Entrywise A A^T - A^T A as quadratic forms in the class indeterminates.
class CommutatorPolynomial {
 public:
  explicit CommutatorPolynomial(const Pattern& p);

  int order() const { return terms_.rows; }
  /// Coefficient of x_a x_b at position (p,q); zero if absent.
  long long term(int p, int q, int a, int b) const;
  const Poly& at(int p, int q) const { return terms_.at(p, q); }
  bool is_zero() const { return terms_.is_zero(); }
  std::size_t term_count() const;

 private:
  PolyMatrix terms_;
};

CommutatorPolynomial commutator(const Pattern& p);
bool is_normal_symbolic(const Pattern& p);

/// For every subset S of classes, the indicator matrix of S is normal.
/// Throws CapacityError when class_count exceeds kMaxAssignmentClasses.
bool is_normal_binary_assignments(const Pattern& p);

/// Substitutes seeded uniform random integers in [-1000, 1000] per class and
/// checks A A^T == A^T A exactly, `trials` times.
bool is_normal_random_specialization(const Pattern& p, int trials, std::uint64_t seed);

/// Necessary condition for a normal 0-1 matrix: r_i == c_i (hence also
/// r'_i == c'_i) for every i.
bool eq3_filter(const BinaryMatrix& b);

/// Partial-pattern variant for row-major prefixes: true unless some class
/// provably cannot balance some row/column sum pair in any completion.
bool eq3_partial_filter(int order, std::span<const ClassId> prefix);

}  // namespace epat
