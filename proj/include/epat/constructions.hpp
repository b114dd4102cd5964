// Named constructions: the order-3 circulant, the extremal block pattern, the
// catalog of normal 0-1 matrices with at most three ones, class-count
// interpolation by merging, and the bordered-form / block-criterion checks.
#pragma once

#include <string>
#include <vector>

#include "epat/canon.hpp"
#include "epat/pattern.hpp"
#include "epat/poly.hpp"

namespace epat {

/// [[z,u,v],[v,z,u],[u,v,z]] relabeled; ids may coincide (z=u=v gives J_3).
Pattern circulant3(int z = 0, int u = 1, int v = 2);

/// n(n-3)/2 + 3, the maximum class count of a nonsymmetric normal pattern.
int max_distinct_classes(int n);

/// The extremal pattern: [[X,Y],[Y^T,Z]] with X symmetric of order n-3
/// carrying all-distinct upper-triangle classes, Y with constant rows, Z the
/// order-3 circulant. Exactly max_distinct_classes(n) classes. Requires n >= 3.
Pattern extremal(int n);

/// Canonical representatives of the normal 0-1 matrices with `ones` in
/// {1,2,3}, padded with zeros to order n.
std::vector<BinaryMatrix> lemma4_catalog(int n, int ones);

/// A nonsymmetric normal pattern of order n with exactly k classes,
/// 2 <= k <= max_distinct_classes(n), built by merging classes of extremal(n)
/// while keeping the circulant's u and v classes distinct from each other.
Pattern with_k_classes(int n, int k);

struct BorderedFormReport {
  enum class Form { single_diagonal, twin_diagonal, exchange_pair };
  bool ok = false;
  Form form = Form::single_diagonal;
  std::vector<int> witness;  // permutation exhibiting the bordered form
  std::string detail;
};

/// For a normal pattern with a class of one or two cells, finds a permutation
/// exhibiting the mirrored bordered form. ok == false would be a
/// counterexample to the bordered-form structure and is a test failure.
BorderedFormReport bordered_form_check(const Pattern& p, int cls);

/// Block criterion for [[B1,B2],[B2^T,B3]] with B1 symmetric: normal iff B3
/// is normal and B2*B3 == B2*B3^T as polynomial matrices.
bool block_normality(const IdGrid& b1, const IdGrid& b2, const IdGrid& b3);

/// Assembles [[B1,B2],[B2^T,B3]] into a relabeled pattern.
Pattern assemble_blocks(const IdGrid& b1, const IdGrid& b2, const IdGrid& b3);

}  // namespace epat
