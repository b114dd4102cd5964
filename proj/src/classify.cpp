#include "epat/classify.hpp"

#include <algorithm>
#include <map>

#include "epat/canon.hpp"
#include "epat/normality.hpp"

namespace epat {

namespace {

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (r > cap) return cap + 1;
  }
  return r;
}

template <class F>
void for_each_placement(int n, int m, F&& fn) {
  const int nn = n * n;
  if (m == 0) {
    fn(BinaryMatrix(n));
    return;
  }
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    BinaryMatrix b(n);
    for (int v : idx) b.set(v / n, v % n, 1);
    fn(b);
    int t = m - 1;
    while (t >= 0 && idx[t] == nn - m + t) --t;
    if (t < 0) return;
    ++idx[t];
    for (int s = t + 1; s < m; ++s) idx[s] = idx[s - 1] + 1;
  }
}

void check_guards(int n, int m) {
  if (n < 1) throw DomainError("order must be positive");
  if (n > kMaxOrder) throw CapacityError("order exceeds the hard cap");
  if (m < 0 || m > n * n) throw DomainError("ones count must lie in [0, n^2]");
  if (binomial_capped(n * n, m, kMaxPlacementEnumeration) > kMaxPlacementEnumeration)
    throw CapacityError("C(n^2, m) exceeds the enumeration guard of " +
                        std::to_string(kMaxPlacementEnumeration));
}

}  // namespace

ClassificationReport classify_normal_binary(int n, int m) {
  check_guards(n, m);
  ClassificationReport rep;
  rep.order = n;
  rep.ones = m;
  std::map<std::vector<std::uint8_t>, BinarySimilarityClass> buckets;
  for_each_placement(n, m, [&](const BinaryMatrix& b) {
    if (!is_normal_binary(b)) return;
    ++rep.total_matrices;
    auto key = canonical_binary_cells(b);
    auto it = buckets.find(key);
    if (it == buckets.end()) {
      BinaryMatrix canon(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (key[static_cast<std::size_t>(i) * n + j]) canon.set(i, j, 1);
      buckets.emplace(key, BinarySimilarityClass{key, canon, 1});
    } else {
      ++it->second.member_count;
    }
  });
  rep.classes.reserve(buckets.size());
  for (auto& [key, cls] : buckets) rep.classes.push_back(std::move(cls));
  return rep;
}

std::vector<BinaryMatrix> catalog_for_occupancy(int n, int m) {
  check_guards(n, m);
  std::vector<BinaryMatrix> out;
  for_each_placement(n, m, [&](const BinaryMatrix& b) {
    if (is_normal_binary(b)) out.push_back(b);
  });
  return out;
}

}  // namespace epat
