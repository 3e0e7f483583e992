#pragma once

// Abelian-shape corpus: every abelian group of order <= 200 plus the larger
// benchmark shapes, generated from prime-exponent partitions.

#include <vector>

#include "cw/abelian.hpp"
#include "cw/numeric.hpp"

namespace corpus {

inline void partitions_of(int n, std::vector<std::vector<int>>& out,
                          std::vector<int>& cur, int max_part) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_of(n - part, out, cur, part);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_of(n, out, cur, n);
  return out;
}

/// All abelian shapes of order exactly n.
inline std::vector<cw::abelian::Shape> shapes_of_order(long n) {
  const auto fac = cw::factorize(n);
  std::vector<std::vector<long>> lists{{}};
  for (const auto& [p, e] : fac) {
    std::vector<std::vector<long>> next;
    for (const auto& part : partitions(e))
      for (const auto& base : lists) {
        std::vector<long> ext = base;
        for (int lambda : part) ext.push_back(cw::power_long(p, lambda));
        next.push_back(std::move(ext));
      }
    lists = std::move(next);
  }
  std::vector<cw::abelian::Shape> out;
  for (const auto& factors : lists)
    out.push_back(cw::abelian::Shape::from_invariants(factors));
  return out;
}

inline std::vector<cw::abelian::Shape> shapes_up_to(long max_order) {
  std::vector<cw::abelian::Shape> out;
  for (long n = 1; n <= max_order; ++n)
    for (auto& s : shapes_of_order(n)) out.push_back(std::move(s));
  return out;
}

/// All |A| <= 200 plus C49 x C7 and C3^2 x C5^2.
inline std::vector<cw::abelian::Shape> corpus_shapes() {
  auto out = shapes_up_to(200);
  out.push_back(cw::abelian::Shape::from_invariants({49, 7}));
  out.push_back(cw::abelian::Shape::from_invariants({3, 3, 5, 5}));
  return out;
}

}  // namespace corpus
