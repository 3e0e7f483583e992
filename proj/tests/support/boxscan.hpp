#pragma once

// Independent integer-feasibility oracle: full box scan with incremental
// row partial sums (odometer order), in plain machine integers.

#include <algorithm>
#include <vector>

#include "cw/constraints.hpp"

namespace corpus {

inline std::vector<std::vector<cw::Int>> box_scan(
    const cw::constraints::System& sys, long lo, long hi) {
  const std::size_t n = sys.num_vars();
  const std::size_t m = sys.rows.size();
  std::vector<std::vector<long>> C(m, std::vector<long>(n));
  std::vector<long> rhs(m);
  std::vector<bool> eq(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j)
      C[r][j] = sys.rows[r].coeffs[j].get_si();
    rhs[r] = sys.rows[r].rhs.get_si();
    eq[r] = sys.rows[r].rel == cw::constraints::Rel::EQ;
  }

  std::vector<long> point(n, lo);
  std::vector<long> partial(m, 0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < n; ++j) partial[r] += C[r][j] * lo;

  std::vector<std::vector<cw::Int>> out;
  const long span = hi - lo;
  while (true) {
    bool ok = true;
    for (std::size_t r = 0; r < m; ++r) {
      if (eq[r] ? partial[r] != rhs[r] : partial[r] < rhs[r]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<cw::Int> p;
      p.reserve(n);
      for (long v : point) p.emplace_back(v);
      out.push_back(std::move(p));
    }
    std::size_t j = 0;
    while (j < n) {
      if (point[j] < hi) {
        ++point[j];
        for (std::size_t r = 0; r < m; ++r) partial[r] += C[r][j];
        break;
      }
      point[j] = lo;
      for (std::size_t r = 0; r < m; ++r) partial[r] -= C[r][j] * span;
      ++j;
    }
    if (j == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace corpus
