#include "cw/feasibility.hpp"

#include <algorithm>
#include <numeric>

namespace cw::feasibility {

using constraints::Rel;
using constraints::Row;
using constraints::System;

namespace {

/**
 * Dense exact simplex on min c.y, T y = b, y >= 0. Columns are the split
 * free variables u_j, v_j (eps_j = u_j - v_j) followed by one surplus per
 * inequality; artificials are appended for phase 1 and dropped afterwards.
 */
class Simplex {
 public:
  Simplex(const System& system, std::size_t var, bool maximize) {
    const std::size_t n = system.num_vars();
    const std::size_t m = system.rows.size();
    nstruct_ = 2 * n;
    std::size_t surplus = 0;
    for (const auto& row : system.rows)
      if (row.rel == Rel::GEQ) ++surplus;
    cols_ = nstruct_ + surplus;

    a_.assign(m, std::vector<Rat>(cols_, Rat(0)));
    b_.assign(m, Rat(0));
    std::size_t s = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const Row& row = system.rows[r];
      for (std::size_t j = 0; j < n; ++j) {
        a_[r][2 * j] = Rat(row.coeffs[j]);
        a_[r][2 * j + 1] = Rat(-row.coeffs[j]);
      }
      if (row.rel == Rel::GEQ) a_[r][nstruct_ + s++] = Rat(-1);
      b_[r] = Rat(row.rhs);
      if (sgn(b_[r]) < 0) {
        for (auto& x : a_[r]) x = -x;
        b_[r] = -b_[r];
      }
    }

    c_.assign(cols_, Rat(0));
    c_[2 * var] = maximize ? Rat(-1) : Rat(1);
    c_[2 * var + 1] = maximize ? Rat(1) : Rat(-1);
    nvars_ = n;
    objective_var_ = var;
  }

  LpResult solve() {
    const std::size_t m = a_.size();
    // phase 1: artificial columns m..m+m-1 appended
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(cols_ + m + 1));
    basis_.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < cols_; ++j) T[r][j] = a_[r][j];
      T[r][cols_ + r] = 1;
      T[r][cols_ + m] = b_[r];
      basis_[r] = cols_ + r;
    }
    std::vector<Rat> cost(cols_ + m, Rat(0));
    for (std::size_t j = cols_; j < cols_ + m; ++j) cost[j] = 1;
    if (!run(T, cost, cols_ + m)) fail(Errc::Internal, "phase 1 unbounded");
    Rat phase1 = objective_value(T, cost);
    if (sgn(phase1) != 0) return LpResult{LpStatus::INFEASIBLE, Rat(0), {}};
    // drive artificials out of the basis when possible, else drop the row
    for (std::size_t r = 0; r < T.size(); ++r) {
      if (basis_[r] < cols_) continue;
      std::size_t pivot_col = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(T[r][j]) != 0) {
          pivot_col = j;
          break;
        }
      if (pivot_col == cols_) {
        T.erase(T.begin() + static_cast<long>(r));
        basis_.erase(basis_.begin() + static_cast<long>(r));
        --r;
        continue;
      }
      pivot(T, r, pivot_col);
    }
    for (auto& row : T) row.erase(row.begin() + static_cast<long>(cols_),
                                  row.end() - 1);

    std::vector<Rat> cost2(cols_, Rat(0));
    for (std::size_t j = 0; j < cols_; ++j) cost2[j] = c_[j];
    if (!run(T, cost2, cols_))
      return LpResult{LpStatus::UNBOUNDED, Rat(0), {}};

    std::vector<Rat> y(cols_, Rat(0));
    for (std::size_t r = 0; r < T.size(); ++r) y[basis_[r]] = T[r].back();
    LpResult res;
    res.status = LpStatus::OPTIMAL;
    res.point.resize(nvars_);
    for (std::size_t j = 0; j < nvars_; ++j)
      res.point[j] = y[2 * j] - y[2 * j + 1];
    res.value = res.point[objective_var_];
    return res;
  }

 private:
  /// One simplex run with Bland's rule; returns false on unboundedness.
  bool run(std::vector<std::vector<Rat>>& T, const std::vector<Rat>& cost,
           std::size_t width) {
    while (true) {
      // reduced costs: cost_j - cost_B . column_j
      std::size_t enter = width;
      for (std::size_t j = 0; j < width; ++j) {
        Rat red = cost[j];
        for (std::size_t r = 0; r < T.size(); ++r)
          red -= cost[basis_[r]] * T[r][j];
        if (sgn(red) < 0) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
      if (enter == width) return true;
      std::size_t leave = T.size();
      Rat best;
      for (std::size_t r = 0; r < T.size(); ++r) {
        if (sgn(T[r][enter]) <= 0) continue;
        Rat ratio = T[r].back() / T[r][enter];
        if (leave == T.size() || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == T.size()) return false;
      pivot(T, leave, enter);
    }
  }

  void pivot(std::vector<std::vector<Rat>>& T, std::size_t r, std::size_t c) {
    const Rat inv = 1 / T[r][c];
    for (auto& x : T[r]) x *= inv;
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (i == r || sgn(T[i][c]) == 0) continue;
      const Rat f = T[i][c];
      for (std::size_t j = 0; j < T[i].size(); ++j) T[i][j] -= f * T[r][j];
    }
    basis_[r] = c;
  }

  Rat objective_value(const std::vector<std::vector<Rat>>& T,
                      const std::vector<Rat>& cost) const {
    Rat v = 0;
    for (std::size_t r = 0; r < T.size(); ++r)
      v += cost[basis_[r]] * T[r].back();
    return v;
  }

  std::vector<std::vector<Rat>> a_;
  std::vector<Rat> b_, c_;
  std::vector<std::size_t> basis_;
  std::size_t cols_ = 0, nstruct_ = 0, nvars_ = 0, objective_var_ = 0;
};

/// Independent arithmetic pass for the post-hoc re-check.
bool recheck_solution(const System& system, const std::vector<Int>& point) {
  for (const auto& row : system.rows) {
    Int acc = -row.rhs;
    for (std::size_t i = 0; i < point.size(); ++i)
      acc += row.coeffs[i] * point[i];
    if (row.rel == Rel::EQ ? acc != 0 : acc < 0) return false;
  }
  return true;
}

struct DfsState {
  const System* system;
  std::vector<std::size_t> order;  // variable assignment order
  std::vector<std::vector<Int>>* out;
};

/**
 * Tightens [lo, hi] to a fixpoint using every row as an interval constraint
 * (assigned variables are those with lo == hi). Returns false when some
 * interval empties, i.e. the subtree holds no integer point.
 */
bool propagate(const System& sys, std::vector<Int>& lo, std::vector<Int>& hi) {
  const std::size_t n = lo.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& row : sys.rows) {
      Int min_lhs = 0, max_lhs = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Int& c = row.coeffs[j];
        if (c == 0) continue;
        if (c > 0) {
          min_lhs += c * lo[j];
          max_lhs += c * hi[j];
        } else {
          min_lhs += c * hi[j];
          max_lhs += c * lo[j];
        }
      }
      if (row.rel == Rel::EQ ? (row.rhs < min_lhs || row.rhs > max_lhs)
                             : max_lhs < row.rhs)
        return false;
      // per-variable tightening: c_j x_j >= rhs - max(rest), and for
      // equalities also c_j x_j <= rhs - min(rest)
      for (std::size_t j = 0; j < n; ++j) {
        const Int& c = row.coeffs[j];
        if (c == 0 || lo[j] == hi[j]) continue;
        const Int max_rest = max_lhs - (c > 0 ? c * hi[j] : c * lo[j]);
        const Int min_rest = min_lhs - (c > 0 ? c * lo[j] : c * hi[j]);
        Int new_lo = lo[j], new_hi = hi[j];
        if (c > 0) {
          new_lo = std::max(new_lo, ceil_rat(Rat(row.rhs - max_rest) / Rat(c)));
          if (row.rel == Rel::EQ)
            new_hi =
                std::min(new_hi, floor_rat(Rat(row.rhs - min_rest) / Rat(c)));
        } else {
          new_hi = std::min(new_hi, floor_rat(Rat(row.rhs - max_rest) / Rat(c)));
          if (row.rel == Rel::EQ)
            new_lo =
                std::max(new_lo, ceil_rat(Rat(row.rhs - min_rest) / Rat(c)));
        }
        if (new_lo > new_hi) return false;
        if (new_lo != lo[j] || new_hi != hi[j]) {
          lo[j] = new_lo;
          hi[j] = new_hi;
          changed = true;
        }
      }
    }
  }
  return true;
}

void dfs(DfsState& st, std::size_t depth, std::vector<Int> lo,
         std::vector<Int> hi) {
  if (depth == st.order.size()) {
    std::vector<Int> point = lo;  // all intervals are singletons here
    if (recheck_solution(*st.system, point)) st.out->push_back(std::move(point));
    return;
  }
  const std::size_t j = st.order[depth];
  const Int start_lo = lo[j], start_hi = hi[j];
  // midpoint-outward value order
  const Int mid = (start_lo + start_hi) / 2;
  for (Int d = 0;; d += 1) {
    bool any = false;
    for (int sign = 0; sign < (d == 0 ? 1 : 2); ++sign) {
      const Int v = sign == 0 ? Int(mid + d) : Int(mid - d);
      if (v < start_lo || v > start_hi) continue;
      any = true;
      std::vector<Int> sub_lo = lo, sub_hi = hi;
      sub_lo[j] = v;
      sub_hi[j] = v;
      if (propagate(*st.system, sub_lo, sub_hi))
        dfs(st, depth + 1, std::move(sub_lo), std::move(sub_hi));
    }
    if (!any && d > 0) break;
    if (d == 0 && start_lo == start_hi) break;
  }
}

}  // namespace

LpResult lp_extremum(const System& system, std::size_t var, bool maximize) {
  require(var < system.num_vars(), Errc::Internal, "variable out of range");
  Simplex s(system, var, maximize);
  LpResult res = s.solve();
  if (res.status == LpStatus::OPTIMAL) {
    // the optimum must be attained by the returned point
    for (const auto& row : system.rows) {
      Rat lhs = 0;
      for (std::size_t j = 0; j < system.num_vars(); ++j)
        lhs += Rat(row.coeffs[j]) * res.point[j];
      const bool ok =
          row.rel == Rel::EQ ? lhs == Rat(row.rhs) : lhs >= Rat(row.rhs);
      require(ok, Errc::Internal, "simplex returned an infeasible optimum");
    }
  }
  return res;
}

SolutionSet enumerate_integer_solutions(const System& system) {
  SolutionSet out;
  const std::size_t n = system.num_vars();
  out.bounds.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    LpResult mn = lp_extremum(system, j, /*maximize=*/false);
    if (mn.status == LpStatus::INFEASIBLE) {
      out.lp_infeasible = true;
      out.complete = true;
      return out;
    }
    if (mn.status == LpStatus::UNBOUNDED) {
      out.unbounded = true;
      out.unbounded_var = j;
      return out;
    }
    LpResult mx = lp_extremum(system, j, /*maximize=*/true);
    if (mx.status == LpStatus::UNBOUNDED) {
      out.unbounded = true;
      out.unbounded_var = j;
      return out;
    }
    out.bounds[j] = {mn.value, mx.value};
  }

  DfsState st;
  st.system = &system;
  st.out = &out.solutions;
  std::vector<Int> lo(n), hi(n);
  std::vector<std::pair<Int, std::size_t>> widths;
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = ceil_rat(out.bounds[j].first);
    hi[j] = floor_rat(out.bounds[j].second);
    if (lo[j] > hi[j]) {
      out.complete = true;  // no integer point fits the LP box
      return out;
    }
    widths.emplace_back(hi[j] - lo[j], j);
  }
  std::sort(widths.begin(), widths.end());
  for (const auto& [w, j] : widths) st.order.push_back(j);

  if (propagate(system, lo, hi)) dfs(st, 0, std::move(lo), std::move(hi));
  std::sort(out.solutions.begin(), out.solutions.end());
  out.complete = true;
  return out;
}

const char* verdict_name(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::SEHGAL_POSITIVE: return "SEHGAL_POSITIVE";
    case VerdictTag::CANDIDATES_FOUND: return "CANDIDATES_FOUND";
    case VerdictTag::UNBOUNDED_RELAXATION: return "UNBOUNDED_RELAXATION";
  }
  return "UNKNOWN";
}

bool is_standard_basis_vector(const std::vector<Int>& v) {
  int ones = 0;
  for (const Int& x : v) {
    if (x == 1)
      ++ones;
    else if (x != 0)
      return false;
  }
  return ones == 1;
}

Verdict classify(const SolutionSet& solutions) {
  Verdict v;
  if (solutions.unbounded) {
    v.tag = VerdictTag::UNBOUNDED_RELAXATION;
    v.note = "LP relaxation unbounded in coordinate " +
             std::to_string(solutions.unbounded_var);
    return v;
  }
  require(solutions.complete, Errc::Internal,
          "verdict requires a complete solution set");
  if (solutions.lp_infeasible || solutions.solutions.empty()) {
    v.tag = VerdictTag::SEHGAL_POSITIVE;
    v.note = "no unit with this anchor";
    return v;
  }
  for (const auto& sol : solutions.solutions)
    if (!is_standard_basis_vector(sol)) v.nontrivial.push_back(sol);
  v.tag = v.nontrivial.empty() ? VerdictTag::SEHGAL_POSITIVE
                               : VerdictTag::CANDIDATES_FOUND;
  return v;
}

}  // namespace cw::feasibility
