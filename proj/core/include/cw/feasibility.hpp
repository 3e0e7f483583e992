#pragma once

#include <string>
#include <vector>

#include "cw/constraints.hpp"
#include "cw/numeric.hpp"

namespace cw::feasibility {

enum class LpStatus { OPTIMAL, UNBOUNDED, INFEASIBLE };

struct LpResult {
  LpStatus status = LpStatus::OPTIMAL;
  Rat value;                    // optimum of the requested coordinate
  std::vector<Rat> point;       // a feasible point attaining it
};

/// Exact optimum of +-eps_j over the rational relaxation, by two-phase
/// simplex with Bland's rule (deterministic, cycle-free).
LpResult lp_extremum(const constraints::System& system, std::size_t var,
                     bool maximize);

struct SolutionSet {
  std::vector<std::vector<Int>> solutions;  // canonically ordered
  bool complete = false;
  bool lp_infeasible = false;
  bool unbounded = false;
  std::size_t unbounded_var = 0;
  std::vector<std::pair<Rat, Rat>> bounds;  // per-variable LP bounds
};

/// Complete integer-point list via depth-first assignment with interval
/// propagation inside the LP bounds. Every returned vector is re-verified
/// against every row.
SolutionSet enumerate_integer_solutions(const constraints::System& system);

enum class VerdictTag { SEHGAL_POSITIVE, CANDIDATES_FOUND, UNBOUNDED_RELAXATION };

const char* verdict_name(VerdictTag tag);

struct Verdict {
  VerdictTag tag = VerdictTag::SEHGAL_POSITIVE;
  std::vector<std::vector<Int>> nontrivial;  // solutions with a negative entry
  std::string note;
};

/// SEHGAL_POSITIVE iff the complete solution list consists of standard basis
/// vectors only (vacuously when the relaxation is infeasible).
Verdict classify(const SolutionSet& solutions);

bool is_standard_basis_vector(const std::vector<Int>& v);

}  // namespace cw::feasibility
