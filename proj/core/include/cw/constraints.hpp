#pragma once

#include <string>
#include <vector>

#include "cw/groupring.hpp"
#include "cw/groups.hpp"
#include "cw/numeric.hpp"

namespace cw::constraints {

enum class Rel { GEQ, EQ };

struct Row {
  std::vector<Int> coeffs;
  Rel rel = Rel::GEQ;
  Int rhs = 0;
  std::string provenance;
};

/// Hypothetical torsion unit of order m in V(ZG, N) with support restricted
/// to one local class; the variables are the G-classes of that class.
struct Candidate {
  const groups::FiniteGroup* G = nullptr;
  groups::Subgroup N;
  int order_m = 1;
  int anchor = 0;                       // canonical element of order m
  std::vector<int> variable_classes;    // ascending G-class ids

  std::size_t num_vars() const { return variable_classes.size(); }
  /// Position of a G-class among the variables, or -1.
  int var_of_class(int class_id) const;
};

struct System {
  Candidate candidate;
  std::vector<Row> rows;

  std::size_t num_vars() const { return candidate.num_vars(); }
};

/// One candidate per local class of order-m elements of N (empty when there
/// are none). Requires N normal and nilpotent.
std::vector<Candidate> variable_classes(const groups::FiniteGroup& G,
                                        const groups::Subgroup& N, int m);

struct BuildOptions {
  bool force_general_path = false;  // use the orbit form even for abelian N_p'
};

/// Per-prime context for the local inequalities at p: the anchor's parts and
/// the Hall p'-data the rows are built from.
struct PrimeContext {
  long p = 2;
  int xhat = 0;          // p-part of the anchor
  int anchor_pprime = 0; // p'-part of the anchor
  int m_pprime = 1;      // its order
  groups::Subgroup n_pprime;
  std::vector<groups::ConjClass> np_classes;  // classes of N_{p'}
};

PrimeContext prime_context(const Candidate& cand, long p);

/// Cliff-Weiss rows for one prime with an explicit choice of xhat in the
/// rational class of the anchor's p-part.
std::vector<Row> cw_rows_for_prime(const Candidate& cand, long p, int xhat,
                                   bool force_general_path);

/// The full constraint system: the augmentation equality plus the
/// cyclic-kernel coset rows for every prime dividing |N|.
System build_system(const Candidate& cand, const BuildOptions& opts = {});

/// Local inequality for a user-supplied character psi of U_{p'} x N_{p'},
/// indexed (exponent mod m_{p'}, class of N_{p'} in prime_context order).
Row theorem_inequality_row(const Candidate& cand, long p,
                           const groupring::ClassFunction& psi);

/// Global inequality for a character psi of U x G.
Row global_inequality_row(const Candidate& cand,
                          const groupring::ClassFunction& psi);

/// The three bound-row families for a split N = A x B, A = N_pi an abelian
/// Hall subgroup and B = N_pi' with at most one non-cyclic Sylow subgroup.
std::vector<Row> bound_rows(const Candidate& cand,
                            const std::vector<long>& pi);

/// gcd-normalizes, drops empty rows, deduplicates (keeping the strongest rhs
/// among identical GEQ rows).
std::vector<Row> normalize_rows(std::vector<Row> rows);

bool satisfies(const System& system, const std::vector<Int>& point);
bool row_satisfied(const Row& row, const std::vector<Int>& point);

}  // namespace cw::constraints
