#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cw/numeric.hpp"

namespace cw::abelian {

/**
 * Primary decomposition of a finite abelian group: for each prime p the
 * multiplicities l_1..l_e, where l_i counts the C_{p^i} factors.
 */
struct Shape {
  std::map<long, std::vector<int>> primary;

  static Shape from_invariants(const std::vector<long>& factor_orders);

  Int order() const;
  std::vector<long> primes() const;
  /// Number of non-trivial cyclic factors of the p-part.
  int k(long p) const;
  /// L_i = sum_{j >= i} l_j for the p-part.
  int L(long p, int i) const;
  /// Exponent of p in exp(A).
  int exponent_valuation(long p) const;
  /// p-adic valuation of |A|.
  int order_valuation(long p) const;
  bool is_trivial() const { return primary.empty(); }
  bool is_cyclic() const;
  Shape p_part(long p) const;
  /// Ascending prime-power factor orders, e.g. C4 x C2 x C3 -> [2,3,4].
  std::vector<long> factor_orders() const;
  std::string to_string() const;  // "C2xC3xC4"

  bool operator==(const Shape& o) const = default;
};

/// Explicit realization as a product of cyclic prime-power factors with
/// componentwise addition; element ids are mixed-radix encodings.
class Group {
 public:
  explicit Group(const Shape& shape);

  const Shape& shape() const { return shape_; }
  long order() const { return order_; }
  const std::vector<long>& factors() const { return factors_; }

  int zero() const { return 0; }
  int add(int a, int b) const;
  int neg(int a) const;
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul_scalar(int a, long k) const;
  long element_order(int a) const;
  std::vector<long> exponents(int a) const;
  int from_exponents(const std::vector<long>& e) const;
  /// Projection onto the p-primary component (other coordinates zeroed).
  int p_component(int a, long p) const;

 private:
  Shape shape_;
  std::vector<long> factors_;
  long order_ = 1;
};

struct CocyclicSubgroup {
  std::vector<int> members;     // sorted element ids
  std::vector<bool> mask;       // membership bitmap
  long order = 1;
  long index = 1;               // [A:K]
  std::map<long, long> alpha_p; // per-prime coefficients
  long alpha = 1;
};

struct MValues {
  Int m_plus, m_minus, m_a;
};

struct NValues {
  Int alpha_a;
  bool finite = true;     // false iff A is cyclic (n = +infinity)
  Rat n_minus, n_a;       // valid when finite
};

/**
 * The cocyclic-subgroup lattice of a finite abelian group together with the
 * alpha coefficients. Enumeration is by kernels of the linear characters of
 * the group, which are exactly the subgroups with cyclic quotient.
 */
class Lattice {
 public:
  explicit Lattice(const Shape& shape);

  const Group& group() const { return group_; }
  const std::vector<CocyclicSubgroup>& cocyclic() const { return cocyclic_; }

  bool is_member(std::size_t subgroup, int element) const {
    return cocyclic_[subgroup].mask[element];
  }

  /// (#cocyclic of order p^i, #non-minimal cocyclic of order p^i) from the
  /// closed counting formulas, cross-checked against the enumeration.
  std::pair<Int, Int> cocyclic_counts(long p, int i) const;

  /// m^+, m^- and m_A computed both by direct summation over the enumerated
  /// lattice and by the closed formulas; throws MismatchError on
  /// disagreement.
  MValues m_values() const;

  /// f_a(x) evaluated from its defining sum over the lattice; checked
  /// against the closed form |A|+m_A / m_A.
  Int f_eval(int a, int x) const;

  /// Sum of alpha_L over cocyclic L <= K (identically 1).
  Int sum_alphas_below(std::size_t subgroup_index) const;

 private:
  Group group_;
  std::vector<CocyclicSubgroup> cocyclic_;
  mutable bool m_cached_ = false;
  mutable MValues m_cache_;
};

// ---- closed formulas on shapes (no enumeration) ---------------------------

/// #cocyclic subgroups of the p-part with index p^i (equivalently #cyclic of
/// order p^i).
Int cocyclic_index_count(const Shape& shape, long p, int i);
/// #non-minimal cocyclic of index p^i (#non-maximal cyclic of order p^i).
Int cocyclic_index_count_nonminimal(const Shape& shape, long p, int i);
/// Counts by order via the lattice duality.
Int cocyclic_order_count(const Shape& shape, long p, int i);
Int cocyclic_order_count_nonminimal(const Shape& shape, long p, int i);

Int alpha_a(const Shape& shape);
MValues m_values_closed(const Shape& shape);
NValues n_values(const Shape& shape);

/// Both sides of the odd-subset product identity
///   sum_{X odd} prod_i (x+2i+1)^{[i not in X]} = k prod_{i=1}^{k-1} (x+2i).
std::pair<Rat, Rat> numerical_lemma_eval(const Rat& x, int k);

struct MinimalPrimeBound {
  Rat p0_over_k;
  Rat n_a;
  bool holds = false;
};

/// For A of odd order whose Sylow subgroups are all products of exactly two
/// non-trivial cyclic groups: compares p0/k against n_A.
MinimalPrimeBound minimal_prime_bound_check(const Shape& shape);

}  // namespace cw::abelian
