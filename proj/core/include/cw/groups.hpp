#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cw/abelian.hpp"
#include "cw/error.hpp"

namespace cw::groups {

inline constexpr std::size_t kDefaultOrderCap = 20000;

/// A permutation of {0..degree-1} stored as its image sequence.
struct Permutation {
  std::vector<int> images;

  int degree() const { return static_cast<int>(images.size()); }
  int operator()(int point) const { return images[point]; }

  bool operator==(const Permutation& o) const = default;
  bool operator<(const Permutation& o) const { return images < o.images; }

  static Permutation identity(int degree);
  /// Applies `this` first, then `next` (left-to-right action).
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_valid() const;
  /// Builds a permutation from disjoint cycles on `degree` points.
  static Permutation from_cycles(int degree,
                                 const std::vector<std::vector<int>>& cycles);
};

struct ConjClass {
  int rep = 0;                       // minimal member index
  std::vector<int> members;          // sorted element indices
  std::size_t centralizer_order = 0; // by direct count
  int element_order = 0;
};

/// Classes locally fused by p-part conjugacy.
struct LocalClass {
  std::vector<int> class_ids;  // sorted G-class indices
};

/// Subgroups are sorted element-index sets of the ambient group.
using Subgroup = std::vector<int>;

/**
 * Fully enumerated permutation group. Elements are indexed by their position
 * in the lexicographically sorted element list; index 0 is the identity.
 * Immutable after construction, safe for concurrent reads.
 */
class FiniteGroup {
 public:
  static FiniteGroup generate(int degree, std::vector<Permutation> generators,
                              std::size_t order_cap = kDefaultOrderCap);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Permutation& element(int i) const { return elements_[i]; }

  /// Index of a permutation, or -1 if it is not an element.
  int index_of(const Permutation& p) const;

  int identity() const { return 0; }
  int mult(int a, int b) const;  // element a followed by element b
  int inverse(int a) const { return inverse_[a]; }
  int conjugate(int g, int h) const;  // h^{-1} g h
  int power(int a, long e) const;
  int element_order(int a) const { return order_[a]; }
  long exponent() const;

  const std::vector<ConjClass>& classes() const { return classes_; }
  int class_of(int a) const { return class_of_[a]; }

  /// (g_p, g_{p'}): the commuting p-part / p'-part factors of g.
  std::pair<int, int> p_parts(int g, long p) const;
  /// pi-part of g for a set of primes.
  int pi_part(int g, const std::vector<long>& pi) const;

 private:
  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> inverse_;
  std::vector<int> order_;
  std::vector<ConjClass> classes_;
  std::vector<int> class_of_;

  static std::string key_of(const Permutation& p);
  void build_tables();
};

// ---- subgroup machinery -------------------------------------------------

Subgroup whole_group(const FiniteGroup& G);
Subgroup subgroup_generate(const FiniteGroup& G, const std::vector<int>& gens);
bool subgroup_contains(const Subgroup& S, int g);
bool is_subgroup_normal(const FiniteGroup& G, const Subgroup& S);
bool is_abelian(const FiniteGroup& G, const Subgroup& S);
/// True when S has an element of order |S|.
bool is_cyclic(const FiniteGroup& G, const Subgroup& S);
long subgroup_exponent(const FiniteGroup& G, const Subgroup& S);
/// Primes dividing |S|.
std::vector<long> subgroup_primes(const FiniteGroup& G, const Subgroup& S);

/// {g in G : gs = sg for all s in S}.
Subgroup centralizer(const FiniteGroup& G, const std::vector<int>& S);
/// Same, intersected with an ambient subgroup H.
Subgroup centralizer_in(const FiniteGroup& G, const Subgroup& H,
                        const std::vector<int>& S);
std::size_t centralizer_order_in(const FiniteGroup& G, const Subgroup& H,
                                 int g);

/// Conjugacy classes of S viewed as a group of its own.
std::vector<ConjClass> subgroup_classes(const FiniteGroup& G,
                                        const Subgroup& S);

/// For each prime of |S|, the p-elements must be closed under products.
bool is_nilpotent(const FiniteGroup& G, const Subgroup& S);

/// All pi-elements of a nilpotent subgroup; verified to be a subgroup.
Subgroup hall_subgroup(const FiniteGroup& G, const Subgroup& N,
                       const std::vector<long>& pi);

/// Partition of N's G-classes by the relation g ~ h iff g_p^G = h_p^G for
/// every prime p. Requires N normal in G.
std::vector<LocalClass> local_classes(const FiniteGroup& G, const Subgroup& N);

/// All normal subgroups K of H containing [H,H] with H/K cyclic (for abelian
/// H exactly the cocyclic subgroups). Deterministic order.
std::vector<Subgroup> cyclic_quotient_kernels(const FiniteGroup& G,
                                              const Subgroup& H);

/// Independent generating set of an abelian subgroup: (element, order) pairs
/// whose cyclic spans decompose H as a direct product.
std::vector<std::pair<int, long>> abelian_basis(const FiniteGroup& G,
                                                const Subgroup& H);

/// Primary decomposition multiplicities of an abelian subgroup.
abelian::Shape abelian_shape(const FiniteGroup& G, const Subgroup& H);

// ---- builders ------------------------------------------------------------

struct Built {
  FiniteGroup group;
  Subgroup base;  // distinguished normal subgroup ("cyclic-part")
  std::string name;
  std::string base_name;
};

Built build_cyclic(long n, std::size_t cap = kDefaultOrderCap);
Built build_abelian(const std::vector<long>& invariants,
                    std::size_t cap = kDefaultOrderCap);
/// Dihedral group of order 2n (base = rotation subgroup).
Built build_dihedral(long n, std::size_t cap = kDefaultOrderCap);
Built build_symmetric(int n, std::size_t cap = kDefaultOrderCap);
/// Generalized dihedral group A x| C2 with inversion (base = A).
Built build_gen_dihedral(const std::vector<long>& invariants,
                         std::size_t cap = kDefaultOrderCap);
/// A x| C_q where the C_q generator acts on exponent vectors by an integer
/// matrix; requires matrix^q = identity (base = A).
Built build_semidirect_abelian(const std::vector<long>& invariants,
                               const std::vector<std::vector<long>>& matrix,
                               long q, std::size_t cap = kDefaultOrderCap);
Built build_direct_product(const std::vector<Built>& factors,
                           std::size_t cap = kDefaultOrderCap);

/// "C12" for cyclic subgroups, "N<order>" otherwise.
std::string subgroup_name(const FiniteGroup& G, const Subgroup& S);

}  // namespace cw::groups
