#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cw/groups.hpp"
#include "cw/numeric.hpp"

namespace cw::groupring {

/// Sparse integral group-ring element: element index -> coefficient,
/// zero coefficients never stored.
using Element = std::map<int, Int>;

Element single(int g, Int coeff = 1);
Element zero();
Int coeff(const Element& x, int g);
void add_term(Element& x, int g, const Int& c);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element mul(const groups::FiniteGroup& G, const Element& x, const Element& y);
Int augmentation(const Element& x);

/// One partial augmentation per conjugacy class of G.
std::vector<Int> partial_augmentations(const groups::FiniteGroup& G,
                                       const Element& x);

/// Memoizes powers of a fixed base element (power(0) = 1).
class PowerCache {
 public:
  PowerCache(const groups::FiniteGroup& G, Element base);
  const Element& power(int i);

 private:
  const groups::FiniteGroup& G_;
  std::vector<Element> pows_;
};

/// k x k matrix over the group ring of a subgroup N, with the transversal
/// that produced it.
struct Matrix {
  int k = 0;
  std::vector<Element> entries;  // row-major
  std::vector<int> transversal;

  Element& at(int i, int j) { return entries[i * k + j]; }
  const Element& at(int i, int j) const { return entries[i * k + j]; }
};

/// Minimal element of each right coset Ng, ascending.
std::vector<int> canonical_transversal(const groups::FiniteGroup& G,
                                       const groups::Subgroup& N);

/// The right-multiplication embedding of the group ring into k x k matrices
/// over the subgroup ring, k = [G:N].
Matrix phi_embed(const groups::FiniteGroup& G, const Element& x,
                 const groups::Subgroup& N,
                 const std::vector<int>& transversal);

Matrix mat_mul(const groups::FiniteGroup& G, const Matrix& a, const Matrix& b);
Element mat_trace(const Matrix& a);

struct TraceFormulaWitness {
  int n = 0;
  Int lhs, rhs;
};

/// Checks PA_{n^N}(tr Phi(x)) = [C_G(n):C_N(n)] PA_{n^G}(x) for every n in N;
/// returns the first violating witness, or nullopt when the identity holds.
std::optional<TraceFormulaWitness> trace_formula_check(
    const groups::FiniteGroup& G, const Element& x, const groups::Subgroup& N);

/// |C_G(g)| * PA_{g^G}(v^i), recomputed independently as the trace of
/// y |-> v^i y g^{-1} on the free module with basis G; MismatchError on
/// disagreement.
Int double_action_value(const groups::FiniteGroup& G, const Element& v, int m,
                        int i, int g);
Int double_action_value(const groups::FiniteGroup& G, PowerCache& v_powers,
                        int m, int i, int g);

/// A point (u^exponent, element) of U x G with U abstract cyclic of order m.
struct CyclicPair {
  int m = 1;
  int exponent = 0;
  int element = 0;
};

/// Value at `at` of the permutation character induced from the trivial
/// character of <(u, g)> <= U x G, computed by counting fixed cosets.
Int induced_perm_character_value(const groups::FiniteGroup& G, int m,
                                 const CyclicPair& h, const CyclicPair& at);

/// Class function on U x G (or U' x N'): values[i][class] with i mod period.
struct ClassFunction {
  int period = 1;
  std::vector<std::vector<Rat>> values;

  const Rat& at(int i, int cls) const {
    return values[((i % period) + period) % period][cls];
  }
};

ClassFunction trivial_character(int m, std::size_t num_classes);
ClassFunction regular_character(const groups::FiniteGroup& G, int m);
/// Table of ind_{<(u,g)>}^{U x G}(1).
ClassFunction induced_character_table(const groups::FiniteGroup& G, int m,
                                      int g);

/// (1/m) sum_i psi(u^i, n^i); requires |n| dividing m. Throws
/// NonIntegralWarning when the result is not a non-negative integer
/// (the signature of psi not being a character).
Rat a_coefficient(const groups::FiniteGroup& G, int m, int n,
                  const ClassFunction& psi);

}  // namespace cw::groupring
