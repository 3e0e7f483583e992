#include <doctest.h>

#include <algorithm>
#include <set>

#include "cw/abelian.hpp"
#include "cw/error.hpp"
#include "support/shapes.hpp"

using namespace cw;
using namespace cw::abelian;

namespace {

Shape shape_of(const std::vector<long>& invariants) {
  return Shape::from_invariants(invariants);
}

/// All subgroups of a small realization, by closure growth.
std::set<std::vector<int>> all_subgroups(const Group& A) {
  auto span = [&](std::vector<int> gens) {
    std::set<int> s{0};
    std::vector<int> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (int g : gens) {
        int nxt = A.add(queue[h], g);
        if (s.insert(nxt).second) queue.push_back(nxt);
      }
    return std::vector<int>(s.begin(), s.end());
  };
  std::set<std::vector<int>> out{span({})};
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = out;
    for (const auto& s : snapshot)
      for (long g = 0; g < A.order(); ++g) {
        std::vector<int> gens = s;
        gens.push_back(static_cast<int>(g));
        if (out.insert(span(gens)).second) grew = true;
      }
  }
  return out;
}

/// Quotient of an abelian realization by a subgroup is cyclic iff some coset
/// has full order in the coset group.
bool quotient_cyclic(const Group& A, const std::vector<int>& S) {
  const std::size_t index = static_cast<std::size_t>(A.order()) / S.size();
  for (long g = 0; g < A.order(); ++g) {
    std::size_t k = 1;
    int cur = static_cast<int>(g);
    while (!std::binary_search(S.begin(), S.end(), cur)) {
      cur = A.add(cur, static_cast<int>(g));
      ++k;
    }
    if (k == index) return true;
  }
  return false;
}

/// Distinct cyclic subgroups, each as a sorted member list.
std::set<std::vector<int>> cyclic_subgroups(const Group& A) {
  std::set<std::vector<int>> out;
  for (long g = 0; g < A.order(); ++g) {
    std::vector<int> span{0};
    int cur = static_cast<int>(g);
    while (cur != 0) {
      span.push_back(cur);
      cur = A.add(cur, static_cast<int>(g));
    }
    std::sort(span.begin(), span.end());
    out.insert(span);
  }
  return out;
}

}  // namespace

TEST_CASE("cocyclic enumeration") {
  SUBCASE("C2 x C2") {
    Lattice lat(shape_of({2, 2}));
    REQUIRE(lat.cocyclic().size() == 4);
    int index2_alpha1 = 0;
    for (const auto& K : lat.cocyclic()) {
      if (K.index == 2) {
        CHECK(K.alpha == 1);
        ++index2_alpha1;
      } else {
        CHECK(K.index == 1);
        CHECK(K.alpha == -2);
      }
    }
    CHECK(index2_alpha1 == 3);
  }
  SUBCASE("C4: alphas 1, 0, 0") {
    Lattice lat(shape_of({4}));
    REQUIRE(lat.cocyclic().size() == 3);
    std::multiset<long> alphas;
    for (const auto& K : lat.cocyclic()) alphas.insert(K.alpha);
    CHECK(alphas == std::multiset<long>{0, 0, 1});
  }
  SUBCASE("trivial group") {
    Lattice lat(shape_of({1}));
    REQUIRE(lat.cocyclic().size() == 1);
    CHECK(lat.cocyclic().front().alpha == 1);
    CHECK(lat.cocyclic().front().order == 1);
  }
  SUBCASE("matches brute-force subgroup scan") {
    for (const auto& invs : std::vector<std::vector<long>>{
             {4, 2}, {2, 2, 2}, {9, 3}, {8}, {6, 2}, {12, 2}}) {
      const Shape shape = shape_of(invs);
      Lattice lat(shape);
      const Group& A = lat.group();
      std::set<std::vector<int>> expected;
      for (const auto& S : all_subgroups(A))
        if (quotient_cyclic(A, S)) expected.insert(S);
      CHECK(lat.cocyclic().size() == expected.size());
      for (const auto& K : lat.cocyclic())
        CHECK(expected.count(K.members) == 1);
    }
  }
}

TEST_CASE("sum of alphas below any cocyclic subgroup is 1") {
  for (const auto& invs : std::vector<std::vector<long>>{
           {2, 2}, {4, 2}, {9, 3}, {2, 2, 2}, {4, 4}, {6, 6}, {25, 5}}) {
    Lattice lat(shape_of(invs));
    for (std::size_t i = 0; i < lat.cocyclic().size(); ++i)
      CHECK(lat.sum_alphas_below(i) == 1);
  }
}

TEST_CASE("cocyclic counting formulas") {
  SUBCASE("C4 x C2: two cocyclic subgroups of index 4") {
    Lattice lat(shape_of({4, 2}));
    CHECK(lat.cocyclic_counts(2, 1).first == 2);  // order 2 = index 4
  }
  SUBCASE("C_p, i = 0: the trivial subgroup") {
    Lattice lat(shape_of({5}));
    CHECK(lat.cocyclic_counts(5, 0).first == 1);
  }
  SUBCASE("C2 x C2: three of order 2") {
    Lattice lat(shape_of({2, 2}));
    CHECK(lat.cocyclic_counts(2, 1).first == 3);
  }
  SUBCASE("enumeration cross-check over a small corpus") {
    for (const auto& invs : std::vector<std::vector<long>>{
             {8, 2}, {4, 4}, {2, 2, 2}, {27, 3}, {9, 9}, {16}}) {
      const Shape shape = shape_of(invs);
      Lattice lat(shape);
      for (long p : shape.primes())
        for (int i = 0; i <= shape.order_valuation(p); ++i)
          CHECK_NOTHROW(lat.cocyclic_counts(p, i));
    }
  }
}

TEST_CASE("duality: cocyclic by order equals cyclic by index") {
  for (const auto& invs : std::vector<std::vector<long>>{
           {4, 2}, {2, 2, 2}, {9, 3}, {8, 4}, {25, 5}}) {
    const Shape shape = shape_of(invs);
    const long p = shape.primes().front();
    Group A(shape);
    const auto cyclics = cyclic_subgroups(A);
    for (int i = 0; i <= shape.order_valuation(p); ++i) {
      const long pi = power_long(p, i);
      long cyclic_of_index = 0;
      for (const auto& c : cyclics)
        if (A.order() / static_cast<long>(c.size()) == pi) ++cyclic_of_index;
      CHECK(cocyclic_order_count(shape, p, i) == Int(cyclic_of_index));
    }
  }
}

TEST_CASE("no two cocyclic subgroups of equal order above a cocyclic one") {
  for (const auto& invs : std::vector<std::vector<long>>{
           {4, 2}, {2, 2, 2}, {9, 3}, {4, 4}, {8, 2}}) {
    Lattice lat(shape_of(invs));
    const auto& cc = lat.cocyclic();
    for (const auto& L : cc)
      for (std::size_t i = 0; i < cc.size(); ++i)
        for (std::size_t j = i + 1; j < cc.size(); ++j) {
          if (cc[i].order != cc[j].order) continue;
          auto contains = [&](const CocyclicSubgroup& K) {
            for (int m : L.members)
              if (!K.mask[m]) return false;
            return true;
          };
          if (contains(cc[i]) && contains(cc[j])) CHECK(i == j);
        }
  }
}

TEST_CASE("m values") {
  SUBCASE("C2 x C2") {
    Lattice lat(shape_of({2, 2}));
    const MValues m = lat.m_values();
    CHECK(m.m_plus == 6);
    CHECK(m.m_minus == 2);
    CHECK(m.m_a == 2);
  }
  SUBCASE("cyclic groups: m_minus = m_A = 0") {
    for (long n : {2L, 6L, 12L, 35L}) {
      Lattice lat(shape_of({n}));
      const MValues m = lat.m_values();
      CHECK(m.m_minus == 0);
      CHECK(m.m_a == 0);
    }
  }
  SUBCASE("C3 x C3") {
    Lattice lat(shape_of({3, 3}));
    const MValues m = lat.m_values();
    CHECK(m.m_minus == 3);
    CHECK(m.m_a == 3);
  }
  SUBCASE("trivial group follows the defining sums: m_A = -1") {
    Lattice lat(shape_of({1}));
    const MValues m = lat.m_values();
    CHECK(m.m_plus == 1);
    CHECK(m.m_minus == 0);
    CHECK(m.m_a == -1);
  }
}

TEST_CASE("coprime multiplicativity of m values") {
  const std::vector<std::vector<long>> bs{{2, 2}, {4}, {8, 2}};
  const std::vector<std::vector<long>> cs{{3, 3}, {9}, {5, 5}};
  for (const auto& b : bs)
    for (const auto& c : cs) {
      std::vector<long> prod = b;
      prod.insert(prod.end(), c.begin(), c.end());
      const MValues mb = m_values_closed(shape_of(b));
      const MValues mc = m_values_closed(shape_of(c));
      const MValues mp = m_values_closed(shape_of(prod));
      CHECK(mp.m_plus == mb.m_plus * mc.m_plus + mb.m_minus * mc.m_minus);
      CHECK(mp.m_minus == mb.m_plus * mc.m_minus + mb.m_minus * mc.m_plus);
    }
}

TEST_CASE("n values") {
  SUBCASE("C3 x C3") {
    const NValues n = n_values(shape_of({3, 3}));
    CHECK(n.alpha_a == -3);
    CHECK(n.finite);
    CHECK(n.n_minus == Rat(3));
    CHECK(n.n_a == Rat(3));
  }
  SUBCASE("cyclic: infinite") {
    CHECK_FALSE(n_values(shape_of({12})).finite);
    CHECK_FALSE(n_values(shape_of({1})).finite);
  }
  SUBCASE("C3^2 x C5^2") {
    const NValues n = n_values(shape_of({3, 3, 5, 5}));
    CHECK(n.alpha_a == 15);
    CHECK(n.n_minus == Rat(3) / Rat(2));
    CHECK(n.n_a == Rat(5) / Rat(3));
  }
}

TEST_CASE("m_A is non-negative for non-trivial groups, positive iff non-cyclic") {
  for (const auto& shape : corpus::shapes_up_to(64)) {
    if (shape.is_trivial()) continue;
    const MValues m = m_values_closed(shape);
    CHECK(m.m_a >= 0);
    CHECK((m.m_a > 0) == !shape.is_cyclic());
    if (!shape.is_cyclic()) {
      const NValues n = n_values(shape);
      CHECK(Rat(shape.order()) == n.n_a * Rat(m.m_a));
    }
  }
}

TEST_CASE("alpha sign rule") {
  // alpha_K < 0 iff K_p = 1 at every cyclic Sylow and the number of primes
  // with A_p non-cyclic and K_p non-minimal is odd
  for (const auto& invs : std::vector<std::vector<long>>{
           {2, 2, 3}, {9, 3, 25, 5}, {4, 2, 3, 3}}) {
    const Shape shape = shape_of(invs);
    Lattice lat(shape);
    for (const auto& K : lat.cocyclic()) {
      bool unit_at_cyclic = true;
      int odd_count = 0;
      for (long p : shape.primes()) {
        const long ap = K.alpha_p.at(p);
        if (shape.k(p) == 1) {
          // cyclic Sylow: K_p = 1 iff alpha_{K,p} = 1 (else 0)
          if (ap != 1) unit_at_cyclic = false;
        } else if (ap != 1) {
          ++odd_count;  // non-minimal at a non-cyclic Sylow
        }
      }
      CHECK((K.alpha < 0) == (unit_at_cyclic && odd_count % 2 == 1));
    }
  }
}

TEST_CASE("f_a evaluation") {
  SUBCASE("C2 x C2") {
    Lattice lat(shape_of({2, 2}));
    for (int a = 0; a < 4; ++a)
      for (int x = 0; x < 4; ++x)
        CHECK(lat.f_eval(a, x) == (a == x ? 6 : 2));
  }
  SUBCASE("trivial group: defining sum gives 0") {
    Lattice lat(shape_of({1}));
    CHECK(lat.f_eval(0, 0) == 0);
  }
  SUBCASE("both routes agree on mixed shapes") {
    for (const auto& invs :
         std::vector<std::vector<long>>{{4, 2}, {9, 3}, {6, 6}, {2, 2, 3}}) {
      Lattice lat(shape_of(invs));
      const long n = lat.group().order();
      for (int a = 0; a < n; ++a)
        for (int x = 0; x < n; ++x) CHECK_NOTHROW(lat.f_eval(a, x));
    }
  }
}

TEST_CASE("numerical lemma") {
  SUBCASE("x=1, k=2") {
    auto [lhs, rhs] = numerical_lemma_eval(Rat(1), 2);
    CHECK(lhs == 6);
    CHECK(rhs == 6);
  }
  SUBCASE("x=1, k=1") {
    auto [lhs, rhs] = numerical_lemma_eval(Rat(1), 1);
    CHECK(lhs == 1);
    CHECK(rhs == 1);
  }
  SUBCASE("x=2, k=3") {
    auto [lhs, rhs] = numerical_lemma_eval(Rat(2), 3);
    CHECK(lhs == 72);
    CHECK(rhs == 72);
  }
  SUBCASE("equality for k <= 6 at rational points") {
    for (int k = 1; k <= 6; ++k)
      for (const Rat& x : std::vector<Rat>{Rat(1), Rat(1) / Rat(2),
                                           Rat(7) / Rat(3), Rat(10)}) {
        auto [lhs, rhs] = numerical_lemma_eval(x, k);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("minimal prime bound") {
  SUBCASE("C3 x C3") {
    const auto b = minimal_prime_bound_check(shape_of({3, 3}));
    CHECK(b.p0_over_k == Rat(3));
    CHECK(b.n_a == Rat(3));
    CHECK(b.holds);
  }
  SUBCASE("C3^2 x C5^2") {
    const auto b = minimal_prime_bound_check(shape_of({3, 3, 5, 5}));
    CHECK(b.p0_over_k == Rat(3) / Rat(2));
    CHECK(b.n_a == Rat(5) / Rat(3));
    CHECK(b.holds);
  }
  SUBCASE("C3^2 x C5^2 x C7^2") {
    CHECK(minimal_prime_bound_check(shape_of({3, 3, 5, 5, 7, 7})).holds);
  }
  SUBCASE("hypothesis violations") {
    CHECK_THROWS_AS(minimal_prime_bound_check(shape_of({2, 2})), Error);
    CHECK_THROWS_AS(minimal_prime_bound_check(shape_of({3})), Error);
    CHECK_THROWS_AS(minimal_prime_bound_check(shape_of({3, 3, 3})), Error);
  }
}

TEST_CASE("shape basics") {
  Shape s = shape_of({12});
  CHECK(s.order() == 12);
  CHECK(s.factor_orders() == std::vector<long>{4, 3});
  CHECK(s.is_cyclic());
  CHECK(shape_of({2, 2}).k(2) == 2);
  CHECK(shape_of({1}).is_trivial());
  CHECK(shape_of({4, 2}).to_string() == "C2xC4");
}
