#include <doctest.h>

#include <random>

#include "cw/groupring.hpp"
#include "support/corpus.hpp"

using namespace cw;
using namespace cw::groupring;
using cw::groups::Built;
using cw::groups::FiniteGroup;
using cw::groups::Permutation;
using cw::groups::Subgroup;

namespace {

int elem(const FiniteGroup& G, const std::vector<std::vector<int>>& cycles) {
  const int id = G.index_of(Permutation::from_cycles(G.degree(), cycles));
  REQUIRE(id >= 0);
  return id;
}

Element random_element(const FiniteGroup& G, std::mt19937_64& rng,
                       int max_abs = 3) {
  std::uniform_int_distribution<int> coeff(-max_abs, max_abs);
  Element x;
  for (std::size_t g = 0; g < G.order(); ++g)
    add_term(x, static_cast<int>(g), Int(coeff(rng)));
  return x;
}

/// Maximal element of each right coset: a second, independent transversal.
std::vector<int> maximal_transversal(const FiniteGroup& G, const Subgroup& N) {
  std::vector<int> out;
  std::vector<bool> seen(G.order(), false);
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    int best = static_cast<int>(g);
    for (int n : N) {
      const int member = G.mult(n, static_cast<int>(g));
      seen[member] = true;
      best = std::max(best, member);
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace

TEST_CASE("partial augmentations") {
  Built s3 = groups::build_symmetric(3);
  const FiniteGroup& G = s3.group;
  SUBCASE("single group element: class indicator") {
    const int g = elem(G, {{0, 1, 2}});
    auto pa = partial_augmentations(G, single(g));
    Int total = 0;
    for (std::size_t c = 0; c < pa.size(); ++c) {
      total += pa[c];
      CHECK(pa[c] == (static_cast<int>(c) == G.class_of(g) ? 1 : 0));
    }
    CHECK(total == 1);
  }
  SUBCASE("(012) + (021) - (01)") {
    Element x = single(elem(G, {{0, 1, 2}}));
    add_term(x, elem(G, {{0, 2, 1}}), 1);
    add_term(x, elem(G, {{0, 1}}), -1);
    auto pa = partial_augmentations(G, x);
    CHECK(pa[G.class_of(G.identity())] == 0);
    CHECK(pa[G.class_of(elem(G, {{0, 1, 2}}))] == 2);
    CHECK(pa[G.class_of(elem(G, {{0, 1}}))] == -1);
    CHECK(augmentation(x) == 1);
  }
  SUBCASE("zero element") {
    for (const Int& v : partial_augmentations(G, zero())) CHECK(v == 0);
  }
}

TEST_CASE("phi embedding") {
  Built s3 = groups::build_symmetric(3);
  const FiniteGroup& G = s3.group;
  const Subgroup A3 = groups::subgroup_generate(G, {elem(G, {{0, 1, 2}})});
  const std::vector<int> transversal{G.identity(), elem(G, {{0, 1}})};

  SUBCASE("x = (012): diagonal with conjugate entries") {
    Matrix M = phi_embed(G, single(elem(G, {{0, 1, 2}})), A3, transversal);
    REQUIRE(M.k == 2);
    CHECK(M.at(0, 0) == single(elem(G, {{0, 1, 2}})));
    CHECK(M.at(1, 1) == single(elem(G, {{0, 2, 1}})));
    CHECK(M.at(0, 1).empty());
    CHECK(M.at(1, 0).empty());
    Element tr = mat_trace(M);
    CHECK(coeff(tr, elem(G, {{0, 1, 2}})) == 1);
  }
  SUBCASE("identity maps to the identity matrix") {
    Matrix M = phi_embed(G, single(G.identity()), A3, transversal);
    CHECK(M.at(0, 0) == single(G.identity()));
    CHECK(M.at(1, 1) == single(G.identity()));
    CHECK(M.at(0, 1).empty());
    CHECK(M.at(1, 0).empty());
  }
  SUBCASE("x = (01): off-diagonal, trace zero") {
    Matrix M = phi_embed(G, single(elem(G, {{0, 1}})), A3, transversal);
    CHECK(M.at(0, 0).empty());
    CHECK(M.at(1, 1).empty());
    CHECK_FALSE(M.at(0, 1).empty());
    CHECK(mat_trace(M).empty());
  }
  SUBCASE("ring homomorphism on random elements") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      Element x = random_element(G, rng);
      Element y = random_element(G, rng);
      Matrix lhs = phi_embed(G, mul(G, x, y), A3, transversal);
      Matrix rhs = mat_mul(G, phi_embed(G, x, A3, transversal),
                           phi_embed(G, y, A3, transversal));
      for (int i = 0; i < lhs.k; ++i)
        for (int j = 0; j < lhs.k; ++j) CHECK(lhs.at(i, j) == rhs.at(i, j));
    }
  }
  SUBCASE("invalid transversals rejected") {
    CHECK_THROWS_AS(phi_embed(G, zero(), A3, {G.identity()}), Error);
    CHECK_THROWS_AS(
        phi_embed(G, zero(), A3, {G.identity(), elem(G, {{0, 1, 2}})}), Error);
  }
}

TEST_CASE("trace formula") {
  std::mt19937_64 rng(11);
  for (const auto& inst : corpus::standard_instances()) {
    for (int trial = 0; trial < 25; ++trial) {
      Element x = random_element(inst.G, rng);
      auto witness = trace_formula_check(inst.G, x, inst.N);
      CHECK_FALSE(witness.has_value());
    }
  }
  SUBCASE("support outside N only: both sides vanish") {
    Built s3 = groups::build_symmetric(3);
    const FiniteGroup& G = s3.group;
    const Subgroup A3 = groups::subgroup_generate(G, {elem(G, {{0, 1, 2}})});
    Element x = single(elem(G, {{0, 1}}));
    add_term(x, elem(G, {{0, 2}}), 5);
    CHECK_FALSE(trace_formula_check(G, x, A3).has_value());
  }
}

TEST_CASE("trace partial augmentations are transversal-independent") {
  std::mt19937_64 rng(13);
  for (const auto& inst : corpus::standard_instances()) {
    const auto t1 = canonical_transversal(inst.G, inst.N);
    const auto t2 = maximal_transversal(inst.G, inst.N);
    const auto n_classes = groups::subgroup_classes(inst.G, inst.N);
    for (int trial = 0; trial < 5; ++trial) {
      Element x = random_element(inst.G, rng);
      Element tr1 = mat_trace(phi_embed(inst.G, x, inst.N, t1));
      Element tr2 = mat_trace(phi_embed(inst.G, x, inst.N, t2));
      for (const auto& cls : n_classes) {
        Int pa1 = 0, pa2 = 0;
        for (int m : cls.members) {
          pa1 += coeff(tr1, m);
          pa2 += coeff(tr2, m);
        }
        CHECK(pa1 == pa2);
      }
    }
  }
}

TEST_CASE("double action values") {
  Built s3 = groups::build_symmetric(3);
  const FiniteGroup& G = s3.group;
  const int r = elem(G, {{0, 1, 2}});
  SUBCASE("spec points") {
    CHECK(double_action_value(G, single(r), 3, 1, r) == 3);
    CHECK(double_action_value(G, single(r), 3, 1, elem(G, {{0, 1}})) == 0);
    CHECK(double_action_value(G, single(r), 3, 0, G.identity()) == 6);
  }
  SUBCASE("trace recomputation agrees on random ring elements") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
      Element v = random_element(G, rng, 2);
      for (int i = 0; i < 3; ++i)
        for (const auto& cls : G.classes())
          CHECK_NOTHROW(double_action_value(G, v, 3, i, cls.rep));
    }
  }
  SUBCASE("Berman-Higman sanity: non-trivial powers have no 1-coefficient") {
    for (const auto& inst : corpus::standard_instances()) {
      for (const auto& cls : groups::subgroup_classes(inst.G, inst.N)) {
        const int n0 = cls.rep;
        if (n0 == inst.G.identity()) continue;
        const int m = inst.G.element_order(n0);
        PowerCache cache(inst.G, single(n0));
        for (int i = 1; i < m; ++i) {
          const auto pa = partial_augmentations(inst.G, cache.power(i));
          CHECK(pa[inst.G.class_of(inst.G.identity())] == 0);
        }
      }
    }
  }
}

TEST_CASE("induced permutation character values") {
  Built s3 = groups::build_symmetric(3);
  const FiniteGroup& G = s3.group;
  const int r = elem(G, {{0, 1, 2}});
  const CyclicPair gen{3, 1, r};
  SUBCASE("degree at the identity pair") {
    CHECK(induced_perm_character_value(G, 3, gen, {3, 0, G.identity()}) == 6);
  }
  SUBCASE("value 3 at (u, r)") {
    CHECK(induced_perm_character_value(G, 3, gen, {3, 1, r}) == 3);
  }
  SUBCASE("zero off the power class") {
    CHECK(induced_perm_character_value(G, 3, gen, {3, 1, elem(G, {{0, 1}})}) ==
          0);
  }
}

TEST_CASE("trivial-unit decomposition of the double-action character") {
  // for v = n0 in N: chi(u^i, g) = ind_{[n0]}^{UxG}(1)(u^i, g) pointwise
  for (const auto& inst : corpus::standard_instances()) {
    for (const auto& cls : groups::subgroup_classes(inst.G, inst.N)) {
      const int n0 = cls.rep;
      const int m = inst.G.element_order(n0);
      PowerCache cache(inst.G, single(n0));
      const CyclicPair gen{m, 1, n0};
      for (int i = 0; i < m; ++i)
        for (const auto& gcls : inst.G.classes()) {
          const Int lhs = double_action_value(inst.G, cache, m, i, gcls.rep);
          const Int rhs = induced_perm_character_value(inst.G, m, gen,
                                                       {m, i, gcls.rep});
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("a coefficients") {
  Built s3 = groups::build_symmetric(3);
  const FiniteGroup& G = s3.group;
  const int r = elem(G, {{0, 1, 2}});
  SUBCASE("trivial character: 1") {
    CHECK(a_coefficient(G, 3, r, trivial_character(3, G.classes().size())) ==
          1);
  }
  SUBCASE("regular character at |n| = m: |G|") {
    CHECK(a_coefficient(G, 3, r, regular_character(G, 3)) == 6);
  }
  SUBCASE("induced character: at least 1 on its anchor") {
    const ClassFunction ind = induced_character_table(G, 3, r);
    CHECK(a_coefficient(G, 3, r, ind) >= 1);
  }
  SUBCASE("non-character tables rejected") {
    ClassFunction junk;
    junk.period = 3;
    junk.values.assign(3, std::vector<Rat>(G.classes().size(), Rat(0)));
    junk.values[1][G.class_of(r)] = 1;  // average 1/3: not an integer
    CHECK_THROWS_AS(a_coefficient(G, 3, r, junk), Error);
  }
  SUBCASE("order must divide m") {
    CHECK_THROWS_AS(
        a_coefficient(G, 4, r, trivial_character(4, G.classes().size())),
        Error);
  }
}

TEST_CASE("power cache") {
  Built c = groups::build_cyclic(6);
  int g = -1;
  for (std::size_t i = 0; i < c.group.order(); ++i)
    if (c.group.element_order(static_cast<int>(i)) == 6) {
      g = static_cast<int>(i);
      break;
    }
  PowerCache cache(c.group, single(g));
  CHECK(cache.power(0) == single(c.group.identity()));
  CHECK(cache.power(6) == single(c.group.identity()));
  CHECK(cache.power(4) == single(c.group.power(g, 4)));
}
