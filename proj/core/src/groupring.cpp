#include "cw/groupring.hpp"

#include <algorithm>

namespace cw::groupring {

using groups::FiniteGroup;
using groups::Subgroup;

Element single(int g, Int coeff) {
  Element x;
  if (coeff != 0) x[g] = std::move(coeff);
  return x;
}

Element zero() { return {}; }

Int coeff(const Element& x, int g) {
  auto it = x.find(g);
  return it == x.end() ? Int(0) : it->second;
}

void add_term(Element& x, int g, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = x.emplace(g, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

Element add(const Element& x, const Element& y) {
  Element r = x;
  for (const auto& [g, c] : y) add_term(r, g, c);
  return r;
}

Element sub(const Element& x, const Element& y) {
  Element r = x;
  for (const auto& [g, c] : y) add_term(r, g, -c);
  return r;
}

Element mul(const FiniteGroup& G, const Element& x, const Element& y) {
  Element r;
  for (const auto& [g, cg] : x)
    for (const auto& [h, ch] : y) add_term(r, G.mult(g, h), cg * ch);
  return r;
}

Int augmentation(const Element& x) {
  Int s = 0;
  for (const auto& [g, c] : x) s += c;
  return s;
}

std::vector<Int> partial_augmentations(const FiniteGroup& G,
                                       const Element& x) {
  std::vector<Int> pa(G.classes().size(), 0);
  for (const auto& [g, c] : x) pa[G.class_of(g)] += c;
  return pa;
}

PowerCache::PowerCache(const FiniteGroup& G, Element base) : G_(G) {
  pows_.push_back(single(G.identity()));
  pows_.push_back(std::move(base));
}

const Element& PowerCache::power(int i) {
  require(i >= 0, Errc::Internal, "negative group-ring power");
  while (static_cast<int>(pows_.size()) <= i)
    pows_.push_back(mul(G_, pows_.back(), pows_[1]));
  return pows_[i];
}

std::vector<int> canonical_transversal(const FiniteGroup& G,
                                       const Subgroup& N) {
  std::vector<bool> seen(G.order(), false);
  std::vector<int> reps;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    reps.push_back(static_cast<int>(g));
    for (int n : N) seen[G.mult(n, static_cast<int>(g))] = true;  // coset Ng
  }
  return reps;
}

Matrix phi_embed(const FiniteGroup& G, const Element& x, const Subgroup& N,
                 const std::vector<int>& transversal) {
  const int k = static_cast<int>(G.order() / N.size());
  require(static_cast<int>(transversal.size()) == k, Errc::InvalidTransversal,
          "transversal size must be [G:N]");
  // each right coset Ng hit exactly once
  {
    std::vector<bool> hit(G.order(), false);
    for (int t : transversal) {
      require(!hit[t], Errc::InvalidTransversal, "transversal repeats a coset");
      for (int n : N) hit[G.mult(n, t)] = true;
    }
  }
  Matrix M;
  M.k = k;
  M.transversal = transversal;
  M.entries.assign(static_cast<std::size_t>(k) * k, Element{});
  // entry (i,j) collects x_{t_i^{-1} n t_j} n over n in N
  for (int i = 0; i < k; ++i) {
    const int ti_inv = G.inverse(transversal[i]);
    for (int j = 0; j < k; ++j) {
      Element e;
      for (int n : N) {
        const int g = G.mult(G.mult(ti_inv, n), transversal[j]);
        Int c = coeff(x, g);
        if (c != 0) e[n] = std::move(c);
      }
      M.at(i, j) = std::move(e);
    }
  }
  return M;
}

Matrix mat_mul(const FiniteGroup& G, const Matrix& a, const Matrix& b) {
  require(a.k == b.k, Errc::Internal, "matrix size mismatch");
  Matrix r;
  r.k = a.k;
  r.transversal = a.transversal;
  r.entries.assign(static_cast<std::size_t>(a.k) * a.k, Element{});
  for (int i = 0; i < a.k; ++i)
    for (int j = 0; j < a.k; ++j) {
      Element acc;
      for (int l = 0; l < a.k; ++l)
        acc = add(acc, mul(G, a.at(i, l), b.at(l, j)));
      r.at(i, j) = std::move(acc);
    }
  return r;
}

Element mat_trace(const Matrix& a) {
  Element t;
  for (int i = 0; i < a.k; ++i) t = add(t, a.at(i, i));
  return t;
}

std::optional<TraceFormulaWitness> trace_formula_check(const FiniteGroup& G,
                                                       const Element& x,
                                                       const Subgroup& N) {
  const auto transversal = canonical_transversal(G, N);
  const Element tr = mat_trace(phi_embed(G, x, N, transversal));
  const auto n_classes = groups::subgroup_classes(G, N);
  const auto pa_x = partial_augmentations(G, x);
  for (const auto& cls : n_classes) {
    Int lhs = 0;
    for (int m : cls.members) lhs += coeff(tr, m);
    const std::size_t cg = G.classes()[G.class_of(cls.rep)].centralizer_order;
    const Int rhs = Int(static_cast<long>(cg / cls.centralizer_order)) *
                    pa_x[G.class_of(cls.rep)];
    if (lhs != rhs) return TraceFormulaWitness{cls.rep, lhs, rhs};
  }
  return std::nullopt;
}

Int double_action_value(const FiniteGroup& G, const Element& v, int m, int i,
                        int g) {
  PowerCache cache(G, v);
  return double_action_value(G, cache, m, i, g);
}

Int double_action_value(const FiniteGroup& G, PowerCache& v_powers, int m,
                        int i, int g) {
  require(0 <= i && i < m, Errc::OrderMismatch, "exponent out of range");
  const Element& vi = v_powers.power(i);

  const Int direct =
      Int(static_cast<long>(G.classes()[G.class_of(g)].centralizer_order)) *
      partial_augmentations(G, vi)[G.class_of(g)];

  // trace of y |-> v^i y g^{-1} over the basis G
  Int trace = 0;
  const int ginv = G.inverse(g);
  for (std::size_t y = 0; y < G.order(); ++y) {
    const int z = G.mult(static_cast<int>(y), ginv);
    for (const auto& [w, c] : vi)
      if (G.mult(w, z) == static_cast<int>(y)) trace += c;
  }
  require(direct == trace, Errc::MismatchError,
          "double-action value disagrees with trace recomputation");
  return direct;
}

Int induced_perm_character_value(const FiniteGroup& G, int m,
                                 const CyclicPair& h, const CyclicPair& at) {
  require(m % G.element_order(h.element) == 0, Errc::OrderMismatch,
          "generator order must divide the unit order");
  // H = <(u, g)> = {(t mod m, g^t)}; count pairs (s, t) with
  // (s,t)^{-1} (at) (s,t) in H, then divide by |H| = m.
  const int g = h.element;
  std::vector<int> gpow(m);
  for (int t = 0; t < m; ++t) gpow[t] = G.power(g, t);
  const int target = gpow[((at.exponent % m) + m) % m];
  long fixed_pairs = 0;
  for (std::size_t t = 0; t < G.order(); ++t)
    if (G.conjugate(at.element, static_cast<int>(t)) == target)
      fixed_pairs += m;  // the U-coordinate never obstructs
  require(fixed_pairs % m == 0, Errc::Internal, "coset count not divisible");
  return Int(fixed_pairs / m);
}

ClassFunction trivial_character(int m, std::size_t num_classes) {
  ClassFunction f;
  f.period = m;
  f.values.assign(m, std::vector<Rat>(num_classes, Rat(1)));
  return f;
}

ClassFunction regular_character(const FiniteGroup& G, int m) {
  ClassFunction f;
  f.period = m;
  f.values.assign(m, std::vector<Rat>(G.classes().size(), Rat(0)));
  f.values[0][G.class_of(G.identity())] = Rat(static_cast<long>(G.order()) * m);
  return f;
}

ClassFunction induced_character_table(const FiniteGroup& G, int m, int g) {
  ClassFunction f;
  f.period = m;
  f.values.assign(m, std::vector<Rat>(G.classes().size(), Rat(0)));
  const CyclicPair gen{m, 1, g};
  for (int i = 0; i < m; ++i)
    for (std::size_t c = 0; c < G.classes().size(); ++c) {
      CyclicPair at{m, i, G.classes()[c].rep};
      f.values[i][c] = Rat(induced_perm_character_value(G, m, gen, at));
    }
  return f;
}

Rat a_coefficient(const FiniteGroup& G, int m, int n,
                  const ClassFunction& psi) {
  require(m % G.element_order(n) == 0, Errc::OrderMismatch,
          "|n| must divide the unit order");
  require(psi.period == m, Errc::OrderMismatch,
          "class-function period must equal the unit order");
  Rat s = 0;
  for (int i = 0; i < m; ++i) s += psi.at(i, G.class_of(G.power(n, i)));
  s /= m;
  s.canonicalize();
  require(is_integer(s) && sgn(s) >= 0, Errc::NonIntegralWarning,
          "a(n, psi) = " + rat_to_string(s) +
              " is not a non-negative integer; psi is not a character");
  return s;
}

}  // namespace cw::groupring
