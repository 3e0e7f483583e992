#include "cw/constraints.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cw/abelian.hpp"

namespace cw::constraints {

using groups::FiniteGroup;
using groups::Subgroup;

int Candidate::var_of_class(int class_id) const {
  auto it = std::lower_bound(variable_classes.begin(), variable_classes.end(),
                             class_id);
  if (it == variable_classes.end() || *it != class_id) return -1;
  return static_cast<int>(it - variable_classes.begin());
}

std::vector<Candidate> variable_classes(const FiniteGroup& G,
                                        const Subgroup& N, int m) {
  require(groups::is_nilpotent(G, N), Errc::NotNilpotent,
          "unit candidates require a nilpotent normal subgroup");
  std::vector<Candidate> out;
  if (groups::subgroup_exponent(G, N) % m != 0) return out;
  for (const auto& local : groups::local_classes(G, N)) {
    const int rep = G.classes()[local.class_ids.front()].rep;
    if (G.element_order(rep) != m) continue;
    Candidate cand;
    cand.G = &G;
    cand.N = N;
    cand.order_m = m;
    cand.anchor = rep;
    cand.variable_classes = local.class_ids;
    out.push_back(std::move(cand));
  }
  return out;
}

PrimeContext prime_context(const Candidate& cand, long p) {
  const FiniteGroup& G = *cand.G;
  PrimeContext ctx;
  ctx.p = p;
  auto [xp, xpp] = G.p_parts(cand.anchor, p);
  ctx.xhat = xp;
  ctx.anchor_pprime = xpp;
  ctx.m_pprime = G.element_order(xpp);
  std::vector<long> pi_prime;
  for (long q : groups::subgroup_primes(G, cand.N))
    if (q != p) pi_prime.push_back(q);
  ctx.n_pprime = groups::hall_subgroup(G, cand.N, pi_prime);
  ctx.np_classes = groups::subgroup_classes(G, ctx.n_pprime);
  return ctx;
}

namespace {

/// g lies in the local class of h (all p-part G-classes agree).
bool locally_conjugate(const FiniteGroup& G, int g, int h,
                       const std::vector<long>& primes) {
  for (long p : primes)
    if (G.class_of(G.p_parts(g, p).first) !=
        G.class_of(G.p_parts(h, p).first))
      return false;
  return true;
}

Row make_row(std::size_t nvars, Rel rel, Int rhs, std::string prov) {
  Row r;
  r.coeffs.assign(nvars, 0);
  r.rel = rel;
  r.rhs = std::move(rhs);
  r.provenance = std::move(prov);
  return r;
}

}  // namespace

std::vector<Row> cw_rows_for_prime(const Candidate& cand, long p, int xhat,
                                   bool force_general_path) {
  const FiniteGroup& G = *cand.G;
  const PrimeContext ctx = prime_context(cand, p);
  const Subgroup& Np = ctx.n_pprime;
  const bool abelian_path = groups::is_abelian(G, Np) && !force_general_path;

  // The general form sums once per N-class of N_{p'} inside the coset
  // (classes and cosets are compatible: commutators lie in every kernel, so
  // cosets are stable under N-conjugation).
  std::vector<Row> rows;
  const auto kernels = groups::cyclic_quotient_kernels(G, Np);
  for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
    const Subgroup& K = kernels[ki];
    // distinct cosets aK, keyed by their minimal element
    std::set<int> seen;
    for (int a : Np) {
      std::vector<int> coset;
      for (int k : K) coset.push_back(G.mult(a, k));
      std::sort(coset.begin(), coset.end());
      if (!seen.insert(coset.front()).second) continue;

      const char* tag = abelian_path ? "cw_abelian" : "cw_general";
      Row row = make_row(cand.num_vars(), Rel::GEQ, 0,
                         std::string(tag) + "(p=" + std::to_string(p) +
                             ",K=" + std::to_string(ki) +
                             ",coset=" + std::to_string(coset.front()) + ")");
      if (abelian_path) {
        for (int m_el : coset) {
          const int prod = G.mult(m_el, xhat);
          const int var = cand.var_of_class(G.class_of(prod));
          if (var < 0) continue;
          row.coeffs[var] += Int(static_cast<long>(
              G.classes()[G.class_of(prod)].centralizer_order));
        }
      } else {
        for (const auto& cls : ctx.np_classes) {
          const int m_el = cls.rep;
          if (!std::binary_search(coset.begin(), coset.end(), m_el)) continue;
          const int prod = G.mult(m_el, xhat);
          const int var = cand.var_of_class(G.class_of(prod));
          if (var < 0) continue;
          const std::size_t cg =
              G.classes()[G.class_of(prod)].centralizer_order;
          const std::size_t cn =
              groups::centralizer_order_in(G, cand.N, prod);
          row.coeffs[var] += Int(static_cast<long>(cg / cn));
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<Row> normalize_rows(std::vector<Row> rows) {
  std::vector<Row> cleaned;
  for (auto& row : rows) {
    bool all_zero = true;
    Int g = 0;
    for (const Int& c : row.coeffs) {
      if (c != 0) all_zero = false;
      g = gcd(g, c);
    }
    if (all_zero) continue;
    if (g > 1 && row.rhs % g == 0) {
      for (Int& c : row.coeffs) c /= g;
      row.rhs /= g;
    }
    cleaned.push_back(std::move(row));
  }
  // identical (coeffs, rel): keep the strongest rhs, first provenance
  std::map<std::pair<std::vector<Int>, int>, std::size_t> index;
  std::vector<Row> out;
  for (auto& row : cleaned) {
    auto key = std::pair(row.coeffs, static_cast<int>(row.rel));
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), out.size());
      out.push_back(std::move(row));
    } else if (row.rel == Rel::GEQ && row.rhs > out[it->second].rhs) {
      out[it->second].rhs = row.rhs;
    } else if (row.rel == Rel::EQ && row.rhs != out[it->second].rhs) {
      out.push_back(std::move(row));  // contradictory equalities stay visible
    }
  }
  return out;
}

System build_system(const Candidate& cand, const BuildOptions& opts) {
  System sys;
  sys.candidate = cand;

  Row aug = make_row(cand.num_vars(), Rel::EQ, 1, "augmentation");
  for (auto& c : aug.coeffs) c = 1;
  sys.rows.push_back(std::move(aug));

  const FiniteGroup& G = *cand.G;
  for (long p : groups::subgroup_primes(G, cand.N)) {
    const int xhat = G.p_parts(cand.anchor, p).first;
    auto rows = cw_rows_for_prime(cand, p, xhat, opts.force_general_path);
    for (auto& r : rows) sys.rows.push_back(std::move(r));
  }
  sys.rows = normalize_rows(std::move(sys.rows));
  return sys;
}

Row theorem_inequality_row(const Candidate& cand, long p,
                           const groupring::ClassFunction& psi) {
  const FiniteGroup& G = *cand.G;
  const PrimeContext ctx = prime_context(cand, p);
  require(psi.period == ctx.m_pprime, Errc::OrderMismatch,
          "psi period must equal the order of the p'-part of the unit");
  for (const auto& rowvals : psi.values)
    require(rowvals.size() == ctx.np_classes.size(), Errc::OrderMismatch,
            "psi table width must match the N_{p'} class count");

  std::map<int, int> np_class_of;
  for (std::size_t c = 0; c < ctx.np_classes.size(); ++c)
    for (int m : ctx.np_classes[c].members)
      np_class_of[m] = static_cast<int>(c);

  const auto primes = prime_divisors(G.exponent());
  Row row = make_row(cand.num_vars(), Rel::GEQ, 0,
                     "theorem_psi(p=" + std::to_string(p) + ")");
  for (const auto& cls : ctx.np_classes) {
    const int n = cls.rep;
    if (!locally_conjugate(G, n, ctx.anchor_pprime, primes)) continue;
    // <1, res_{[n]} psi> = (1/m') sum_i psi(u^i, n^i)
    Rat inner = 0;
    for (int i = 0; i < ctx.m_pprime; ++i)
      inner += psi.at(i, np_class_of.at(G.power(n, i)));
    inner /= ctx.m_pprime;
    inner.canonicalize();
    require(is_integer(inner) && sgn(inner) >= 0, Errc::NonCharacterWarning,
            "inner product " + rat_to_string(inner) +
                " is not a non-negative integer; psi is not a character");

    const int prod = G.mult(n, ctx.xhat);
    const int var = cand.var_of_class(G.class_of(prod));
    if (var < 0) continue;
    const std::size_t cg = G.classes()[G.class_of(prod)].centralizer_order;
    const std::size_t cn = groups::centralizer_order_in(G, cand.N, prod);
    row.coeffs[var] += Int(static_cast<long>(cg / cn)) * inner.get_num();
  }
  return row;
}

Row global_inequality_row(const Candidate& cand,
                          const groupring::ClassFunction& psi) {
  const FiniteGroup& G = *cand.G;
  Row row = make_row(cand.num_vars(), Rel::GEQ, 0, "global_psi");
  for (std::size_t v = 0; v < cand.variable_classes.size(); ++v) {
    const int rep = G.classes()[cand.variable_classes[v]].rep;
    Rat a;
    try {
      a = groupring::a_coefficient(G, cand.order_m, rep, psi);
    } catch (const Error& e) {
      if (e.code() == Errc::NonIntegralWarning)
        fail(Errc::NonCharacterWarning, e.what());
      throw;
    }
    row.coeffs[v] = a.get_num();
  }
  return row;
}

std::vector<Row> bound_rows(const Candidate& cand,
                            const std::vector<long>& pi) {
  const FiniteGroup& G = *cand.G;
  const Subgroup A = groups::hall_subgroup(G, cand.N, pi);
  std::vector<long> pi_prime;
  for (long q : groups::subgroup_primes(G, cand.N))
    if (std::find(pi.begin(), pi.end(), q) == pi.end()) pi_prime.push_back(q);
  const Subgroup B = groups::hall_subgroup(G, cand.N, pi_prime);

  require(A.size() > 1, Errc::HypothesisViolated,
          "the Hall pi-subgroup must be non-trivial");
  require(groups::is_abelian(G, A), Errc::HypothesisViolated,
          "the Hall pi-subgroup must be abelian");
  int noncyclic = 0;
  for (long q : pi_prime) {
    const Subgroup Bq = groups::hall_subgroup(G, cand.N, {q});
    if (!groups::is_cyclic(G, Bq)) ++noncyclic;
  }
  require(noncyclic <= 1, Errc::HypothesisViolated,
          "B may have at most one non-cyclic Sylow subgroup");

  const Int m_a = abelian::m_values_closed(groups::abelian_shape(G, A)).m_a;
  const Int a_order(static_cast<long>(A.size()));

  std::vector<Row> rows;

  // sum over a in A of |C_G(ab)| eps(ab) >= 0, one row per b in B
  {
    std::set<std::vector<Int>> seen;
    for (int b : B) {
      Row row = make_row(cand.num_vars(), Rel::GEQ, 0,
                         "bound_sum_positive(b=" + std::to_string(b) + ")");
      for (int a : A) {
        const int g = G.mult(a, b);
        const int var = cand.var_of_class(G.class_of(g));
        if (var < 0) continue;
        row.coeffs[var] +=
            Int(static_cast<long>(G.classes()[G.class_of(g)]
                                      .centralizer_order));
      }
      if (seen.insert(row.coeffs).second) rows.push_back(std::move(row));
    }
  }

  // |A||C_G(n)| eps(n) + m_A sum_a |C_G(a n_{pi'})| eps(a n_{pi'}) >= 0
  {
    std::set<std::vector<Int>> seen;
    for (int n : cand.N) {
      Row row = make_row(cand.num_vars(), Rel::GEQ, 0,
                         "bound_sumq(n=" + std::to_string(n) + ")");
      const int var_n = cand.var_of_class(G.class_of(n));
      if (var_n >= 0)
        row.coeffs[var_n] +=
            a_order * Int(static_cast<long>(
                          G.classes()[G.class_of(n)].centralizer_order));
      const int npp = G.pi_part(n, pi_prime);
      for (int a : A) {
        const int g = G.mult(a, npp);
        const int var = cand.var_of_class(G.class_of(g));
        if (var < 0) continue;
        row.coeffs[var] +=
            m_a * Int(static_cast<long>(G.classes()[G.class_of(g)]
                                            .centralizer_order));
      }
      if (seen.insert(row.coeffs).second) rows.push_back(std::move(row));
    }
  }

  // eps(n) >= ceil(-m_A [C_G(n_{pi'}):C_G(n)] / |A|)
  {
    std::set<int> seen_vars;
    for (int n : cand.N) {
      const int var = cand.var_of_class(G.class_of(n));
      if (var < 0 || !seen_vars.insert(var).second) continue;
      const int npp = G.pi_part(n, pi_prime);
      const Int idx(static_cast<long>(
          G.classes()[G.class_of(npp)].centralizer_order /
          G.classes()[G.class_of(n)].centralizer_order));
      Rat bound = Rat(-m_a * idx) / Rat(a_order);
      bound.canonicalize();
      Row row = make_row(cand.num_vars(), Rel::GEQ, ceil_rat(bound),
                         "bound_index(n=" + std::to_string(n) + ")");
      row.coeffs[var] = 1;
      rows.push_back(std::move(row));
    }
  }

  // the three families stay separate (callers normalize whole systems);
  // only all-zero rows are dropped
  std::vector<Row> out;
  for (auto& row : rows) {
    bool zero = true;
    for (const Int& c : row.coeffs)
      if (c != 0) zero = false;
    if (!zero) out.push_back(std::move(row));
  }
  return out;
}

bool row_satisfied(const Row& row, const std::vector<Int>& point) {
  Int lhs = 0;
  for (std::size_t i = 0; i < row.coeffs.size(); ++i)
    lhs += row.coeffs[i] * point[i];
  return row.rel == Rel::EQ ? lhs == row.rhs : lhs >= row.rhs;
}

bool satisfies(const System& system, const std::vector<Int>& point) {
  for (const auto& row : system.rows)
    if (!row_satisfied(row, point)) return false;
  return true;
}

}  // namespace cw::constraints
