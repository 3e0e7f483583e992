#include "cw/certify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cw/abelian.hpp"

namespace cw::certify {

using groups::FiniteGroup;
using groups::Subgroup;

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::LOCAL_SEPARATION: return "LOCAL_SEPARATION";
    case Rule::AT_MOST_ONE_NONCYCLIC: return "AT_MOST_ONE_NONCYCLIC";
    case Rule::MAIN: return "MAIN";
    case Rule::ONE_PRIME: return "ONE_PRIME";
    case Rule::SIMPLIFIED_BOUND: return "SIMPLIFIED_BOUND";
    case Rule::WEISS_NILPOTENT: return "WEISS_NILPOTENT";
    case Rule::ZC1: return "ZC1";
    case Rule::ZC2: return "ZC2";
    case Rule::NONE: return "NONE";
  }
  return "NONE";
}

namespace {

std::string perm_string(const FiniteGroup& G, int g) {
  std::ostringstream os;
  os << "[";
  const auto& img = G.element(g).images;
  for (std::size_t i = 0; i < img.size(); ++i) os << (i ? "," : "") << img[i];
  os << "]";
  return os.str();
}

std::string primes_string(const std::vector<long>& pi) {
  std::string s;
  for (std::size_t i = 0; i < pi.size(); ++i)
    s += (i ? "," : "") + std::to_string(pi[i]);
  return s;
}

}  // namespace

Certificate local_separation(const FiniteGroup& G, const Subgroup& N) {
  for (const auto& local : groups::local_classes(G, N))
    if (local.class_ids.size() > 1) return Certificate{};
  Certificate c;
  c.rule = Rule::LOCAL_SEPARATION;
  c.witnesses["local_classes"] = std::to_string(
      groups::local_classes(G, N).size());
  return c;
}

int noncyclic_sylow_count(const FiniteGroup& G, const Subgroup& N) {
  int count = 0;
  for (long p : groups::subgroup_primes(G, N))
    if (!groups::is_cyclic(G, groups::hall_subgroup(G, N, {p}))) ++count;
  return count;
}

CentralizerScan centralizer_index_scan(const FiniteGroup& G, const Subgroup& N,
                                       const std::vector<long>& pi) {
  const Subgroup A = groups::hall_subgroup(G, N, pi);
  std::vector<long> pi_prime;
  for (long q : groups::subgroup_primes(G, N))
    if (std::find(pi.begin(), pi.end(), q) == pi.end()) pi_prime.push_back(q);
  const Subgroup B = groups::hall_subgroup(G, N, pi_prime);

  auto cent = [&](int g) {
    return static_cast<long>(G.classes()[G.class_of(g)].centralizer_order);
  };

  CentralizerScan scan;
  scan.witness_a = A.front();
  scan.witness_b = B.front();
  for (int a : A)
    for (int b : B) {
      const long idx = cent(b) / cent(G.mult(a, b));
      if (idx > scan.max_index) {
        scan.max_index = idx;
        scan.witness_a = a;
        scan.witness_b = b;
      }
    }

  // conjugation invariance: the scan over class representatives agrees
  long rep_max = 1;
  std::set<int> classes;
  for (int n : N) classes.insert(G.class_of(n));
  for (int cid : classes) {
    const int n = G.classes()[cid].rep;
    const int b = G.pi_part(n, pi_prime);
    rep_max = std::max(rep_max, cent(b) / cent(n));
  }
  require(rep_max == scan.max_index, Errc::MismatchError,
          "centralizer scan differs between element and class forms");
  return scan;
}

SehgalCertification certify_sehgal(const FiniteGroup& G, const Subgroup& N) {
  require(groups::is_subgroup_normal(G, N), Errc::NotNormal,
          "certificates require a normal subgroup");
  require(groups::is_nilpotent(G, N), Errc::NotNilpotent,
          "certificates require a nilpotent subgroup");
  SehgalCertification out;

  if (Certificate c = local_separation(G, N); c.rule != Rule::NONE)
    out.fired.push_back(std::move(c));

  const auto primes = groups::subgroup_primes(G, N);
  const int noncyclic = noncyclic_sylow_count(G, N);
  if (noncyclic <= 1) {
    Certificate c;
    c.rule = Rule::AT_MOST_ONE_NONCYCLIC;
    c.witnesses["noncyclic_sylows"] = std::to_string(noncyclic);
    if (primes.size() == 1)
      c.witnesses["p_group"] = std::to_string(primes.front());
    out.fired.push_back(std::move(c));
  }

  // splits N = A x B over prime subsets with N_pi abelian
  Certificate main_cert, one_prime_cert, simplified_cert;
  std::string main_splits;
  for (std::size_t mask = 1; mask < (std::size_t{1} << primes.size());
       ++mask) {
    std::vector<long> pi;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if ((mask >> i) & 1) pi.push_back(primes[i]);
    const Subgroup A = groups::hall_subgroup(G, N, pi);
    if (!groups::is_abelian(G, A)) continue;
    std::vector<long> pi_prime;
    for (long q : primes)
      if (std::find(pi.begin(), pi.end(), q) == pi.end())
        pi_prime.push_back(q);
    int b_noncyclic = 0;
    for (long q : pi_prime)
      if (!groups::is_cyclic(G, groups::hall_subgroup(G, N, {q})))
        ++b_noncyclic;
    if (b_noncyclic > 1) continue;

    const abelian::Shape shape = groups::abelian_shape(G, A);
    const abelian::NValues nv = abelian::n_values(shape);
    const CentralizerScan scan = centralizer_index_scan(G, N, pi);

    const bool main_fires =
        !nv.finite || Rat(scan.max_index) < nv.n_a;
    if (main_fires) {
      if (main_cert.rule == Rule::NONE) {
        main_cert.rule = Rule::MAIN;
        main_cert.witnesses["split_pi"] = primes_string(pi);
        main_cert.witnesses["A"] = shape.to_string();
        main_cert.witnesses["n_A"] =
            nv.finite ? rat_to_string(nv.n_a) : "inf";
        main_cert.witnesses["max_index"] = std::to_string(scan.max_index);
        main_cert.witnesses["witness_a"] = perm_string(G, scan.witness_a);
        main_cert.witnesses["witness_b"] = perm_string(G, scan.witness_b);
      }
      main_splits += (main_splits.empty() ? "" : ";") + primes_string(pi);
    }

    if (one_prime_cert.rule == Rule::NONE && pi.size() == 1 &&
        scan.max_index < pi.front()) {
      one_prime_cert.rule = Rule::ONE_PRIME;
      one_prime_cert.witnesses["p"] = std::to_string(pi.front());
      one_prime_cert.witnesses["max_index"] = std::to_string(scan.max_index);
    }

    bool two_generated = true;
    for (long q : pi)
      if (shape.k(q) > 2) two_generated = false;
    if (simplified_cert.rule == Rule::NONE && two_generated) {
      const long p0 = pi.front();
      const long k = static_cast<long>(pi.size());
      if (Rat(scan.max_index) < Rat(p0) / Rat(k)) {
        simplified_cert.rule = Rule::SIMPLIFIED_BOUND;
        simplified_cert.witnesses["p"] = std::to_string(p0);
        simplified_cert.witnesses["k"] = std::to_string(k);
        simplified_cert.witnesses["max_index"] =
            std::to_string(scan.max_index);
      }
    }
  }
  if (main_cert.rule != Rule::NONE) {
    main_cert.witnesses["all_splits"] = main_splits;
    out.fired.push_back(std::move(main_cert));
  }
  if (one_prime_cert.rule != Rule::NONE)
    out.fired.push_back(std::move(one_prime_cert));
  if (simplified_cert.rule != Rule::NONE)
    out.fired.push_back(std::move(simplified_cert));
  return out;
}

namespace {

/// Greedy small generating set, for cheap pairwise joins.
std::vector<int> small_generators(const FiniteGroup& G, const Subgroup& S) {
  std::vector<int> gens;
  Subgroup span{G.identity()};
  for (int g : S) {
    if (groups::subgroup_contains(span, g)) continue;
    gens.push_back(g);
    span = groups::subgroup_generate(G, gens);
    if (span.size() == S.size()) break;
  }
  return gens;
}

}  // namespace

std::vector<Subgroup> normal_subgroups(const FiniteGroup& G) {
  std::set<Subgroup> found;
  std::vector<Subgroup> list;
  std::vector<std::vector<int>> gens_of;
  auto add = [&](Subgroup s) {
    if (found.insert(s).second) {
      gens_of.push_back(small_generators(G, s));
      list.push_back(std::move(s));
    }
  };
  add(Subgroup{G.identity()});
  for (const auto& cls : G.classes())
    add(groups::subgroup_generate(G, cls.members));
  // close under pairwise joins; every normal subgroup is a join of
  // single-class normal closures
  for (std::size_t i = 1; i < list.size(); ++i) {
    require(list.size() <= 4096, Errc::OrderCapExceeded,
            "normal subgroup lattice too large");
    for (std::size_t j = 0; j < i; ++j) {
      if (list[j].size() % list[i].size() == 0 ||
          list[i].size() % list[j].size() == 0) {
        // quick containment test before generating
        const Subgroup& small = list[i].size() < list[j].size() ? list[i]
                                                                : list[j];
        const Subgroup& big = list[i].size() < list[j].size() ? list[j]
                                                              : list[i];
        bool contained = true;
        for (int g : small)
          if (!groups::subgroup_contains(big, g)) {
            contained = false;
            break;
          }
        if (contained) continue;
      }
      std::vector<int> gens = gens_of[i];
      gens.insert(gens.end(), gens_of[j].begin(), gens_of[j].end());
      add(groups::subgroup_generate(G, gens));
    }
  }
  std::vector<Subgroup> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return std::pair(a.size(), a) < std::pair(b.size(), b);
  });
  return out;
}

Certificate certify_zc(const FiniteGroup& G) {
  if (groups::is_nilpotent(G, whole_group(G))) {
    Certificate c;
    c.rule = Rule::WEISS_NILPOTENT;
    c.witnesses["order"] = std::to_string(G.order());
    return c;
  }

  std::vector<Subgroup> nilpotent_normals;
  for (const auto& N : normal_subgroups(G))
    if (groups::is_nilpotent(G, N)) nilpotent_normals.push_back(N);

  for (const auto& N : nilpotent_normals) {
    const std::size_t index = G.order() / N.size();
    if (prime_divisors(static_cast<long>(index)).size() != 1 ||
        factorize(static_cast<long>(index)).front().second != 1)
      continue;  // index not prime
    if (noncyclic_sylow_count(G, N) <= 1) {
      Certificate c;
      c.rule = Rule::ZC1;
      c.witnesses["index"] = std::to_string(index);
      c.witnesses["N"] = groups::subgroup_name(G, N);
      c.witnesses["N_order"] = std::to_string(N.size());
      c.witnesses["noncyclic_sylows"] =
          std::to_string(noncyclic_sylow_count(G, N));
      return c;
    }
  }

  for (const auto& N : nilpotent_normals) {
    const std::size_t index = G.order() / N.size();
    const auto fac = factorize(static_cast<long>(index));
    if (fac.size() != 1 || fac.front().second != 1) continue;
    const long q = fac.front().first;
    for (long p : groups::subgroup_primes(G, N)) {
      if (q >= p) continue;
      const Subgroup A = groups::hall_subgroup(G, N, {p});
      if (!groups::is_abelian(G, A)) continue;
      int b_noncyclic = 0;
      for (long r : groups::subgroup_primes(G, N))
        if (r != p && !groups::is_cyclic(G, groups::hall_subgroup(G, N, {r})))
          ++b_noncyclic;
      if (b_noncyclic > 1) continue;
      Certificate c;
      c.rule = Rule::ZC2;
      c.witnesses["p"] = std::to_string(p);
      c.witnesses["q"] = std::to_string(q);
      c.witnesses["N"] = groups::subgroup_name(G, N);
      c.witnesses["N_order"] = std::to_string(N.size());
      return c;
    }
  }
  return Certificate{};
}

}  // namespace cw::certify
