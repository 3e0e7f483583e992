#include "cw/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cw/numeric.hpp"

namespace cw::groups {

// ---- Permutation -----------------------------------------------------------

Permutation Permutation::identity(int degree) {
  Permutation p;
  p.images.resize(degree);
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

Permutation Permutation::then(const Permutation& next) const {
  Permutation r;
  r.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    r.images[i] = next.images[images[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    r.images[images[i]] = static_cast<int>(i);
  return r;
}

bool Permutation::is_valid() const {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 0 || v >= static_cast<int>(images.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation Permutation::from_cycles(
    int degree, const std::vector<std::vector<int>>& cycles) {
  Permutation p = identity(degree);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i)
      p.images[c[i]] = c[(i + 1) % c.size()];
  }
  require(p.is_valid(), Errc::InvalidPermutation, "cycles overlap");
  return p;
}

// ---- FiniteGroup ------------------------------------------------------------

std::string FiniteGroup::key_of(const Permutation& p) {
  std::string k;
  k.reserve(p.images.size() * sizeof(int));
  for (int v : p.images)
    k.append(reinterpret_cast<const char*>(&v), sizeof(int));
  return k;
}

FiniteGroup FiniteGroup::generate(int degree,
                                  std::vector<Permutation> generators,
                                  std::size_t order_cap) {
  require(degree >= 1, Errc::InvalidPermutation, "degree must be positive");
  for (const auto& g : generators) {
    require(g.degree() == degree && g.is_valid(), Errc::InvalidPermutation,
            "generator is not a permutation of the stated degree");
  }

  FiniteGroup G;
  G.degree_ = degree;
  G.generators_ = generators;

  std::set<std::vector<int>> seen;
  std::vector<Permutation> queue{Permutation::identity(degree)};
  seen.insert(queue[0].images);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Permutation cur = queue[head];
    for (const auto& g : generators) {
      Permutation nxt = cur.then(g);
      if (seen.insert(nxt.images).second) {
        require(seen.size() <= order_cap, Errc::OrderCapExceeded,
                "group order exceeds cap " + std::to_string(order_cap));
        queue.push_back(std::move(nxt));
      }
    }
  }

  G.elements_.assign(queue.begin(), queue.end());
  std::sort(G.elements_.begin(), G.elements_.end());
  G.build_tables();
  return G;
}

void FiniteGroup::build_tables() {
  const int n = static_cast<int>(elements_.size());
  index_.reserve(2 * n);
  for (int i = 0; i < n; ++i) index_[key_of(elements_[i])] = i;

  inverse_.resize(n);
  for (int i = 0; i < n; ++i) {
    auto it = index_.find(key_of(elements_[i].inverse()));
    require(it != index_.end(), Errc::Internal, "closure lacks an inverse");
    inverse_[i] = it->second;
  }

  order_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int ord = 1;
    int cur = i;
    while (cur != 0) {
      cur = mult(cur, i);
      ++ord;
    }
    order_[i] = ord;
  }

  // Conjugacy classes as orbits under generator conjugation; ascending
  // scan makes the first hit of each orbit its minimal member.
  class_of_.assign(n, -1);
  std::vector<int> gen_ids;
  for (const auto& g : generators_) gen_ids.push_back(index_of(g));
  for (int i = 0; i < n; ++i) {
    if (class_of_[i] != -1) continue;
    const int cid = static_cast<int>(classes_.size());
    ConjClass cls;
    cls.rep = i;
    cls.element_order = order_[i];
    std::vector<int> stack{i};
    class_of_[i] = cid;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      cls.members.push_back(x);
      for (int g : gen_ids) {
        int y = conjugate(x, g);
        if (class_of_[y] == -1) {
          class_of_[y] = cid;
          stack.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    std::size_t cent = 0;
    for (int h = 0; h < n; ++h)
      if (mult(h, i) == mult(i, h)) ++cent;
    cls.centralizer_order = cent;
    classes_.push_back(std::move(cls));
  }

  std::sort(classes_.begin(), classes_.end(),
            [](const ConjClass& a, const ConjClass& b) {
              return std::pair(a.element_order, a.rep) <
                     std::pair(b.element_order, b.rep);
            });
  for (int c = 0; c < static_cast<int>(classes_.size()); ++c)
    for (int m : classes_[c].members) class_of_[m] = c;
}

int FiniteGroup::index_of(const Permutation& p) const {
  auto it = index_.find(key_of(p));
  return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::mult(int a, int b) const {
  const auto& pa = elements_[a].images;
  const auto& pb = elements_[b].images;
  Permutation r;
  r.images.resize(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) r.images[i] = pb[pa[i]];
  auto it = index_.find(key_of(r));
  require(it != index_.end(), Errc::Internal, "product escaped the group");
  return it->second;
}

int FiniteGroup::conjugate(int g, int h) const {
  return mult(mult(inverse_[h], g), h);
}

int FiniteGroup::power(int a, long e) const {
  const long n = order_[a];
  e %= n;
  if (e < 0) e += n;
  int r = 0;
  int base = a;
  while (e > 0) {
    if (e & 1) r = mult(r, base);
    base = mult(base, base);
    e >>= 1;
  }
  return r;
}

long FiniteGroup::exponent() const {
  long e = 1;
  for (int o : order_) e = lcm_long(e, o);
  return e;
}

std::pair<int, int> FiniteGroup::p_parts(int g, long p) const {
  const long m = order_[g];
  const int v = valuation(m, p);
  if (v == 0) return {identity(), g};
  const long pv = power_long(p, v);
  const long mprime = m / pv;
  if (mprime == 1) return {g, identity()};
  // a = 1 mod p^v, a = 0 mod m'
  const long a = mprime * mod_inverse(mprime % pv, pv) % m;
  return {power(g, a), power(g, (1 - a % m + m) % m)};
}

int FiniteGroup::pi_part(int g, const std::vector<long>& pi) const {
  const long m = order_[g];
  long mpi = 1;
  for (long p : pi) mpi *= power_long(p, valuation(m, p));
  if (mpi == 1) return identity();
  if (mpi == m) return g;
  const long rest = m / mpi;
  const long a = rest * mod_inverse(rest % mpi, mpi) % m;
  return power(g, a);
}

// ---- subgroup machinery -----------------------------------------------------

Subgroup whole_group(const FiniteGroup& G) {
  Subgroup s(G.order());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

Subgroup subgroup_generate(const FiniteGroup& G, const std::vector<int>& gens) {
  std::set<int> seen{G.identity()};
  std::vector<int> queue{G.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int g : gens) {
      int nxt = G.mult(queue[head], g);
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  return Subgroup(seen.begin(), seen.end());
}

bool subgroup_contains(const Subgroup& S, int g) {
  return std::binary_search(S.begin(), S.end(), g);
}

bool is_subgroup_normal(const FiniteGroup& G, const Subgroup& S) {
  for (const auto& gen : G.generators()) {
    int g = G.index_of(gen);
    for (int s : S)
      if (!subgroup_contains(S, G.conjugate(s, g))) return false;
  }
  return true;
}

bool is_abelian(const FiniteGroup& G, const Subgroup& S) {
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (G.mult(S[i], S[j]) != G.mult(S[j], S[i])) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& G, const Subgroup& S) {
  for (int s : S)
    if (G.element_order(s) == static_cast<int>(S.size())) return true;
  return false;
}

long subgroup_exponent(const FiniteGroup& G, const Subgroup& S) {
  long e = 1;
  for (int s : S) e = lcm_long(e, G.element_order(s));
  return e;
}

std::vector<long> subgroup_primes(const FiniteGroup&, const Subgroup& S) {
  return prime_divisors(static_cast<long>(S.size()));
}

Subgroup centralizer(const FiniteGroup& G, const std::vector<int>& S) {
  Subgroup out;
  for (std::size_t g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int s : S) {
      if (G.mult(static_cast<int>(g), s) != G.mult(s, static_cast<int>(g))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<int>(g));
  }
  return out;
}

Subgroup centralizer_in(const FiniteGroup& G, const Subgroup& H,
                        const std::vector<int>& S) {
  Subgroup out;
  for (int g : H) {
    bool ok = true;
    for (int s : S) {
      if (G.mult(g, s) != G.mult(s, g)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return out;
}

std::size_t centralizer_order_in(const FiniteGroup& G, const Subgroup& H,
                                 int g) {
  std::size_t n = 0;
  for (int h : H)
    if (G.mult(h, g) == G.mult(g, h)) ++n;
  return n;
}

std::vector<ConjClass> subgroup_classes(const FiniteGroup& G,
                                        const Subgroup& S) {
  std::map<int, int> cls_of;
  std::vector<ConjClass> out;
  for (int rep : S) {
    if (cls_of.count(rep)) continue;
    ConjClass cls;
    cls.rep = rep;
    cls.element_order = G.element_order(rep);
    std::vector<int> stack{rep};
    cls_of[rep] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      cls.members.push_back(x);
      for (int h : S) {
        int y = G.conjugate(x, h);
        if (!cls_of.count(y)) {
          cls_of[y] = static_cast<int>(out.size());
          stack.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.centralizer_order = centralizer_order_in(G, S, rep);
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(), [](const ConjClass& a, const ConjClass& b) {
    return std::pair(a.element_order, a.rep) <
           std::pair(b.element_order, b.rep);
  });
  return out;
}

bool is_nilpotent(const FiniteGroup& G, const Subgroup& S) {
  for (long p : subgroup_primes(G, S)) {
    std::vector<int> pelts;
    for (int s : S) {
      long o = G.element_order(s);
      while (o % p == 0) o /= p;
      if (o == 1) pelts.push_back(s);
    }
    std::set<int> pset(pelts.begin(), pelts.end());
    for (int a : pelts)
      for (int b : pelts)
        if (!pset.count(G.mult(a, b))) return false;
  }
  return true;
}

Subgroup hall_subgroup(const FiniteGroup& G, const Subgroup& N,
                       const std::vector<long>& pi) {
  require(is_nilpotent(G, N), Errc::NotNilpotent,
          "Hall subgroups require a nilpotent group");
  Subgroup out;
  for (int n : N) {
    long o = G.element_order(n);
    for (long p : pi)
      while (o % p == 0) o /= p;
    if (o == 1) out.push_back(n);
  }
  // closure sanity: all pairwise products stay inside
  std::set<int> s(out.begin(), out.end());
  for (int a : out)
    for (int b : out)
      require(s.count(G.mult(a, b)) > 0, Errc::Internal,
              "Hall part is not a subgroup");
  return out;
}

std::vector<LocalClass> local_classes(const FiniteGroup& G,
                                      const Subgroup& N) {
  require(is_subgroup_normal(G, N), Errc::NotNormal,
          "local classes need a normal subgroup");
  const auto primes = prime_divisors(G.exponent());
  // key: per prime, the G-class of the p-part of the class representative
  std::map<std::vector<int>, std::vector<int>> buckets;
  std::set<int> class_ids;
  for (int n : N) class_ids.insert(G.class_of(n));
  for (int cid : class_ids) {
    const int rep = G.classes()[cid].rep;
    std::vector<int> key;
    key.reserve(primes.size());
    for (long p : primes) key.push_back(G.class_of(G.p_parts(rep, p).first));
    buckets[key].push_back(cid);
  }
  std::vector<LocalClass> out;
  for (auto& [key, ids] : buckets) {
    std::sort(ids.begin(), ids.end());
    out.push_back(LocalClass{ids});
  }
  std::sort(out.begin(), out.end(),
            [](const LocalClass& a, const LocalClass& b) {
              return a.class_ids.front() < b.class_ids.front();
            });
  return out;
}

// ---- abstract multiplication tables for quotient work ----------------------

namespace {

struct MulTable {
  int n = 0;
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;
  std::vector<long> order;
  std::vector<int> rep;  // back-map into the parent index space

  static MulTable from_subgroup(const FiniteGroup& G, const Subgroup& S) {
    MulTable T;
    T.n = static_cast<int>(S.size());
    std::map<int, int> local;
    for (int i = 0; i < T.n; ++i) local[S[i]] = i;
    T.mul.assign(T.n, std::vector<int>(T.n));
    T.inv.resize(T.n);
    T.order.resize(T.n);
    T.rep = std::vector<int>(S.begin(), S.end());
    for (int i = 0; i < T.n; ++i) {
      for (int j = 0; j < T.n; ++j) T.mul[i][j] = local.at(G.mult(S[i], S[j]));
      T.inv[i] = local.at(G.inverse(S[i]));
      T.order[i] = G.element_order(S[i]);
    }
    return T;
  }

  /// Quotient by a normal sub-table subgroup given as a sorted local-id set.
  MulTable quotient(const std::vector<int>& K) const {
    std::vector<int> coset_of(n, -1);
    std::vector<int> coset_min;
    for (int i = 0; i < n; ++i) {
      if (coset_of[i] != -1) continue;
      int cid = static_cast<int>(coset_min.size());
      for (int k : K) coset_of[mul[i][k]] = cid;
      coset_min.push_back(i);  // ascending scan: i is the coset minimum
    }
    MulTable Q;
    Q.n = static_cast<int>(coset_min.size());
    Q.mul.assign(Q.n, std::vector<int>(Q.n));
    Q.inv.resize(Q.n);
    Q.order.resize(Q.n);
    Q.rep.resize(Q.n);
    for (int a = 0; a < Q.n; ++a) {
      Q.rep[a] = coset_min[a];
      Q.inv[a] = coset_of[inv[coset_min[a]]];
      for (int b = 0; b < Q.n; ++b)
        Q.mul[a][b] = coset_of[mul[coset_min[a]][coset_min[b]]];
    }
    for (int a = 0; a < Q.n; ++a) {
      long o = 1;
      int cur = a;
      while (cur != 0) {
        cur = Q.mul[cur][a];
        ++o;
      }
      Q.order[a] = o;
    }
    return Q;
  }

  std::vector<int> cyclic_span(int g) const {
    std::vector<int> out{0};
    int cur = g;
    while (cur != 0) {
      out.push_back(cur);
      cur = mul[cur][g];
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int power(int g, long e) const {
    long o = order[g];
    e %= o;
    if (e < 0) e += o;
    int r = 0;
    for (long i = 0; i < e; ++i) r = mul[r][g];
    return r;
  }
};

/// Basis of an abelian p-group given as a table: returns local element ids
/// whose cyclic spans give a direct decomposition.
std::vector<int> abelian_p_basis(const MulTable& T, long p) {
  if (T.n == 1) return {};
  int g = 0;
  for (int i = 1; i < T.n; ++i)
    if (T.order[i] > T.order[g]) g = i;
  std::vector<int> span = T.cyclic_span(g);
  std::map<int, long> dlog;
  {
    int cur = 0;
    for (long e = 0; e < T.order[g]; ++e) {
      dlog[cur] = e;
      cur = T.mul[cur][g];
    }
  }
  MulTable Q = T.quotient(span);
  std::vector<int> basis{g};
  for (int hq : abelian_p_basis(Q, p)) {
    const long k = Q.order[hq];  // p-power order of the coset
    int h = Q.rep[hq];
    const long t = dlog.at(T.power(h, k));
    require(t % k == 0, Errc::Internal, "abelian basis lift failed");
    int adjusted = T.mul[h][T.power(T.inv[g], t / k)];
    require(T.order[adjusted] == k, Errc::Internal,
            "abelian basis lift has wrong order");
    basis.push_back(adjusted);
  }
  return basis;
}

}  // namespace

std::vector<std::pair<int, long>> abelian_basis(const FiniteGroup& G,
                                                const Subgroup& H) {
  require(is_abelian(G, H), Errc::NotAbelian, "abelian basis of a non-abelian subgroup");
  std::vector<std::pair<int, long>> basis;
  for (long p : subgroup_primes(G, H)) {
    Subgroup Hp;
    for (int h : H) {
      long o = G.element_order(h);
      while (o % p == 0) o /= p;
      if (o == 1) Hp.push_back(h);
    }
    MulTable T = MulTable::from_subgroup(G, Hp);
    for (int b : abelian_p_basis(T, p))
      basis.emplace_back(T.rep[b], T.order[b]);
  }
  std::sort(basis.begin(), basis.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return basis;
}

abelian::Shape abelian_shape(const FiniteGroup& G, const Subgroup& H) {
  auto basis = abelian_basis(G, H);
  std::vector<long> orders;
  for (const auto& [elem, ord] : basis) orders.push_back(ord);
  abelian::Shape shape = abelian::Shape::from_invariants(orders);
  // reconstruction sanity: same order, same exponent
  require(shape.order() == Int(static_cast<long>(H.size())), Errc::Internal,
          "abelian shape order mismatch");
  long expo = 1;
  for (long o : orders) expo = lcm_long(expo, o);
  require(expo == subgroup_exponent(G, H), Errc::Internal,
          "abelian shape exponent mismatch");
  return shape;
}

std::vector<Subgroup> cyclic_quotient_kernels(const FiniteGroup& G,
                                              const Subgroup& H) {
  // Derived subgroup from all commutators (a conjugation-closed set, so its
  // span is normal in H).
  std::vector<int> comms;
  for (int a : H)
    for (int b : H) {
      int c = G.mult(G.mult(G.inverse(a), G.inverse(b)), G.mult(a, b));
      comms.push_back(c);
    }
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  Subgroup derived = subgroup_generate(G, comms);

  MulTable T = MulTable::from_subgroup(G, H);
  std::map<int, int> local;
  for (int i = 0; i < T.n; ++i) local[T.rep[i]] = i;
  std::vector<int> derived_local;
  for (int d : derived) derived_local.push_back(local.at(d));
  std::sort(derived_local.begin(), derived_local.end());
  MulTable Q = T.quotient(derived_local);

  // coset id of every element of H
  std::vector<int> coset_of(T.n, -1);
  {
    std::vector<int> tmp(T.n, -1);
    int next = 0;
    for (int i = 0; i < T.n; ++i) {
      if (tmp[i] != -1) continue;
      for (int k : derived_local) tmp[T.mul[i][k]] = next;
      ++next;
    }
    coset_of = tmp;
  }

  // Basis of the abelian quotient, then kernels of all linear characters.
  std::vector<std::pair<int, long>> qbasis;  // (Q id, order)
  {
    MulTable QT = Q;
    for (long p : prime_divisors(Q.n == 0 ? 1 : static_cast<long>(Q.n))) {
      std::vector<int> Qp_local;
      for (int i = 0; i < QT.n; ++i) {
        long o = QT.order[i];
        while (o % p == 0) o /= p;
        if (o == 1) Qp_local.push_back(i);
      }
      // sub-table of the p-part of Q
      MulTable Tp;
      Tp.n = static_cast<int>(Qp_local.size());
      std::map<int, int> lp;
      for (int i = 0; i < Tp.n; ++i) lp[Qp_local[i]] = i;
      Tp.mul.assign(Tp.n, std::vector<int>(Tp.n));
      Tp.inv.resize(Tp.n);
      Tp.order.resize(Tp.n);
      Tp.rep.resize(Tp.n);
      for (int i = 0; i < Tp.n; ++i) {
        Tp.rep[i] = Qp_local[i];
        Tp.inv[i] = lp.at(QT.inv[Qp_local[i]]);
        Tp.order[i] = QT.order[Qp_local[i]];
        for (int j = 0; j < Tp.n; ++j)
          Tp.mul[i][j] = lp.at(QT.mul[Qp_local[i]][Qp_local[j]]);
      }
      for (int b : abelian_p_basis(Tp, p))
        qbasis.emplace_back(Tp.rep[b], Tp.order[b]);
    }
  }

  // exponent vector of each Q element w.r.t. the basis
  long expo = 1;
  for (const auto& [b, o] : qbasis) expo = lcm_long(expo, o);
  const int r = static_cast<int>(qbasis.size());
  std::vector<std::vector<long>> coords(Q.n, std::vector<long>(r, 0));
  {
    // enumerate Q as the direct sum of the basis spans
    std::vector<long> idx(r, 0);
    long total = 1;
    for (const auto& [b, o] : qbasis) total *= o;
    require(total == Q.n, Errc::Internal, "quotient basis does not span");
    for (long code = 0; code < total; ++code) {
      long rem = code;
      int elem = 0;
      std::vector<long> exps(r);
      for (int i = 0; i < r; ++i) {
        exps[i] = rem % qbasis[i].second;
        rem /= qbasis[i].second;
        elem = Q.mul[elem][Q.power(qbasis[i].first, exps[i])];
      }
      coords[elem] = exps;
    }
  }

  // kernels of the |Q| linear characters, deduplicated
  std::set<std::vector<int>> kernels_q;
  {
    std::vector<long> cvec(r, 0);
    long total = Q.n == 0 ? 1 : Q.n;
    for (long code = 0; code < total; ++code) {
      long rem = code;
      std::vector<long> c(r);
      for (int i = 0; i < r; ++i) {
        c[i] = rem % qbasis[i].second;
        rem /= qbasis[i].second;
      }
      std::vector<int> ker;
      for (int q = 0; q < Q.n; ++q) {
        long s = 0;
        for (int i = 0; i < r; ++i)
          s = (s + coords[q][i] % expo * ((expo / qbasis[i].second) * c[i] % expo)) % expo;
        if (s % expo == 0) ker.push_back(q);
      }
      kernels_q.insert(ker);
    }
    if (Q.n == 1) kernels_q.insert({0});
  }

  std::vector<Subgroup> out;
  for (const auto& kq : kernels_q) {
    std::set<int> in_kernel(kq.begin(), kq.end());
    Subgroup K;
    for (int i = 0; i < T.n; ++i)
      if (in_kernel.count(coset_of[i])) K.push_back(T.rep[i]);
    std::sort(K.begin(), K.end());
    // cyclicity check on the coset structure: some coset has full order
    {
      std::vector<int> k_local;
      for (int g : K) k_local.push_back(local.at(g));
      std::sort(k_local.begin(), k_local.end());
      MulTable QK = T.quotient(k_local);
      bool cyc = false;
      for (int i = 0; i < QK.n; ++i)
        if (QK.order[i] == QK.n) {
          cyc = true;
          break;
        }
      require(cyc, Errc::Internal, "kernel quotient is not cyclic");
    }
    out.push_back(std::move(K));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return std::pair(a.size(), a) < std::pair(b.size(), b);
  });
  return out;
}

// ---- builders ---------------------------------------------------------------

namespace {

Permutation block_cycle(int degree, int offset, int len) {
  Permutation p = Permutation::identity(degree);
  for (int i = 0; i < len; ++i)
    p.images[offset + i] = offset + (i + 1) % len;
  return p;
}

}  // namespace

Built build_cyclic(long n, std::size_t cap) {
  require(n >= 1, Errc::ParseError, "cyclic builder needs n >= 1");
  std::vector<Permutation> gens;
  int degree = static_cast<int>(n);
  if (n == 1)
    degree = 1;
  else
    gens.push_back(block_cycle(degree, 0, degree));
  FiniteGroup G = FiniteGroup::generate(degree, gens, cap);
  Built b{std::move(G), {}, "C" + std::to_string(n), "C" + std::to_string(n)};
  b.base = whole_group(b.group);
  return b;
}

Built build_abelian(const std::vector<long>& invariants, std::size_t cap) {
  require(!invariants.empty(), Errc::ParseError, "empty invariant list");
  int degree = 0;
  for (long n : invariants) {
    require(n >= 1, Errc::ParseError, "invariants must be positive");
    degree += static_cast<int>(n);
  }
  if (degree == 0) degree = 1;
  std::vector<Permutation> gens;
  int off = 0;
  for (long n : invariants) {
    if (n > 1) gens.push_back(block_cycle(degree, off, static_cast<int>(n)));
    off += static_cast<int>(n);
  }
  FiniteGroup G = FiniteGroup::generate(degree, gens, cap);
  std::string name;
  for (std::size_t i = 0; i < invariants.size(); ++i)
    name += (i ? "x" : "") + ("C" + std::to_string(invariants[i]));
  Built b{std::move(G), {}, name, name};
  b.base = whole_group(b.group);
  return b;
}

Built build_dihedral(long n, std::size_t cap) {
  require(n >= 1, Errc::ParseError, "dihedral builder needs n >= 1");
  if (n <= 2) {
    Built b = build_abelian(n == 1 ? std::vector<long>{2}
                                   : std::vector<long>{2, 2},
                            cap);
    b.name = "D" + std::to_string(2 * n);
    if (n == 2) {
      // base = one C2 factor, the "rotation" part
      int rot = b.group.index_of(
          Permutation::from_cycles(b.group.degree(), {{0, 1}}));
      b.base = subgroup_generate(b.group, {rot});
      b.base_name = "C2";
    }
    return b;
  }
  const int degree = static_cast<int>(n);
  Permutation r = block_cycle(degree, 0, degree);
  Permutation s = Permutation::identity(degree);
  for (int i = 0; i < degree; ++i) s.images[i] = (degree - i) % degree;
  FiniteGroup G = FiniteGroup::generate(degree, {r, s}, cap);
  Subgroup base = subgroup_generate(G, {G.index_of(r)});
  Built b{std::move(G), std::move(base), "D" + std::to_string(2 * n),
          "C" + std::to_string(n)};
  return b;
}

Built build_symmetric(int n, std::size_t cap) {
  require(n >= 1, Errc::ParseError, "symmetric builder needs n >= 1");
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
    if (n >= 3) gens.push_back(block_cycle(n, 0, n));
  }
  FiniteGroup G = FiniteGroup::generate(std::max(n, 1), gens, cap);
  Built b{std::move(G), {}, "S" + std::to_string(n), ""};
  b.base = {b.group.identity()};
  return b;
}

Built build_gen_dihedral(const std::vector<long>& invariants,
                         std::size_t cap) {
  bool inversion_trivial = true;
  for (long n : invariants)
    if (n > 2) inversion_trivial = false;
  int degree = 0;
  for (long n : invariants) degree += static_cast<int>(n);
  const int extra = inversion_trivial ? 2 : 0;
  degree += extra;
  if (degree == 0) degree = 2;

  std::vector<Permutation> gens;
  int off = 0;
  for (long n : invariants) {
    if (n > 1) gens.push_back(block_cycle(degree, off, static_cast<int>(n)));
    off += static_cast<int>(n);
  }
  std::vector<int> base_gens;
  Permutation s = Permutation::identity(degree);
  off = 0;
  for (long n : invariants) {
    for (int i = 0; i < n; ++i)
      s.images[off + i] = off + static_cast<int>((n - i) % n);
    off += static_cast<int>(n);
  }
  if (inversion_trivial) std::swap(s.images[off], s.images[off + 1]);

  std::vector<Permutation> all_gens = gens;
  all_gens.push_back(s);
  FiniteGroup G = FiniteGroup::generate(degree, all_gens, cap);
  for (const auto& g : gens) base_gens.push_back(G.index_of(g));
  Subgroup base = subgroup_generate(G, base_gens);

  std::string base_name;
  for (std::size_t i = 0; i < invariants.size(); ++i)
    base_name += (i ? "x" : "") + ("C" + std::to_string(invariants[i]));
  std::string name = "Dih(" + base_name + ")";
  return Built{std::move(G), std::move(base), name, base_name};
}

Built build_semidirect_abelian(const std::vector<long>& invariants,
                               const std::vector<std::vector<long>>& matrix,
                               long q, std::size_t cap) {
  const int r = static_cast<int>(invariants.size());
  require(q >= 1, Errc::ParseError, "semidirect builder needs q >= 1");
  require(static_cast<int>(matrix.size()) == r, Errc::ParseError,
          "automorphism matrix must be square of the invariant count");
  for (const auto& row : matrix)
    require(static_cast<int>(row.size()) == r, Errc::ParseError,
            "automorphism matrix must be square");
  long aorder = 1;
  for (long n : invariants) {
    require(n >= 1, Errc::ParseError, "invariants must be positive");
    aorder *= n;
  }
  require(static_cast<std::size_t>(aorder) <= cap, Errc::OrderCapExceeded,
          "abelian base exceeds order cap");
  const int degree = static_cast<int>(aorder + q);

  auto encode = [&](const std::vector<long>& e) {
    long code = 0;
    for (int i = r - 1; i >= 0; --i) code = code * invariants[i] + e[i];
    return static_cast<int>(code);
  };
  auto decode = [&](int code) {
    std::vector<long> e(r);
    long c = code;
    for (int i = 0; i < r; ++i) {
      e[i] = c % invariants[i];
      c /= invariants[i];
    }
    return e;
  };
  auto apply_matrix = [&](const std::vector<long>& e) {
    std::vector<long> out(r, 0);
    for (int j = 0; j < r; ++j) {
      long s = 0;
      for (int i = 0; i < r; ++i) s += matrix[j][i] % invariants[j] * (e[i] % invariants[j]);
      out[j] = ((s % invariants[j]) + invariants[j]) % invariants[j];
    }
    return out;
  };

  // validate: the matrix defines an automorphism with M^q = 1.
  // Linearity descends to prod Z_{n_i} iff n_j divides M[j][i] * n_i.
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      require((matrix[j][i] % invariants[j]) * invariants[i] % invariants[j] ==
                  0,
              Errc::ParseError,
              "matrix entry (" + std::to_string(j) + "," + std::to_string(i) +
                  ") does not respect the factor orders");
  {
    std::vector<bool> hit(aorder, false);
    for (long code = 0; code < aorder; ++code) {
      int img = encode(apply_matrix(decode(static_cast<int>(code))));
      require(!hit[img], Errc::ParseError,
              "matrix does not define an automorphism");
      hit[img] = true;
    }
    for (long code = 0; code < aorder; ++code) {
      std::vector<long> e = decode(static_cast<int>(code));
      for (long t = 0; t < q; ++t) e = apply_matrix(e);
      require(encode(e) == static_cast<int>(code), Errc::ParseError,
              "automorphism order does not divide q");
    }
  }

  std::vector<Permutation> gens;
  std::vector<Permutation> base_perms;
  for (int i = 0; i < r; ++i) {
    if (invariants[i] == 1) continue;
    Permutation t = Permutation::identity(degree);
    for (long code = 0; code < aorder; ++code) {
      std::vector<long> e = decode(static_cast<int>(code));
      e[i] = (e[i] + 1) % invariants[i];
      t.images[code] = encode(e);
    }
    gens.push_back(t);
    base_perms.push_back(t);
  }
  if (q > 1) {
    Permutation c = Permutation::identity(degree);
    for (long code = 0; code < aorder; ++code)
      c.images[code] = encode(apply_matrix(decode(static_cast<int>(code))));
    for (long j = 0; j < q; ++j)
      c.images[aorder + j] = static_cast<int>(aorder + (j + 1) % q);
    gens.push_back(c);
  }

  FiniteGroup G = FiniteGroup::generate(degree, gens, cap);
  std::vector<int> base_gens;
  for (const auto& t : base_perms) base_gens.push_back(G.index_of(t));
  Subgroup base = subgroup_generate(G, base_gens);
  std::string base_name;
  for (std::size_t i = 0; i < invariants.size(); ++i)
    base_name += (i ? "x" : "") + ("C" + std::to_string(invariants[i]));
  std::string name = "(" + base_name + "):C" + std::to_string(q);
  return Built{std::move(G), std::move(base), name, base_name};
}

Built build_direct_product(const std::vector<Built>& factors,
                           std::size_t cap) {
  require(!factors.empty(), Errc::ParseError, "empty direct product");
  int degree = 0;
  for (const auto& f : factors) degree += f.group.degree();
  std::vector<Permutation> gens;
  std::vector<Permutation> base_perms;
  int off = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.group.generators()) {
      Permutation lifted = Permutation::identity(degree);
      for (int i = 0; i < f.group.degree(); ++i)
        lifted.images[off + i] = off + g.images[i];
      gens.push_back(lifted);
    }
    for (int b : f.base) {
      Permutation lifted = Permutation::identity(degree);
      const Permutation& g = f.group.element(b);
      for (int i = 0; i < f.group.degree(); ++i)
        lifted.images[off + i] = off + g.images[i];
      base_perms.push_back(lifted);
    }
    off += f.group.degree();
  }
  FiniteGroup G = FiniteGroup::generate(degree, gens, cap);
  std::vector<int> base_gens;
  for (const auto& b : base_perms) base_gens.push_back(G.index_of(b));
  Subgroup base = subgroup_generate(G, base_gens);
  std::string name, base_name;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    name += (i ? "x" : "") + factors[i].name;
    base_name += (i ? "x" : "") + factors[i].base_name;
  }
  return Built{std::move(G), std::move(base), name, base_name};
}

std::string subgroup_name(const FiniteGroup& G, const Subgroup& S) {
  if (is_cyclic(G, S)) return "C" + std::to_string(S.size());
  return "N" + std::to_string(S.size());
}

}  // namespace cw::groups
