#include "cw/abelian.hpp"

#include <algorithm>
#include <set>

#include "cw/error.hpp"

namespace cw::abelian {

// ---- Shape -----------------------------------------------------------------

Shape Shape::from_invariants(const std::vector<long>& factor_orders) {
  Shape s;
  for (long d : factor_orders) {
    require(d >= 1, Errc::ParseError, "factor orders must be positive");
    for (const auto& [p, e] : factorize(d)) {
      auto& l = s.primary[p];
      if (static_cast<int>(l.size()) < e) l.resize(e, 0);
      ++l[e - 1];
    }
  }
  return s;
}

Int Shape::order() const {
  Int n = 1;
  for (const auto& [p, l] : primary)
    for (std::size_t i = 0; i < l.size(); ++i)
      for (int c = 0; c < l[i]; ++c) n *= pow_int(Int(p), i + 1);
  return n;
}

std::vector<long> Shape::primes() const {
  std::vector<long> out;
  for (const auto& [p, l] : primary) out.push_back(p);
  return out;
}

int Shape::k(long p) const {
  auto it = primary.find(p);
  if (it == primary.end()) return 0;
  int k = 0;
  for (int l : it->second) k += l;
  return k;
}

int Shape::L(long p, int i) const {
  auto it = primary.find(p);
  if (it == primary.end()) return 0;
  int s = 0;
  for (int j = i; j <= static_cast<int>(it->second.size()); ++j)
    if (j >= 1) s += it->second[j - 1];
  return s;
}

int Shape::exponent_valuation(long p) const {
  auto it = primary.find(p);
  if (it == primary.end()) return 0;
  for (int j = static_cast<int>(it->second.size()); j >= 1; --j)
    if (it->second[j - 1] > 0) return j;
  return 0;
}

int Shape::order_valuation(long p) const {
  auto it = primary.find(p);
  if (it == primary.end()) return 0;
  int v = 0;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    v += it->second[i] * static_cast<int>(i + 1);
  return v;
}

bool Shape::is_cyclic() const {
  for (const auto& [p, l] : primary)
    if (k(p) > 1) return false;
  return true;
}

Shape Shape::p_part(long p) const {
  Shape s;
  auto it = primary.find(p);
  if (it != primary.end() && k(p) > 0) s.primary[p] = it->second;
  return s;
}

std::vector<long> Shape::factor_orders() const {
  std::vector<long> out;
  for (const auto& [p, l] : primary)
    for (std::size_t i = 0; i < l.size(); ++i)
      for (int c = 0; c < l[i]; ++c) out.push_back(power_long(p, static_cast<int>(i + 1)));
  return out;
}

std::string Shape::to_string() const {
  auto fo = factor_orders();
  if (fo.empty()) return "C1";
  std::string s;
  for (std::size_t i = 0; i < fo.size(); ++i)
    s += (i ? "x" : "") + ("C" + std::to_string(fo[i]));
  return s;
}

// ---- Group -------------------------------------------------------------------

Group::Group(const Shape& shape) : shape_(shape), factors_(shape.factor_orders()) {
  for (long d : factors_) {
    require(order_ <= (1L << 40) / d, Errc::OrderCapExceeded,
            "abelian realization too large");
    order_ *= d;
  }
}

std::vector<long> Group::exponents(int a) const {
  std::vector<long> e(factors_.size());
  long c = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    e[i] = c % factors_[i];
    c /= factors_[i];
  }
  return e;
}

int Group::from_exponents(const std::vector<long>& e) const {
  long code = 0;
  for (std::size_t i = factors_.size(); i-- > 0;)
    code = code * factors_[i] + ((e[i] % factors_[i]) + factors_[i]) % factors_[i];
  return static_cast<int>(code);
}

int Group::add(int a, int b) const {
  auto ea = exponents(a), eb = exponents(b);
  for (std::size_t i = 0; i < ea.size(); ++i) ea[i] += eb[i];
  return from_exponents(ea);
}

int Group::neg(int a) const {
  auto e = exponents(a);
  for (auto& x : e) x = -x;
  return from_exponents(e);
}

int Group::mul_scalar(int a, long k) const {
  auto e = exponents(a);
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = (e[i] % factors_[i]) * (k % factors_[i]);
  return from_exponents(e);
}

long Group::element_order(int a) const {
  auto e = exponents(a);
  long o = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    long d = factors_[i] / gcd_long(e[i], factors_[i]);
    o = lcm_long(o, d);
  }
  return o;
}

int Group::p_component(int a, long p) const {
  auto e = exponents(a);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (factors_[i] % p != 0) e[i] = 0;
  return from_exponents(e);
}

// ---- Lattice -----------------------------------------------------------------

namespace {

struct PrimeCocyclic {
  std::vector<int> members;  // ids inside the p-part realization
  std::vector<bool> mask;
  long order = 1;
  long alpha = 1;  // alpha_{K,p}
};

/// All cocyclic subgroups of one primary part, as kernels of its linear
/// characters, with alpha coefficients.
std::vector<PrimeCocyclic> enumerate_primary(const Group& P, long p) {
  const long n = P.order();
  const auto& factors = P.factors();
  long expo = 1;
  for (long d : factors) expo = lcm_long(expo, d);

  std::set<std::vector<int>> seen;
  std::vector<PrimeCocyclic> out;
  for (long code = 0; code < n; ++code) {
    auto c = P.exponents(static_cast<int>(code));
    std::vector<int> ker;
    for (long x = 0; x < n; ++x) {
      auto e = P.exponents(static_cast<int>(x));
      long s = 0;
      for (std::size_t i = 0; i < factors.size(); ++i)
        s = (s + e[i] * ((expo / factors[i]) * c[i] % expo)) % expo;
      if (s == 0) ker.push_back(static_cast<int>(x));
    }
    if (!seen.insert(ker).second) continue;
    PrimeCocyclic K;
    K.order = static_cast<long>(ker.size());
    K.mask.assign(n, false);
    for (int m : ker) K.mask[m] = true;
    K.members = std::move(ker);
    out.push_back(std::move(K));
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeCocyclic& a, const PrimeCocyclic& b) {
              return std::pair(a.order, a.members) <
                     std::pair(b.order, b.members);
            });
  // alpha_{K,p} = 1 - #{L cocyclic : L < K, [K:L] = p}
  for (auto& K : out) {
    long below = 0;
    for (const auto& L : out) {
      if (L.order * p != K.order) continue;
      bool subset = true;
      for (int m : L.members)
        if (!K.mask[m]) {
          subset = false;
          break;
        }
      if (subset) ++below;
    }
    K.alpha = 1 - below;
  }
  return out;
}

}  // namespace

Lattice::Lattice(const Shape& shape) : group_(shape) {
  const auto primes = shape.primes();
  std::vector<Group> parts;
  std::vector<std::vector<PrimeCocyclic>> per_prime;
  std::vector<long> strides;
  long stride = 1;
  for (long p : primes) {
    parts.emplace_back(shape.p_part(p));
    per_prime.push_back(enumerate_primary(parts.back(), p));
    strides.push_back(stride);
    stride *= parts.back().order();
  }
  require(stride == group_.order(), Errc::Internal, "primary split mismatch");

  // Cartesian product over primes assembles the full lattice.
  std::vector<std::size_t> pick(primes.size(), 0);
  const long n = group_.order();
  while (true) {
    CocyclicSubgroup K;
    K.order = 1;
    K.alpha = 1;
    std::vector<int> members{0};
    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
      const auto& Kp = per_prime[pi][pick[pi]];
      K.order *= Kp.order;
      K.alpha *= Kp.alpha;
      K.alpha_p[primes[pi]] = Kp.alpha;
      std::vector<int> next;
      next.reserve(members.size() * Kp.members.size());
      for (int base : members)
        for (int mp : Kp.members)
          next.push_back(base + static_cast<int>(mp * strides[pi]));
      members = std::move(next);
    }
    std::sort(members.begin(), members.end());
    K.index = n / K.order;
    K.mask.assign(n, false);
    for (int m : members) K.mask[m] = true;
    K.members = std::move(members);
    cocyclic_.push_back(std::move(K));

    std::size_t level = 0;
    while (level < pick.size()) {
      if (++pick[level] < per_prime[level].size()) break;
      pick[level] = 0;
      ++level;
    }
    if (level == pick.size()) break;
  }
  std::sort(cocyclic_.begin(), cocyclic_.end(),
            [](const CocyclicSubgroup& a, const CocyclicSubgroup& b) {
              return std::pair(a.order, a.members) <
                     std::pair(b.order, b.members);
            });
  m_values();  // populate the cache; const access is thread-safe afterwards
}

std::pair<Int, Int> Lattice::cocyclic_counts(long p, int i) const {
  const Shape& shape = group_.shape();
  Int count = cocyclic_order_count(shape, p, i);
  Int nonmin = cocyclic_order_count_nonminimal(shape, p, i);

  // cross-check against a fresh enumeration of the primary part
  const Int pi = pow_int(Int(p), static_cast<unsigned long>(i));
  Int seen = 0, seen_nonmin = 0;
  Group P(shape.p_part(p));
  auto prim = enumerate_primary(P, p);
  for (const auto& K : prim) {
    if (Int(K.order) != pi) continue;
    ++seen;
    if (K.alpha != 1) ++seen_nonmin;  // alpha < 1 iff something lies below
  }
  require(seen == count, Errc::MismatchError,
          "cocyclic count disagrees with closed formula");
  require(seen_nonmin == nonmin, Errc::MismatchError,
          "non-minimal cocyclic count disagrees with closed formula");
  return {count, nonmin};
}

MValues Lattice::m_values() const {
  if (m_cached_) return m_cache_;
  Int m_plus = 0, m_minus = 0;
  long alpha_whole = 0;
  for (const auto& K : cocyclic_) {
    if (K.order == group_.order()) alpha_whole = K.alpha;
    if (K.alpha > 0)
      m_plus += Int(K.alpha) * Int(K.index);
    else if (K.alpha < 0)
      m_minus += Int(-K.alpha) * Int(K.index);
  }
  Int m_a = alpha_whole < 0 ? m_minus : m_minus - Int(alpha_whole);

  MValues closed = m_values_closed(group_.shape());
  require(closed.m_plus == m_plus && closed.m_minus == m_minus &&
              closed.m_a == m_a,
          Errc::MismatchError,
          "m-values: direct summation disagrees with closed forms");
  m_cache_ = MValues{m_plus, m_minus, m_a};
  m_cached_ = true;
  return m_cache_;
}

Int Lattice::f_eval(int a, int x) const {
  const long n = group_.order();
  const int diff = group_.sub(x, a);
  Int value = 0;
  for (const auto& K : cocyclic_) {
    const bool whole = (K.order == n);
    const bool inside = K.mask[diff];
    if (K.alpha > 0 && !whole) {
      if (inside) value += Int(K.alpha) * Int(K.index);
    } else if (K.alpha < 0 || whole) {
      if (!inside) value -= Int(K.alpha) * Int(K.index);
    }
  }
  MValues m = m_values();
  Int expected = (x == a) ? Int(n) + m.m_a : m.m_a;
  require(value == expected, Errc::MismatchError,
          "f_a defining sum disagrees with closed form");
  return value;
}

Int Lattice::sum_alphas_below(std::size_t subgroup_index) const {
  const auto& K = cocyclic_[subgroup_index];
  Int s = 0;
  for (const auto& L : cocyclic_) {
    if (L.order > K.order) continue;
    bool subset = true;
    for (int m : L.members)
      if (!K.mask[m]) {
        subset = false;
        break;
      }
    if (subset) s += L.alpha;
  }
  return s;
}

// ---- closed formulas -----------------------------------------------------------

Int cocyclic_index_count(const Shape& shape, long p, int i) {
  if (i == 0) return 1;
  const int Li = shape.L(p, i);
  if (Li == 0) return 0;
  const auto it = shape.primary.find(p);
  long lsum = 0;
  for (int j = 1; j < i; ++j)
    if (it != shape.primary.end() && j <= static_cast<int>(it->second.size()))
      lsum += static_cast<long>(it->second[j - 1]) * j;
  Int head = (pow_int(Int(p), Li) - 1) / Int(p - 1);
  return head * pow_int(Int(p), static_cast<unsigned long>(
                                    static_cast<long>(Li - 1) * (i - 1) + lsum));
}

Int cocyclic_index_count_nonminimal(const Shape& shape, long p, int i) {
  if (i == 0) return shape.k(p) > 0 ? 1 : 0;
  const int Li1 = shape.L(p, i + 1);
  if (Li1 == 0) return 0;
  const auto it = shape.primary.find(p);
  long lsum = 0;
  for (int j = 1; j <= i; ++j)
    if (it != shape.primary.end() && j <= static_cast<int>(it->second.size()))
      lsum += static_cast<long>(it->second[j - 1]) * (j - 1);
  Int head = (pow_int(Int(p), Li1) - 1) / Int(p - 1);
  return head * pow_int(Int(p), static_cast<unsigned long>(
                                    static_cast<long>(Li1 - 1) * (i - 1) + lsum));
}

Int cocyclic_order_count(const Shape& shape, long p, int i) {
  const int v = shape.order_valuation(p);
  if (i > v || i < 0) return 0;
  return cocyclic_index_count(shape, p, v - i);
}

Int cocyclic_order_count_nonminimal(const Shape& shape, long p, int i) {
  const int v = shape.order_valuation(p);
  if (i > v || i < 0) return 0;
  return cocyclic_index_count_nonminimal(shape, p, v - i);
}

Int alpha_a(const Shape& shape) {
  Int a = 1;
  for (long p : shape.primes()) {
    const int k = shape.k(p);
    if (k == 0) continue;
    // p (1 - p^{k-1}) / (p - 1)
    Int term = Int(p) * (Int(1) - pow_int(Int(p), k - 1)) / Int(p - 1);
    a *= term;
  }
  return a;
}

MValues m_values_closed(const Shape& shape) {
  const auto primes = shape.primes();
  const std::size_t np = primes.size();
  Int denom = 1;
  for (long p : primes)
    denom *= Int(p - 1) * pow_int(Int(p), shape.k(p) - 1);
  Int sum_even = 0, sum_odd = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << np); ++mask) {
    Int prod = 1;
    int bits = 0;
    for (std::size_t idx = 0; idx < np; ++idx) {
      const long p = primes[idx];
      const int delta = (mask >> idx) & 1;
      bits += delta;
      prod *= pow_int(Int(p), shape.k(p) - delta) - 1;
    }
    (bits % 2 == 0 ? sum_even : sum_odd) += prod;
  }
  const Int n = shape.order();
  Rat mp = Rat(n * sum_even) / Rat(denom);
  Rat mm = Rat(n * sum_odd) / Rat(denom);
  require(is_integer(mp) && is_integer(mm), Errc::Internal,
          "closed m-values must be integers");
  MValues out;
  out.m_plus = mp.get_num();
  out.m_minus = mm.get_num();
  Int aa = alpha_a(shape);
  out.m_a = aa < 0 ? out.m_minus : out.m_minus - aa;
  return out;
}

NValues n_values(const Shape& shape) {
  NValues out;
  out.alpha_a = alpha_a(shape);
  if (shape.is_cyclic()) {
    out.finite = false;
    return out;
  }
  MValues m = m_values_closed(shape);
  const Int n = shape.order();
  out.n_minus = Rat(n) / Rat(m.m_minus);
  out.n_minus.canonicalize();
  if (shape.primes().size() % 2 == 1) {
    out.n_a = out.n_minus;
  } else {
    out.n_a = Rat(n) * out.n_minus / (Rat(n) - out.n_minus * Rat(out.alpha_a));
    out.n_a.canonicalize();
  }
  require(Rat(n) == out.n_a * Rat(m.m_a), Errc::Internal,
          "|A| = n_A * m_A failed");
  return out;
}

std::pair<Rat, Rat> numerical_lemma_eval(const Rat& x, int k) {
  require(k >= 1 && k <= 30, Errc::HypothesisViolated,
          "k must be a small positive integer");
  require(sgn(x) > 0, Errc::HypothesisViolated, "x must be positive");
  Rat lhs = 0;
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    if (__builtin_popcountl(mask) % 2 == 0) continue;  // odd subsets only
    Rat prod = 1;
    for (int i = 0; i < k; ++i)
      if (!((mask >> i) & 1)) prod *= x + (2 * i + 1);
    lhs += prod;
  }
  Rat rhs = k;
  for (int i = 1; i < k; ++i) rhs *= x + 2 * i;
  return {lhs, rhs};
}

MinimalPrimeBound minimal_prime_bound_check(const Shape& shape) {
  const auto primes = shape.primes();
  require(!primes.empty(), Errc::HypothesisViolated, "trivial group");
  for (long p : primes) {
    require(p % 2 == 1, Errc::HypothesisViolated, "|A| must be odd");
    require(shape.k(p) == 2, Errc::HypothesisViolated,
            "every Sylow must be a product of exactly two non-trivial "
            "cyclic groups");
  }
  MinimalPrimeBound out;
  out.p0_over_k = Rat(primes.front()) / Rat(static_cast<long>(primes.size()));
  out.p0_over_k.canonicalize();
  out.n_a = n_values(shape).n_a;
  out.holds = out.p0_over_k <= out.n_a;
  return out;
}

}  // namespace cw::abelian
