#pragma once

// Rational character tables for the theorem-row tests: the Galois sum of a
// faithful linear character of the cyclic quotient (U' x N')/H, for
// H = <1 x K, (u', n0)>. Its values are Ramanujan sums, and its local row is
// phi(d) times the kernel row of the (K, n0 K) pair.

#include <map>
#include <set>
#include <vector>

#include "cw/constraints.hpp"
#include "cw/groupring.hpp"

namespace corpus {

inline long moebius(long n) {
  long mu = 1;
  for (const auto& [p, e] : cw::factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// c_d(t) = sum over k | gcd(t, d) of mu(d/k) k.
inline long ramanujan(long d, long t) {
  const long g = cw::gcd_long(t, d);
  long s = 0;
  for (long k = 1; k * k <= g; ++k) {
    if (g % k != 0) continue;
    s += moebius(d / k) * k;
    if (k != g / k) s += moebius(d / (g / k)) * (g / k);
  }
  return s;
}

inline long euler_phi(long n) {
  long phi = n;
  for (const auto& [p, e] : cw::factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

inline cw::groupring::ClassFunction kernel_character_table(
    const cw::groups::FiniteGroup& G, const cw::constraints::PrimeContext& ctx,
    const cw::groups::Subgroup& K, int n0) {
  const auto& Np = ctx.n_pprime;
  const int m = ctx.m_pprime;
  const long total = static_cast<long>(m) * static_cast<long>(Np.size());

  std::map<int, int> pos;
  for (std::size_t i = 0; i < Np.size(); ++i) pos[Np[i]] = static_cast<int>(i);
  auto pair_id = [&](int i, int y) {
    return i * static_cast<int>(Np.size()) + pos.at(y);
  };
  auto pair_mul = [&](std::pair<int, int> a, std::pair<int, int> b) {
    return std::pair<int, int>((a.first + b.first) % m,
                               G.mult(a.second, b.second));
  };

  // H = <1 x K, (u', n0)>
  std::set<int> H;
  std::vector<std::pair<int, int>> queue{{0, G.identity()}};
  H.insert(pair_id(0, G.identity()));
  std::vector<std::pair<int, int>> gens;
  for (int k : K) gens.emplace_back(0, k);
  gens.emplace_back(1 % m, n0);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const auto& g : gens) {
      auto nxt = pair_mul(queue[head], g);
      if (H.insert(pair_id(nxt.first, nxt.second)).second) queue.push_back(nxt);
    }

  const long d = total / static_cast<long>(H.size());

  // generator of the cyclic quotient
  std::pair<int, int> w0{0, G.identity()};
  for (int i = 0; i < m && w0 == std::pair<int, int>{0, G.identity()}; ++i)
    for (int y : Np) {
      std::pair<int, int> w{i, y};
      long t = 1;
      auto cur = w;
      while (H.count(pair_id(cur.first, cur.second)) == 0) {
        cur = pair_mul(cur, w);
        ++t;
      }
      if (t == d) {
        w0 = w;
        break;
      }
    }

  // discrete log of every pair modulo H
  std::map<int, long> dlog;
  {
    std::pair<int, int> power{0, G.identity()};
    for (long t = 0; t < d; ++t) {
      for (int h : H) {
        const int hi = h / static_cast<int>(Np.size());
        const int hy = Np[h % static_cast<int>(Np.size())];
        auto w = pair_mul({hi, hy}, power);
        dlog[pair_id(w.first, w.second)] = t;
      }
      power = pair_mul(power, w0);
    }
  }

  cw::groupring::ClassFunction f;
  f.period = m;
  f.values.assign(m, std::vector<cw::Rat>(ctx.np_classes.size(), cw::Rat(0)));
  for (int i = 0; i < m; ++i)
    for (std::size_t c = 0; c < ctx.np_classes.size(); ++c) {
      const long t = dlog.at(pair_id(i, ctx.np_classes[c].rep));
      f.values[i][c] = cw::Rat(ramanujan(d, t));
    }
  return f;
}

}  // namespace corpus
