#include "cw/numeric.hpp"

#include "cw/error.hpp"

namespace cw {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::OrderCapExceeded: return "OrderCapExceeded";
    case Errc::InvalidPermutation: return "InvalidPermutation";
    case Errc::NotAbelian: return "NotAbelian";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::NotNormal: return "NotNormal";
    case Errc::InvalidTransversal: return "InvalidTransversal";
    case Errc::MismatchError: return "MismatchError";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::NonIntegralWarning: return "NonIntegralWarning";
    case Errc::NonCharacterWarning: return "NonCharacterWarning";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::IOError: return "IOError";
    case Errc::Internal: return "Internal";
  }
  return "UnknownError";
}

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  require(n >= 1, Errc::Internal, "factorize expects n >= 1");
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

int valuation(long n, long p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long power_long(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    require(r <= (1L << 62) / (base > 0 ? base : 1), Errc::Internal,
            "power_long overflow");
    r *= base;
  }
  return r;
}

long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_long(a, b) * b;
}

long mod_inverse(long a, long m) {
  long r0 = m, r1 = ((a % m) + m) % m;
  long s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1;
    long s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  require(r0 == 1, Errc::Internal, "mod_inverse: arguments not coprime");
  return ((s0 % m) + m) % m;
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(Errc::ParseError, "bad rational literal '" + s + "'");
  }
}

}  // namespace cw
