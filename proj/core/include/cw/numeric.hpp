#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cw {

using Int = mpz_class;
using Rat = mpq_class;

/// (prime, exponent) pairs in ascending prime order.
std::vector<std::pair<long, int>> factorize(long n);

/// Ascending list of primes dividing n.
std::vector<long> prime_divisors(long n);

/// p-adic valuation of n.
int valuation(long n, long p);

long power_long(long base, int exp);

long gcd_long(long a, long b);
long lcm_long(long a, long b);

/// Inverse of a modulo m (gcd(a, m) = 1).
long mod_inverse(long a, long m);

Int pow_int(const Int& base, unsigned long exp);

/// Largest integer <= q.
Int floor_rat(const Rat& q);
/// Smallest integer >= q.
Int ceil_rat(const Rat& q);

bool is_integer(const Rat& q);

/// "n" or "n/d"; used for exact values in reports.
std::string rat_to_string(const Rat& q);
/// Parses "n" or "n/d".
Rat rat_from_string(const std::string& s);

}  // namespace cw
