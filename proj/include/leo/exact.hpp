#pragma once

// Integer and rational substrate shared by every other module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace leo {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a p-adic computation runs out of certified digits.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Integer helpers

/// p-adic valuation of a nonzero integer.
long valuation(const Integer& n, unsigned long p);

/// p-adic valuation of a nonzero rational.
long valuation(const Rational& q, unsigned long p);

/// p^k for k >= 0. Cached per thread.
const Integer& prime_power(unsigned long p, long k);

Integer ipow(const Integer& base, unsigned long exponent);

/// Least nonnegative residue.
Integer mod(const Integer& a, const Integer& m);

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m);

Integer powmod(const Integer& base, const Integer& exponent, const Integer& m);

bool is_prime(unsigned long n);
std::vector<unsigned long> primes_up_to(unsigned long bound);

/// Trial-division factorisation, increasing primes.
std::vector<std::pair<unsigned long, unsigned>> factor(unsigned long n);

bool is_squarefree(unsigned long n);
bool is_perfect_square(const Integer& n);

/// If q = p^k for a prime p and k >= 1, returns (p, k).
std::optional<std::pair<unsigned long, unsigned>> prime_power_decomposition(unsigned long q);

unsigned long euler_phi(unsigned long n);
unsigned long gcd_ul(unsigned long a, unsigned long b);
unsigned long lcm_ul(unsigned long a, unsigned long b);

/// Smallest primitive root modulo an odd prime power.
unsigned long primitive_root(unsigned long prime_pow);

/// Rational reconstruction: finds r/s = a mod m with |r|, s <= bound and
/// gcd(s, m) = 1. Requires 2 * bound^2 < m for uniqueness.
std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m,
                                             const Integer& bound);

/// floor(sqrt(m / 2)), the symmetric reconstruction bound.
Integer reconstruction_bound(const Integer& m);

/// Exact test that prod base_i^{e_i} has absolute value 1, using a coprime
/// factor base refinement so that no large power is ever expanded.
bool product_has_unit_abs(const std::vector<Rational>& bases,
                          const std::vector<Integer>& exponents);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

/// Parses "a", "-a" or "a/b".
Rational parse_rational(const std::string& text);

}  // namespace leo
