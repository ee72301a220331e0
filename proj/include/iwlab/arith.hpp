// Small-integer number theory and big-integer helpers shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iwlab {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a result cannot be certified at the available precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails (a bug or a misapplied formula).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

long gcd(long a, long b);
long lcm(long a, long b);
long mod(long a, long m);  // representative in [0, m)
long mod_inverse(long a, long m);
long powmod(long a, long e, long m);
long ipow(long b, int e);
long euler_phi(long m);
bool is_prime(long m);
std::vector<std::pair<long, int>> factorize(long m);
std::vector<long> divisors(long m);

// Smallest primitive root modulo p^k (p odd prime); also a primitive root mod p.
long primitive_root(long p, int k = 2);

// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(long m);

Int pow_int(long b, unsigned long e);
// Exponent of p in x; x must be nonzero.
int valuation(const Int& x, long p);
int valuation(long x, long p);
// Representative in [0, m).
Int mod(const Int& a, const Int& m);
Int inverse_mod(const Int& a, const Int& m);
Int binomial(long n, long k);

Rat bernoulli_number(int k);
// Coefficients of the Bernoulli polynomial B_k(x), lowest degree first.
std::vector<Rat> bernoulli_polynomial(int k);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);

}  // namespace iwlab
