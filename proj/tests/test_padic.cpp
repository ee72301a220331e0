#include <doctest.h>

#include <random>

#include "iwlab/padic.hpp"

using namespace iwlab;

namespace {

// brute force: the x in [0, p^N) with x = a mod p and x^(p-1) = 1 mod p^N
long teich_oracle(long a, long p, int N) {
  long M = ipow(p, N);
  for (long x = mod(a, p); x < M; x += p)
    if (powmod(x, p - 1, M) == 1) return x;
  return -1;
}

// sum_{k<=K} (-1)^{k+1} w^k / k as an exact rational, reduced mod p^N
Int log_oracle(long p, const Int& w, int N, int K) {
  Rat s = 0;
  Int pw = 1;
  for (int k = 1; k <= K; ++k) {
    pw *= w;
    Rat t(pw, k);
    t.canonicalize();
    s += (k % 2 ? t : Rat(-t));
  }
  s.canonicalize();
  Int M = pow_int(p, N);
  return mod(s.get_num() * inverse_mod(s.get_den(), M), M);
}

}  // namespace

TEST_CASE("teichmuller lifts") {
  CHECK(teichmuller(1, 5, 3).residue() == 1);
  CHECK(teichmuller(4, 5, 3).residue() == 124);
  CHECK(teichmuller(2, 5, 3).residue() == teich_oracle(2, 5, 3));
  CHECK(teich_oracle(2, 5, 3) == 57);
  for (long p : {3L, 5L, 7L, 11L})
    for (long a = 1; a < p; ++a) CHECK(teichmuller(a, p, 4).residue() == teich_oracle(a, p, 4));
  CHECK_THROWS_AS(teichmuller(5, 5, 3), DomainError);
}

TEST_CASE("teichmuller is multiplicative with order dividing p-1") {
  for (long p : {5L, 7L, 13L}) {
    for (long a = 1; a < p; ++a)
      for (long b = 1; b < p; ++b) {
        auto ab = teichmuller(a * b, p, 12);
        CHECK(ab.equals(teichmuller(a, p, 12) * teichmuller(b, p, 12)) == Decision::yes);
      }
    for (long a = 1; a < p; ++a) CHECK(teichmuller(a, p, 12).pow(Int(p - 1)).residue() == 1);
  }
}

TEST_CASE("log1p_unit") {
  CHECK(log1p_unit(PadicScalar(5, 4, 1), 4).residue() == 0);
  CHECK(log1p_unit(PadicScalar(5, 4, 6), 4).residue() == log_oracle(5, 5, 4, 40));
  CHECK(log_oracle(5, 5, 4, 40) == 555);
  CHECK_THROWS_AS(log1p_unit(PadicScalar(5, 4, 2), 4), DomainError);
  for (long p : {3L, 5L, 7L}) {
    for (long w = p; w < 8 * p; w += p) {
      auto got = log1p_unit(PadicScalar(p, 10, 1 + w), 10);
      CHECK(got.residue() == log_oracle(p, w, 10, 80));
    }
  }
}

TEST_CASE("log1p_unit is a homomorphism") {
  std::mt19937_64 rng(11);
  for (long p : {3L, 5L, 7L}) {
    const int N = 20;
    Int M = pow_int(p, N);
    for (int t = 0; t < 25; ++t) {
      Int u = 1 + p * Int(static_cast<unsigned long>(rng() % 1000000007UL));
      Int v = 1 + p * Int(static_cast<unsigned long>(rng() % 1000000007UL));
      PadicScalar U(p, N, u), V(p, N, v);
      auto lhs = log1p_unit(U * V, N);
      auto rhs = log1p_unit(U, N) + log1p_unit(V, N);
      CHECK(lhs.equals(rhs) == Decision::yes);
      CHECK(log1p_unit(U * U, N).equals(log1p_unit(U, N) + log1p_unit(U, N)) == Decision::yes);
    }
  }
}

TEST_CASE("invert") {
  CHECK(invert(PadicScalar(5, 4, 1)).residue() == 1);
  CHECK(invert(PadicScalar(5, 4, 2)).residue() == 313);
  CHECK((2 * 313) % 625 == 1);
  CHECK_THROWS_AS(invert(PadicScalar(5, 4, 5)), DomainError);
  for (long a = 1; a < 625; ++a) {
    if (a % 5 == 0) continue;
    PadicScalar x(5, 4, a);
    CHECK(invert(invert(x)).residue() == x.residue());
    CHECK((invert(x) * x).residue() == 1);
  }
}

TEST_CASE("valuation and precision bookkeeping") {
  PadicScalar x(5, 6, 50), y(5, 4, 75);
  CHECK(*x.valuation() == 2);
  CHECK(*y.valuation() == 2);
  CHECK((x * y).precision() == 4);
  CHECK(!PadicScalar(5, 3, 125).valuation());
  CHECK(x.divide_by_p(2).precision() == 4);
  CHECK(x.divide_by_p(2).residue() == 2);
  CHECK(PadicScalar(5, 3, 125).equals(PadicScalar(5, 3, 0)) == Decision::yes);
  CHECK(PadicScalar(5, 0, 3).equals(PadicScalar(5, 3, 0)) == Decision::undecidable);
  // valuation is additive when both are determined
  PadicScalar a(7, 10, 7 * 3), b(7, 10, 49 * 5);
  CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
}

TEST_CASE("PadicFraction arithmetic") {
  auto third = PadicFraction::from_rational(3, 10, Rat(1, 3));
  CHECK(third.denominator_exponent() == 1);
  auto one = PadicFraction::from_rational(3, 10, Rat(1));
  auto sum = third + third + third;
  CHECK(sum.equals(one) == Decision::yes);
  auto prod = third * PadicFraction::from_rational(3, 10, Rat(3));
  CHECK(prod.equals(one) == Decision::yes);
  auto q = one / third;
  CHECK(q.equals(PadicFraction::from_rational(3, 10, Rat(3))) == Decision::yes);
  CHECK(*PadicFraction::from_rational(5, 8, Rat(7, 25)).valuation() == -2);
}
