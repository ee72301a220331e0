#include <doctest.h>

#include <algorithm>
#include <random>

#include "iwlab/lattice.hpp"
#include "iwlab/parallel.hpp"

using namespace iwlab;

namespace {

// |det| by rational Gaussian elimination, independent of the Hermite code
Rat det_abs(std::vector<RatVec> A) {
  const size_t n = A.size();
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    std::swap(A[c], A[piv]);
    d *= A[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      Rat f = A[i][c] / A[c][c];
      for (size_t k = c; k < n; ++k) A[i][k] -= f * A[c][k];
    }
  }
  return abs(d);
}

RatVec to_rat(const IntVec& v) {
  RatVec r;
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

IntMat random_matrix(std::mt19937& rng, int rows, int cols, int bound) {
  IntMat M(rows, IntVec(cols));
  for (auto& r : M)
    for (auto& x : r) x = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  return M;
}

IntMat mul(const IntMat& A, const IntMat& B) {
  IntMat C(A.size(), IntVec(B[0].size(), 0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t k = 0; k < B.size(); ++k)
      for (size_t j = 0; j < B[0].size(); ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

// a full-rank random matrix
IntMat random_full_rank(std::mt19937& rng, int r, int bound) {
  while (true) {
    auto M = random_matrix(rng, r, r, bound);
    std::vector<RatVec> R;
    for (auto& row : M) R.push_back(to_rat(row));
    if (det_abs(R) != 0) return M;
  }
}

std::vector<PVec> pvecs(const IntMat& M, int prec) {
  std::vector<PVec> out;
  for (const auto& r : M) out.push_back(PVec{r, 0, prec});
  return out;
}

int vp(Int x, long p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

TEST_CASE("integer Hermite form basics") {
  auto I3 = IntLattice::standard(3);
  CHECK(I3.hnf_rows() == IntMat{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto dup = IntLattice::from_generators(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(dup == I3);
  auto L = IntLattice::from_generators(2, {{3, 0}, {0, 3}, {1, 1}});
  CHECK(L.hnf_rows() == IntMat{{1, 1}, {0, 3}});
  CHECK(index(IntLattice::standard(2), L) == 3);
  CHECK(index(I3, I3) == 1);
  CHECK(index(I3, I3.scaled(5)) == 125);
  auto half = IntLattice::from_generators(2, {{Rat(1, 2), 0}, {0, Rat(3, 4)}});
  CHECK(half.denominator() == 4);
  CHECK(half.contains(RatVec{Rat(1, 2), Rat(3, 2)}));
  CHECK(!half.contains(RatVec{Rat(1, 4), 0}));
  CHECK_THROWS_AS(index(L, IntLattice::standard(2)), ContainmentError);
  CHECK_THROWS_AS(index(I3, IntLattice::from_generators(3, {{1, 0, 0}})), RankError);
  auto ed = elementary_divisors(IntLattice::standard(2), IntLattice::from_generators(2, {{2, 0}, {0, 3}}));
  CHECK(ed == std::vector<Int>{1, 6});
}

TEST_CASE("Hermite form is canonical") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + static_cast<int>(rng() % 5), dim = r + static_cast<int>(rng() % 3);
    auto B = random_matrix(rng, r, dim, 9);
    auto L = IntLattice::from_integer_rows(dim, B);
    // unimodular recombination and shuffling
    auto U = random_matrix(rng, r, r, 0);
    for (int i = 0; i < r; ++i) U[i][i] = 1;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) U[i][j] = static_cast<long>(rng() % 7) - 3;
    auto B2 = mul(U, B);
    std::shuffle(B2.begin(), B2.end(), rng);
    B2.push_back(IntVec(dim, 0));
    CHECK(IntLattice::from_integer_rows(dim, B2) == L);
    CHECK(IntLattice::from_integer_rows(dim, B2).digest() == L.digest());
  }
}

TEST_CASE("index multiplicativity") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    int r = 1 + static_cast<int>(rng() % 8);
    auto B1 = random_full_rank(rng, r, 5);
    auto C2 = random_full_rank(rng, r, 3), C3 = random_full_rank(rng, r, 3);
    auto B2 = mul(C2, B1), B3 = mul(C3, B2);
    auto L1 = IntLattice::from_integer_rows(r, B1), L2 = IntLattice::from_integer_rows(r, B2),
         L3 = IntLattice::from_integer_rows(r, B3);
    Int i12 = index(L1, L2), i23 = index(L2, L3), i13 = index(L1, L3);
    CHECK(i13 == i12 * i23);
    std::vector<RatVec> c2;
    for (auto& row : C2) c2.push_back(to_rat(row));
    CHECK(Rat(i12) == det_abs(c2));
    CHECK((i12 == 1) == (L1 == L2));
  }
}

TEST_CASE("sum and intersection") {
  auto Z2 = IntLattice::standard(2);
  CHECK(Z2.intersect(Z2) == Z2);
  CHECK(Z2.intersect(Z2.scaled(2)) == Z2.scaled(2));
  auto A = IntLattice::from_generators(2, {{2, 0}, {0, 1}}), B = IntLattice::from_generators(2, {{1, 0}, {0, 3}});
  CHECK(A.intersect(B) == IntLattice::from_generators(2, {{2, 0}, {0, 3}}));
  CHECK(A.sum(B) == Z2);
  // minus part for the swap (x, y) -> (y, x): kernel of 1 + j
  auto minus = Z2.intersect_kernel({{1, 1}, {1, 1}});
  CHECK(minus == IntLattice::from_generators(2, {{1, -1}}));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto L1 = IntLattice::from_integer_rows(2, random_full_rank(rng, 2, 4));
    auto L2 = IntLattice::from_integer_rows(2, random_full_rank(rng, 2, 4));
    auto I = L1.intersect(L2);
    CHECK(L1.contains(I));
    CHECK(L2.contains(I));
    // brute force points of L1 in a box
    for (long x = -12; x <= 12; ++x)
      for (long y = -12; y <= 12; ++y) {
        RatVec v{x, y};
        if (L1.contains(v) && L2.contains(v)) CHECK(I.contains(v));
      }
  }
}

TEST_CASE("Stickelberger intersection at p = 3") {
  const long p = 3;
  auto G = GaloisGroup::G(p, 0);
  auto eps = stickelberger_eps(p, 0);
  std::vector<RatVec> gens_eps, gens_I;
  for (int i = 0; i < G->size(); ++i) gens_eps.push_back((RatGroupRing::basis(G, Rat(0), Rat(1), i) * eps).coeffs());
  auto ZG = IntLattice::standard(G->size());
  auto Ilat = IntLattice::from_generators(G->size(), gens_eps).intersect(ZG);
  for (long c = 1; c < p; ++c)
    for (int i = 0; i < G->size(); ++i) {
      RatGroupRing x(G, Rat(0));
      x.at_residue(c) += 1;
      x[0] -= mod_inverse(c, p);
      gens_I.push_back((RatGroupRing::basis(G, Rat(0), Rat(1), i) * x * eps).coeffs());
      gens_I.push_back((RatGroupRing::basis(G, Rat(0), Rat(p), i) * eps).coeffs());
    }
  CHECK(Ilat == IntLattice::from_generators(G->size(), gens_I));
}

TEST_CASE("p-adic Hermite form") {
  for (long p : {3L, 5L}) {
    Int pp = p;
    PadicLattice L(p, 2, pvecs({{pp, 0}, {0, pp}, {1, 1}}, 20));
    REQUIRE(L.rank() == 2);
    auto v = L.pivot_valuations();
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<int>{0, 1});
    PadicLattice Z(p, 2, pvecs({{1, 0}, {0, 1}}, 20));
    auto ix = index(Z, L);
    CHECK(ix.status == Decision::yes);
    CHECK(ix.exponent == 1);
    CHECK(index(L, L).exponent == 0);
    PadicLattice pZ(p, 3, pvecs({{pp, 0, 0}, {0, pp, 0}, {0, 0, pp}}, 20));
    PadicLattice Z3(p, 3, pvecs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 20));
    CHECK(index(Z3, pZ).exponent == 3);
    CHECK(equals(Z3, pZ) == Decision::no);
    CHECK(equals(Z3, Z3) == Decision::yes);
    CHECK_THROWS_AS(index(pZ, Z3), ContainmentError);
  }
  // shifts: p^{-1} Z_p contains 1
  PadicLattice inv(5, 1, {PVec{{1}, -1, 10}});
  CHECK(inv.contains(PVec{{1}, 0, 10}) == Decision::yes);
  CHECK(inv.contains(PVec{{1}, -2, 10}) == Decision::no);
  PadicLattice one(5, 1, {PVec{{1}, 0, 10}});
  CHECK(index(inv, one).exponent == 1);
  // a pivot at the edge of precision
  CHECK_THROWS_AS(PadicLattice(3, 2, pvecs({{1, 0}, {0, pow_int(3, 15)}}, 20)), DegeneratePrecision);
}

TEST_CASE("p-adic index against the integer oracle") {
  std::mt19937 rng(17);
  for (long p : {3L, 5L, 7L})
    for (int trial = 0; trial < 15; ++trial) {
      int r = 1 + static_cast<int>(rng() % 6);
      auto B1 = random_full_rank(rng, r, 6);
      auto B2 = mul(random_full_rank(rng, r, 4), B1);
      Int iz = index(IntLattice::from_integer_rows(r, B1), IntLattice::from_integer_rows(r, B2));
      // precision well above the valuations involved
      int N = 40;
      PadicLattice L1(p, r, pvecs(B1, N)), L2(p, r, pvecs(B2, N));
      auto ix = index(L1, L2);
      CHECK(ix.status == Decision::yes);
      CHECK(ix.exponent == vp(iz, p));
      PadicLattice M1(p, r, pvecs(B1, N + 10)), M2(p, r, pvecs(B2, N + 10));
      CHECK(index(M1, M2).exponent == ix.exponent);
      CHECK((ix.exponent == 0) == (equals(L1, L2) == Decision::yes));
    }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto M = random_matrix(rng, 12, 9, 50);
    HnfResult a, b;
    {
      ParallelScope s(false);
      a = hnf(M, true);
    }
    {
      ParallelScope s(true);
      b = hnf(M, true);
    }
    CHECK(a.H == b.H);
    CHECK(a.U == b.U);
    std::string da, db;
    {
      ParallelScope s(false);
      da = PadicLattice(5, 9, pvecs(M, 30)).digest();
    }
    {
      ParallelScope s(true);
      db = PadicLattice(5, 9, pvecs(M, 30)).digest();
    }
    CHECK(da == db);
  }
}
