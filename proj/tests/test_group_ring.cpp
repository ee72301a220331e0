#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "iwlab/group_ring.hpp"

using namespace iwlab;

namespace {

using cplx = std::complex<double>;

cplx to_complex(const Cyclo& x) {
  cplx s = 0;
  for (int k = 0; k < x.degree(); ++k)
    s += x.numerators()[k].get_d() * std::polar(1.0, 2 * M_PI * k / static_cast<double>(x.modulus()));
  return s / x.denominator().get_d();
}

cplx chi_value(const DirichletCharacter& chi, long a) {
  auto k = chi.value_exp(a);
  if (!k) return 0.0;
  return std::polar(1.0, 2 * M_PI * static_cast<double>(*k) / static_cast<double>(chi.value_order()));
}

bool is_identity(const RatGroupRing& x) {
  for (int i = 0; i < x.group()->size(); ++i)
    if (x[i] != (i == 0 ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("group tables") {
  for (auto [p, n] : {std::pair{3L, 0}, std::pair{3L, 2}, std::pair{5L, 1}, std::pair{7L, 0}}) {
    auto G = GaloisGroup::G(p, n);
    CHECK(G->size() == euler_phi(ipow(p, n + 1)));
    CHECK(G->elem(0) == 1);
    CHECK(G->conj_index() >= 0);
    auto Gm = GaloisGroup::Gamma(p, n);
    CHECK(Gm->size() == ipow(p, n));
    auto D = GaloisGroup::Delta(p, n);
    CHECK(D->size() == p - 1);
    for (int i = 0; i < D->size(); ++i) CHECK(powmod(D->elem(i), p - 1, D->modulus()) == 1);
    // sigma_a = delta(a) gamma_n(a)
    const long M = ipow(p, n + 1);
    for (long a = 1; a < M; ++a) {
      if (a % p == 0) continue;
      long b = gamma_exponent(p, n, 1, a);
      long w = D->elem(static_cast<int>(a % p - 1));
      CHECK(mod(w * Gm->elem(static_cast<int>(b)), M) == a);
    }
    for (int i = 0; i < G->size(); ++i) CHECK(G->mul(i, G->inverse(i)) == 0);
  }
  auto G4 = GaloisGroup::Gamma(5, 1, 4);
  CHECK(G4->modulus() == 100);
  CHECK(G4->elem(1) == 21);
  CHECK(GaloisGroup::G(5, 1) == GaloisGroup::G(5, 1));
}

TEST_CASE("Gamma idempotents") {
  for (auto [p, n] : {std::pair{3L, 1}, std::pair{3L, 2}, std::pair{5L, 1}}) {
    const int A = 12;
    auto R = PadicRing::get(p, n);
    auto Gm = GaloisGroup::Gamma(p, n);
    auto chars = gamma_characters(p, n);
    REQUIRE(static_cast<int>(chars.size()) == Gm->size());
    std::vector<PadicGroupRing> e;
    for (const auto& c : chars) e.push_back(idempotent_gamma(c, Gm, R, A));
    PadicCyclo one = PadicCyclo::scalar(R, A, Rat(1)), zero(R, A);
    auto sum = PadicGroupRing(Gm, zero);
    for (const auto& x : e) sum += x;
    CHECK(equals_mod(sum, PadicGroupRing::identity(Gm, zero, one), A - 2 * n) == Decision::yes);
    for (size_t i = 0; i < e.size(); ++i)
      for (size_t j = 0; j < e.size(); ++j) {
        auto prod = e[i] * e[j];
        auto expect = i == j ? e[i] : PadicGroupRing(Gm, zero);
        CHECK(equals_mod(prod, expect, A - 3 * n) == Decision::yes);
      }
    // conductor levels: e_k = sum of e_chi with f_chi = p^{k+1}
    for (int k = 0; k <= n; ++k) {
      auto ek = to_padic(idempotent_conductor_level(p, k, n), R, A);
      auto expect = PadicGroupRing(Gm, zero);
      for (size_t j = 0; j < chars.size(); ++j)
        if (gamma_conductor_level(chars[j], p) == k) expect += e[j];
      CHECK(equals_mod(ek, expect, A - 2 * n) == Decision::yes);
    }
  }
}

TEST_CASE("conductor projectors are exact") {
  for (auto [p, n] : {std::pair{3L, 2}, std::pair{5L, 1}, std::pair{2L + 1, 3}}) {
    auto Gm = GaloisGroup::Gamma(p, n);
    RatGroupRing sum(Gm, Rat(0)), inv(Gm, Rat(0));
    for (int i = 0; i <= n; ++i) {
      auto ei = idempotent_conductor_level(p, i, n);
      sum += ei;
      inv += ei.scaled(Rat(1, ipow(p, n - i)));
      CHECK((ei * ei).coeffs() == ei.coeffs());
      for (int j = 0; j < i; ++j) CHECK((ei * idempotent_conductor_level(p, j, n)).coeffs() == RatGroupRing(Gm, Rat(0)).coeffs());
    }
    CHECK(is_identity(sum));
    CHECK(is_identity(ell_operator(p, n) * inv));
  }
}

TEST_CASE("Stickelberger element") {
  auto e0 = stickelberger_eps(3, 0);
  CHECK(e0.at_residue(1) == Rat(1, 3));
  CHECK(e0.at_residue(2) == Rat(2, 3));
  // e_chi eps = B_{1,chi} e_chi: the character sum of the coefficients is the oracle
  for (auto [p, n] : {std::pair{3L, 1}, std::pair{5L, 0}, std::pair{7L, 0}, std::pair{5L, 1}}) {
    const long M = ipow(p, n + 1);
    auto eps = stickelberger_eps(p, n);
    auto G = GaloisGroup::G(p, n);
    for (const auto& chi : enumerate_characters(M)) {
      if (chi.is_even() || !chi.is_primitive()) continue;
      cplx oracle = 0;
      for (int i = 0; i < G->size(); ++i) oracle += eps[i].get_d() * chi_value(chi, G->elem(i));
      cplx b = to_complex(bernoulli_B(1, chi));
      CHECK(std::abs(oracle - b) < 1e-9);
    }
    // (sigma_c - c*) eps is integral, c c* = 1 mod M
    for (long c = 2; c < M; ++c) {
      if (c % p == 0) continue;
      RatGroupRing sc(G, Rat(0));
      sc.at_residue(c) = 1;
      sc[0] -= mod_inverse(c, M);
      auto x = sc * eps;
      for (const auto& q : x.coeffs()) CHECK(q.get_den() == 1);
    }
  }
}

TEST_CASE("restriction of eps") {
  for (auto [p, n] : {std::pair{3L, 0}, std::pair{3L, 1}, std::pair{5L, 0}, std::pair{5L, 1}}) {
    auto lhs = restrict_to(stickelberger_eps(p, n + 1), n);
    auto rhs = stickelberger_eps(p, n) + norm_G(p, n).scaled(Rat(p - 1) / 2);
    CHECK_MESSAGE(lhs.coeffs() == rhs.coeffs(), to_string(lhs), " vs ", to_string(rhs));
  }
  CHECK_THROWS_AS(restrict_to(stickelberger_eps(3, 0), 1), DomainError);
}

TEST_CASE("twisted Stickelberger element") {
  auto R = PadicRing::get(3, 0);
  auto t = stickelberger_eps_twisted(DirichletCharacter::trivial(3), R, 10);
  // (1 * 1 + 2 * omega^{-1}(2)) / 3 = -1/3
  CHECK(t[0].equals_mod(PadicCyclo::scalar(R, 10, Rat(-1, 3)), 9) == Decision::yes);
  // theta = omega gives (1/p^{n+1}) sum a gamma_n(a)
  auto R5 = PadicRing::get(5, 1);
  auto tw = stickelberger_eps_twisted(DirichletCharacter::teichmuller(5), R5, 10);
  std::vector<Rat> oracle(5, Rat(0));
  for (long a = 1; a <= 25; ++a)
    if (a % 5) oracle[gamma_exponent(5, 1, 1, a)] += Rat(a, 25);
  for (int b = 0; b < 5; ++b) CHECK(tw[b].equals_mod(PadicCyclo::scalar(R5, 10, oracle[b]), 8) == Decision::yes);
}

TEST_CASE("actions") {
  auto R = PadicRing::get(5, 1);
  const int A = 15;
  auto z = PadicCyclo::root(R, A, 1);
  // N_n zeta = trace = 0 for n+1 >= 1 primitive root of order p^2
  CHECK(act(norm_G(5, 1), z).is_zero());
  auto z3 = Cyclo::root(25, 3) + Cyclo(25, Rat(2, 7));
  auto x = stickelberger_eps(5, 1);
  auto exact = act(x, z3);
  auto padic = act(x, PadicCyclo::embed(R, A, z3));
  CHECK(padic.equals_mod(PadicCyclo::embed(R, A, exact), A - 3) == Decision::yes);
  auto px = to_padic(x, R, A);
  CHECK(act(px, PadicCyclo::embed(R, A, z3)).equals_mod(padic, A - 3) == Decision::yes);
  auto bad = Cyclo::root(7, 1);
  CHECK_THROWS_AS(act(x, bad), DomainError);
}

TEST_CASE("series reduction against L-value reconstruction") {
  std::mt19937 rng(7);
  for (auto [p, n] : {std::pair{3L, 1}, std::pair{3L, 2}, std::pair{5L, 1}}) {
    const int A = 14;
    auto R = PadicRing::get(p, n);
    auto Gm = GaloisGroup::Gamma(p, n);
    auto chars = gamma_characters(p, n);
    const long m = ipow(p, n + 1);
    for (int trial = 0; trial < 3; ++trial) {
      TruncatedPowerSeries g;
      long deg = ipow(p, n) + 3;
      for (long k = 0; k < deg; ++k)
        g.coeffs.push_back(PadicCyclo::scalar(R, A, Rat(static_cast<long>(rng() % 200) - 100)));
      std::vector<PadicCyclo> vals;
      for (const auto& c : chars) {
        auto t = c.padic_value(R, A, mod(Gm->elem(1), m)) - PadicCyclo::scalar(R, A, Rat(1));
        vals.push_back(g.eval(t));
      }
      auto a = reduce_mod_omega(g, Gm);
      auto b = element_from_l_values(chars, vals, Gm, R, A - n - 1);
      CHECK(equals_mod(a, b, A - n - 2) == Decision::yes);
    }
    TruncatedPowerSeries short_g{{PadicCyclo::scalar(R, A, Rat(1))}};
    CHECK_THROWS_AS(reduce_mod_omega(short_g, Gm), DomainError);
  }
}

TEST_CASE("eps from L-values") {
  auto R = PadicRing::get(5, 1);
  const int A = 10;
  DirichletCharacter q5;
  for (const auto& c : enumerate_characters(5))
    if (c.order() == 2) q5 = c;
  auto eps = epsilon_from_lvalues(q5, 1, R, A);
  auto Gm = eps.group();
  for (const auto& chi : gamma_characters(5, 1)) {
    auto e = idempotent_gamma(chi, Gm, R, A + 2);
    auto L = lp_at_one(q5 * chi, R, A + 2);
    auto lhs = eps * e;
    auto rhs = e.map([&](const PadicCyclo& c) { return c * L; });
    CHECK(equals_mod(lhs, rhs, A - 3) == Decision::yes);
  }
}
