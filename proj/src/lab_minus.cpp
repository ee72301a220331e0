// The odd part: e_chi (1/pi_n), the unit nu_n, and the exact indices around I eps_n.
#include "lab_internal.hpp"

namespace iwlab::lab {

namespace {

std::vector<DeltaCharacter> odd_thetas(const CheckContext& ctx) {
  std::vector<DeltaCharacter> out;
  for (const auto& t : select_delta(ctx.p(), ctx.params().theta))
    if (t.k % 2) out.push_back(t);
  return out;
}

// exact element of Q(zeta_E) placed in R_n
PadicCyclo embed_value(const RingPtr& R, int A, const Cyclo& x) {
  return PadicCyclo::embed(R, A, x.lift(lcm(x.modulus(), R->p)));
}

// eps_n attached to g(1/(1+T) - 1) = (1 - (1+p)(1+T)) f(1/(1+T) - 1, 1):
// e_psi eps_n = (1 - (1+p) psi(gamma0)) L_p(0, psi)
PadicGroupRing eps_from_g(long p, int n, const RingPtr& R, int A) {
  auto Gm = GaloisGroup::Gamma(p, n);
  std::vector<DirichletCharacter> chars = gamma_characters(p, n);
  std::vector<PadicCyclo> values;
  for (const auto& psi : chars) {
    Cyclo v = psi.value(1 + p);
    Cyclo factor = Cyclo(v.modulus(), Rat(1)) - v * Rat(1 + p);
    Cyclo L = lp_at_one_minus_k(psi, 1, p);
    const long E = lcm(factor.modulus(), L.modulus());
    values.push_back(embed_value(R, A, factor.lift(E) * L.lift(E)));
  }
  return element_from_l_values(chars, values, Gm, R, A);
}

// ----------------------------------------------------------------------------
// Z[G_n] as Z^|G| in the group order of GaloisGroup::G

struct MinusLattices {
  long p;
  int n;
  GroupPtr G;
  int size;
  IntLattice ZG, ZG_minus, I, I_eps, scriptI, scriptI_minus, one_minus_j_scriptI, E_minus, C;
};

RatVec coords(const RatGroupRing& x) { return RatVec(x.coeffs().begin(), x.coeffs().end()); }

RatVec coords(const Cyclo& x) {
  RatVec v(static_cast<size_t>(x.degree()));
  for (int k = 0; k < x.degree(); ++k) v[static_cast<size_t>(k)] = x.coeff(k);
  return v;
}

// matrix of x -> x y on Z[G]
std::vector<RatVec> right_mult(const GroupPtr& G, const RatGroupRing& y) {
  std::vector<RatVec> A;
  for (int i = 0; i < G->size(); ++i) A.push_back(coords(RatGroupRing::basis(G, Rat(0), Rat(1), i) * y));
  return A;
}

// matrix of x -> x(v) from Z[G] to Q(zeta_{p^{n+1}})
std::vector<RatVec> action(const GroupPtr& G, const Cyclo& v) {
  std::vector<RatVec> A;
  for (int i = 0; i < G->size(); ++i) A.push_back(coords(v.galois(G->elem(i))));
  return A;
}

MinusLattices minus_lattices(long p, int n) {
  MinusLattices L;
  L.p = p;
  L.n = n;
  L.G = GaloisGroup::G(p, n);
  L.size = L.G->size();
  const auto& G = L.G;
  const long M = ipow(p, n + 1);
  L.ZG = IntLattice::standard(L.size);
  auto j = RatGroupRing::basis(G, Rat(0), Rat(1), G->conj_index());
  auto one = RatGroupRing::identity(G, Rat(0), Rat(1));
  // Z[G]^- = ker(1 + j)
  L.ZG_minus = L.ZG.intersect_kernel(right_mult(G, one + j));
  // I = (sigma_c - c*) plus p^{n+1}
  std::vector<RatVec> gens;
  for (int c = 0; c < L.size; ++c) {
    const long cstar = mod_inverse(G->elem(c), M);
    auto g = RatGroupRing::basis(G, Rat(0), Rat(1), c) - one.scaled(Rat(cstar));
    for (int b = 0; b < L.size; ++b) gens.push_back(coords(g * RatGroupRing::basis(G, Rat(0), Rat(1), b)));
  }
  for (int b = 0; b < L.size; ++b) gens.push_back(coords(RatGroupRing::basis(G, Rat(0), Rat(M), b)));
  L.I = IntLattice::from_generators(L.size, gens);
  auto eps = stickelberger_eps(p, n);
  L.I_eps = L.I.image(right_mult(G, eps));
  L.scriptI = L.ZG.image(right_mult(G, eps)).intersect(L.ZG);
  L.scriptI_minus = L.scriptI.intersect(L.ZG_minus);
  L.one_minus_j_scriptI = L.scriptI.image(right_mult(G, one - j));
  Cyclo T = build_special(SpecialKind::leopoldt_T, p, 1, n);
  Cyclo theta = one_over_pi(p, n) - one_over_pi(p, n).conj();
  L.E_minus = L.ZG.image(right_mult(G, j - one)).image(action(G, T));
  L.C = L.I.image(action(G, theta));
  return L;
}

void exact_index(CheckContext& ctx, const std::string& label, const IntLattice& big, const IntLattice& small,
                 const Int& expected) {
  if (big.rank() != small.rank()) {
    ctx.sub(label, false, "ranks " + std::to_string(big.rank()) + " and " + std::to_string(small.rank()));
    return;
  }
  if (!big.contains(small)) {
    ctx.sub(label, false, "not a sublattice");
    return;
  }
  Int ix = index(big, small);
  ctx.witness(label + ": index", to_string(ix));
  ctx.sub(label, ix == expected, "found " + to_string(ix) + ", expected " + to_string(expected));
}

Int two_power(const MinusLattices& L) { return pow_int(2, static_cast<unsigned long>(L.size / 2 - 1)); }

}  // namespace

void minus_integrality(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto R = PadicRing::get(p, n);
  PadicCyclo inv_pi = PadicCyclo::embed(R, ctx.N() + 2 * n + 4, one_over_pi(p, n));
  for (const auto& chi : odd_thetas(ctx)) {
    ctx.character(chi.label);
    auto x = e_theta(chi.k, inv_pi);
    auto v = x.valuation();
    const bool integral = !v || *v >= 0;
    if (mod(chi.k, p - 1) == p - 2) {
      ctx.witness(chi.label + ": valuation of e(1/pi)", v ? std::to_string(*v) : "zero");
      ctx.sub(chi.label + " (excluded character) e(1/pi) not integral", !integral);
    } else {
      ctx.sub(chi.label + " e(1/pi) integral", integral);
    }
  }
}

void minus_identity(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto R = PadicRing::get(p, n);
  const int W = ctx.N() + 2 * n + 4;
  PadicCyclo inv_pi = PadicCyclo::embed(R, W, one_over_pi(p, n));
  PadicCyclo T = PadicCyclo::embed(R, W, build_special(SpecialKind::leopoldt_T, p, 1, n));
  auto omega = DirichletCharacter::teichmuller(p);
  ctx.note("eps_n(chi) = (1/p^{n+1}) sum a theta omega^-1(a) gamma_n(a) read with theta = omega chi");
  for (const auto& chi : odd_thetas(ctx)) {
    ctx.character(chi.label);
    PadicCyclo lhs = e_theta(chi.k, inv_pi);
    if (mod(chi.k, p - 1) == p - 2) {
      auto eps = eps_from_g(p, n, R, W);
      lhs = lhs - lhs.galois(1 + p) * PadicScalar(p, W, Int(1 + p));
      PadicCyclo rhs = act(eps, e_theta(chi.k, T));
      ctx.sub(chi.label + " (1 - (1+p) gamma0) e(1/pi) = eps_n e T", agree(lhs, rhs, ctx.cmp()));
      // L_p(0, psi) = -B_{1, psi omega^-1}: the power series and the explicit sum differ by a sign
      ctx.witness(chi.label + ": (1 - (1+p) gamma0) e(1/pi) = -eps_n e T", to_string(agree(lhs, -rhs, ctx.cmp())));
      ctx.note(chi.label + ": eps_n from g is minus the explicit Stickelberger sum");
    } else {
      auto eps = stickelberger_eps_twisted(chi.chi * omega, R, W);
      ctx.sub(chi.label + " e(1/pi) = eps_n(chi) e T", agree(lhs, act(eps, e_theta(chi.k, T)), ctx.cmp()));
    }
  }
}

void nu_membership(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto R = PadicRing::get(p, n);
  const int W = ctx.N() + 2 * n + 4;
  PadicCyclo inv_pi = PadicCyclo::embed(R, W, one_over_pi(p, n));
  const int km1 = static_cast<int>(p - 2);
  PadicCyclo tw = e_theta(km1, inv_pi).galois(1 + p).mul_rational(Rat(2 * (1 + p)));
  PadicCyclo x = inv_pi - inv_pi.conj() - tw;
  // sum_i p^{i-n} e_i
  RatGroupRing m;
  for (int i = 0; i <= n; ++i) {
    auto e = idempotent_conductor_level(p, i, n);
    auto term = e.scaled(Rat(1) / pow_int(p, n - i));
    m = i == 0 ? term : m + term;
  }
  PadicCyclo log_nu = act(m, x);
  ctx.character("minus");
  ctx.sub("log nu_n is odd", agree(log_nu.conj(), -log_nu, ctx.cmp()));
  auto img = log_image(p, n, LogSource::U, Projector::minus, 0, ctx.N());
  ctx.sub("log nu_n in log U_n^-", img.lattice.contains(to_pvec(log_nu)));
  for (int k = 1; k < p - 1; k += 2) {
    auto comp = log_image(p, n, LogSource::U, Projector::e_theta, k, ctx.N());
    ctx.witness("omega^" + std::to_string(k) + " component in e log U_n",
                to_string(comp.lattice.contains(to_pvec(e_theta(k, log_nu)))));
  }
  ctx.note("e_omega(1/pi) = B_{1,omega} tau(omega^-1)/(p-1) has pi-valuation 1 < p; the omega-part lacks gamma0 - 1 - p");
  ctx.note("uniqueness modulo mu_{p^{n+1}} concerns the projective system and is not checked");
}

void stickelberger_ideal(CheckContext& ctx) {
  auto L = minus_lattices(ctx.p(), ctx.n());
  ctx.character("minus");
  ctx.witness("I hnf digest", L.I.digest().substr(0, 16));
  ctx.sub("Z[G] eps n Z[G] = I eps", L.scriptI == L.I_eps);
}

void minus_index_prop(CheckContext& ctx) {
  auto L = minus_lattices(ctx.p(), ctx.n());
  ctx.character("minus");
  Int h = h_minus(ctx.p(), ctx.n());
  ctx.witness("h^-", to_string(h));
  exact_index(ctx, "[Z[G]^- : I^-]", L.ZG_minus, L.scriptI_minus, h);
}

void minus_2_power(CheckContext& ctx) {
  auto L = minus_lattices(ctx.p(), ctx.n());
  ctx.character("minus");
  exact_index(ctx, "[I^- : (1 - j) I]", L.scriptI_minus, L.one_minus_j_scriptI, two_power(L));
}

void main_index_theorem(CheckContext& ctx) {
  auto L = minus_lattices(ctx.p(), ctx.n());
  ctx.character("minus");
  Int h = h_minus(ctx.p(), ctx.n());
  ctx.witness("h^-", to_string(h));
  exact_index(ctx, "[E^- : C]", L.E_minus, L.C, two_power(L) * h);
}

void restriction_defect(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto G = GaloisGroup::G(p, n);
  auto eps = stickelberger_eps(p, n);
  auto res = restrict_to(stickelberger_eps(p, n + 1), n);
  auto expected = eps + norm_G(p, n).scaled(Rat(p - 1) / 2);
  ctx.sub("res eps_{n+1} = eps_n + (p-1)/2 N_n", coords(res) == coords(expected));
  auto j = RatGroupRing::basis(G, Rat(0), Rat(1), G->conj_index());
  auto one = RatGroupRing::identity(G, Rat(0), Rat(1));
  auto G1 = GaloisGroup::G(p, n + 1);
  auto j1 = RatGroupRing::basis(G1, Rat(0), Rat(1), G1->conj_index());
  auto one1 = RatGroupRing::identity(G1, Rat(0), Rat(1));
  auto lhs = restrict_to((j1 - one1) * stickelberger_eps(p, n + 1), n);
  ctx.sub("res (j - 1) eps_{n+1} = (j - 1) eps_n", coords(lhs) == coords((j - one) * eps));
  Cyclo T = build_special(SpecialKind::leopoldt_T, p, 1, n);
  Cyclo ip = one_over_pi(p, n);
  ctx.sub("(j - 1) / pi_n = (j - 1) eps_n T_n", ip.conj() - ip == act((j - one) * eps, T));
}

}  // namespace iwlab::lab
