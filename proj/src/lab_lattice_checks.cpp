// Log-images of local units against Gamma_n-orbits of the special elements.
#include "lab_internal.hpp"

namespace iwlab::lab {

namespace {

int working(const CheckContext& ctx) { return ctx.N() + 2 * ctx.n() + 4; }

PadicCyclo script_t(long p, int n, int A) {
  return PadicCyclo::embed(PadicRing::get(p, n), A, build_special(SpecialKind::script_T, p, 1, n));
}

PadicCyclo from_pvec(const RingPtr& R, const PVec& v) { return PadicCyclo::from_coeffs(R, v.prec, v.c, v.shift); }

PadicLattice lattice(long p, int n, const std::vector<PVec>& rows) {
  return PadicLattice(p, static_cast<int>((p - 1) * ipow(p, n)), rows);
}

// theta = omega^k with k != 0, 1
std::vector<DeltaCharacter> generic_thetas(const CheckContext& ctx, int parity = 0) {
  std::vector<DeltaCharacter> out;
  for (const auto& t : select_delta(ctx.p(), ctx.params().theta)) {
    if (t.k == 0 || t.k == 1) continue;
    if (parity == 1 && t.k % 2) continue;
    out.push_back(t);
  }
  return out;
}

// a - b to absolute precision `bound`: yes when v(a - b) >= bound
Decision agree_mod(const PadicFraction& a, const PadicFraction& b, int bound) {
  auto v = (a - b).valuation();
  if (!v) return (a - b).absolute_precision() >= bound ? Decision::yes : Decision::undecidable;
  return *v >= bound ? Decision::yes : Decision::no;
}

}  // namespace

void main_theorem(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  PadicCyclo T = script_t(p, n, working(ctx));
  for (const auto& th : generic_thetas(ctx)) {
    ctx.character(th.label);
    auto img = log_image(p, n, LogSource::U, Projector::e_theta, th.k, ctx.N());
    ctx.witness(th.label + ": generators", img.recipe);
    auto orbit = lattice(p, n, gamma_orbit(e_theta(th.k, T)));
    compare_lattices(ctx, th.label + " e log U = Z_p[Gamma] e T", img.lattice, orbit);
  }
}

void iwasawa_corollary(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  const int W = working(ctx);
  auto R = PadicRing::get(p, n);
  PadicCyclo T = script_t(p, n, W);
  PadicCyclo one = PadicCyclo::scalar(R, W + 2, Rat(1));
  PadicCyclo log_c = field_log(one - PadicCyclo::root(R, W + 2, 1), W);
  for (const auto& th : generic_thetas(ctx, 1)) {
    ctx.character(th.label);
    const PadicCyclo eT = e_theta(th.k, T), eC = e_theta(th.k, log_c);
    // (a)
    auto img_c = log_image(p, n, LogSource::closure_C, Projector::e_theta, th.k, ctx.N(), false);
    auto orbit_c = lattice(p, n, gamma_orbit(eC));
    compare_lattices(ctx, th.label + " e log C = Z_p[Gamma] e log(1 - zeta)", img_c.lattice, orbit_c);
    // (b)
    auto eps = epsilon_from_lvalues(th.chi, 1, R, W);
    auto coeffs = scalar_coefficients(eps);
    if (!coeffs) throw InternalError("iwasawa-corollary: eps_n(theta) has non-scalar coefficients");
    auto sol = solve_left(p, gamma_orbit(eT), to_pvec(eC));
    if (!sol) {
      ctx.sub(th.label + " u_n = -eps_n(theta)", false, "e log(1 - zeta) outside Z_p[Gamma] e T");
    } else {
      const int bound = std::min(sol->precision, ctx.cmp());
      Decision all = Decision::yes;
      for (size_t b = 0; b < sol->u.size(); ++b) {
        auto u = PadicFraction::from_rational(p, sol->precision + 8, sol->u[b]);
        Decision d = agree_mod(u, -(*coeffs)[b], bound);
        if (d == Decision::no) {
          ctx.witness(th.label + ": u_" + std::to_string(b), to_string(sol->u[b]));
          all = d;
          break;
        }
        if (d == Decision::undecidable) all = d;
      }
      ctx.sub(th.label + " u_n = -eps_n(theta)", all, "mod " + pow_label(p, bound));
    }
    // (c)
    std::vector<PVec> mult;
    auto Gm = eps.group();
    PadicCyclo zero(R, W), unit = PadicCyclo::scalar(R, W, Rat(1));
    for (int b = 0; b < Gm->size(); ++b) mult.push_back(to_pvec(eps * PadicGroupRing::basis(Gm, zero, unit, b)));
    PadicLattice M(p, Gm->size(), mult);
    const long v = M.volume_valuation();
    ctx.witness(th.label + ": |Z_p[Gamma]/eps|", pow_label(p, v));
    auto img_u = log_image(p, n, LogSource::U, Projector::e_theta, th.k, ctx.N());
    check_index(ctx, th.label + " [e log U : e log C] = |Z_p[Gamma]/eps|", img_u.lattice, img_c.lattice, v);
  }
}

void leopoldt_index(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  PadicCyclo T = script_t(p, n, working(ctx));
  for (const auto& th : select_delta(p, ctx.params().theta)) {
    ctx.character(th.label);
    auto big = lattice(p, n, projected_order(p, n, Projector::e_theta, th.k, ctx.N(), -n));
    auto orbit = lattice(p, n, gamma_orbit(e_theta(th.k, T)));
    check_index(ctx, th.label + " [p^-n e O : Z_p[Gamma] e T]", big, orbit, n * ipow(p, n));
  }
  // [Lambda_n : Z_p[Gamma_n]] with Lambda_n = sum_d Z_p[Gamma_n] e_d, exact
  const int size = static_cast<int>(ipow(p, n));
  std::vector<RatVec> gens;
  GroupPtr G;
  for (int d = 0; d <= n; ++d) {
    auto e = idempotent_conductor_level(p, d, n);
    G = e.group();
    for (int b = 0; b < size; ++b) {
      auto x = e * RatGroupRing::basis(G, Rat(0), Rat(1), b);
      gens.emplace_back(x.coeffs().begin(), x.coeffs().end());
    }
  }
  auto Lambda = IntLattice::from_generators(size, gens);
  auto Zp = IntLattice::standard(size);
  if (!Lambda.contains(Zp)) {
    ctx.sub("[Lambda_n : Z_p[Gamma_n]]", false, "Z[Gamma_n] not inside the maximal order");
    return;
  }
  Int ix = index(Lambda, Zp);
  const long expected = (ipow(p, n) - 1) / (p - 1);
  ctx.witness("[Lambda_n : Z_p[Gamma_n]]", to_string(ix));
  ctx.sub("[Lambda_n : Z_p[Gamma_n]]", ix == pow_int(p, expected), "expected " + pow_label(p, expected));
}

void log_index(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  for (const auto& th : select_delta(p, ctx.params().theta)) {
    ctx.character(th.label);
    auto big = lattice(p, n, projected_order(p, n, Projector::e_theta, th.k, ctx.N(), -n));
    auto img = log_image(p, n, LogSource::U, Projector::e_theta, th.k, ctx.N(), false);
    ctx.witness(th.label + ": generators", img.recipe);
    check_index(ctx, th.label + " [p^-n e O : e log U]", big, img.lattice,
                expected_log_index(p, n, Projector::e_theta, th.k));
    auto v = log_image(p, n, LogSource::V, Projector::e_theta, th.k, ctx.N());
    check_index(ctx, th.label + " [p^-n e O : e log V]", big, v.lattice, (n + 1) * ipow(p, n));
  }
}

void ell_corollary(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  const int W = working(ctx);
  auto R = PadicRing::get(p, n);
  auto l = ell_operator(p, n);
  Cyclo scriptT = build_special(SpecialKind::script_T, p, 1, n);
  Cyclo leoT = build_special(SpecialKind::leopoldt_T, p, 1, n);
  ctx.sub("l_n scriptT = T", act(l, scriptT) == leoT);
  PadicCyclo T = PadicCyclo::embed(R, W, leoT);
  for (const auto& th : generic_thetas(ctx)) {
    ctx.character(th.label);
    auto img = log_image(p, n, LogSource::U, Projector::e_theta, th.k, ctx.N());
    std::vector<PVec> rows;
    for (const auto& g : img.gens) rows.push_back(to_pvec(act(l, from_pvec(R, g))));
    auto lhs = lattice(p, n, rows);
    auto orbit = lattice(p, n, gamma_orbit(e_theta(th.k, T)));
    compare_lattices(ctx, th.label + " e L U = Z_p[Gamma] e T", lhs, orbit);
  }
}

}  // namespace iwlab::lab
