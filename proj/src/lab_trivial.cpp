// The trivial Delta-component: T_Delta log C, T_Delta log U and the norm-one units.
#include "lab_internal.hpp"

namespace iwlab::lab {

namespace {

struct TrivialData {
  RingPtr R;
  int W;
  PadicCyclo tilde;     // T_Delta tilde-T_n
  PadicCyclo p_zeta_p;  // T_Delta p zeta_p
};

TrivialData trivial_data(const CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto R = PadicRing::get(p, n);
  const int W = ctx.N() + 2 * n + 4;
  PadicCyclo tilde = t_delta(PadicCyclo::embed(R, W, build_special(SpecialKind::tilde_T, p, 1, n)));
  PadicCyclo pz = t_delta(PadicCyclo::root(R, W, ipow(p, n)).mul_p(1));
  return {R, W, tilde, pz};
}

PadicLattice span(long p, int n, const std::vector<PVec>& rows) {
  return PadicLattice(p, static_cast<int>((p - 1) * ipow(p, n)), rows);
}

std::vector<PVec> concat(std::vector<PVec> a, const std::vector<PVec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

void trivial_prop(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto D = trivial_data(ctx);
  ctx.character("1");
  PadicCyclo one = PadicCyclo::scalar(D.R, D.W + 2, Rat(1));
  PadicCyclo lg = t_delta(field_log(one - PadicCyclo::root(D.R, D.W + 2, 1), D.W));
  PadicCyclo lhs = lg.galois(1 + p) - lg;  // T_Delta log((1 - zeta)^(gamma0 - 1))
  auto Gm = GaloisGroup::Gamma(p, n);
  bool eta_seen = false;
  for (const auto& chi : gamma_characters(p, n)) {
    auto e = idempotent_gamma(chi, Gm, D.R, D.W);
    ctx.sub("chi " + chi.label() + ": e T log((1 - zeta)^(gamma0 - 1)) = -e T tilde-T",
            agree(act(e, lhs), -act(e, D.tilde), ctx.cmp()));
    if (chi.is_trivial()) continue;
    // the same identity with e_chi eta_n = (1 - chi(gamma0)) L_p(1, chi) e_chi kept
    PadicCyclo one_c = PadicCyclo::scalar(D.R, D.W, Rat(1));
    PadicCyclo eta = (one_c - chi.padic_value(D.R, D.W, 1 + p)) * lp_at_one(chi, D.R, D.W);
    eta_seen = true;
    ctx.witness("chi " + chi.label() + ": with e_chi eta_n", to_string(agree(act(e, lhs), eta * act(e, D.tilde), ctx.cmp())));
  }
  if (eta_seen) ctx.note("the per-character identity as stated omits the factor e_chi eta_n; see the witnesses");
  auto img = log_image(p, n, LogSource::closure_C, Projector::T_Delta, 0, ctx.N(), false);
  compare_lattices(ctx, "T log C = Z_p[Gamma] T tilde-T", img.lattice, span(p, n, gamma_orbit(D.tilde)));
  ctx.note("closure of global units replaced by the closure of cyclotomic units");
}

void trivial_index(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto D = trivial_data(ctx);
  ctx.character("1");
  auto big = span(p, n, projected_order(p, n, Projector::T_Delta, 0, ctx.N(), -n));
  auto sub = span(p, n, gamma_orbit(D.p_zeta_p + D.tilde));
  check_index(ctx, "[T p^-n O : Z_p[Gamma] T(p zeta_p + tilde-T)]", big, sub, n * ipow(p, n) + n + 1);
  // the e_0-factor read as [p^-n Z_p : p Z_p]
  auto low = span(p, n, {to_pvec(PadicCyclo::scalar(D.R, D.W, Rat(1)).mul_p(-n))});
  auto high = span(p, n, {to_pvec(PadicCyclo::scalar(D.R, D.W, Rat(1)).mul_p(1))});
  check_index(ctx, "[p^-n Z_p : p Z_p]", low, high, n + 1);
}

void trivial_theorem(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto D = trivial_data(ctx);
  ctx.character("1");
  ctx.sub("T p zeta_p = -p", agree(D.p_zeta_p, PadicCyclo::scalar(D.R, D.W, Rat(-p)), ctx.cmp()));
  auto M = span(p, n, concat(gamma_orbit(D.tilde), gamma_orbit(D.p_zeta_p)));
  auto img = log_image(p, n, LogSource::U, Projector::T_Delta, 0, ctx.N());
  compare_lattices(ctx, "T log U = Z_p[Gamma] T tilde-T + Z_p[Gamma] p", img.lattice, M);
  check_index(ctx, "[M : Z_p[Gamma] T(p zeta_p + tilde-T)]", M, span(p, n, gamma_orbit(D.p_zeta_p + D.tilde)), n);
}

void norm_one_corollary(CheckContext& ctx) {
  const long p = ctx.p();
  const int n = ctx.n();
  auto R = PadicRing::get(p, n);
  ctx.character("1");
  auto img = log_image(p, n, LogSource::U, Projector::T_Delta, 0, ctx.N());
  // T log U' = T log U cut by the trace: log N(u) = Tr log u and 1 + pZ_p is torsion free
  std::vector<PadicCyclo> g;
  std::vector<PadicFraction> tr;
  for (const auto& v : img.gens) {
    g.push_back(PadicCyclo::from_coeffs(R, v.prec, v.c, v.shift));
    tr.push_back(g.back().trace());
  }
  int pivot = -1;
  for (size_t i = 0; i < tr.size(); ++i) {
    auto v = tr[i].valuation();
    if (v && (pivot < 0 || *v < *tr[static_cast<size_t>(pivot)].valuation())) pivot = static_cast<int>(i);
  }
  std::vector<PVec> kernel;
  for (size_t j = 0; j < g.size(); ++j) {
    if (static_cast<int>(j) == pivot) continue;
    if (pivot < 0) {
      kernel.push_back(to_pvec(g[j]));
      continue;
    }
    PadicFraction q = tr[j] / tr[static_cast<size_t>(pivot)];
    if (!q.is_integral()) throw InternalError("norm-one-corollary: trace pivot is not minimal");
    kernel.push_back(to_pvec(g[j] - g[static_cast<size_t>(pivot)] * q.numerator()));
  }
  auto lhs = span(p, n, kernel);
  auto rhs = log_image(p, n, LogSource::closure_C, Projector::T_Delta, 0, ctx.N(), false);
  compare_lattices(ctx, "T log U' = T log C", lhs, rhs.lattice);
}

}  // namespace iwlab::lab
