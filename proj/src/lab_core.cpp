#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>

#include "iwlab/parallel.hpp"
#include "lab_internal.hpp"

namespace iwlab {

const char* to_string(Status s) {
  switch (s) {
    case Status::verified:
      return "verified";
    case Status::falsified:
      return "falsified";
    case Status::undecidable:
      return "undecidable-at-precision";
    case Status::vacuous:
      return "vacuous";
  }
  return "?";
}

namespace {
int severity(Status s) {
  switch (s) {
    case Status::vacuous:
      return 0;
    case Status::verified:
      return 1;
    case Status::undecidable:
      return 2;
    case Status::falsified:
      return 3;
  }
  return 3;
}
}  // namespace

Status combine(Status a, Status b) { return severity(a) >= severity(b) ? a : b; }

int exit_code(Status s) {
  switch (s) {
    case Status::falsified:
      return 1;
    case Status::undecidable:
      return 2;
    default:
      return 0;
  }
}

std::string CheckParams::key() const {
  std::ostringstream os;
  os << "p=" << p << ";d=" << d << ";n=" << n;
  if (!theta.empty()) os << ";theta=" << theta;
  if (reading != "F-1") os << ";reading=" << reading;
  if (level >= 0) os << ";i=" << level;
  if (precision) os << ";N=" << precision;
  return os.str();
}

int default_precision(long p, int n) { return static_cast<int>(2 * (n * ipow(p, n) + n + 1) + 16); }

CheckContext::CheckContext(const CheckParams& params, int N) : params_(params), N_(N) {
  rep_.params = params;
  rep_.precision = N;
}

void CheckContext::sub(const std::string& label, Decision d, const std::string& detail) {
  ++subs_;
  Status s = d == Decision::yes ? Status::verified : d == Decision::no ? Status::falsified : Status::undecidable;
  rep_.status = combine(rep_.status, s);
  std::string v = to_string(s);
  if (!detail.empty()) v += " (" + detail + ")";
  rep_.witnesses.push_back({label, v});
}

void CheckContext::sub(const std::string& label, bool ok, const std::string& detail) {
  sub(label, ok ? Decision::yes : Decision::no, detail);
}

void CheckContext::witness(const std::string& key, const std::string& value) { rep_.witnesses.push_back({key, value}); }

void CheckContext::note(const std::string& s) {
  if (std::find(rep_.notes.begin(), rep_.notes.end(), s) == rep_.notes.end()) rep_.notes.push_back(s);
}

void CheckContext::character(const std::string& label) {
  if (std::find(rep_.characters.begin(), rep_.characters.end(), label) == rep_.characters.end())
    rep_.characters.push_back(label);
}

// ----------------------------------------------------------------------------

std::vector<DeltaCharacter> delta_characters(long p) {
  std::vector<DeltaCharacter> out;
  auto w = DirichletCharacter::teichmuller(p);
  for (int k = 0; k < p - 1; ++k) {
    std::string label = k == 0 ? "1" : k == 1 ? "omega" : "omega^" + std::to_string(k);
    out.push_back({k, w.pow(k), label});
  }
  return out;
}

std::vector<DeltaCharacter> select_delta(long p, const std::string& sel) {
  auto all = delta_characters(p);
  if (sel.empty() || sel == "all") return all;
  int k = -1;
  if (sel == "trivial" || sel == "1")
    k = 0;
  else if (sel == "omega")
    k = 1;
  else if (sel == "quad" || sel == "quadratic")
    k = static_cast<int>((p - 1) / 2);
  else if (sel.rfind("omega^", 0) == 0)
    k = static_cast<int>(mod(std::stol(sel.substr(6)), p - 1));
  else
    throw DomainError("unknown character selector: " + sel);
  return {all[k]};
}

// ----------------------------------------------------------------------------

const std::vector<CheckInfo>& check_registry() {
  using namespace lab;
  static const std::vector<CheckInfo> reg = {
      {"norm-relation-1", "Recall the well-known relation", "N_{K_n/K_i}(zeta_{q_n}^{F^{i-n}} - 1) = zeta_{q_i} - 1, exact",
       norm_relation},
      {"gauss-l-lemma", "$\\frac{1}{p^n} \\theta(F^{n-k}) \\tau(\\overline{\\theta \\chi})$",
       "p^{-n} theta(F^{n-k}) tau L_p(1, theta chi) against the chi-part of the log sum", gauss_l_lemma},
      {"pd-identity", "$\\dot{\\mathscr T}_n= \\sum_{i=0}^n F^{n-i} p^{i-n} \\zeta_{q_i}$",
       "eps_n(theta) acting on the dotted T_n, f_theta = pd", pd_identity},
      {"d-identities", "If $f_\\theta =d$ then", "log sum and Gauss sum identities for f_theta = d", d_identities},
      {"euler-factor-theorem", "a kind of Euler factor", "eps_n(theta) dotted T_n = -E(theta) log sum, both conductor cases",
       euler_factor_theorem},
      {"script-T-lemma", "$\\tau(\\overline \\theta_2) \\epsilon_n(\\theta) e_{\\theta_1} \\mathscr T_n$",
       "tau(theta2-bar) eps_n e_theta1 T_n = -sum theta2-bar(y) e_theta1 log(alpha^y - zeta)", script_t_lemma},
      {"unprimitive-x", "$x(\\theta) \\in \\mathbb{Z}_p[\\theta]$", "imprimitive log sums differ by an integral factor x(theta)",
       unprimitive_x},
      {"u-n-exists", "$u_n e_{\\theta_1} \\mathscr T_n$", "u_n is integral and u_n e T_n = e log(alpha - zeta)", u_n_exists},
      {"main-theorem", "$e_\\theta \\log_p U_n$", "e_theta log U_n = Z_p[Gamma_n] e_theta T_n", main_theorem},
      {"iwasawa-corollary", "$e_\\theta U_n/\\overline C_n \\simeq$", "cyclotomic units, u_n = -eps_n(theta) and the quotient order",
       iwasawa_corollary},
      {"leopoldt-index", "$=p^{np^n}$", "[p^{-n} e_theta O_n : Z_p[Gamma_n] e_theta T_n] = p^{n p^n}", leopoldt_index},
      {"log-index", "$p^{np^n+n+1}$", "[p^{-n} e_theta O_n : e_theta log U_n] for the three classes of theta", log_index},
      {"ell-corollary", "$e_\\theta \\mathscr L_n U_n$", "e_theta l_n log U_n = Z_p[Gamma_n] e_theta T_n", ell_corollary},
      {"teich-generator", "is a generator of", "generator criterion for e_omega log(alpha - zeta_p)", teich_generator},
      {"teich-congruence", "$\\log_p(1+x) \\equiv \\frac{(1+x)^p-1}{p}$", "log(1+x) = ((1+x)^p - 1)/p mod p pi^2",
       teich_congruence},
      {"alpha-exists", "which is not possible", "some alpha in mu_{p-1} \\ {+-1} has P(alpha) != 0 mod p^2", alpha_exists},
      {"teich-theorem", "$(\\gamma_0-1-p) e_\\omega \\mathscr T_n$", "e_omega log U_n = Z_p[Gamma_n](gamma0 - 1 - p) e_omega T_n",
       teich_theorem},
      {"trivial-prop", "note that the sum begins at $i=1$", "T_Delta log C_n = Z_p[Gamma_n] T_Delta T~_n", trivial_prop},
      {"trivial-index", "$p^{np^n+n+1}$", "[T_Delta p^{-n} O_n : Z_p[Gamma_n] T_Delta(p zeta_p + T~_n)]", trivial_index},
      {"trivial-theorem", "generated by $T_\\Delta$", "T_Delta log U_n generated by T_Delta T~_n and p", trivial_theorem},
      {"norm-one-corollary", "$N_{K_n/\\mathbb Q_p}(u)=1$", "T_Delta log U'_n = T_Delta log C_n", norm_one_corollary},
      {"minus-integrality", "$e_\\chi \\frac{1}{\\pi_n} \\in$", "e_chi(1/pi_n) integral for odd chi != omega^{-1}",
       minus_integrality},
      {"minus-identity", "$\\epsilon_n(\\chi) e_\\chi T_n$", "e_chi(1/pi_n) = eps_n(chi) e_chi T_n and the omega^{-1} twist",
       minus_identity},
      {"nu-membership", "There exists $\\nu_\\infty$", "log nu_n lies in the minus part of log U_n", nu_membership},
      {"stickelberger-ideal", "$\\mathscr{I}=I \\epsilon_n$", "Z[G_n] eps_n intersected with Z[G_n] equals I eps_n",
       stickelberger_ideal},
      {"minus-index-prop", "$= h_{p^{n+1}}^-$", "[Z[G_n]^- : I^-] = h^-", minus_index_prop},
      {"minus-2-power", "$2^{\\frac{|G_n|}{2}-1}$", "[I^- : (1 - j) I] = 2^{|G_n|/2 - 1}", minus_2_power},
      {"main-index-theorem", "$2^{\\frac{|G_n|}{2}-1}\\cdot h_{p^{n+1}}^-$", "[E_n^- : C_n] = 2^{|G_n|/2 - 1} h^-",
       main_index_theorem},
      {"restriction-defect", "$\\epsilon_n+(p-1)/2 N_n$", "restriction of eps_{n+1} is eps_n + (p-1)/2 N_n",
       restriction_defect},
      {"bernoulli-prime-to-p", "is rpime to $p$", "some theta2 makes B_{1, theta1 theta2 omega^{-1}} a p-adic unit",
       bernoulli_prime_to_p},
  };
  return reg;
}

const CheckInfo& find_check(const std::string& id) {
  for (const auto& c : check_registry())
    if (c.id == id) return c;
  throw DomainError("unknown check id: " + id);
}

VerificationReport run_check(const std::string& id, const CheckParams& params) {
  const auto& info = find_check(id);
  if (!is_prime(params.p) || params.p < 3) throw DomainError("p must be an odd prime");
  if (params.n < 0) throw DomainError("n must be nonnegative");
  if (params.d < 1 || (params.p - 1) % params.d) throw DomainError("d must divide p - 1");
  const auto t0 = std::chrono::steady_clock::now();
  int N = params.precision > 0 ? params.precision : default_precision(params.p, params.n);
  VerificationReport rep;
  for (int attempt = 0; attempt < 2; ++attempt, N *= 2) {
    CheckContext ctx(params, N);
    try {
      info.run(ctx);
    } catch (const PrecisionError& e) {
      ctx.sub("precision", Decision::undecidable, e.what());
    } catch (const InternalError& e) {
      ctx.sub("internal-error", Decision::no, e.what());
    }
    rep = ctx.report();
    rep.id = id;
    if (ctx.sub_count() == 0) rep.status = Status::vacuous;
    if (rep.status != Status::undecidable) break;
    if (attempt == 0) rep.notes.push_back("retried at precision " + std::to_string(2 * N));
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ----------------------------------------------------------------------------
// grids

namespace {

std::vector<GridPoint> points(const std::string& id, std::vector<long> ps, std::vector<long> ds, std::vector<int> ns) {
  std::vector<GridPoint> out;
  for (long p : ps)
    for (long d : ds) {
      if ((p - 1) % d) continue;
      for (int n : ns) {
        CheckParams c;
        c.p = p;
        c.d = d;
        c.n = n;
        out.push_back({id, c});
      }
    }
  return out;
}

void append(std::vector<GridPoint>& a, const std::vector<GridPoint>& b) { a.insert(a.end(), b.begin(), b.end()); }

}  // namespace

std::vector<GridPoint> grid_for(const std::string& id, bool ext) {
  find_check(id);
  std::vector<GridPoint> g;
  const std::vector<long> P = {3, 5, 7}, D = {1, 2, 3, 4};
  const std::vector<int> N01 = {0, 1};
  if (id == "norm-relation-1") {
    g = points(id, P, {1, 2}, {0, 1, 2});
  } else if (id == "gauss-l-lemma" || id == "pd-identity") {
    g = points(id, P, D, N01);
  } else if (id == "euler-factor-theorem" || id == "d-identities") {
    g = points(id, P, D, N01);
    append(g, points(id, {11}, {5}, {0}));
    if (ext) append(g, points(id, {11}, {5}, {1}));
  } else if (id == "script-T-lemma" || id == "unprimitive-x" || id == "u-n-exists") {
    g = points(id, {5, 7}, D, N01);
  } else if (id == "bernoulli-prime-to-p") {
    g = points(id, {5, 7}, {1}, {0});
    if (ext) append(g, points(id, {11, 13}, {1}, {0}));
  } else if (id == "main-theorem" || id == "iwasawa-corollary" || id == "ell-corollary") {
    g = points(id, P, {1}, N01);
    if (ext && id != "iwasawa-corollary") append(g, points(id, {3, 5}, {1}, {2}));
  } else if (id == "leopoldt-index" || id == "log-index") {
    g = points(id, P, {1}, N01);
    append(g, points(id, {3}, {1}, {2}));
    if (ext) append(g, points(id, {5}, {1}, {2}));
  } else if (id == "teich-generator" || id == "teich-theorem") {
    g = points(id, {5, 7}, {1}, id == "teich-generator" ? std::vector<int>{0} : N01);
    if (ext) append(g, points(id, {11}, {1}, {0}));
  } else if (id == "teich-congruence") {
    g = points(id, {5, 7, 11}, {1}, {0});
  } else if (id == "alpha-exists") {
    for (long p = 5; p <= 97; ++p)
      if (is_prime(p)) append(g, points(id, {p}, {1}, {0}));
  } else if (id == "trivial-prop" || id == "trivial-index" || id == "trivial-theorem" || id == "norm-one-corollary") {
    g = points(id, {3, 5}, {1}, N01);
    if (ext) append(g, points(id, {3}, {1}, {2}));
  } else if (id == "minus-integrality" || id == "minus-identity") {
    g = points(id, P, {1}, N01);
  } else if (id == "nu-membership") {
    g = points(id, {3, 5}, {1}, {0});
    append(g, points(id, {3}, {1}, {1}));
    if (ext) append(g, points(id, {5, 7}, {1}, {1, 0}));
  } else if (id == "stickelberger-ideal" || id == "minus-index-prop" || id == "minus-2-power" ||
             id == "main-index-theorem") {
    g = points(id, {3}, {1}, N01);
    append(g, points(id, {5, 7}, {1}, {0}));
    if (ext) append(g, points(id, {23}, {1}, {0}));
  } else if (id == "restriction-defect") {
    g = points(id, P, {1}, N01);
  }
  return g;
}

std::vector<GridPoint> default_grid(bool extended) {
  std::vector<GridPoint> g;
  for (const auto& c : check_registry()) append(g, grid_for(c.id, extended));
  return g;
}

std::vector<VerificationReport> run_grid(const std::vector<GridPoint>& pts, int workers,
                                         const std::function<void(const VerificationReport&)>& sink) {
  std::vector<VerificationReport> out(pts.size());
  if (workers <= 1) {
    for (size_t i = 0; i < pts.size(); ++i) {
      out[i] = run_check(pts[i].id, pts[i].params);
      if (sink) sink(out[i]);
    }
    return out;
  }
  // results are emitted in input order by whichever worker completes the next pending one
  std::mutex mu;
  std::vector<bool> done(pts.size(), false);
  size_t next = 0;
  ParallelScope serial_kernels(false);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long i = 0; i < static_cast<long>(pts.size()); ++i) {
    auto r = run_check(pts[i].id, pts[i].params);
    std::lock_guard<std::mutex> lock(mu);
    out[i] = std::move(r);
    done[i] = true;
    while (next < pts.size() && done[next]) {
      if (sink) sink(out[next]);
      ++next;
    }
  }
  return out;
}

}  // namespace iwlab
