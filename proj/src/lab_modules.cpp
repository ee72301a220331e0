#include <map>
#include <mutex>
#include <tuple>

#include "iwlab/parallel.hpp"
#include "lab_internal.hpp"

namespace iwlab {

namespace lab {

std::string pow_label(long p, long e) { return std::to_string(p) + "^" + std::to_string(e); }

std::string decision_label(Decision d) { return to_string(d); }

Decision agree(const PadicCyclo& a, const PadicCyclo& b, int A) { return a.equals_mod(b, A); }

std::vector<DirichletCharacter> characters_mod(long m, int parity, long multiple_of) {
  std::vector<DirichletCharacter> out;
  for (const auto& c : enumerate_characters(m)) {
    if (c.is_trivial()) continue;
    if (parity != 0 && c.parity() != parity) continue;
    if (c.conductor() % multiple_of) continue;
    out.push_back(c);
  }
  return out;
}

bool selected(const std::string& sel, const DirichletCharacter& chi) {
  if (sel.empty() || sel == "all") return true;
  if (sel == "quad" || sel == "quadratic") return chi.order() == 2;
  return sel == chi.label() || sel == chi.key();
}

const DeltaCharacter& delta_char(long p, int k) {
  static std::mutex mu;
  static std::map<long, std::vector<DeltaCharacter>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(p);
  if (it == table.end()) it = table.emplace(p, delta_characters(p)).first;
  return it->second.at(static_cast<size_t>(mod(k, p - 1)));
}

PadicCyclo e_theta(int k, const PadicCyclo& x) {
  const auto& R = x.ring();
  const long p = R->p;
  // e_theta = (1/(p-1)) sum theta-bar(delta) delta, values omega^{-k}(a) are Teichmuller powers
  auto D = GaloisGroup::Delta(p, R->n);
  const int W = x.precision() - std::min(0, x.shift()) + 2;
  PadicCyclo out(R, x.precision());
  for (long a = 1; a < p; ++a) {
    PadicScalar w = teichmuller(a, p, W).pow(Int(mod(-static_cast<long>(k), p - 1)));
    out += x.galois(D->elem(static_cast<int>(a - 1))) * w;
  }
  return out.mul_rational(Rat(1, p - 1));
}

PadicCyclo t_delta(const PadicCyclo& x) {
  const auto& R = x.ring();
  auto D = GaloisGroup::Delta(R->p, R->n);
  PadicCyclo out(R, x.precision());
  for (int i = 0; i < D->size(); ++i) out += x.galois(D->elem(i));
  return out;
}

PadicCyclo act_gamma(const PadicGroupRing& x, const PadicCyclo& v) { return act(x, v); }

Decision compare_lattices(CheckContext& ctx, const std::string& label, const PadicLattice& a, const PadicLattice& b) {
  Decision ab = a.contains(b), ba = b.contains(a);
  ctx.sub(label + ": second in first", ab);
  ctx.sub(label + ": first in second", ba);
  if (ab == Decision::yes && ba == Decision::yes) ctx.witness(label + ": hnf digest", a.digest().substr(0, 16));
  if (ab == Decision::no || ba == Decision::no) return Decision::no;
  if (ab == Decision::yes && ba == Decision::yes) return Decision::yes;
  return Decision::undecidable;
}

void check_index(CheckContext& ctx, const std::string& label, const PadicLattice& a, const PadicLattice& b,
                 long expected) {
  const long p = a.prime();
  try {
    auto ix = index(a, b);
    if (ix.status != Decision::yes) {
      ctx.sub(label, Decision::undecidable, ix.note);
      return;
    }
    ctx.witness(label + ": index", pow_label(p, ix.exponent));
    ctx.sub(label, ix.exponent == expected, "found " + pow_label(p, ix.exponent) + ", expected " + pow_label(p, expected));
  } catch (const ContainmentError& e) {
    ctx.sub(label, Decision::no, std::string("not a sublattice: ") + e.what());
  } catch (const RankError& e) {
    ctx.sub(label, Decision::no, std::string("rank mismatch: ") + e.what());
  }
}

}  // namespace lab

using namespace lab;

// ----------------------------------------------------------------------------

PadicCyclo apply_projector(Projector proj, int theta_k, const PadicCyclo& x) {
  switch (proj) {
    case Projector::none:
      return x;
    case Projector::e_theta:
      return e_theta(theta_k, x);
    case Projector::T_Delta:
      return t_delta(x);
    case Projector::minus:
      return (x - x.conj()).mul_rational(Rat(1, 2));
  }
  return x;
}

long expected_log_index(long p, int n, Projector proj, int theta_k) {
  const long base = n * ipow(p, n);
  auto one = [&](int k) -> long {
    k = static_cast<int>(mod(k, p - 1));
    if (k == 0) return base + 1;
    if (k == 1) return base + n + 1;
    return base;
  };
  long total = 0;
  switch (proj) {
    case Projector::e_theta:
      return one(theta_k);
    case Projector::T_Delta:
      return one(0);
    case Projector::none:
      for (int k = 0; k < p - 1; ++k) total += one(k);
      return total;
    case Projector::minus:
      for (int k = 1; k < p - 1; k += 2) total += one(k);
      return total;
  }
  return total;
}

std::vector<PVec> projected_order(long p, int n, Projector proj, int theta_k, int N, int shift) {
  auto R = PadicRing::get(p, n);
  std::vector<PVec> out;
  for (int k = 0; k < R->phi; ++k)
    out.push_back(to_pvec(apply_projector(proj, theta_k, PadicCyclo::root(R, N, k).mul_p(shift))));
  return out;
}

std::vector<PadicCyclo> gamma_orbit_elements(const PadicCyclo& x) {
  const auto& R = x.ring();
  auto Gm = GaloisGroup::Gamma(R->p, R->n);
  std::vector<PadicCyclo> out;
  for (int b = 0; b < Gm->size(); ++b) out.push_back(x.galois(Gm->elem(b)));
  return out;
}

std::vector<PVec> gamma_orbit(const PadicCyclo& x) {
  std::vector<PVec> out;
  for (const auto& y : gamma_orbit_elements(x)) out.push_back(to_pvec(y));
  return out;
}

namespace {

const char* source_name(LogSource s) {
  switch (s) {
    case LogSource::U:
      return "U_n";
    case LogSource::closure_C:
      return "closure of C_n";
    case LogSource::V:
      return "V = 1 + p O_n";
  }
  return "?";
}

// logs of the generators, before projection; memoized per (p, n, source, N, range)
std::vector<PadicCyclo> generator_logs(long p, int n, LogSource source, int N, int range) {
  static std::mutex mu;
  static std::map<std::tuple<long, int, int, int, int>, std::vector<PadicCyclo>> memo;
  const auto key = std::make_tuple(p, n, static_cast<int>(source), N, range);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto R = PadicRing::get(p, n);
  const int W = N + 2 * n + 6;
  std::vector<PadicCyclo> args;
  std::vector<PadicCyclo> logs;
  if (source == LogSource::closure_C) {
    // (1 - zeta^a) / (1 - zeta), 1 < a < m/2, generate the cyclotomic units up to roots of unity
    const long m = R->m;
    PadicCyclo base = log_one_minus_root(R, N, m, 1);
    for (long a = 2; 2 * a < m; ++a)
      if (a % p) logs.push_back(log_one_minus_root(R, N, m, a) - base);
  } else {
    PadicCyclo one = PadicCyclo::scalar(R, W, Rat(1));
    PadicCyclo pi = PadicCyclo::root(R, W, 1) - one;
    PadicCyclo pw = source == LogSource::V ? one.mul_p(1) : one;
    const int start = source == LogSource::V ? 0 : 1;
    for (int i = 0; i < start; ++i) pw *= pi;
    for (int i = start; i < range; ++i) {
      args.push_back(one + pw);
      pw *= pi;
    }
    logs.resize(args.size());
    const bool par = parallel_enabled();
#pragma omp parallel for schedule(dynamic) if (par)
    for (long i = 0; i < static_cast<long>(args.size()); ++i) logs[i] = log_principal(args[i], N);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, logs);
  return logs;
}

LogImageLattice build(long p, int n, LogSource source, Projector proj, int theta_k, int N, int range) {
  auto logs = generator_logs(p, n, source, N, range);
  std::vector<PVec> gens;
  for (const auto& l : logs) gens.push_back(to_pvec(apply_projector(proj, theta_k, l.with_precision(N))));
  auto R = PadicRing::get(p, n);
  std::ostringstream recipe;
  recipe << "log of " << source_name(source);
  if (source == LogSource::U) recipe << ", generators 1 + pi^i, 1 <= i < " << range;
  if (source == LogSource::V) recipe << ", generators 1 + p pi^i, 0 <= i < " << range;
  if (source == LogSource::closure_C) recipe << ", generators (1 - zeta^a)/(1 - zeta), 1 < a < p^{n+1}/2";
  PadicLattice L(p, R->phi, gens);
  return LogImageLattice{p, n, source, proj, theta_k, range, std::move(gens), std::move(L), recipe.str()};
}

}  // namespace

LogImageLattice log_image(long p, int n, LogSource source, Projector proj, int theta_k, int N, bool cross_check) {
  auto R = PadicRing::get(p, n);
  const int e = R->phi;
  int range = 2 * e;
  if (source == LogSource::closure_C || !cross_check) return build(p, n, source, proj, theta_k, N, range);
  if (source == LogSource::V) {
    auto L = build(p, n, source, proj, theta_k, N, range);
    PadicLattice pO(p, e, projected_order(p, n, proj, theta_k, N, 1));
    Decision d = equals(L.lattice, pO);
    if (d == Decision::undecidable) throw PrecisionError("log_image: V self-test undecidable");
    if (d == Decision::no) throw InternalError("log_image: log V differs from p O_n");
    return L;
  }
  const long expected = expected_log_index(p, n, proj, theta_k);
  PadicLattice O(p, e, projected_order(p, n, proj, theta_k, N, -n));
  for (int attempt = 0; attempt < 3; ++attempt, range *= 2) {
    auto L = build(p, n, source, proj, theta_k, N, range);
    PadicIndex ix;
    try {
      ix = index(O, L.lattice);
    } catch (const DomainError& err) {
      throw InternalError(std::string("log_image: cross-check failed: ") + err.what());
    }
    if (ix.status != Decision::yes) throw PrecisionError("log_image: cross-check index undecidable");
    if (ix.exponent == expected) return L;
    if (ix.exponent < expected)
      throw InternalError("log_image: index " + pow_label(p, ix.exponent) + " below the expected " + pow_label(p, expected));
  }
  throw InternalError("log_image: generator range exhausted before the index reached " + pow_label(p, expected));
}

// ----------------------------------------------------------------------------

std::optional<PadicSolution> solve_left(long p, const std::vector<PVec>& rows, const PVec& target) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) throw DomainError("solve_left: no rows");
  const int m = static_cast<int>(target.c.size());
  // scale so every entry is integral: value * p^s
  int s = -target.shift, P = target.prec;
  for (const auto& r : rows) {
    s = std::max(s, -r.shift);
    P = std::min(P, r.prec);
  }
  auto value = [&](const PVec& v, int j) { return Rat(v.c[j] * pow_int(p, v.shift + s)); };
  // equations: sum_i u_i rows[i][j] = target[j], j < m; columns 0..k-1 unknowns, column k the target
  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(k + 1));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < k; ++i) A[j][i] = value(rows[i], j);
    A[j][k] = value(target, j);
  }
  auto vp = [p](const Rat& x) {
    return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
  };
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  long D = 0;
  for (int step = 0; step < k; ++step) {
    int br = -1, bc = -1, bv = 0;
    for (int r = step; r < m; ++r)
      for (int c = step; c < k; ++c) {
        if (A[r][c] == 0) continue;
        int v = vp(A[r][c]);
        if (br < 0 || v < bv) br = r, bc = c, bv = v;
      }
    if (br < 0) throw DomainError("solve_left: rows are dependent");
    std::swap(A[step], A[br]);
    for (auto& row : A) std::swap(row[step], row[bc]);
    std::swap(perm[step], perm[bc]);
    D += bv;
    for (int r = step + 1; r < m; ++r) {
      if (A[r][step] == 0) continue;
      Rat f = A[r][step] / A[step][step];
      for (int c = step; c <= k; ++c) A[r][c] -= f * A[step][c];
    }
  }
  std::vector<Rat> x(k);
  for (int i = k - 1; i >= 0; --i) {
    Rat t = A[i][k];
    for (int c = i + 1; c < k; ++c) t -= A[i][c] * x[c];
    x[i] = t / A[i][i];
  }
  PadicSolution sol;
  sol.u.resize(k);
  int minv = 0;
  for (int i = 0; i < k; ++i) {
    sol.u[perm[i]] = x[i];
    if (x[i] != 0) minv = std::min(minv, vp(x[i]));
  }
  const long bound = static_cast<long>(P) + s + minv;
  sol.precision = static_cast<int>(bound - D);
  if (sol.precision <= 0) throw PrecisionError("solve_left: no digits certified");
  for (int r = k; r < m; ++r)
    if (A[r][k] != 0 && vp(A[r][k]) < bound) return std::nullopt;
  return sol;
}

// ----------------------------------------------------------------------------

Int generator_polynomial_mod_p2(long p, long a) {
  const Int M = Int(p) * p;
  const Int alpha = teichmuller(a, p, 2).residue();
  Int sum = 0, apow = 1;
  for (long k = 1; k < p; ++k) {
    apow = mod(apow * alpha, M);
    Int c = binomial(p, k) / p;
    Int term = c * teichmuller(k, p, 2).residue() * apow;
    sum += k % 2 ? -term : term;
  }
  return mod(sum, M);
}

std::vector<long> find_alpha(long p) {
  if (p < 5 || !is_prime(p)) throw DomainError("find_alpha: needs a prime p >= 5");
  std::vector<long> out;
  for (long a = 2; a <= p - 2; ++a)
    if (generator_polynomial_mod_p2(p, a) != 0) out.push_back(a);
  return out;
}

}  // namespace iwlab
