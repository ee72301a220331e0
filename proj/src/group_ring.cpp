#include "iwlab/group_ring.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace iwlab {

GaloisGroup::GaloisGroup(Kind kind, long p, int n, long d, long M, std::vector<long> elems)
    : kind_(kind), p_(p), n_(n), d_(d), M_(M), elems_(std::move(elems)) {
  for (int i = 0; i < size(); ++i) index_[elems_[i]] = i;
  mul_.resize(static_cast<size_t>(size()) * size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      long r = static_cast<long>((static_cast<__int128>(elems_[i]) * elems_[j]) % M_);
      int k = find(r);
      if (k < 0) throw InternalError("GaloisGroup: not closed under multiplication");
      mul_[i * size() + j] = k;
    }
}

int GaloisGroup::find(long residue) const {
  auto it = index_.find(mod(residue, M_));
  return it == index_.end() ? -1 : it->second;
}

int GaloisGroup::inverse(int i) const {
  for (int j = 0; j < size(); ++j)
    if (mul(i, j) == 0) return j;
  throw InternalError("GaloisGroup: no inverse");
}

int GaloisGroup::conj_index() const { return find(M_ - 1); }

std::string GaloisGroup::name() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::G: s << "G_" << n_ << "(p=" << p_ << ")"; break;
    case Kind::Gamma: s << "Gamma_" << n_ << "(p=" << p_ << ",d=" << d_ << ")"; break;
    case Kind::Delta: s << "Delta(p=" << p_ << ",n=" << n_ << ")"; break;
  }
  return s.str();
}

namespace {

std::mutex group_mu;
std::map<std::tuple<int, long, int, long>, GroupPtr> group_cache;

GroupPtr cached(GaloisGroup::Kind kind, long p, int n, long d, const std::function<GroupPtr()>& make) {
  std::lock_guard<std::mutex> lock(group_mu);
  auto key = std::make_tuple(static_cast<int>(kind), p, n, d);
  auto it = group_cache.find(key);
  if (it != group_cache.end()) return it->second;
  auto g = make();
  group_cache[key] = g;
  return g;
}

}  // namespace

GroupPtr GaloisGroup::G(long p, int n) {
  return cached(Kind::G, p, n, 1, [&] {
    long M = ipow(p, n + 1);
    std::vector<long> e;
    for (long a = 1; a < M; ++a)
      if (a % p) e.push_back(a);
    return std::make_shared<const GaloisGroup>(Kind::G, p, n, 1, M, e);
  });
}

GroupPtr GaloisGroup::Gamma(long p, int n, long d) {
  return cached(Kind::Gamma, p, n, d, [&] {
    long M = d * ipow(p, n + 1), pn = ipow(p, n);
    std::vector<long> e;
    long x = 1;
    for (long b = 0; b < pn; ++b) {
      e.push_back(x);
      x = static_cast<long>((static_cast<__int128>(x) * (1 + p * d)) % M);
    }
    return std::make_shared<const GaloisGroup>(Kind::Gamma, p, n, d, M, e);
  });
}

GroupPtr GaloisGroup::Delta(long p, int n) {
  return cached(Kind::Delta, p, n, 1, [&] {
    long M = ipow(p, n + 1);
    std::vector<long> e;
    for (long a = 1; a < p; ++a) e.push_back(teichmuller(a, p, n + 1).residue().get_si());
    return std::make_shared<const GaloisGroup>(Kind::Delta, p, n, 1, M, e);
  });
}

long gamma_exponent(long p, int n, long d, long a) {
  static std::mutex mu;
  static std::map<std::tuple<long, int, long>, std::vector<long>> tables;
  const long m = ipow(p, n + 1);
  std::vector<long>* table;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& t = tables[{p, n, d}];
    if (t.empty()) {
      t.assign(m, -1);
      long x = 1;
      for (long b = 0; b < m / p; ++b) {
        t[x] = b;
        x = (x * mod(1 + p * d, m)) % m;
      }
    }
    table = &t;
  }
  a = mod(a, m);
  if (a % p == 0) throw DomainError("gamma_exponent: residue not a unit");
  // a / omega(a)
  Int w = teichmuller(a % p, p, n + 1).residue();
  Int u = mod(Int(a) * inverse_mod(w, Int(m)), Int(m));
  long b = (*table)[u.get_si()];
  if (b < 0) throw InternalError("gamma_exponent: not in 1 + pZ");
  return b;
}

PadicGroupRing to_padic(const RatGroupRing& x, const RingPtr& R, int A) {
  PadicGroupRing r(x.group(), PadicCyclo(R, A));
  for (int i = 0; i < x.group()->size(); ++i)
    if (x[i] != 0) r[i] = PadicCyclo::scalar(R, A, x[i]);
  return r;
}

std::optional<std::vector<PadicFraction>> scalar_coefficients(const PadicGroupRing& x) {
  std::vector<PadicFraction> out;
  for (const auto& c : x.coeffs()) {
    auto s = c.as_scalar();
    if (!s) return std::nullopt;
    out.push_back(*s);
  }
  return out;
}

std::string to_string(const RatGroupRing& x) {
  std::ostringstream s;
  bool first = true;
  for (int i = 0; i < x.group()->size(); ++i) {
    if (x[i] == 0) continue;
    if (!first) s << " + ";
    first = false;
    s << "(" << x[i].get_str() << ")[" << x.group()->elem(i) << "]";
  }
  return first ? "0" : s.str();
}

std::string to_string(const PadicGroupRing& x) {
  std::ostringstream s;
  bool first = true;
  for (int i = 0; i < x.group()->size(); ++i) {
    if (x[i].is_zero()) continue;
    if (!first) s << " + ";
    first = false;
    s << "(" << x[i].to_string() << ")[" << x.group()->elem(i) << "]";
  }
  return first ? "0" : s.str();
}

Decision equals_mod(const PadicGroupRing& a, const PadicGroupRing& b, int A) {
  if (a.group() != b.group()) throw DomainError("group ring: mismatched groups");
  Decision out = Decision::yes;
  for (int i = 0; i < a.group()->size(); ++i) {
    Decision e = a[i].equals_mod(b[i], A);
    if (e == Decision::no) return Decision::no;
    if (e == Decision::undecidable) out = Decision::undecidable;
  }
  return out;
}

PadicCyclo scale_by(const PadicCyclo& c, const PadicCyclo& v) {
  if (auto s = c.as_scalar()) return (v * s->numerator()).mul_p(-s->denominator_exponent());
  return c * v;
}

PadicCyclo act(const PadicGroupRing& x, const PadicCyclo& v) {
  const auto& G = *x.group();
  PadicCyclo out(v.ring(), std::min(v.precision(), x.zero().precision()));
  for (int i = 0; i < G.size(); ++i)
    if (!x[i].is_zero()) out += scale_by(x[i], v.galois(G.elem(i)));
  return out;
}

PadicCyclo act(const RatGroupRing& x, const PadicCyclo& v) {
  const auto& G = *x.group();
  PadicCyclo out(v.ring(), v.precision());
  for (int i = 0; i < G.size(); ++i)
    if (x[i] != 0) out += v.galois(G.elem(i)).mul_rational(x[i]);
  return out;
}

Cyclo act(const RatGroupRing& x, const Cyclo& v) {
  const auto& G = *x.group();
  if (G.modulus() % v.modulus() != 0) throw DomainError("act: modulus mismatch with " + G.name());
  Cyclo out(v.modulus());
  for (int i = 0; i < G.size(); ++i)
    if (x[i] != 0) out += v.galois(G.elem(i)) * x[i];
  return out;
}

namespace {

GroupPtr same_kind(const GroupPtr& g, int n) {
  switch (g->kind()) {
    case GaloisGroup::Kind::G: return GaloisGroup::G(g->prime(), n);
    case GaloisGroup::Kind::Gamma: return GaloisGroup::Gamma(g->prime(), n, g->d());
    case GaloisGroup::Kind::Delta: return GaloisGroup::Delta(g->prime(), n);
  }
  throw InternalError("same_kind");
}

template <class C>
GroupRingElement<C> restrict_impl(const GroupRingElement<C>& x, int n) {
  if (n > x.group()->level()) throw DomainError("restrict_to: target level above source");
  auto H = same_kind(x.group(), n);
  GroupRingElement<C> r(H, x.zero());
  for (int i = 0; i < x.group()->size(); ++i) r.at_residue(x.group()->elem(i)) += x[i];
  return r;
}

}  // namespace

RatGroupRing restrict_to(const RatGroupRing& x, int n) { return restrict_impl(x, n); }
PadicGroupRing restrict_to(const PadicGroupRing& x, int n) { return restrict_impl(x, n); }

std::vector<DirichletCharacter> gamma_characters(long p, int n, long d) {
  (void)d;
  const long m = ipow(p, n + 1);
  std::vector<DirichletCharacter> out;
  // (Z/p^{n+1})^x is cyclic; characters trivial on mu_{p-1} have exponent divisible by p-1
  for (long t = 0; t < ipow(p, n); ++t) out.emplace_back(m, std::vector<long>{(p - 1) * t});
  return out;
}

int gamma_conductor_level(const DirichletCharacter& chi, long p) {
  long f = chi.conductor();
  int k = 0;
  while (f > p) {
    f /= p;
    ++k;
  }
  return k;
}

PadicGroupRing idempotent_gamma(const DirichletCharacter& chi, const GroupPtr& gamma, const RingPtr& R, int A) {
  const int n = gamma->level();
  const long m = ipow(R->p, n + 1);
  PadicGroupRing e(gamma, PadicCyclo(R, A));
  auto cc = chi.conj();
  for (int i = 0; i < gamma->size(); ++i) e[i] = cc.padic_value(R, A + n, mod(gamma->elem(i), m)).mul_p(-n);
  return e;
}

PadicGroupRing idempotent_delta(const DirichletCharacter& theta, const RingPtr& R, int A) {
  const long p = R->p;
  if (theta.modulus() != p) throw DomainError("idempotent_delta: character must be defined mod p");
  auto D = GaloisGroup::Delta(p, R->n);
  PadicGroupRing e(D, PadicCyclo(R, A));
  auto tb = theta.conj();
  for (long a = 1; a < p; ++a) e[static_cast<int>(a - 1)] = tb.padic_value(R, A, a).mul_rational(Rat(1, p - 1));
  return e;
}

namespace {

// (1/p^{n-k}) sum over Gal(K_n/K_k)
RatGroupRing partial_norm_projector(long p, int k, int n) {
  auto Gm = GaloisGroup::Gamma(p, n, 1);
  RatGroupRing r(Gm, Rat(0));
  if (k < 0) return r;
  long step = ipow(p, k), cnt = ipow(p, n - k);
  for (long t = 0; t < cnt; ++t) r[static_cast<int>(t * step)] = Rat(1, cnt);
  return r;
}

}  // namespace

RatGroupRing idempotent_conductor_level(long p, int d, int n) {
  if (d < 0 || d > n) throw DomainError("idempotent_conductor_level: need 0 <= d <= n");
  return partial_norm_projector(p, d, n) - partial_norm_projector(p, d - 1, n);
}

RatGroupRing ell_operator(long p, int n) {
  RatGroupRing l(GaloisGroup::Gamma(p, n, 1), Rat(0));
  for (int i = 0; i <= n; ++i) l += idempotent_conductor_level(p, i, n).scaled(Rat(ipow(p, n - i)));
  return l;
}

RatGroupRing norm_delta(long p, int n) {
  RatGroupRing t(GaloisGroup::Delta(p, n), Rat(0));
  for (int i = 0; i < p - 1; ++i) t[i] = 1;
  return t;
}

RatGroupRing norm_G(long p, int n) {
  auto G = GaloisGroup::G(p, n);
  RatGroupRing t(G, Rat(0));
  for (int i = 0; i < G->size(); ++i) t[i] = 1;
  return t;
}

RatGroupRing stickelberger_eps(long p, int n) {
  auto G = GaloisGroup::G(p, n);
  const long M = ipow(p, n + 1);
  RatGroupRing e(G, Rat(0));
  for (long a = 1; a <= M; ++a)
    if (a % p) e.at_residue(a) = Rat(a, M);
  return e;
}

PadicGroupRing stickelberger_eps_twisted(const DirichletCharacter& theta, const RingPtr& R, int A) {
  const long p = R->p;
  const int n = R->n;
  const long M = ipow(p, n + 1);
  if (theta.modulus() != p) throw DomainError("stickelberger_eps_twisted: character must be defined mod p");
  auto Gm = GaloisGroup::Gamma(p, n, 1);
  const int W = A + n + 1;
  auto tw = theta * DirichletCharacter::teichmuller(p).conj();
  std::vector<PadicScalar> acc(Gm->size(), PadicScalar(p, W, 0));
  for (long a = 1; a <= M; ++a) {
    if (a % p == 0) continue;
    auto v = tw.padic_value(R, W, a).as_scalar();
    if (!v || v->denominator_exponent() != 0) throw InternalError("stickelberger_eps_twisted: value not in Z_p");
    acc[gamma_exponent(p, n, 1, a)] += PadicScalar(p, W, a) * v->numerator();
  }
  PadicGroupRing e(Gm, PadicCyclo(R, A));
  for (int b = 0; b < Gm->size(); ++b) e[b] = PadicCyclo(R, W, acc[b]).mul_p(-(n + 1)).with_precision(A);
  return e;
}

PadicCyclo TruncatedPowerSeries::eval(const PadicCyclo& t) const {
  if (coeffs.empty()) return PadicCyclo(t.ring(), t.precision());
  PadicCyclo r = coeffs.back();
  for (size_t k = coeffs.size() - 1; k-- > 0;) r = r * t + coeffs[k];
  return r;
}

PadicGroupRing reduce_mod_omega(const TruncatedPowerSeries& g, const GroupPtr& gamma) {
  const long pn = gamma->size();
  if (g.coeffs.empty()) throw DomainError("reduce_mod_omega: empty series");
  if (static_cast<long>(g.coeffs.size()) < pn) throw DomainError("reduce_mod_omega: truncation degree below p^n");
  const auto& R = g.coeffs[0].ring();
  int A = g.coeffs[0].precision();
  for (const auto& c : g.coeffs) A = std::min(A, c.precision());
  PadicGroupRing out(gamma, PadicCyclo(R, A));
  // T^k = (X - 1)^k = sum_b C(k,b) (-1)^{k-b} X^b, X^{p^n} = 1
  for (size_t k = 0; k < g.coeffs.size(); ++k) {
    if (g.coeffs[k].is_zero()) continue;
    for (size_t b = 0; b <= k; ++b) {
      Int c = binomial(static_cast<long>(k), static_cast<long>(b));
      if ((k - b) % 2) c = -c;
      out[static_cast<int>(b % pn)] += g.coeffs[k] * PadicScalar(R->p, A, mod(c, pow_int(R->p, A)));
    }
  }
  return out;
}

PadicGroupRing element_from_l_values(const std::vector<DirichletCharacter>& chars, const std::vector<PadicCyclo>& values,
                                     const GroupPtr& gamma, const RingPtr& R, int A) {
  const int n = gamma->level();
  const long m = ipow(R->p, n + 1);
  if (chars.size() != values.size() || static_cast<int>(chars.size()) != gamma->size())
    throw DomainError("element_from_l_values: need one value per character of Gamma_n");
  PadicGroupRing out(gamma, PadicCyclo(R, A));
  for (int b = 0; b < gamma->size(); ++b) {
    PadicCyclo s(R, A + n);
    for (size_t j = 0; j < chars.size(); ++j)
      s += scale_by(chars[j].conj().padic_value(R, A + n, mod(gamma->elem(b), m)), values[j]);
    s = s.mul_p(-n).with_precision(A);
    if (!s.as_scalar()) throw DomainError("element_from_l_values: coefficients do not descend to Q_p");
    out[b] = s;
  }
  return out;
}

PadicGroupRing epsilon_from_lvalues(const DirichletCharacter& theta, long d, const RingPtr& R, int A) {
  auto gamma = GaloisGroup::Gamma(R->p, R->n, d);
  auto chars = gamma_characters(R->p, R->n, d);
  std::vector<PadicCyclo> vals;
  for (const auto& chi : chars) vals.push_back(lp_at_one(theta * chi, R, A + R->n));
  return element_from_l_values(chars, vals, gamma, R, A);
}

}  // namespace iwlab
