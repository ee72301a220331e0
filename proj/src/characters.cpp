#include "iwlab/characters.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace iwlab {

// ----------------------------------------------------------------------------
// unit groups

UnitGroup::UnitGroup(long m) : m_(m) {
  if (m < 1) throw DomainError("UnitGroup: modulus must be positive");
  struct Component {
    long pk;
    std::vector<long> gens;    // residues mod pk
    std::vector<long> orders;
  };
  std::vector<Component> comps;
  for (auto [q, k] : factorize(m)) {
    long pk = ipow(q, k);
    if (q != 2) {
      comps.push_back({pk, {primitive_root(q, 2) % pk}, {euler_phi(pk)}});
    } else if (k == 2) {
      comps.push_back({pk, {3}, {2}});
    } else if (k >= 3) {
      comps.push_back({pk, {pk - 1, 5}, {2, pk / 4}});
    } else {
      comps.push_back({pk, {}, {}});
    }
  }
  // CRT lift: x = r mod pk, x = 1 mod m/pk
  auto lift = [m](long r, long pk) {
    long rest = m / pk;
    for (long x = 1; x < m; x += rest)
      if (mod(x, pk) == mod(r, pk)) return x;
    return 1L;
  };
  for (const auto& c : comps)
    for (size_t i = 0; i < c.gens.size(); ++i) {
      gens_.push_back(m == 1 ? 0 : lift(c.gens[i], c.pk));
      orders_.push_back(c.orders[i]);
    }
  for (long o : orders_) {
    exponent_ = lcm(exponent_, o);
    order_ *= o;
  }
  // discrete logs via one power table per component
  logs_.assign(m, {});
  std::vector<std::vector<std::vector<long>>> comp_logs;  // comp -> residue mod pk -> exps
  for (const auto& c : comps) {
    std::vector<std::vector<long>> t(c.pk);
    if (c.gens.empty()) {
      for (long r = 0; r < c.pk; ++r) t[r] = {};
    } else if (c.gens.size() == 1) {
      long x = 1 % c.pk;
      for (long e = 0; e < c.orders[0]; ++e) {
        t[x] = {e};
        x = x * c.gens[0] % c.pk;
      }
    } else {
      long x = 1;
      for (long e = 0; e < c.orders[1]; ++e) {
        t[x] = {0, e};
        t[c.pk - x] = {1, e};
        x = x * 5 % c.pk;
      }
    }
    comp_logs.push_back(std::move(t));
  }
  for (long a = 0; a < m; ++a) {
    if (gcd(a, m) != 1) continue;
    std::vector<long> v;
    for (size_t i = 0; i < comps.size(); ++i) {
      const auto& e = comp_logs[i][a % comps[i].pk];
      v.insert(v.end(), e.begin(), e.end());
    }
    logs_[a] = std::move(v);
  }
}

std::shared_ptr<const UnitGroup> UnitGroup::get(long m) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const UnitGroup>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = table[m];
  if (!slot) slot = std::make_shared<const UnitGroup>(m);
  return slot;
}

const std::vector<long>& UnitGroup::log(long a) const {
  long r = mod(a, m_);
  if (gcd(r, m_) != 1) throw DomainError("UnitGroup::log: not a unit");
  return logs_[r];
}

std::vector<long> UnitGroup::units() const {
  std::vector<long> out;
  for (long a = 0; a < m_; ++a)
    if (gcd(a, m_) == 1) out.push_back(a);
  return out;
}

// ----------------------------------------------------------------------------
// characters

DirichletCharacter::DirichletCharacter(long m, std::vector<long> exps) : m_(m), group_(UnitGroup::get(m)), exps_(std::move(exps)) {
  const auto& ord = group_->orders();
  if (exps_.size() != ord.size()) throw DomainError("DirichletCharacter: wrong number of generator images");
  const long E = group_->exponent();
  for (size_t i = 0; i < exps_.size(); ++i) exps_[i] = mod(exps_[i], ord[i]);
  table_.assign(m_, -1);
  for (long a = 0; a < m_; ++a) {
    if (gcd(a, m_) != 1) continue;
    const auto& lg = group_->log(a);
    long k = 0;
    for (size_t i = 0; i < lg.size(); ++i) k += exps_[i] * (E / ord[i]) * lg[i];
    table_[a] = mod(k, E);
  }
  for (long f : divisors(m_)) {
    bool ok = true;
    for (long a = 1; a < m_ && ok; a += f)
      if (table_[a] > 0) ok = false;
    if (ok) {
      conductor_ = f;
      break;
    }
  }
}

DirichletCharacter DirichletCharacter::teichmuller(long p) { return DirichletCharacter(p, {1}); }

DirichletCharacter DirichletCharacter::from_table(long m, const std::vector<long>& table, long E) {
  auto G = UnitGroup::get(m);
  std::vector<long> exps;
  for (size_t i = 0; i < G->generators().size(); ++i) {
    long k = table.at(G->generators()[i]);
    // zeta_E^k as a power of zeta_{ord_i}
    long ord = G->orders()[i];
    if ((k * ord) % E) throw InternalError("DirichletCharacter: value outside mu_ord");
    exps.push_back(k * ord / E);
  }
  return DirichletCharacter(m, exps);
}

std::optional<long> DirichletCharacter::value_exp(long a) const {
  long k = table_[mod(a, m_)];
  if (k < 0) return std::nullopt;
  return k;
}

long DirichletCharacter::order() const {
  const long E = value_order();
  long o = 1;
  for (long k : table_)
    if (k > 0) o = lcm(o, E / gcd(k, E));
  return o;
}

int DirichletCharacter::parity() const {
  if (m_ <= 2) return 1;
  return table_[m_ - 1] == 0 ? 1 : -1;
}

bool DirichletCharacter::is_trivial() const {
  return std::all_of(exps_.begin(), exps_.end(), [](long e) { return e == 0; });
}

DirichletCharacter DirichletCharacter::primitive() const {
  const long f = conductor_;
  std::vector<long> t(f, -1);
  for (long b = 0; b < f; ++b) {
    if (gcd(b, f) != 1) continue;
    for (long a = b; a < m_ + f; a += f) {
      if (gcd(a, m_) == 1) {
        t[b] = table_[a % m_];
        break;
      }
    }
  }
  if (f == 1) t[0] = 0;
  return from_table(f, t, value_order());
}

DirichletCharacter DirichletCharacter::lift(long M) const {
  if (M % m_) throw DomainError("DirichletCharacter::lift: modulus does not divide target");
  std::vector<long> t(M, -1);
  for (long a = 0; a < M; ++a)
    if (gcd(a, M) == 1) t[a] = table_[a % m_];
  return from_table(M, t, value_order());
}

DirichletCharacter DirichletCharacter::conj() const { return pow(-1); }

DirichletCharacter DirichletCharacter::pow(long k) const {
  std::vector<long> e = exps_;
  for (auto& x : e) x *= k;
  return DirichletCharacter(m_, e);
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
  const long L = lcm(a.m_, b.m_);
  DirichletCharacter A = a.lift(L), B = b.lift(L);
  std::vector<long> e = A.exps_;
  for (size_t i = 0; i < e.size(); ++i) e[i] += B.exps_[i];
  return DirichletCharacter(L, e);
}

Cyclo DirichletCharacter::value(long a) const {
  const long E = value_order();
  auto k = value_exp(a);
  if (!k) return Cyclo(E);
  return Cyclo::root(E, *k);
}

PadicCyclo DirichletCharacter::padic_value(const RingPtr& R, int A, long a) const {
  auto k = value_exp(a);
  if (!k) return PadicCyclo(R, A);
  return root_of_unity(R, A, value_order(), *k);
}

std::string DirichletCharacter::key() const {
  std::ostringstream os;
  os << "m=" << m_ << ";g=";
  for (size_t i = 0; i < exps_.size(); ++i)
    os << (i ? "," : "") << group_->generators()[i] << ":" << exps_[i] << "/" << group_->orders()[i];
  return os.str();
}

std::string DirichletCharacter::label() const {
  std::ostringstream os;
  os << "chi_" << m_ << "[";
  for (size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
  os << "]";
  return os.str();
}

std::vector<DirichletCharacter> enumerate_characters(long m) {
  auto G = UnitGroup::get(m);
  const auto& ord = G->orders();
  std::vector<DirichletCharacter> out;
  std::vector<long> e(ord.size(), 0);
  for (;;) {
    out.emplace_back(m, e);
    size_t i = e.size();
    while (i > 0) {
      --i;
      if (++e[i] < ord[i]) break;
      e[i] = 0;
      if (i == 0) return out;
    }
    if (e.empty()) return out;
  }
}

// ----------------------------------------------------------------------------
// decomposition

Decomposition decompose(const DirichletCharacter& chi, long p) {
  const long M = chi.modulus();
  long pk = 1;
  while (M % (pk * p) == 0) pk *= p;
  const long d = M / pk;
  const long E = chi.value_order();
  auto crt = [&](long x_d, long x_p) {
    for (long a = mod(x_p, pk); a < M; a += pk)
      if (mod(a, d) == mod(x_d, d)) return a;
    throw InternalError("decompose: CRT failed");
  };
  auto value_at = [&](long a) { return *chi.value_exp(a); };
  // Teichmuller residue mod pk
  auto teich_mod = [&](long b) {
    if (pk == 1) return 0L;
    return static_cast<long>(iwlab::teichmuller(b, p, valuation(pk, p)).residue().get_si());
  };
  std::vector<long> t2(d, -1), t1(p, -1), tp(pk, -1);
  for (long y = 0; y < d; ++y)
    if (gcd(y, d) == 1) t2[y] = value_at(crt(y, 1));
  if (d == 1) t2[0] = 0;
  for (long b = 1; b < p; ++b) t1[b] = pk == 1 ? 0 : value_at(crt(1, teich_mod(b)));
  for (long c = 0; c < pk; ++c) {
    if (pk > 1 && c % p == 0) continue;
    if (pk == 1) {
      tp[0] = 0;
      continue;
    }
    long w = teich_mod(c % p);
    long u = mod(c * mod_inverse(w, pk), pk);
    tp[c] = value_at(crt(1, u));
  }
  auto build = [&](long m, const std::vector<long>& t) {
    auto G = UnitGroup::get(m);
    std::vector<long> exps;
    for (size_t i = 0; i < G->generators().size(); ++i) {
      long k = t.at(G->generators()[i]);
      long ord = G->orders()[i];
      if ((k * ord) % E) throw InternalError("decompose: value order mismatch");
      exps.push_back(k * ord / E);
    }
    return DirichletCharacter(m, exps);
  };
  return {build(p, t1), build(d, t2), build(pk, tp)};
}

DirichletCharacter recompose(const Decomposition& dec) { return dec.theta1 * dec.theta2 * dec.psi; }

// ----------------------------------------------------------------------------
// Gauss sums and Bernoulli numbers

Cyclo gauss_sum(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw DomainError("gauss_sum: character is not primitive");
  const long f = chi.modulus(), E = chi.value_order(), L = lcm(f, E);
  std::vector<Int> v(L);
  for (long a = 0; a < f; ++a) {
    auto k = chi.value_exp(a);
    if (!k) continue;
    v[mod(*k * (L / E) + a * (L / f), L)] += 1;
  }
  return Cyclo::from_dense(L, v);
}

bool gauss_product_identity(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw DomainError("gauss_sum: character is not primitive");
  const long f = chi.modulus(), E = chi.value_order(), L = lcm(f, E);
  std::vector<long> ex;
  for (long a = 0; a < f; ++a) {
    auto k = chi.value_exp(a);
    if (k) ex.push_back(mod(*k * (L / E) + a * (L / f), L));
  }
  std::vector<long> exbar;
  for (long a = 0; a < f; ++a) {
    auto k = chi.value_exp(a);
    if (k) exbar.push_back(mod(-*k * (L / E) + a * (L / f), L));
  }
  std::vector<long> counts(L, 0);
  for (long x : ex)
    for (long y : exbar) ++counts[(x + y) % L];
  std::vector<Int> v(counts.begin(), counts.end());
  Cyclo prod = Cyclo::from_dense(L, v);
  return prod == Cyclo(L, Rat(chi.parity() * f));
}

Cyclo bernoulli_B(int k, const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw DomainError("bernoulli_B: character is not primitive");
  if (k < 1) throw DomainError("bernoulli_B: k must be positive");
  const std::string key = "B|" + std::to_string(k) + "|" + chi.key();
  if (auto hit = ValueMemo::instance().find_exact(key)) return *hit;
  const long f = chi.modulus(), E = chi.value_order();
  auto poly = bernoulli_polynomial(k);
  Rat fk = Rat(pow_int(f, k - 1));
  std::vector<Rat> coeff(E);  // coefficient of zeta_E^j before reduction
  for (long a = 1; a <= f; ++a) {
    auto ex = chi.value_exp(a);
    if (!ex) continue;
    Rat x(a, f), val = 0, xp = 1;
    x.canonicalize();
    for (int j = 0; j <= k; ++j) {
      val += poly[j] * xp;
      xp *= x;
    }
    coeff[*ex] += fk * val;
  }
  Int den = 1;
  for (auto& c : coeff) {
    c.canonicalize();
    den = lcm(den, c.get_den());
  }
  std::vector<Int> nums(E);
  for (long j = 0; j < E; ++j) nums[j] = coeff[j].get_num() * (den / coeff[j].get_den());
  Cyclo out = Cyclo::from_dense(E, nums, den);
  ValueMemo::instance().put_exact(key, out);
  return out;
}

// log(1 - zeta_f^a) with zeta_f = alpha_{d'} zeta_{p^{j+1}}, memoized; other a by local Galois action
PadicCyclo log_one_minus_root(const RingPtr& R, int A, long f, long a) {
  const long p = R->p;
  long dprime = f, pj = 1;
  while (dprime % p == 0) {
    dprime /= p;
    pj *= p;
  }
  a = mod(a, f);
  // base exponent a0 = a mod d' (lifted to be 1 mod pj) so that a = a0 * c with c acting on the p-part
  long a0 = a;
  if (pj > 1) {
    a0 = 0;
    for (long t = mod(a, dprime); t < f; t += dprime)
      if (mod(t, pj) == 1) {
        a0 = t;
        break;
      }
  }
  std::ostringstream key;
  key << "log1m|" << p << "|" << R->n << "|" << f << "|" << a0 << "|" << A;
  PadicCyclo base;
  if (auto hit = ValueMemo::instance().find_padic(key.str())) {
    base = *hit;
  } else {
    const int W = A + 2 * R->n + 4;
    PadicCyclo one = PadicCyclo::scalar(R, W, Rat(1));
    PadicCyclo z = PadicCyclo::embed(R, W, Cyclo::root(f, a0));
    base = field_log(one - z, A);
    ValueMemo::instance().put_padic(key.str(), base);
  }
  if (pj == 1 || a == a0) return base;
  long c = mod(a, pj);  // a = a0 mod d', a0 = 1 mod pj
  // lift c to a unit mod p^{n+1}; the ring action on zeta_{p^{j+1}} only sees c mod pj
  return base.galois(c);
}

PadicCyclo lp_at_one(const DirichletCharacter& chi_in, const RingPtr& R, int A) {
  if (chi_in.parity() != 1) throw DomainError("lp_at_one: character must be even");
  if (chi_in.conductor() == 1) throw DomainError("lp_at_one: character must be nontrivial");
  const DirichletCharacter chi = chi_in.primitive();
  std::ostringstream key;
  key << "Lp1|" << R->p << "|" << R->n << "|" << A << "|" << chi.key();
  if (auto hit = ValueMemo::instance().find_padic(key.str())) return *hit;
  const long p = R->p, f = chi.modulus();
  const int W = A + R->n + 4;
  PadicCyclo tau(R, W), sum(R, W);
  for (long a = 1; a <= f; ++a) {
    if (gcd(a, f) != 1) continue;
    tau += chi.padic_value(R, W, a) * PadicCyclo::embed(R, W, Cyclo::root(f, a));
    sum += chi.conj().padic_value(R, W, a) * log_one_minus_root(R, W, f, a);
  }
  PadicCyclo one = PadicCyclo::scalar(R, W, Rat(1));
  PadicCyclo euler = one - chi.padic_value(R, W + 1, p).mul_p(-1);
  PadicCyclo L = -(euler * tau * sum).mul_rational(Rat(1, f));
  L = L.with_precision(A);
  ValueMemo::instance().put_padic(key.str(), L);
  return L;
}

Cyclo lp_at_one_minus_k(const DirichletCharacter& chi, int k, long p) {
  if (k < 1) throw DomainError("lp_at_one_minus_k: k must be positive");
  DirichletCharacter psi = (chi * DirichletCharacter::teichmuller(p).pow(-k)).primitive();
  Cyclo B = bernoulli_B(k, psi);
  const long E = B.modulus();
  Cyclo factor(E, Rat(1));
  if (auto v = psi.value_exp(p); v && psi.modulus() % p != 0) factor -= Cyclo::root(E, *v) * Rat(pow_int(p, k - 1));
  return -(factor * B) * Rat(1, k);
}

Int h_minus(long p, int n) {
  const long m = ipow(p, n + 1);
  const long E = UnitGroup::get(m)->exponent();
  Cyclo prod(E, Rat(2 * m));
  for (const auto& chi : enumerate_characters(m)) {
    if (chi.parity() != -1) continue;
    Cyclo b = bernoulli_B(1, chi.primitive());
    // bring into Q(zeta_E): the primitive character's value order divides E
    prod *= b.lift(E) * Rat(-1, 2);
  }
  auto r = prod.as_rational();
  if (!r || r->get_den() != 1 || *r <= 0) throw InternalError("h_minus: product is not a positive integer");
  return r->get_num();
}

// ----------------------------------------------------------------------------

ValueMemo& ValueMemo::instance() {
  static ValueMemo memo;
  return memo;
}

std::optional<PadicCyclo> ValueMemo::find_padic(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = padic_.find(key);
  if (it == padic_.end()) return std::nullopt;
  return it->second;
}

void ValueMemo::put_padic(const std::string& key, const PadicCyclo& v) {
  std::unique_lock lock(mu_);
  padic_.emplace(key, v);
}

std::optional<Cyclo> ValueMemo::find_exact(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = exact_.find(key);
  if (it == exact_.end()) return std::nullopt;
  return it->second;
}

void ValueMemo::put_exact(const std::string& key, const Cyclo& v) {
  std::unique_lock lock(mu_);
  exact_.emplace(key, v);
}

size_t ValueMemo::size() const {
  std::shared_lock lock(mu_);
  return padic_.size() + exact_.size();
}

void ValueMemo::clear() {
  std::unique_lock lock(mu_);
  padic_.clear();
  exact_.clear();
}

}  // namespace iwlab
