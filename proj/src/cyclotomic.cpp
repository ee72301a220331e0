#include "iwlab/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace iwlab {

// ----------------------------------------------------------------------------
// exact Q(zeta_m)

namespace {

// In-place reduction of v (length >= phi) modulo Phi_m; leaves the low phi entries.
void reduce_phi(std::vector<Int>& v, long m) {
  const auto& phi_poly = cyclotomic_polynomial(m);
  const long phi = static_cast<long>(phi_poly.size()) - 1;
  for (long t = static_cast<long>(v.size()) - 1; t >= phi; --t) {
    if (v[t] == 0) continue;
    const long base = t - phi;
    for (long u = 0; u < phi; ++u) {
      long c = phi_poly[u];
      if (c == 1)
        v[base + u] -= v[t];
      else if (c == -1)
        v[base + u] += v[t];
      else if (c != 0)
        v[base + u] -= c * v[t];
    }
    v[t] = 0;
  }
  v.resize(phi);
}

}  // namespace

Cyclo::Cyclo(long m) : m_(m), num_(euler_phi(m)), den_(1) {
  if (m < 1) throw DomainError("Cyclo: modulus must be positive");
}

Cyclo::Cyclo(long m, const Rat& scalar) : Cyclo(m) {
  num_[0] = scalar.get_num();
  den_ = scalar.get_den();
  normalize();
}

Cyclo Cyclo::root(long m, long k) {
  std::vector<Int> v(m);
  v[mod(k, m)] = 1;
  return from_dense(m, v);
}

Cyclo embed_root(long m, long k) { return Cyclo::root(m, k); }

Cyclo Cyclo::from_dense(long m, const std::vector<Int>& coeffs, const Int& den) {
  if (den == 0) throw DomainError("Cyclo: zero denominator");
  Cyclo out(m);
  std::vector<Int> v;
  if (static_cast<long>(coeffs.size()) > m) {
    v.assign(m, 0);
    for (size_t k = 0; k < coeffs.size(); ++k) v[k % m] += coeffs[k];
  } else {
    v = coeffs;
  }
  if (static_cast<long>(v.size()) < out.degree()) v.resize(out.degree());
  reduce_phi(v, m);
  out.num_ = std::move(v);
  out.den_ = den;
  out.normalize();
  return out;
}

void Cyclo::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  Int g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
  if (is_zero()) den_ = 1;
}

Rat Cyclo::coeff(int k) const {
  Rat r(num_.at(k), den_);
  r.canonicalize();
  return r;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (m_ != o.m_) throw DomainError("Cyclo: modulus mismatch");
  if (den_ == o.den_) {
    for (size_t k = 0; k < num_.size(); ++k) num_[k] += o.num_[k];
  } else {
    for (size_t k = 0; k < num_.size(); ++k) num_[k] = num_[k] * o.den_ + o.num_[k] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (m_ != o.m_) throw DomainError("Cyclo: modulus mismatch");
  const size_t d = num_.size();
  std::vector<Int> prod(2 * d - 1);
  for (size_t i = 0; i < d; ++i) {
    if (num_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (o.num_[j] == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
    }
  }
  reduce_phi(prod, m_);
  num_ = std::move(prod);
  den_ *= o.den_;
  normalize();
  return *this;
}

Cyclo& Cyclo::operator*=(const Rat& s) {
  for (auto& c : num_) c *= s.get_num();
  den_ *= s.get_den();
  normalize();
  return *this;
}

bool Cyclo::operator==(const Cyclo& o) const { return m_ == o.m_ && den_ == o.den_ && num_ == o.num_; }

bool Cyclo::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Int& c) { return c == 0; });
}

Cyclo Cyclo::galois(long a) const {
  if (gcd(a, m_) != 1) throw DomainError("galois_apply: exponent not coprime to modulus");
  std::vector<Int> v(m_);
  const long am = mod(a, m_);
  for (size_t k = 0; k < num_.size(); ++k)
    if (num_[k] != 0) v[(static_cast<long>(k) * am) % m_] += num_[k];
  return from_dense(m_, v, den_);
}

Cyclo galois_apply(long a, const Cyclo& x) { return x.galois(a); }

Cyclo Cyclo::pow(long e) const {
  if (e < 0) throw DomainError("Cyclo::pow: negative exponent");
  Cyclo r(m_, Rat(1)), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Cyclo Cyclo::lift(long M) const {
  if (M % m_) throw DomainError("Cyclo::lift: modulus does not divide target");
  const long s = M / m_;
  std::vector<Int> v(M);
  for (size_t k = 0; k < num_.size(); ++k) v[static_cast<long>(k) * s % M] += num_[k];
  return from_dense(M, v, den_);
}

std::optional<Rat> Cyclo::as_rational() const {
  for (size_t k = 1; k < num_.size(); ++k)
    if (num_[k] != 0) return std::nullopt;
  return coeff(0);
}

std::string Cyclo::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < num_.size(); ++k) {
    if (num_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeff(static_cast<int>(k)).get_str();
    if (k > 0) os << "*z" << m_ << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

std::optional<Cyclo> descend(const Cyclo& x, long t) {
  const long m = x.modulus();
  if (m % t) throw DomainError("descend: target modulus does not divide source");
  const long s = m / t;
  Cyclo out(t);
  const int dt = out.degree(), dm = x.degree();
  // fast path: the lifted basis zeta_t^k = zeta_m^{ks} is already reduced
  if (static_cast<long>(dt - 1) * s < dm) {
    std::vector<Int> v(dt);
    std::vector<bool> used(dm, false);
    for (int k = 0; k < dt; ++k) {
      v[k] = x.numerators()[k * s];
      used[k * s] = true;
    }
    for (int k = 0; k < dm; ++k)
      if (!used[k] && x.numerators()[k] != 0) return std::nullopt;
    return Cyclo::from_dense(t, v, x.denominator());
  }
  // general case: rational elimination on [lifted basis | x]
  std::vector<std::vector<Rat>> a(dm, std::vector<Rat>(dt + 1));
  for (int k = 0; k < dt; ++k) {
    Cyclo b = Cyclo::root(t, k).lift(m);
    for (int r = 0; r < dm; ++r) a[r][k] = b.coeff(r);
  }
  for (int r = 0; r < dm; ++r) a[r][dt] = x.coeff(r);
  int row = 0;
  std::vector<int> pivcol;
  for (int c = 0; c < dt && row < dm; ++c) {
    int piv = -1;
    for (int r = row; r < dm; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    Rat inv = 1 / a[row][c];
    for (int k = c; k <= dt; ++k) a[row][k] *= inv;
    for (int r = 0; r < dm; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (int k = c; k <= dt; ++k) a[r][k] -= f * a[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  for (int r = row; r < dm; ++r)
    if (a[r][dt] != 0) return std::nullopt;
  Cyclo y(t);
  for (int i = 0; i < row; ++i) y += Cyclo::root(t, pivcol[i]) * a[i][dt];
  return y;
}

Cyclo relative_norm(const Cyclo& x, long t) {
  const long m = x.modulus();
  if (m % t) throw DomainError("relative_norm: target modulus does not divide source");
  Cyclo prod(m, Rat(1));
  for (long a = 1; a < m; ++a) {
    if (gcd(a, m) != 1 || mod(a, t) != mod(1, t)) continue;
    prod *= x.galois(a);
  }
  auto y = descend(prod, t);
  if (!y) throw InternalError("relative_norm: norm not recognized in the subfield");
  return *y;
}

Cyclo one_over_pi(long p, int n) {
  const long m = ipow(p, n + 1);
  std::vector<Int> v(m);
  for (long k = 1; k < m; ++k) v[k] = k;
  return Cyclo::from_dense(m, v, Int(m));
}

// ----------------------------------------------------------------------------
// p-adic R_n

PadicRing::PadicRing(long p_, int n_) : p(p_), n(n_), m(ipow(p_, n_ + 1)), phi(static_cast<int>((p_ - 1) * ipow(p_, n_))) {
  if (p < 3 || !is_prime(p)) throw DomainError("PadicRing: p must be an odd prime");
  if (n < 0) throw DomainError("PadicRing: negative level");
  g = primitive_root(p, 2);
}

RingPtr PadicRing::get(long p, int n) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, RingPtr> rings;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = rings[{p, n}];
  if (!slot) slot = std::make_shared<const PadicRing>(p, n);
  return slot;
}

namespace {

// reduce a vector of any length modulo x^m - 1 and Phi_{p^{n+1}}
void reduce_ring(const PadicRing& R, std::vector<Int>& v) {
  if (static_cast<long>(v.size()) > R.m) {
    for (size_t k = R.m; k < v.size(); ++k) v[k % R.m] += v[k];
    v.resize(R.m);
  }
  const long pn = R.m / R.p;
  // x^{(p-1)p^n + r} = - sum_{j=0}^{p-2} x^{j p^n + r}
  for (long t = static_cast<long>(v.size()) - 1; t >= R.phi; --t) {
    if (v[t] == 0) continue;
    const long r = t - R.phi;
    for (long j = 0; j <= R.p - 2; ++j) v[j * pn + r] -= v[t];
    v[t] = 0;
  }
  v.resize(R.phi);
}

}  // namespace

std::vector<Int> mul_mod_phi(const PadicRing& R, const std::vector<Int>& a, const std::vector<Int>& b, const Int& modulus) {
  const size_t d = a.size();
  std::vector<Int> prod(2 * d - 1);
  for (size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  reduce_ring(R, prod);
  for (auto& c : prod) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  return prod;
}

PadicCyclo::PadicCyclo(RingPtr ring, int A) : ring_(std::move(ring)), shift_(A), prec_(A) { c_.assign(ring_->phi, 0); }

PadicCyclo::PadicCyclo(RingPtr ring, int A, const PadicScalar& s) : PadicCyclo(std::move(ring), std::min(A, s.precision())) {
  if (s.prime() != ring_->p) throw DomainError("PadicCyclo: prime mismatch");
  shift_ = 0;
  c_[0] = mod(s.residue(), modulus());
  normalize();
}

PadicCyclo PadicCyclo::scalar(RingPtr ring, int A, const Rat& r) {
  std::vector<Int> c(1);
  Int den = r.get_den();
  int k = 0;
  while (den % ring->p == 0) {
    den /= ring->p;
    ++k;
  }
  Int M = pow_int(ring->p, std::max(0, A + k));
  c[0] = mod(r.get_num() * inverse_mod(den, M), M);
  return from_coeffs(std::move(ring), A, c, -k);
}

PadicCyclo PadicCyclo::root(RingPtr ring, int A, long k) {
  std::vector<Int> c(ring->m);
  c[mod(k, ring->m)] = 1;
  return from_coeffs(std::move(ring), A, c);
}

PadicCyclo PadicCyclo::from_coeffs(RingPtr ring, int A, const std::vector<Int>& c, int shift) {
  PadicCyclo out(ring, A);
  std::vector<Int> v = c;
  if (static_cast<long>(v.size()) < ring->phi) v.resize(ring->phi);
  reduce_ring(*ring, v);
  out.c_ = std::move(v);
  out.shift_ = shift;
  Int M = out.modulus();
  for (auto& x : out.c_) x = mod(x, M);
  out.normalize();
  return out;
}

Int PadicCyclo::modulus() const { return pow_int(ring_->p, std::max(0, prec_ - shift_)); }

void PadicCyclo::normalize() {
  const long p = ring_->p;
  if (prec_ - shift_ <= 0) {
    for (auto& x : c_) x = 0;
    shift_ = prec_;
    return;
  }
  int v = prec_ - shift_;
  for (const auto& x : c_) {
    if (x == 0) continue;
    v = std::min(v, iwlab::valuation(x, p));
    if (v == 0) return;
  }
  if (v == prec_ - shift_) {
    for (auto& x : c_) x = 0;
    shift_ = prec_;
    return;
  }
  Int pv = pow_int(p, v);
  for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
  shift_ += v;
}

PadicFraction PadicCyclo::coeff(int k) const {
  const long p = ring_->p;
  if (shift_ >= 0) return PadicFraction(PadicScalar(p, prec_, c_.at(k) * pow_int(p, shift_)));
  return PadicFraction(PadicScalar(p, prec_ - shift_, c_.at(k)), -shift_);
}

bool PadicCyclo::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

std::optional<int> PadicCyclo::valuation() const {
  if (is_zero()) return std::nullopt;
  return shift_;
}

std::optional<long> PadicCyclo::pi_valuation() const {
  if (is_zero()) return std::nullopt;
  const long e = ring_->phi;
  const Int M = modulus();
  std::vector<Int> b = c_;
  const int d = static_cast<int>(b.size());
  // Taylor shift b(y) = c(1 + y)
  for (int i = 0; i < d; ++i)
    for (int j = d - 2; j >= i; --j) b[j] += b[j + 1];
  long best = -1;
  const int rel = prec_ - shift_;
  for (int j = 0; j < d; ++j) {
    Int x = mod(b[j], M);
    if (x == 0) continue;
    long v = e * iwlab::valuation(x, ring_->p) + j;
    if (best < 0 || v < best) best = v;
  }
  if (best < 0 || best >= e * rel) return std::nullopt;
  return best + e * shift_;
}

bool PadicCyclo::is_unit() const {
  auto v = pi_valuation();
  return v && *v == 0;
}

std::optional<PadicFraction> PadicCyclo::as_scalar() const {
  for (size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return std::nullopt;
  return coeff(0);
}

PadicCyclo PadicCyclo::with_precision(int A) const {
  if (A >= prec_) return *this;
  PadicCyclo r = *this;
  r.prec_ = A;
  if (A <= r.shift_) {
    r.shift_ = A;
    for (auto& x : r.c_) x = 0;
    return r;
  }
  Int M = r.modulus();
  for (auto& x : r.c_) x = mod(x, M);
  r.normalize();
  return r;
}

PadicCyclo PadicCyclo::operator-() const {
  PadicCyclo r = *this;
  Int M = modulus();
  for (auto& x : r.c_) x = mod(-x, M);
  return r;
}

PadicCyclo& PadicCyclo::operator+=(const PadicCyclo& o) {
  if (ring_ != o.ring_) throw DomainError("PadicCyclo: ring mismatch");
  const long p = ring_->p;
  int s = std::min(shift_, o.shift_);
  int A = std::min(prec_, o.prec_);
  if (A <= s) {
    *this = PadicCyclo(ring_, A);
    return *this;
  }
  Int M = pow_int(p, A - s);
  Int fa = pow_int(p, shift_ - s), fb = pow_int(p, o.shift_ - s);
  for (size_t k = 0; k < c_.size(); ++k) {
    Int x = c_[k] * fa + o.c_[k] * fb;
    c_[k] = mod(x, M);
  }
  shift_ = s;
  prec_ = A;
  normalize();
  return *this;
}

PadicCyclo& PadicCyclo::operator-=(const PadicCyclo& o) { return *this += -o; }

PadicCyclo& PadicCyclo::operator*=(const PadicCyclo& o) {
  if (ring_ != o.ring_) throw DomainError("PadicCyclo: ring mismatch");
  int s = shift_ + o.shift_;
  int A = std::min(prec_ + o.shift_, o.prec_ + shift_);
  if (A <= s) {
    *this = PadicCyclo(ring_, A);
    return *this;
  }
  Int M = pow_int(ring_->p, A - s);
  c_ = mul_mod_phi(*ring_, c_, o.c_, M);
  shift_ = s;
  prec_ = A;
  normalize();
  return *this;
}

PadicCyclo& PadicCyclo::operator*=(const PadicScalar& sc) {
  return *this *= PadicCyclo(ring_, sc.precision(), sc);
}

PadicCyclo PadicCyclo::mul_rational(const Rat& r) const {
  if (r == 0) return PadicCyclo(ring_, prec_);
  const long p = ring_->p;
  int vr = iwlab::valuation(Int(r.get_num()), p) - iwlab::valuation(Int(r.get_den()), p);
  // enough digits that the exact scalar does not limit the product's precision
  int digits = prec_ - shift_ + std::max(0, vr) + 1;
  return *this * scalar(ring_, digits + vr, r);
}

PadicCyclo PadicCyclo::mul_p(int k) const {
  PadicCyclo r = *this;
  r.shift_ += k;
  r.prec_ += k;
  return r;
}

PadicCyclo PadicCyclo::mul_root(long k) const {
  std::vector<Int> v(ring_->m);
  const long m = ring_->m;
  for (size_t j = 0; j < c_.size(); ++j) v[(static_cast<long>(j) + mod(k, m)) % m] += c_[j];
  return from_coeffs(ring_, prec_, v, shift_);
}

PadicCyclo PadicCyclo::pow(const Int& e) const {
  if (e < 0) throw DomainError("PadicCyclo::pow: negative exponent");
  if (e == 0) return PadicCyclo(ring_, prec_, PadicScalar(ring_->p, std::max(prec_, 0), 1));
  PadicCyclo r, b = *this;
  bool have = false;
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) {
      r = have ? r * b : b;
      have = true;
    }
    k >>= 1;
    if (k > 0) b *= b;
  }
  return r;
}

PadicCyclo PadicCyclo::galois(long a) const {
  const long m = ring_->m;
  if (a % ring_->p == 0) throw DomainError("galois_apply: exponent not coprime to modulus");
  std::vector<Int> v(m);
  const long am = mod(a, m);
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) v[(static_cast<long>(k) * am) % m] += c_[k];
  return from_coeffs(ring_, prec_, v, shift_);
}

PadicFraction PadicCyclo::trace() const {
  const long p = ring_->p, pn = ring_->m / p;
  Int t = Int(ring_->phi) * c_[0];
  for (long j = 1; j <= p - 2; ++j) t -= Int(pn) * c_[j * pn];
  if (shift_ >= 0) return PadicFraction(PadicScalar(p, prec_, t * pow_int(p, shift_)));
  return PadicFraction(PadicScalar(p, prec_ - shift_, t), -shift_);
}

Decision PadicCyclo::equals(const PadicCyclo& o) const {
  PadicCyclo d = *this - o;
  if (!d.is_zero()) return Decision::no;
  return d.precision() > 0 ? Decision::yes : Decision::undecidable;
}

Decision PadicCyclo::equals_mod(const PadicCyclo& o, int A) const {
  PadicCyclo d = *this - o;
  if (d.is_zero()) return d.precision() >= A ? Decision::yes : Decision::undecidable;
  // nonzero at its precision: zero mod p^A iff its valuation is at least A
  if (d.shift() >= A) return Decision::yes;
  return Decision::no;
}

std::string PadicCyclo::to_string() const {
  std::ostringstream os;
  os << "p^" << shift_ << "*[";
  for (size_t k = 0; k < c_.size(); ++k) os << (k ? ", " : "") << c_[k].get_str();
  os << "] + O(" << ring_->p << "^" << prec_ << ")";
  return os.str();
}

PadicCyclo root_of_unity(RingPtr ring, int A, long E, long k) {
  const long p = ring->p;
  const long emax = (p - 1) * ring->m;
  long g = gcd(mod(k, E), E);
  if (mod(k, E) == 0) g = E;
  long Ered = E / g, kred = mod(k, E) / g;
  if (emax % Ered) throw DomainError("root_of_unity: order does not divide (p-1)p^{n+1}");
  long t = mod(kred * (emax / Ered), emax);
  PadicScalar T = teichmuller(ring->g, p, A).pow(Int(t % (p - 1)));
  return PadicCyclo::root(ring, A, t % ring->m) * T;
}

PadicScalar alpha_root(long p, long d, int A) {
  if ((p - 1) % d) throw DomainError("alpha_root: d does not divide p-1");
  return teichmuller(primitive_root(p, 2), p, A).pow(Int((p - 1) / d));
}

PadicCyclo PadicCyclo::embed(RingPtr ring, int A, const Cyclo& x) {
  const long p = ring->p, q = x.modulus();
  long dprime = q;
  int j = -1;
  while (dprime % p == 0) {
    dprime /= p;
    ++j;
  }
  if (j > ring->n) throw DomainError("embed: p-power level exceeds ring level");
  if ((p - 1) % dprime) throw DomainError("embed: prime-to-p part does not divide p-1");
  Int den = x.denominator();
  int k = 0;
  while (den % p == 0) {
    den /= p;
    ++k;
  }
  const int W = std::max(1, A + k);
  const Int M = pow_int(p, W);
  PadicScalar alpha = alpha_root(p, dprime, W);
  const long step = j >= 0 ? ipow(p, ring->n - j) : 0;
  std::vector<Int> v(ring->m);
  for (int e = 0; e < x.degree(); ++e) {
    const Int& c = x.numerators()[e];
    if (c == 0) continue;
    Int a = alpha.pow(Int(e % dprime)).residue();
    long pos = (static_cast<long>(e) * step) % ring->m;
    v[pos] = mod(v[pos] + c * a, M);
  }
  Int uinv = inverse_mod(den, M);
  for (auto& c : v) c = mod(c * uinv, M);
  return from_coeffs(ring, A, v, -k);
}

// ----------------------------------------------------------------------------
// logarithms

PadicCyclo log_principal(const PadicCyclo& u, int A) {
  const RingPtr& R = u.ring();
  const long p = R->p, e = R->phi;
  PadicCyclo one(R, u.precision(), PadicScalar(p, u.precision(), 1));
  auto s = (u - one).pi_valuation();
  if (!s) return PadicCyclo(R, std::min(A, u.precision()));
  if (*s < 1) throw DomainError("log_principal: argument is not a principal unit");
  // raise to p-th powers until u - 1 lies in pO; log u = p^{-j} log u^{p^j}
  PadicCyclo cur = u;
  int j = 0;
  long sv = *s;
  while (sv < e) {
    cur = cur.pow(Int(p));
    ++j;
    auto t = (cur - one).pi_valuation();
    if (!t) return PadicCyclo(R, std::min(A, u.precision() - j));
    sv = *t;
  }
  PadicCyclo w = cur - one;  // shift >= 1
  const int target = std::min(A + j, cur.precision());
  auto floor_log = [p](long k) {
    int t = 0;
    for (long q = p; q <= k; q *= p) ++t;
    return t;
  };
  long K = 1;
  while (sv * K - e * floor_log(K) < e * static_cast<long>(target)) ++K;
  // w = p^{sh} * wc, wc integral; term k = (-1)^{k+1} p^{k sh - v_p(k)} wc^k / k'
  const int sh = w.shift();
  const Int M = pow_int(p, target);
  std::vector<Int> wc = w.coeffs();
  for (auto& c : wc) c = mod(c, M);
  std::vector<Int> power(R->phi), sum(R->phi);
  power[0] = 1;
  for (long k = 1; k < K; ++k) {
    power = mul_mod_phi(*R, power, wc, M);
    const int vk = valuation(k, p);
    const long ex = k * sh - vk;
    if (ex >= target) continue;
    long unit = k;
    for (int t = 0; t < vk; ++t) unit /= p;
    Int f = pow_int(p, ex) * inverse_mod(Int(unit), M);
    if (k % 2 == 0) f = -f;
    for (int i = 0; i < R->phi; ++i) sum[i] += power[i] * f;
  }
  // absolute precision of the sum: limited by w's precision
  const int prec = std::min(target, w.precision());
  PadicCyclo L = PadicCyclo::from_coeffs(R, prec, sum);
  return L.mul_p(-j);
}

PadicCyclo field_log(const PadicCyclo& x, int A) {
  const RingPtr& R = x.ring();
  const long p = R->p, e = R->phi;
  auto v = x.pi_valuation();
  if (!v) throw PrecisionError("field_log: argument indistinguishable from zero");
  if (*v != 0) {
    // Iwasawa branch: log x = (1/e) log(x^e / p^v)
    PadicCyclo y = x.pow(Int(e)).mul_p(static_cast<int>(-*v));
    PadicCyclo ly = field_log(y, A + R->n + 1);
    return ly.mul_p(-R->n).mul_rational(Rat(1, p - 1));
  }
  // strip the Teichmuller part of the residue
  Int res = 0;
  for (int k = 0; k < R->phi; ++k) res += x.coeffs()[k];  // value at zeta = 1 mod pi
  if (x.shift() != 0) throw InternalError("field_log: unit with nonzero shift");
  res = mod(res, Int(p));
  PadicScalar t = teichmuller(res, p, x.precision());
  PadicCyclo x1 = x * invert(t);
  // now x1 = 1 + b1 pi + ...; multiply by zeta^a with a = -b1 mod p
  // coefficient of pi in x1(1 + pi) is sum k c_k
  Int b1 = 0;
  for (int k = 1; k < R->phi; ++k) b1 += Int(k) * x1.coeffs()[k];
  long a = mod(-b1, Int(p)).get_si();
  PadicCyclo x2 = a ? x1.mul_root(a) : x1;
  return log_principal(x2, A);
}

// ----------------------------------------------------------------------------
// special elements

Cyclo build_special(SpecialKind kind, long p, long d, int n, long conductor, const std::string& frob_reading) {
  const long m = ipow(p, n + 1);
  auto zeta_p = [&](int i) { return Cyclo::root(m, ipow(p, n - i)); };  // zeta_{p^{i+1}}
  Cyclo out(m);
  switch (kind) {
    case SpecialKind::script_T:
      for (int i = 0; i <= n; ++i) out += zeta_p(i) * Rat(1, Int(ipow(p, n - i)));
      return out;
    case SpecialKind::leopoldt_T:
      for (int i = 0; i <= n; ++i) out += zeta_p(i);
      return out;
    case SpecialKind::tilde_T:
      for (int i = 1; i <= n; ++i) out += zeta_p(i) * Rat(1, Int(ipow(p, n - i)));
      return out;
    case SpecialKind::dotted_T:
      break;
  }
  if (d < 1 || gcd(d, p) != 1) throw DomainError("dotted_T: d must be prime to p");
  const long q = d * m;
  // Frobenius at p: zeta_d -> zeta_d^p, fixes zeta_{p^{n+1}}
  long F = 1;
  while (mod(F, d) != mod(p, d) || mod(F, m) != 1) F += m;
  auto frob = [&](const Cyclo& x, int k) {
    Cyclo y = x;
    for (int t = 0; t < k; ++t) y = y.galois(F);
    return y;
  };
  auto zeta_q = [&](int i) { return Cyclo::root(q, ipow(p, n - i)); };  // zeta_{q_i}
  Cyclo T(q);
  const bool p_in_conductor = conductor % p == 0;
  if (p_in_conductor) {
    for (int i = 0; i <= n; ++i) T += frob(zeta_q(i), n - i) * Rat(1, Int(ipow(p, n - i)));
    return T;
  }
  for (int i = 1; i <= n; ++i) {
    Cyclo z = frob(zeta_q(i), n - i);
    T += (z - frob(z, 1) * Rat(1, Int(p))) * Rat(1, Int(ipow(p, n - i)));
  }
  Cyclo z0 = frob(zeta_q(0), n);
  Cyclo corr(q);
  if (frob_reading == "F-1")
    corr = frob(z0, 1) - z0;
  else if (frob_reading == "d-1")
    corr = z0 * Rat(d - 1);
  else
    throw DomainError("dotted_T: unknown reading " + frob_reading);
  T -= corr * Rat(1, Int(ipow(p, n)));
  return T;
}

}  // namespace iwlab
