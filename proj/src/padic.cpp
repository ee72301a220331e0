#include "iwlab/padic.hpp"

#include <algorithm>

namespace iwlab {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::yes:
      return "yes";
    case Decision::no:
      return "no";
    default:
      return "undecidable";
  }
}

PadicScalar::PadicScalar(long p, int precision, const Int& value) : p_(p), N_(precision) {
  if (p < 3 || !is_prime(p)) throw DomainError("PadicScalar: p must be an odd prime");
  if (precision < 0) throw DomainError("PadicScalar: negative precision");
  r_ = mod(value, pow_int(p, precision));
}

PadicScalar PadicScalar::from_rational(long p, int precision, const Rat& value) {
  Int den = value.get_den();
  if (den % p == 0) throw DomainError("PadicScalar: rational is not p-integral");
  Int m = pow_int(p, precision);
  return PadicScalar(p, precision, value.get_num() * inverse_mod(den, m));
}

Int PadicScalar::centered() const {
  Int m = pow_int(p_, N_);
  return 2 * r_ > m ? Int(r_ - m) : r_;
}

std::optional<int> PadicScalar::valuation() const {
  if (r_ == 0) return std::nullopt;
  return iwlab::valuation(r_, p_);
}

bool PadicScalar::is_unit() const { return N_ > 0 && r_ % p_ != 0; }

PadicScalar PadicScalar::with_precision(int precision) const {
  return PadicScalar(p_, std::min(precision, N_), r_);
}

void PadicScalar::check_compatible(const PadicScalar& o) const {
  if (p_ != o.p_) throw DomainError("PadicScalar: mixing different primes");
}

PadicScalar PadicScalar::operator-() const { return PadicScalar(p_, N_, -r_); }

PadicScalar& PadicScalar::operator+=(const PadicScalar& o) {
  check_compatible(o);
  N_ = std::min(N_, o.N_);
  r_ = mod(r_ + o.r_, pow_int(p_, N_));
  return *this;
}

PadicScalar& PadicScalar::operator-=(const PadicScalar& o) {
  check_compatible(o);
  N_ = std::min(N_, o.N_);
  r_ = mod(r_ - o.r_, pow_int(p_, N_));
  return *this;
}

PadicScalar& PadicScalar::operator*=(const PadicScalar& o) {
  check_compatible(o);
  N_ = std::min(N_, o.N_);
  r_ = mod(r_ * o.r_, pow_int(p_, N_));
  return *this;
}

PadicScalar PadicScalar::pow(const Int& e) const {
  if (e < 0) return invert(*this).pow(-e);
  Int m = pow_int(p_, N_), out;
  mpz_powm(out.get_mpz_t(), r_.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return PadicScalar(p_, N_, out);
}

PadicScalar PadicScalar::divide_by_p(int k) const {
  if (k > N_) throw PrecisionError("divide_by_p: not enough digits");
  Int pk = pow_int(p_, k);
  if (!mpz_divisible_p(r_.get_mpz_t(), pk.get_mpz_t())) throw DomainError("divide_by_p: not divisible");
  return PadicScalar(p_, N_ - k, r_ / pk);
}

Decision PadicScalar::equals(const PadicScalar& o) const {
  check_compatible(o);
  if (std::min(N_, o.N_) == 0) return Decision::undecidable;
  return (*this - o).is_zero() ? Decision::yes : Decision::no;
}

std::string PadicScalar::to_string() const {
  return r_.get_str() + " + O(" + std::to_string(p_) + "^" + std::to_string(N_) + ")";
}

PadicFraction::PadicFraction(const PadicScalar& numerator, int k) : num_(numerator), k_(k) { canonicalize(); }

PadicFraction PadicFraction::from_rational(long p, int precision, const Rat& value) {
  if (value == 0) return PadicFraction(PadicScalar(p, precision, 0));
  Int den = value.get_den();
  int k = 0;
  while (den % p == 0) {
    den /= p;
    ++k;
  }
  Rat unit_part(value.get_num(), den);
  // absolute precision `precision`, so the numerator needs precision + k digits
  return PadicFraction(PadicScalar::from_rational(p, precision + k, unit_part), k);
}

void PadicFraction::canonicalize() {
  if (k_ < 0) {
    num_ = PadicScalar(num_.prime(), num_.precision() - k_, num_.residue() * pow_int(num_.prime(), -k_));
    k_ = 0;
  }
  while (k_ > 0 && num_.precision() > 0 && num_.residue() % num_.prime() == 0) {
    num_ = num_.divide_by_p(1);
    --k_;
  }
  if (k_ > 0 && num_.precision() == 0) k_ = 0;
}

std::optional<int> PadicFraction::valuation() const {
  auto v = num_.valuation();
  if (!v) return std::nullopt;
  return *v - k_;
}

PadicFraction PadicFraction::operator-() const { return PadicFraction(-num_, k_); }

namespace {

// a/p^ka, b/p^kb -> numerators over the common denominator p^k
std::pair<PadicScalar, PadicScalar> align(const PadicFraction& a, const PadicFraction& b, int& k) {
  long p = a.prime();
  k = std::max(a.denominator_exponent(), b.denominator_exponent());
  int sa = k - a.denominator_exponent(), sb = k - b.denominator_exponent();
  PadicScalar na(p, a.numerator().precision() + sa, a.numerator().residue() * pow_int(p, sa));
  PadicScalar nb(p, b.numerator().precision() + sb, b.numerator().residue() * pow_int(p, sb));
  return {na, nb};
}

}  // namespace

PadicFraction operator+(const PadicFraction& a, const PadicFraction& b) {
  int k;
  auto [na, nb] = align(a, b, k);
  return PadicFraction(na + nb, k);
}

PadicFraction operator-(const PadicFraction& a, const PadicFraction& b) {
  int k;
  auto [na, nb] = align(a, b, k);
  return PadicFraction(na - nb, k);
}

PadicFraction operator*(const PadicFraction& a, const PadicFraction& b) {
  // relative precisions: product of x*p^va and y*p^vb is known to min(rel) relative digits
  long p = a.prime();
  auto va = a.numerator().valuation(), vb = b.numerator().valuation();
  int Na = a.numerator().precision(), Nb = b.numerator().precision();
  int N = std::min(Na + (vb ? *vb : Nb), Nb + (va ? *va : Na));
  PadicScalar n(p, N, a.numerator().residue() * b.numerator().residue());
  return PadicFraction(n, a.denominator_exponent() + b.denominator_exponent());
}

PadicFraction operator/(const PadicFraction& a, const PadicFraction& b) {
  auto vb = b.numerator().valuation();
  if (!vb) throw PrecisionError("PadicFraction: division by an element indistinguishable from zero");
  PadicScalar unit = b.numerator().divide_by_p(*vb);
  PadicScalar inv = invert(unit);
  // b = unit * p^(vb - kb)
  PadicFraction q = a * PadicFraction(inv);
  int shift = *vb - b.denominator_exponent();
  return PadicFraction(q.numerator(), q.denominator_exponent() + shift);
}

Decision PadicFraction::equals(const PadicFraction& o) const {
  PadicFraction d = *this - o;
  if (d.absolute_precision() <= 0 && d.numerator().is_zero()) return Decision::undecidable;
  return d.numerator().is_zero() ? Decision::yes : Decision::no;
}

std::string PadicFraction::to_string() const {
  if (k_ == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/" + std::to_string(num_.prime()) + "^" + std::to_string(k_);
}

PadicScalar teichmuller(const Int& a, long p, int N) {
  if (a % p == 0) throw DomainError("teichmuller: argument divisible by p");
  Int m = pow_int(p, N), x = mod(a, m), pp = p;
  // x -> x^p gains one correct digit per step
  for (;;) {
    Int y;
    mpz_powm(y.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t(), m.get_mpz_t());
    if (y == x) break;
    x = y;
  }
  return PadicScalar(p, N, x);
}

PadicScalar teichmuller(long a, long p, int N) { return teichmuller(Int(a), p, N); }

PadicScalar log1p_unit(const PadicScalar& u, int N) {
  long p = u.prime();
  if (u.precision() < 1 || (u.residue() - 1) % p != 0) throw DomainError("log1p_unit: argument is not 1 mod p");
  N = std::min(N, u.precision());
  // w^k/k has valuation >= k - v_p(k) >= k - floor(log_p k); stop once that bound reaches N
  auto floor_log = [p](long k) {
    int t = 0;
    for (long q = p; q <= k; q *= p) ++t;
    return t;
  };
  long K = 1;
  while (K - floor_log(K) < N) ++K;
  int W = N + floor_log(K) + 1;
  Int m = pow_int(p, W);
  Int w = mod(u.residue() - 1, m);
  Int sum = 0, power = 1;
  for (long k = 1; k < K; ++k) {
    int vk = valuation(k, p);
    power = mod(power * w, m);
    long unit = k;
    for (int t = 0; t < vk; ++t) unit /= p;
    Int term = power / pow_int(p, vk);  // exact: v_p(w^k) >= k > v_p(k)
    term = mod(term * inverse_mod(Int(unit), m), m);
    if (k % 2 == 0) term = -term;
    sum += term;
  }
  return PadicScalar(p, N, sum);
}

PadicScalar invert(const PadicScalar& x) {
  if (!x.is_unit()) throw DomainError("not invertible at this precision");
  return PadicScalar(x.prime(), x.precision(), inverse_mod(x.residue(), pow_int(x.prime(), x.precision())));
}

}  // namespace iwlab
