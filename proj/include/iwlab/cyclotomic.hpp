// Cyclotomic rings on the power basis.
//
// Cyclo is an exact element of Q(zeta_m), stored as integer numerators over one
// common positive denominator, reduced modulo Phi_m.
//
// PadicCyclo is an element of R_n = Q_p(zeta_{p^{n+1}}) at finite precision:
// value = p^shift * (c_0 + c_1 zeta + ... ), each c_k known modulo
// p^(precision - shift).  The unramified part of every field used here is Q_p
// itself (all character values have order dividing (p-1)p^k), so this single
// type covers Z_p[zeta_{q_n}] as well.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iwlab/padic.hpp"

namespace iwlab {

class Cyclo {
 public:
  Cyclo() : Cyclo(1) {}
  explicit Cyclo(long m);
  Cyclo(long m, const Rat& scalar);
  // zeta_m^k
  static Cyclo root(long m, long k);
  // sum of c[k] x^k for an arbitrary-length vector, reduced mod x^m - 1 and Phi_m.
  static Cyclo from_dense(long m, const std::vector<Int>& coeffs, const Int& den = 1);

  long modulus() const { return m_; }
  int degree() const { return static_cast<int>(num_.size()); }
  Rat coeff(int k) const;
  const std::vector<Int>& numerators() const { return num_; }
  const Int& denominator() const { return den_; }

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator*=(const Rat& s);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator*(Cyclo a, const Rat& s) { return a *= s; }
  friend Cyclo operator*(const Rat& s, Cyclo a) { return a *= s; }
  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  Cyclo galois(long a) const;  // sigma_a: zeta -> zeta^a
  Cyclo conj() const { return galois(-1); }
  Cyclo pow(long e) const;
  // The same number viewed in Q(zeta_M) for m | M.
  Cyclo lift(long M) const;
  bool is_zero() const;
  std::optional<Rat> as_rational() const;
  bool is_integral() const { return den_ == 1; }
  std::string to_string() const;

 private:
  void normalize();
  long m_;
  std::vector<Int> num_;
  Int den_;
};

// Galois action; domain error unless gcd(a, m) = 1.
Cyclo galois_apply(long a, const Cyclo& x);
Cyclo embed_root(long m, long k);

// Express x (in Q(zeta_m)) in the subfield Q(zeta_t), t | m; nullopt if x is not there.
std::optional<Cyclo> descend(const Cyclo& x, long t);
// Norm from Q(zeta_m) down to Q(zeta_t); result expressed with modulus t.
Cyclo relative_norm(const Cyclo& x, long t);

// (1/p^{n+1}) sum_k k zeta^k = 1/(zeta_{p^{n+1}} - 1)
Cyclo one_over_pi(long p, int n);

// ----------------------------------------------------------------------------
// p-adic side

class PadicRing {
 public:
  static std::shared_ptr<const PadicRing> get(long p, int n);

  long p;
  int n;
  long m;     // p^{n+1}
  int phi;    // (p-1) p^n, also the ramification index e
  long g;     // primitive root mod p^2 fixing the Teichmuller identification
  PadicRing(long p_, int n_);
};

using RingPtr = std::shared_ptr<const PadicRing>;

class PadicCyclo {
 public:
  PadicCyclo() = default;
  // zero known to absolute precision A
  PadicCyclo(RingPtr ring, int A);
  PadicCyclo(RingPtr ring, int A, const PadicScalar& s);
  static PadicCyclo scalar(RingPtr ring, int A, const Rat& r);
  // zeta_{p^{n+1}}^k, exact up to precision A
  static PadicCyclo root(RingPtr ring, int A, long k);
  // integer coefficient vector (any length, folded mod x^m - 1) times p^shift
  static PadicCyclo from_coeffs(RingPtr ring, int A, const std::vector<Int>& c, int shift = 0);
  // image of an exact element of Q(zeta_q), q = d' p^{j+1} with d' | p-1 and j <= n
  static PadicCyclo embed(RingPtr ring, int A, const Cyclo& x);

  const RingPtr& ring() const { return ring_; }
  long prime() const { return ring_->p; }
  int precision() const { return prec_; }
  int shift() const { return shift_; }
  int relative_precision() const { return prec_ - shift_; }
  const std::vector<Int>& coeffs() const { return c_; }
  // coefficient k as an element of Q_p with its precision
  PadicFraction coeff(int k) const;

  bool is_zero() const;  // zero at the tracked precision
  // minimum p-adic valuation of the coefficients (nullopt if zero)
  std::optional<int> valuation() const;
  // valuation with respect to pi = zeta - 1 (nullopt if zero to precision)
  std::optional<long> pi_valuation() const;
  bool is_unit() const;
  bool is_integral() const { return shift_ >= 0 || is_zero(); }
  // constant term if all other coefficients vanish
  std::optional<PadicFraction> as_scalar() const;

  PadicCyclo with_precision(int A) const;
  PadicCyclo operator-() const;
  PadicCyclo& operator+=(const PadicCyclo& o);
  PadicCyclo& operator-=(const PadicCyclo& o);
  PadicCyclo& operator*=(const PadicCyclo& o);
  PadicCyclo& operator*=(const PadicScalar& s);
  friend PadicCyclo operator+(PadicCyclo a, const PadicCyclo& b) { return a += b; }
  friend PadicCyclo operator-(PadicCyclo a, const PadicCyclo& b) { return a -= b; }
  friend PadicCyclo operator*(PadicCyclo a, const PadicCyclo& b) { return a *= b; }
  friend PadicCyclo operator*(PadicCyclo a, const PadicScalar& s) { return a *= s; }
  friend PadicCyclo operator*(const PadicScalar& s, PadicCyclo a) { return a *= s; }
  PadicCyclo mul_rational(const Rat& r) const;
  // multiply by p^k (k may be negative)
  PadicCyclo mul_p(int k) const;
  // multiply by zeta^k
  PadicCyclo mul_root(long k) const;
  PadicCyclo pow(const Int& e) const;
  PadicCyclo galois(long a) const;
  PadicCyclo conj() const { return galois(-1); }
  // trace from R_n down to Q_p
  PadicFraction trace() const;

  Decision equals(const PadicCyclo& o) const;
  // equality tested modulo p^A (A capped by known precision; undecidable if unknown)
  Decision equals_mod(const PadicCyclo& o, int A) const;
  std::string to_string() const;

 private:
  void normalize();
  Int modulus() const;  // p^(prec - shift)
  RingPtr ring_;
  std::vector<Int> c_;
  int shift_ = 0;
  int prec_ = 0;
};

// Coefficient-vector product modulo Phi_{p^{n+1}} and p^w (serial reference).
std::vector<Int> mul_mod_phi(const PadicRing& R, const std::vector<Int>& a, const std::vector<Int>& b, const Int& mod);

// Compatible system of roots of unity of order dividing (p-1) p^{n+1}:
// zeta_E^k for E | (p-1)p^{n+1}.  Throws DomainError for other orders.
PadicCyclo root_of_unity(RingPtr ring, int A, long E, long k);
// alpha = primitive d-th root of unity used for zeta_{q_n} = alpha * zeta_{p^{n+1}}.
PadicScalar alpha_root(long p, long d, int A);

// Iwasawa logarithm (log p = 0) on R_n^x; a unit is split as u = rho * (1 + pi^2 O)
// with rho a root of unity before the series is applied.
PadicCyclo field_log(const PadicCyclo& x, int A);
// log u for a principal unit u (pi-valuation of u - 1 at least 1), to absolute precision A.
PadicCyclo log_principal(const PadicCyclo& u, int A);

enum class SpecialKind { script_T, leopoldt_T, tilde_T, dotted_T };

// Exact special elements of Q(zeta_{p^{n+1}}) (dotted_T lives in Q(zeta_{d p^{n+1}})).
// dotted_T with frob_reading "F-1" or "d-1" selects the f_theta = d correction term.
Cyclo build_special(SpecialKind kind, long p, long d, int n, long conductor = 0, const std::string& frob_reading = "F-1");

}  // namespace iwlab
