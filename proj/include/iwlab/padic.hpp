// Precision-tracked elements of Z_p and Q_p.
//
// A PadicScalar is an element of Z_p known modulo p^N.  Precision travels with
// every value; mixed-precision arithmetic keeps the smaller precision.  Zero at
// full precision has no determined valuation, so equality is three-valued.
#pragma once

#include <optional>
#include <string>

#include "iwlab/arith.hpp"

namespace iwlab {

enum class Decision { no = 0, yes = 1, undecidable = 2 };

const char* to_string(Decision d);

class PadicScalar {
 public:
  PadicScalar() = default;
  PadicScalar(long p, int precision, const Int& value);
  // Element of Z_p given by a p-integral rational; throws DomainError otherwise.
  static PadicScalar from_rational(long p, int precision, const Rat& value);

  long prime() const { return p_; }
  int precision() const { return N_; }
  const Int& residue() const { return r_; }
  // Signed representative in (-p^N/2, p^N/2].
  Int centered() const;
  // nullopt when the residue is zero, i.e. the valuation is at least N.
  std::optional<int> valuation() const;
  bool is_unit() const;
  bool is_zero() const { return r_ == 0; }

  PadicScalar with_precision(int precision) const;  // only lowers
  PadicScalar operator-() const;
  PadicScalar& operator+=(const PadicScalar& o);
  PadicScalar& operator-=(const PadicScalar& o);
  PadicScalar& operator*=(const PadicScalar& o);
  friend PadicScalar operator+(PadicScalar a, const PadicScalar& b) { return a += b; }
  friend PadicScalar operator-(PadicScalar a, const PadicScalar& b) { return a -= b; }
  friend PadicScalar operator*(PadicScalar a, const PadicScalar& b) { return a *= b; }
  PadicScalar pow(const Int& e) const;
  // Exact division by p^k; requires p^k | residue, lowers precision by k.
  PadicScalar divide_by_p(int k) const;

  Decision equals(const PadicScalar& o) const;
  std::string to_string() const;

 private:
  void check_compatible(const PadicScalar& o) const;
  long p_ = 0;
  int N_ = 0;
  Int r_;
};

// numerator / p^k with numerator a PadicScalar; canonical when the numerator is a unit or k = 0.
class PadicFraction {
 public:
  PadicFraction() = default;
  PadicFraction(const PadicScalar& numerator, int k = 0);
  static PadicFraction from_rational(long p, int precision, const Rat& value);

  const PadicScalar& numerator() const { return num_; }
  int denominator_exponent() const { return k_; }
  long prime() const { return num_.prime(); }
  // Absolute precision: the value is known modulo p^(N - k).
  int absolute_precision() const { return num_.precision() - k_; }
  std::optional<int> valuation() const;
  bool is_integral() const { return k_ == 0; }

  PadicFraction operator-() const;
  friend PadicFraction operator+(const PadicFraction& a, const PadicFraction& b);
  friend PadicFraction operator-(const PadicFraction& a, const PadicFraction& b);
  friend PadicFraction operator*(const PadicFraction& a, const PadicFraction& b);
  // Division by a nonzero element (valuation must be determined).
  friend PadicFraction operator/(const PadicFraction& a, const PadicFraction& b);

  Decision equals(const PadicFraction& o) const;
  std::string to_string() const;

 private:
  void canonicalize();
  PadicScalar num_;
  int k_ = 0;
};

// omega(a): the (p-1)-th root of unity congruent to a mod p, correct mod p^N.
PadicScalar teichmuller(long a, long p, int N);
PadicScalar teichmuller(const Int& a, long p, int N);

// log of a principal unit u = 1 mod p of Z_p, correct mod p^N.
PadicScalar log1p_unit(const PadicScalar& u, int N);

PadicScalar invert(const PadicScalar& x);

}  // namespace iwlab
