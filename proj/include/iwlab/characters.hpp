// Dirichlet characters with exact root-of-unity values, generalized Bernoulli
// numbers, p-adic L-values at s = 1 and s = 1 - k, and the relative class number.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "iwlab/cyclotomic.hpp"

namespace iwlab {

// (Z/mZ)^x with a fixed generating set: one cyclic factor per odd prime power
// (smallest primitive root), and <-1> x <5> for 2^k.
class UnitGroup {
 public:
  static std::shared_ptr<const UnitGroup> get(long m);
  explicit UnitGroup(long m);

  long modulus() const { return m_; }
  const std::vector<long>& generators() const { return gens_; }
  const std::vector<long>& orders() const { return orders_; }
  long exponent() const { return exponent_; }
  long order() const { return order_; }
  bool is_unit(long a) const { return gcd(a, m_) == 1; }
  // exponents of a in terms of the generators
  const std::vector<long>& log(long a) const;
  std::vector<long> units() const;

 private:
  long m_, exponent_ = 1, order_ = 1;
  std::vector<long> gens_, orders_;
  std::vector<std::vector<long>> logs_;
};

class DirichletCharacter {
 public:
  DirichletCharacter() : DirichletCharacter(1, {}) {}
  // exps[i]: chi(g_i) = zeta_{ord_i}^{exps[i]}
  DirichletCharacter(long m, std::vector<long> exps);
  static DirichletCharacter trivial(long m) { return DirichletCharacter(m, std::vector<long>(UnitGroup::get(m)->generators().size(), 0)); }
  // omega as a character mod p: omega(g) = zeta_{p-1}, g the primitive root mod p^2
  static DirichletCharacter teichmuller(long p);

  long modulus() const { return m_; }
  const std::vector<long>& generator_exponents() const { return exps_; }
  // values are powers of zeta_E, E = exponent of (Z/m)^x
  long value_order() const { return group_->exponent(); }
  // exponent k with chi(a) = zeta_E^k, nullopt when gcd(a, m) > 1
  std::optional<long> value_exp(long a) const;
  long order() const;
  int parity() const;
  long conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == m_; }
  bool is_trivial() const;
  bool is_even() const { return parity() == 1; }

  DirichletCharacter primitive() const;
  // induced character mod M (m | M)
  DirichletCharacter lift(long M) const;
  DirichletCharacter conj() const;
  DirichletCharacter pow(long k) const;
  // product, computed modulo lcm of the moduli
  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
  bool operator==(const DirichletCharacter& o) const { return m_ == o.m_ && exps_ == o.exps_; }
  bool operator<(const DirichletCharacter& o) const { return m_ != o.m_ ? m_ < o.m_ : exps_ < o.exps_; }

  // exact value in Q(zeta_E) (zero for non-units)
  Cyclo value(long a) const;
  // p-adic value in R_n through the compatible root system
  PadicCyclo padic_value(const RingPtr& R, int A, long a) const;
  // canonical key: modulus and generator images
  std::string key() const;
  std::string label() const;

 private:
  static DirichletCharacter from_table(long m, const std::vector<long>& table, long E);
  long m_;
  std::shared_ptr<const UnitGroup> group_;
  std::vector<long> exps_;
  std::vector<long> table_;  // exponent of zeta_E per residue, -1 for non-units
  long conductor_ = 1;
};

std::vector<DirichletCharacter> enumerate_characters(long m);

struct Decomposition {
  DirichletCharacter theta1;  // mod p
  DirichletCharacter theta2;  // mod d
  DirichletCharacter psi;     // mod p^{n+1}, trivial on mu_{p-1}
};
// chi mod p^{n+1} d with p not dividing d
Decomposition decompose(const DirichletCharacter& chi, long p);
DirichletCharacter recompose(const Decomposition& dec);

// Gauss sum tau(chi) = sum chi(a) zeta_f^a in Q(zeta_L), L = lcm(f, E); chi primitive.
Cyclo gauss_sum(const DirichletCharacter& chi);
// Checks tau(chi) tau(chi-bar) = chi(-1) f with a sparse product (no dense reduction).
bool gauss_product_identity(const DirichletCharacter& chi);

// B_{k,chi} for primitive chi, exact in Q(zeta_E).
Cyclo bernoulli_B(int k, const DirichletCharacter& chi);

// L_p(1, chi) for even nontrivial chi by the log / Gauss sum formula, in R_n.
PadicCyclo lp_at_one(const DirichletCharacter& chi, const RingPtr& R, int A);
// field_log(1 - zeta_f^a), zeta_f embedded through the compatible root system (memoized).
PadicCyclo log_one_minus_root(const RingPtr& R, int A, long f, long a);
// L_p(1-k, chi) = -(1 - chi omega^{-k}(p) p^{k-1}) B_{k, chi omega^{-k}} / k, exact.
Cyclo lp_at_one_minus_k(const DirichletCharacter& chi, int k, long p);

// Relative class number of Q(zeta_{p^{n+1}}).
Int h_minus(long p, int n);

// Memo table for L-values and Bernoulli numbers: concurrent reads, serialized inserts.
class ValueMemo {
 public:
  static ValueMemo& instance();
  std::optional<PadicCyclo> find_padic(const std::string& key) const;
  void put_padic(const std::string& key, const PadicCyclo& v);
  std::optional<Cyclo> find_exact(const std::string& key) const;
  void put_exact(const std::string& key, const Cyclo& v);
  size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, PadicCyclo> padic_;
  std::map<std::string, Cyclo> exact_;
};

}  // namespace iwlab
