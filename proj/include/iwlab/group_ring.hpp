// Group rings of the Galois groups G_n = (Z/p^{n+1})^x, Gamma_n = <1 + p d> and
// Delta = mu_{p-1}, with rational or p-adic coefficients, and their action on
// cyclotomic elements.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "iwlab/characters.hpp"

namespace iwlab {

class GaloisGroup {
 public:
  enum class Kind { G, Gamma, Delta };
  // (Z/p^{n+1})^x
  static std::shared_ptr<const GaloisGroup> G(long p, int n);
  // Gal(K_n/K_0) generated by gamma0 = sigma_{1+pd}; residues mod d p^{n+1}, elems[b] = gamma0^b
  static std::shared_ptr<const GaloisGroup> Gamma(long p, int n, long d = 1);
  // Teichmuller lifts omega(a) mod p^{n+1}; elems[a-1] lifts a = 1..p-1
  static std::shared_ptr<const GaloisGroup> Delta(long p, int n);

  Kind kind() const { return kind_; }
  long prime() const { return p_; }
  int level() const { return n_; }
  long d() const { return d_; }
  long modulus() const { return M_; }
  int size() const { return static_cast<int>(elems_.size()); }
  long elem(int i) const { return elems_[i]; }
  int find(long residue) const;  // -1 if absent
  int mul(int i, int j) const { return mul_[i * size() + j]; }
  int inverse(int i) const;
  int conj_index() const;  // index of sigma_{-1}, -1 if not in the group
  std::string name() const;

  GaloisGroup(Kind kind, long p, int n, long d, long M, std::vector<long> elems);

 private:
  Kind kind_;
  long p_;
  int n_;
  long d_, M_;
  std::vector<long> elems_;
  std::unordered_map<long, int> index_;
  std::vector<int> mul_;
};

using GroupPtr = std::shared_ptr<const GaloisGroup>;

// Decomposition sigma_a -> (delta(a), gamma_n(a)): the exponent b with
// a / omega(a) = (1 + p d)^b mod p^{n+1}.
long gamma_exponent(long p, int n, long d, long a);

template <class C>
class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(GroupPtr g, const C& zero) : g_(std::move(g)), c_(g_->size(), zero), zero_(zero) {}

  const GroupPtr& group() const { return g_; }
  const C& operator[](int i) const { return c_[i]; }
  C& operator[](int i) { return c_[i]; }
  const std::vector<C>& coeffs() const { return c_; }
  const C& zero() const { return zero_; }
  // coefficient of the element with this residue
  C& at_residue(long r) {
    int i = g_->find(r);
    if (i < 0) throw DomainError("group ring: residue not in " + g_->name());
    return c_[i];
  }

  static GroupRingElement identity(GroupPtr g, const C& zero, const C& one) {
    GroupRingElement e(std::move(g), zero);
    e.c_[0] = one;
    return e;
  }
  static GroupRingElement basis(GroupPtr g, const C& zero, const C& one, int i) {
    GroupRingElement e(std::move(g), zero);
    e.c_[i] = one;
    return e;
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  GroupRingElement operator-() const {
    GroupRingElement r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    a.same(b);
    GroupRingElement r(a.g_, a.zero_);
    const int s = a.g_->size();
    for (int i = 0; i < s; ++i) {
      if (is_zero_coeff(a.c_[i])) continue;
      for (int j = 0; j < s; ++j) {
        if (is_zero_coeff(b.c_[j])) continue;
        r.c_[a.g_->mul(i, j)] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  GroupRingElement scaled(const C& s) const {
    GroupRingElement r(*this);
    for (auto& x : r.c_) x = x * s;
    return r;
  }
  // image under sigma -> sigma^{-1} on group elements
  GroupRingElement involution() const {
    GroupRingElement r(g_, zero_);
    for (int i = 0; i < g_->size(); ++i) r.c_[g_->inverse(i)] = c_[i];
    return r;
  }
  GroupRingElement map(const std::function<C(const C&)>& f) const {
    GroupRingElement r(*this);
    for (auto& x : r.c_) x = f(x);
    return r;
  }

 private:
  static bool is_zero_coeff(const Rat& x) { return x == 0; }
  static bool is_zero_coeff(const PadicCyclo& x) { return x.is_zero(); }
  void same(const GroupRingElement& o) const {
    if (g_ != o.g_) throw DomainError("group ring: mismatched groups");
  }
  GroupPtr g_;
  std::vector<C> c_;
  C zero_;
};

using RatGroupRing = GroupRingElement<Rat>;
using PadicGroupRing = GroupRingElement<PadicCyclo>;

PadicGroupRing to_padic(const RatGroupRing& x, const RingPtr& R, int A);
// coefficients that are scalars of Q_p, nullopt if some coefficient is not
std::optional<std::vector<PadicFraction>> scalar_coefficients(const PadicGroupRing& x);
std::string to_string(const RatGroupRing& x);
std::string to_string(const PadicGroupRing& x);
Decision equals_mod(const PadicGroupRing& a, const PadicGroupRing& b, int A);

// act(x, v) = sum x_sigma sigma(v)
PadicCyclo act(const PadicGroupRing& x, const PadicCyclo& v);
PadicCyclo act(const RatGroupRing& x, const PadicCyclo& v);
Cyclo act(const RatGroupRing& x, const Cyclo& v);

// c * v with a fast path for scalar c
PadicCyclo scale_by(const PadicCyclo& c, const PadicCyclo& v);

// Restriction G_{n+1} -> G_n, Gamma_{n+1} -> Gamma_n.
RatGroupRing restrict_to(const RatGroupRing& x, int n);
PadicGroupRing restrict_to(const PadicGroupRing& x, int n);

// ----------------------------------------------------------------------------
// Characters of Gamma_n, idempotents and distinguished elements

// Characters of Gamma_n as Dirichlet characters mod p^{n+1} trivial on mu_{p-1};
// chi_j(gamma0) has exponent j in the compatible system used for values.
std::vector<DirichletCharacter> gamma_characters(long p, int n, long d = 1);
// conductor exponent k with f_chi = p^{k+1} (k = 0 for the trivial character)
int gamma_conductor_level(const DirichletCharacter& chi, long p);

// e_chi = p^{-n} sum chi-bar(gamma) gamma on Gamma_n
PadicGroupRing idempotent_gamma(const DirichletCharacter& chi, const GroupPtr& gamma, const RingPtr& R, int A);
// e_theta = (1/|Delta|) sum theta-bar(delta) delta on Delta (theta a character mod p)
PadicGroupRing idempotent_delta(const DirichletCharacter& theta, const RingPtr& R, int A);
// e_d: projector onto characters of Gamma_n of conductor p^{d+1}
RatGroupRing idempotent_conductor_level(long p, int d, int n);
// l_n = sum_i p^{n-i} e_i
RatGroupRing ell_operator(long p, int n);
// T_Delta = sum over Delta
RatGroupRing norm_delta(long p, int n);
// N_n = sum over G_n
RatGroupRing norm_G(long p, int n);

// Stickelberger-type element (1/p^{n+1}) sum a sigma_a on G_n
RatGroupRing stickelberger_eps(long p, int n);
// (1/p^{n+1}) sum_a a theta omega^{-1}(a) gamma_n(a) on Gamma_n (theta a character mod p)
PadicGroupRing stickelberger_eps_twisted(const DirichletCharacter& theta, const RingPtr& R, int A);

// Polynomial shadow of a power series in T with coefficients in R_n.
struct TruncatedPowerSeries {
  std::vector<PadicCyclo> coeffs;  // coeffs[k] multiplies T^k
  PadicCyclo eval(const PadicCyclo& t) const;
};
// g = sum a(b) (1+T)^b mod omega_n -> sum a(b) gamma0^b
PadicGroupRing reduce_mod_omega(const TruncatedPowerSeries& g, const GroupPtr& gamma);
// The element with e_chi eps = L(chi) e_chi; coefficients must descend to Q_p.
PadicGroupRing element_from_l_values(const std::vector<DirichletCharacter>& chars, const std::vector<PadicCyclo>& values,
                                     const GroupPtr& gamma, const RingPtr& R, int A);

// eps_n(theta) from L_p(1, theta chi), chi over Gamma_n (generator 1 + p d)
PadicGroupRing epsilon_from_lvalues(const DirichletCharacter& theta, long d, const RingPtr& R, int A);

}  // namespace iwlab
