// Lattices in Q^r (exact, Hermite normal form over Z) and in Q_p^r (finite
// precision, Hermite form over Z_p with valuation-minimal pivots).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwlab/group_ring.hpp"

namespace iwlab {

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMat = std::vector<IntVec>;

class ContainmentError : public DomainError {
 public:
  using DomainError::DomainError;
};
class RankError : public DomainError {
 public:
  using DomainError::DomainError;
};
// A pivot too close to the working precision to separate it from zero.
class DegeneratePrecision : public PrecisionError {
 public:
  DegeneratePrecision(const std::string& what, int valuation) : PrecisionError(what), valuation(valuation) {}
  int valuation;
};

// ----------------------------------------------------------------------------
// Exact integer kernels

struct HnfResult {
  IntMat H;  // same shape as the input, nonzero rows first
  IntMat U;  // unimodular, U * M = H (empty unless requested)
  int rank = 0;
  std::vector<int> pivots;
};
// Row-style Hermite normal form: pivots positive, entries above a pivot in [0, pivot).
HnfResult hnf(IntMat M, bool with_transform = false);
// Diagonal of the Smith form of a square or rectangular matrix (nonzero entries only).
std::vector<Int> smith_diagonal(IntMat M);
// Rows spanning { x : x M = 0 } over Z.
IntMat left_kernel(const IntMat& M);

class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(int dim) : dim_(dim) {}
  static IntLattice from_generators(int dim, const std::vector<RatVec>& gens);
  static IntLattice from_integer_rows(int dim, const IntMat& rows, const Int& den = 1);
  static IntLattice standard(int dim);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  // canonical basis: rows_/den_, gcd(den_, entries) = 1
  const IntMat& hnf_rows() const { return rows_; }
  const Int& denominator() const { return den_; }
  const std::vector<int>& pivots() const { return piv_; }
  std::vector<RatVec> basis() const;

  bool contains(const RatVec& v) const;
  bool contains(const IntLattice& o) const;
  bool operator==(const IntLattice& o) const { return dim_ == o.dim_ && den_ == o.den_ && rows_ == o.rows_; }
  bool operator!=(const IntLattice& o) const { return !(*this == o); }

  IntLattice sum(const IntLattice& o) const;
  IntLattice intersect(const IntLattice& o) const;
  // L intersected with { x : x A = 0 }, A a dim x k rational matrix
  IntLattice intersect_kernel(const std::vector<RatVec>& A) const;
  IntLattice scaled(const Rat& s) const;
  // image under x -> x A, A a dim x k rational matrix
  IntLattice image(const std::vector<RatVec>& A) const;
  // coordinates of v in the canonical basis (nullopt if v is outside the rational span)
  std::optional<RatVec> coordinates(const RatVec& v) const;
  std::string digest() const;

 private:
  void canonicalize(IntMat rows, Int den);
  int dim_ = 0;
  IntMat rows_;
  Int den_ = 1;
  std::vector<int> piv_;
};

// Elementary divisors of L2 in L1 (L2 inside L1, equal rank).
std::vector<Int> elementary_divisors(const IntLattice& L1, const IntLattice& L2);
Int index(const IntLattice& L1, const IntLattice& L2);

// ----------------------------------------------------------------------------
// p-adic lattices at finite precision

// p^shift * c with every entry known modulo p^prec (absolute precision)
struct PVec {
  std::vector<Int> c;
  int shift = 0;
  int prec = 0;
};
PVec to_pvec(const PadicCyclo& x);
// coefficients of a group ring element whose coefficients lie in Q_p
PVec to_pvec(const PadicGroupRing& x);
PVec to_pvec(long p, const std::vector<PadicFraction>& xs);

class PadicLattice {
 public:
  static constexpr int kDefaultSlack = 8;
  // Throws DegeneratePrecision when a pivot valuation reaches precision - slack.
  PadicLattice(long p, int dim, const std::vector<PVec>& gens, int slack = kDefaultSlack);

  long prime() const { return p_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  // rows represent p^{-scale} * row, known modulo p^{precision - scale}
  int scale() const { return K_; }
  int precision() const { return P_; }
  int slack() const { return slack_; }
  const IntMat& hnf_rows() const { return rows_; }
  const std::vector<int>& pivot_columns() const { return piv_; }
  // valuations of the pivots of the actual vectors (scale included)
  std::vector<int> pivot_valuations() const;
  long volume_valuation() const;

  Decision contains(const PVec& v) const;
  Decision contains(const PadicLattice& o) const;
  std::string digest() const;

 private:
  long p_;
  int dim_, K_ = 0, P_ = 0, slack_;
  IntMat rows_;
  std::vector<int> piv_, val_;
};

struct PadicIndex {
  Decision status = Decision::undecidable;  // yes: exponent is certified
  long exponent = 0;
  std::string note;
};
// [L1 : L2] = p^exponent. Throws RankError on rank mismatch and ContainmentError when L2 is not in L1.
PadicIndex index(const PadicLattice& L1, const PadicLattice& L2);
Decision equals(const PadicLattice& L1, const PadicLattice& L2);

}  // namespace iwlab
