#include "iwlab/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "iwlab/digest.hpp"
#include "iwlab/parallel.hpp"

namespace iwlab {

namespace {

void axpy(IntVec& y, const Int& q, const IntVec& x, size_t from = 0) {
  for (size_t k = from; k < y.size(); ++k)
    if (x[k] != 0) y[k] -= q * x[k];
}

Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

int pval(const Int& x, long p) {
  if (x == 0) return 1 << 30;
  if (p == 2) return static_cast<int>(mpz_scan1(x.get_mpz_t(), 0));
  Int t = x;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

}  // namespace

// ----------------------------------------------------------------------------
// Integer normal forms

HnfResult hnf(IntMat M, bool with_transform) {
  HnfResult R;
  const int m = static_cast<int>(M.size());
  const int n = m ? static_cast<int>(M[0].size()) : 0;
  IntMat U;
  if (with_transform) {
    U.assign(m, IntVec(m, 0));
    for (int i = 0; i < m; ++i) U[i][i] = 1;
  }
  const bool par = parallel_enabled();
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    // Euclid on the column: smallest nonzero entry reduces the rest
    while (true) {
      int best = -1;
      for (int i = r; i < m; ++i)
        if (M[i][c] != 0 && (best < 0 || mpz_cmpabs(M[i][c].get_mpz_t(), M[best][c].get_mpz_t()) < 0)) best = i;
      if (best < 0) break;
      std::swap(M[r], M[best]);
      if (with_transform) std::swap(U[r], U[best]);
      bool done = true;
#pragma omp parallel for if (par) schedule(static) reduction(&& : done)
      for (int i = r + 1; i < m; ++i) {
        if (M[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), M[i][c].get_mpz_t(), M[r][c].get_mpz_t());
        axpy(M[i], q, M[r], c);
        if (with_transform) axpy(U[i], q, U[r]);
        done = done && M[i][c] == 0;
      }
      if (done) break;
    }
    if (M[r][c] == 0) continue;
    if (M[r][c] < 0) {
      for (auto& x : M[r]) x = -x;
      if (with_transform)
        for (auto& x : U[r]) x = -x;
    }
#pragma omp parallel for if (par) schedule(static)
    for (int k = 0; k < r; ++k) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), M[k][c].get_mpz_t(), M[r][c].get_mpz_t());
      if (q != 0) {
        axpy(M[k], q, M[r], c);
        if (with_transform) axpy(U[k], q, U[r]);
      }
    }
    R.pivots.push_back(c);
    ++r;
  }
  R.rank = r;
  R.H = std::move(M);
  R.U = std::move(U);
  return R;
}

std::vector<Int> smith_diagonal(IntMat M) {
  // alternate row and column Hermite forms until diagonal
  while (true) {
    auto H = hnf(std::move(M)).H;
    const size_t rows = H.size(), cols = rows ? H[0].size() : 0;
    bool diagonal = true;
    for (size_t i = 0; i < rows && diagonal; ++i)
      for (size_t j = 0; j < cols; ++j)
        if (i != j && H[i][j] != 0) {
          diagonal = false;
          break;
        }
    if (diagonal) {
      std::vector<Int> d;
      for (size_t i = 0; i < std::min(rows, cols); ++i)
        if (H[i][i] != 0) d.push_back(abs(H[i][i]));
      for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
          Int g = gcd_int(d[i], d[j]);
          Int l = d[i] / g * d[j];
          d[i] = g;
          d[j] = l;
        }
      return d;
    }
    M.assign(cols, IntVec(rows));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) M[j][i] = H[i][j];
  }
}

IntMat left_kernel(const IntMat& M) {
  auto R = hnf(M, true);
  return IntMat(R.U.begin() + R.rank, R.U.end());
}

// ----------------------------------------------------------------------------
// IntLattice

void IntLattice::canonicalize(IntMat rows, Int den) {
  if (den == 0) throw DomainError("IntLattice: zero denominator");
  auto R = hnf(std::move(rows));
  rows_.assign(R.H.begin(), R.H.begin() + R.rank);
  piv_ = R.pivots;
  Int g = abs(den);
  for (const auto& row : rows_)
    for (const auto& x : row)
      if (x != 0) g = gcd_int(g, x);
  if (den < 0) g = -g;
  den_ = den / g;
  for (auto& row : rows_)
    for (auto& x : row) x /= g;
  if (rows_.empty()) den_ = 1;
}

IntLattice IntLattice::from_integer_rows(int dim, const IntMat& rows, const Int& den) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != dim) throw DomainError("IntLattice: generator of wrong length");
  IntLattice L(dim);
  L.canonicalize(rows, den);
  return L;
}

IntLattice IntLattice::from_generators(int dim, const std::vector<RatVec>& gens) {
  Int den = 1;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != dim) throw DomainError("IntLattice: generator of wrong length");
    for (const auto& x : g) den = lcm_int(den, x.get_den());
  }
  IntMat rows;
  for (const auto& g : gens) {
    IntVec r(dim);
    for (int k = 0; k < dim; ++k) r[k] = g[k].get_num() * (den / g[k].get_den());
    rows.push_back(std::move(r));
  }
  return from_integer_rows(dim, rows, den);
}

IntLattice IntLattice::standard(int dim) {
  IntMat rows(dim, IntVec(dim, 0));
  for (int i = 0; i < dim; ++i) rows[i][i] = 1;
  return from_integer_rows(dim, rows);
}

std::vector<RatVec> IntLattice::basis() const {
  std::vector<RatVec> out;
  for (const auto& row : rows_) {
    RatVec v(dim_);
    for (int k = 0; k < dim_; ++k) {
      v[k] = Rat(row[k], den_);
      v[k].canonicalize();
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<RatVec> IntLattice::coordinates(const RatVec& v) const {
  if (static_cast<int>(v.size()) != dim_) throw DomainError("IntLattice: vector of wrong length");
  RatVec w(dim_);
  for (int k = 0; k < dim_; ++k) w[k] = v[k] * den_;
  RatVec x(rank());
  for (int i = 0; i < rank(); ++i) {
    const int c = piv_[i];
    x[i] = w[c] / rows_[i][c];
    if (x[i] != 0)
      for (int k = c; k < dim_; ++k) w[k] -= x[i] * rows_[i][k];
  }
  for (const auto& r : w)
    if (r != 0) return std::nullopt;
  return x;
}

bool IntLattice::contains(const RatVec& v) const {
  auto x = coordinates(v);
  if (!x) return false;
  for (const auto& c : *x)
    if (c.get_den() != 1) return false;
  return true;
}

bool IntLattice::contains(const IntLattice& o) const {
  for (const auto& b : o.basis())
    if (!contains(b)) return false;
  return true;
}

namespace {

IntMat rescale(const IntMat& rows, const Int& factor) {
  IntMat out = rows;
  for (auto& r : out)
    for (auto& x : r) x *= factor;
  return out;
}

}  // namespace

IntLattice IntLattice::sum(const IntLattice& o) const {
  if (dim_ != o.dim_) throw DomainError("IntLattice: dimension mismatch");
  Int D = lcm_int(den_, o.den_);
  IntMat rows = rescale(rows_, D / den_);
  for (auto& r : rescale(o.rows_, D / o.den_)) rows.push_back(std::move(r));
  return from_integer_rows(dim_, rows, D);
}

IntLattice IntLattice::intersect(const IntLattice& o) const {
  if (dim_ != o.dim_) throw DomainError("IntLattice: dimension mismatch");
  if (rows_.empty() || o.rows_.empty()) return IntLattice(dim_);
  Int D = lcm_int(den_, o.den_);
  IntMat A = rescale(rows_, D / den_);
  IntMat stacked = A;
  for (auto& r : rescale(o.rows_, D / o.den_)) stacked.push_back(std::move(r));
  // (a, b) with a A + b B = 0 gives a A in both lattices
  IntMat out;
  for (const auto& k : left_kernel(stacked)) {
    IntVec v(dim_, 0);
    for (size_t i = 0; i < A.size(); ++i)
      if (k[i] != 0)
        for (int c = 0; c < dim_; ++c) v[c] += k[i] * A[i][c];
    out.push_back(std::move(v));
  }
  return from_integer_rows(dim_, out, D);
}

IntLattice IntLattice::intersect_kernel(const std::vector<RatVec>& A) const {
  if (static_cast<int>(A.size()) != dim_) throw DomainError("intersect_kernel: matrix must have dim rows");
  if (rows_.empty()) return *this;
  const size_t k = A.empty() ? 0 : A[0].size();
  Int L = 1;
  for (const auto& row : A)
    for (const auto& x : row) L = lcm_int(L, x.get_den());
  IntMat BA(rows_.size(), IntVec(k, 0));
  for (size_t i = 0; i < rows_.size(); ++i)
    for (int c = 0; c < dim_; ++c) {
      if (rows_[i][c] == 0) continue;
      for (size_t j = 0; j < k; ++j)
        if (A[c][j] != 0) BA[i][j] += rows_[i][c] * (A[c][j].get_num() * (L / A[c][j].get_den()));
    }
  IntMat out;
  for (const auto& kv : left_kernel(BA)) {
    IntVec v(dim_, 0);
    for (size_t i = 0; i < rows_.size(); ++i)
      if (kv[i] != 0)
        for (int c = 0; c < dim_; ++c) v[c] += kv[i] * rows_[i][c];
    out.push_back(std::move(v));
  }
  return from_integer_rows(dim_, out, den_);
}

IntLattice IntLattice::scaled(const Rat& s) const {
  if (s == 0) return IntLattice(dim_);
  return from_integer_rows(dim_, rescale(rows_, s.get_num()), den_ * s.get_den());
}

IntLattice IntLattice::image(const std::vector<RatVec>& A) const {
  if (static_cast<int>(A.size()) != dim_) throw DomainError("image: matrix must have dim rows");
  const int k = A.empty() ? 0 : static_cast<int>(A[0].size());
  std::vector<RatVec> gens;
  for (const auto& b : basis()) {
    RatVec v(k, Rat(0));
    for (int c = 0; c < dim_; ++c)
      if (b[c] != 0)
        for (int j = 0; j < k; ++j) v[j] += b[c] * A[c][j];
    gens.push_back(std::move(v));
  }
  return from_generators(k, gens);
}

std::string IntLattice::digest() const {
  std::ostringstream s;
  s << "Z|" << dim_ << "|" << den_.get_str();
  for (const auto& r : rows_) {
    s << "|";
    for (const auto& x : r) s << x.get_str() << ",";
  }
  return sha256_hex(s.str());
}

std::vector<Int> elementary_divisors(const IntLattice& L1, const IntLattice& L2) {
  if (L1.dim() != L2.dim()) throw DomainError("index: dimension mismatch");
  if (L1.rank() != L2.rank()) throw RankError("index: ranks differ (" + std::to_string(L1.rank()) + " vs " + std::to_string(L2.rank()) + ")");
  IntMat C;
  for (const auto& b : L2.basis()) {
    auto x = L1.coordinates(b);
    if (!x) throw ContainmentError("index: sublattice leaves the rational span");
    IntVec row;
    for (const auto& c : *x) {
      if (c.get_den() != 1) throw ContainmentError("index: sublattice not contained");
      row.push_back(c.get_num());
    }
    C.push_back(std::move(row));
  }
  auto d = smith_diagonal(C);
  if (static_cast<int>(d.size()) != L1.rank()) throw InternalError("index: singular coordinate matrix");
  return d;
}

Int index(const IntLattice& L1, const IntLattice& L2) {
  Int r = 1;
  for (const auto& d : elementary_divisors(L1, L2)) r *= d;
  return r;
}

// ----------------------------------------------------------------------------
// p-adic lattices

PVec to_pvec(const PadicCyclo& x) { return PVec{x.coeffs(), x.shift(), x.precision()}; }

PVec to_pvec(long p, const std::vector<PadicFraction>& xs) {
  PVec v;
  if (xs.empty()) return v;
  int s = 1 << 30, prec = 1 << 30;
  for (const auto& f : xs) {
    s = std::min(s, -f.denominator_exponent());
    prec = std::min(prec, f.absolute_precision());
  }
  v.shift = s;
  v.prec = prec;
  for (const auto& f : xs) v.c.push_back(f.numerator().residue() * pow_int(p, -f.denominator_exponent() - s));
  return v;
}

PVec to_pvec(const PadicGroupRing& x) {
  auto s = scalar_coefficients(x);
  if (!s) throw DomainError("to_pvec: group ring coefficients are not in Q_p");
  return to_pvec(x.group()->prime(), *s);
}

PadicLattice::PadicLattice(long p, int dim, const std::vector<PVec>& gens, int slack)
    : p_(p), dim_(dim), slack_(slack) {
  if (gens.empty()) {
    P_ = 1 << 20;
    return;
  }
  K_ = -(1 << 30);
  P_ = 1 << 30;
  for (const auto& g : gens) {
    if (static_cast<int>(g.c.size()) != dim) throw DomainError("PadicLattice: generator of wrong length");
    K_ = std::max(K_, -g.shift);
  }
  for (const auto& g : gens) P_ = std::min(P_, g.prec + K_);
  const Int mod = pow_int(p, P_);
  IntMat M;
  for (const auto& g : gens) {
    Int f = pow_int(p, g.shift + K_);
    IntVec r(dim);
    for (int k = 0; k < dim; ++k) r[k] = iwlab::mod(g.c[k] * f, mod);
    M.push_back(std::move(r));
  }
  const bool par = parallel_enabled();
  const int m = static_cast<int>(M.size());
  std::vector<char> used(dim, 0);
  for (int r = 0; r < m; ++r) {
    // pivot of least valuation in the remaining block, first in (row, column) order
    int bi = -1, bc = -1, bv = 1 << 30;
    for (int i = r; i < m; ++i)
      for (int c = 0; c < dim; ++c) {
        if (used[c] || M[i][c] == 0) continue;
        int v = pval(M[i][c], p);
        if (v < bv) {
          bv = v;
          bi = i;
          bc = c;
        }
      }
    if (bi < 0) break;
    if (bv >= P_ - slack_)
      throw DegeneratePrecision("PadicLattice: pivot valuation " + std::to_string(bv - K_) + " within slack of precision " +
                                    std::to_string(P_ - K_),
                                bv - K_);
    std::swap(M[r], M[bi]);
    used[bc] = 1;
    const Int pv = pow_int(p, bv);
    Int u = M[r][bc] / pv;
    Int uinv = inverse_mod(u, mod);
    for (auto& x : M[r]) x = iwlab::mod(x * uinv, mod);
#pragma omp parallel for if (par) schedule(static)
    for (int i = r + 1; i < m; ++i) {
      if (M[i][bc] == 0) continue;
      Int q = M[i][bc] / pv;
      for (int k = 0; k < dim; ++k) {
        if (M[r][k] == 0) continue;
        M[i][k] -= q * M[r][k];
        mpz_mod(M[i][k].get_mpz_t(), M[i][k].get_mpz_t(), mod.get_mpz_t());
      }
    }
    rows_.push_back(M[r]);
    piv_.push_back(bc);
    val_.push_back(bv);
  }
}

std::vector<int> PadicLattice::pivot_valuations() const {
  std::vector<int> v;
  for (int x : val_) v.push_back(x - K_);
  return v;
}

long PadicLattice::volume_valuation() const {
  long s = 0;
  for (int x : val_) s += x - K_;
  return s;
}

Decision PadicLattice::contains(const PVec& v) const {
  if (static_cast<int>(v.c.size()) != dim_) throw DomainError("PadicLattice: vector of wrong length");
  // bring v to the lattice scale
  const int Pm = std::min(P_, v.prec + K_);
  if (v.shift + K_ < 0) {
    // an entry of valuation below -scale cannot lie in the lattice
    for (const auto& x : v.c) {
      int vx = pval(x, p_);
      if (vx < -(v.shift + K_)) return vx < v.prec - v.shift ? Decision::no : Decision::undecidable;
    }
  }
  const Int mod = pow_int(p_, Pm);
  IntVec w(dim_);
  for (int k = 0; k < dim_; ++k) {
    Int t = v.c[k];
    int e = v.shift + K_;
    if (e >= 0)
      t *= pow_int(p_, e);
    else
      t /= pow_int(p_, -e);
    w[k] = iwlab::mod(t, mod);
  }
  int maxv = 0;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const int c = piv_[i];
    maxv = std::max(maxv, val_[i]);
    if (w[c] == 0) continue;
    int vc = pval(w[c], p_);
    if (vc < val_[i]) return val_[i] < Pm ? Decision::no : Decision::undecidable;
    Int q = w[c] / pow_int(p_, val_[i]);
    for (int k = 0; k < dim_; ++k)
      if (rows_[i][k] != 0) w[k] = iwlab::mod(w[k] - q * rows_[i][k], mod);
  }
  for (const auto& x : w)
    if (x != 0) return Decision::no;
  return maxv < Pm - slack_ ? Decision::yes : Decision::undecidable;
}

namespace {

PVec row_vec(const PadicLattice& L, size_t i) {
  return PVec{L.hnf_rows()[i], -L.scale(), L.precision() - L.scale()};
}

}  // namespace

Decision PadicLattice::contains(const PadicLattice& o) const {
  Decision out = Decision::yes;
  for (size_t i = 0; i < o.hnf_rows().size(); ++i) {
    Decision d = contains(row_vec(o, i));
    if (d == Decision::no) return d;
    if (d == Decision::undecidable) out = d;
  }
  return out;
}

std::string PadicLattice::digest() const {
  // column-ordered Hermite form of the echelon basis, reduced modulo the precision it retains
  IntMat M = rows_;
  int Ph = P_;
  std::vector<std::pair<int, int>> order;
  for (size_t i = 0; i < piv_.size(); ++i) order.push_back({piv_[i], static_cast<int>(i)});
  std::sort(order.begin(), order.end());
  IntMat H;
  for (auto [c, i] : order) H.push_back(M[i]);
  std::vector<int> hv;
  for (auto [c, i] : order) hv.push_back(val_[i]);
  for (size_t r = 0; r < H.size(); ++r) {
    const int c = order[r].first;
    const Int pv = pow_int(p_, hv[r]);
    for (size_t j = r + 1; j < H.size(); ++j) {
      if (H[j][c] == 0) continue;
      Ph = std::min(Ph, P_ - hv[r]);
      Int q = H[j][c] / pv;
      for (int k = 0; k < dim_; ++k) H[j][k] -= q * H[r][k];
    }
  }
  std::ostringstream s;
  s << "Zp|" << p_ << "|" << dim_ << "|" << K_;
  if (Ph <= 0) {
    s << "|exhausted";
    for (size_t r = 0; r < H.size(); ++r) s << "|" << order[r].first << ":" << hv[r];
    return sha256_hex(s.str());
  }
  const Int mod = pow_int(p_, Ph);
  for (size_t r = 0; r < H.size(); ++r) {
    const Int pv = pow_int(p_, hv[r]);
    for (size_t k = 0; k < r; ++k) {
      Int q;
      Int x = iwlab::mod(H[k][order[r].first], mod);
      mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
      for (int j = 0; j < dim_; ++j) H[k][j] -= q * H[r][j];
    }
  }
  s << "|" << Ph;
  for (auto& row : H) {
    s << "|";
    for (auto& x : row) s << iwlab::mod(x, mod).get_str() << ",";
  }
  return sha256_hex(s.str());
}

namespace {

IntMat project(const IntMat& rows, const std::vector<int>& cols) {
  IntMat out;
  for (const auto& r : rows) {
    IntVec v;
    for (int c : cols) v.push_back(r[c]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

PadicIndex index(const PadicLattice& L1, const PadicLattice& L2) {
  if (L1.dim() != L2.dim() || L1.prime() != L2.prime()) throw DomainError("index: lattices in different spaces");
  if (L1.rank() != L2.rank())
    throw RankError("index: ranks differ (" + std::to_string(L1.rank()) + " vs " + std::to_string(L2.rank()) + ")");
  PadicIndex out;
  Decision c = L1.contains(L2);
  if (c == Decision::no) throw ContainmentError("index: sublattice not contained");
  // L1's pivot columns are coordinates on the common span; volumes compare there
  std::vector<PVec> proj;
  auto P2 = project(L2.hnf_rows(), L1.pivot_columns());
  for (auto& r : P2) proj.push_back(PVec{r, -L2.scale(), L2.precision() - L2.scale()});
  try {
    PadicLattice Q(L1.prime(), L1.rank(), proj, L2.slack());
    if (Q.rank() != L2.rank()) {
      out.note = "projection lost rank at precision";
      return out;
    }
    out.exponent = Q.volume_valuation() - L1.volume_valuation();
  } catch (const DegeneratePrecision& e) {
    out.note = e.what();
    return out;
  }
  out.status = c;
  if (c == Decision::undecidable) out.note = "containment undecidable at precision";
  return out;
}

Decision equals(const PadicLattice& L1, const PadicLattice& L2) {
  if (L1.dim() != L2.dim() || L1.prime() != L2.prime()) throw DomainError("equals: lattices in different spaces");
  if (L1.rank() != L2.rank()) return Decision::no;
  Decision a = L1.contains(L2);
  if (a == Decision::no) return a;
  Decision b = L2.contains(L1);
  if (b == Decision::no) return b;
  return a == Decision::yes && b == Decision::yes ? Decision::yes : Decision::undecidable;
}

}  // namespace iwlab
