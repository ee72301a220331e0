// Machine checks of the statements about log-images of local units, cyclotomic
// units and Stickelberger-type ideals, with the modules they are built from.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "iwlab/lattice.hpp"

namespace iwlab {

enum class Status { verified, falsified, undecidable, vacuous };
const char* to_string(Status s);
// falsified > undecidable > verified > vacuous
Status combine(Status a, Status b);
// exit-code order used by the CLI: 0 verified/vacuous, 1 falsified, 2 undecidable
int exit_code(Status s);

struct CheckParams {
  long p = 5;
  long d = 1;
  int n = 0;
  std::string theta;            // character selector, empty for every admissible one
  int precision = 0;            // 0: default for (p, n)
  std::string reading = "F-1";  // correction term of the f_theta = d case
  int level = -1;               // level i of the norm relation, -1 for all
  std::string key() const;
};

struct Witness {
  std::string key, value;
};

struct VerificationReport {
  std::string id;
  CheckParams params;
  std::vector<std::string> characters;
  Status status = Status::vacuous;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
  int precision = 0;
  double wall_ms = 0;
};

// 2 (n p^n + n + 1) + 16
int default_precision(long p, int n);

class CheckContext {
 public:
  CheckContext(const CheckParams& params, int N);
  const CheckParams& params() const { return params_; }
  long p() const { return params_.p; }
  long d() const { return params_.d; }
  int n() const { return params_.n; }
  int N() const { return N_; }
  // modulus for equality of p-adic values
  int cmp() const { return N_ - PadicLattice::kDefaultSlack; }

  // one sub-check; no -> falsified, undecidable -> undecidable
  void sub(const std::string& label, Decision d, const std::string& detail = "");
  void sub(const std::string& label, bool ok, const std::string& detail = "");
  void witness(const std::string& key, const std::string& value);
  void note(const std::string& s);
  void character(const std::string& label);
  VerificationReport& report() { return rep_; }
  int sub_count() const { return subs_; }

 private:
  const CheckParams& params_;
  int N_;
  int subs_ = 0;
  VerificationReport rep_;
};

using CheckFn = std::function<void(CheckContext&)>;
struct CheckInfo {
  std::string id;
  std::string anchor;  // quote of the statement being checked
  std::string summary;
  CheckFn run;
};
const std::vector<CheckInfo>& check_registry();
// throws DomainError for unknown ids
const CheckInfo& find_check(const std::string& id);

// Runs at the requested precision, retries once at twice the precision when undecidable.
VerificationReport run_check(const std::string& id, const CheckParams& params);

struct GridPoint {
  std::string id;
  CheckParams params;
};
// every registered check over the default (or extended) parameter grid
std::vector<GridPoint> default_grid(bool extended);
// parameter points of one check
std::vector<GridPoint> grid_for(const std::string& id, bool extended);
// Runs the points with up to `workers` concurrent checks; sink is called in input order.
std::vector<VerificationReport> run_grid(const std::vector<GridPoint>& points, int workers,
                                         const std::function<void(const VerificationReport&)>& sink = {});

// ----------------------------------------------------------------------------
// Characters of Delta = (Z/p)^x as powers of omega

struct DeltaCharacter {
  int k;  // omega^k
  DirichletCharacter chi;
  std::string label;
};
std::vector<DeltaCharacter> delta_characters(long p);
// selector: "" or "all", "trivial", "omega", "quad"/"quadratic", "omega^k"
std::vector<DeltaCharacter> select_delta(long p, const std::string& selector);

// ----------------------------------------------------------------------------
// Modules in R_n = Q_p(zeta_{p^{n+1}}), power-basis coordinates

enum class LogSource { U, closure_C, V };
enum class Projector { none, e_theta, T_Delta, minus };

struct LogImageLattice {
  long p;
  int n;
  LogSource source;
  Projector projector;
  int theta_k;          // for e_theta
  int range;            // generators 1 + pi^i (or 1 + p pi^i) for i < range
  std::vector<PVec> gens;
  PadicLattice lattice;
  std::string recipe;
};

PadicCyclo apply_projector(Projector proj, int theta_k, const PadicCyclo& x);
// Z_p-span of the projected logs of a generating set of the source group.
// For U the index in p^{-n} O_n is compared with the expected value and the
// generator range doubled on mismatch (InternalError after the last attempt);
// for V the result is checked to equal p O_n.
LogImageLattice log_image(long p, int n, LogSource source, Projector proj, int theta_k, int N, bool cross_check = true);
// expected exponent of [p^{-n} proj O_n : proj log U_n]
long expected_log_index(long p, int n, Projector proj, int theta_k);

// projected basis p^shift zeta^k of p^shift O_n
std::vector<PVec> projected_order(long p, int n, Projector proj, int theta_k, int N, int shift);
// Z_p[Gamma_n]-orbit of x (gamma0 = 1 + p)
std::vector<PVec> gamma_orbit(const PadicCyclo& x);
std::vector<PadicCyclo> gamma_orbit_elements(const PadicCyclo& x);

// Solution u of sum_i u_i rows[i] = target (rows independent) with the number of
// p-adic digits it is certified to; nullopt when the target is outside the span.
struct PadicSolution {
  std::vector<Rat> u;
  int precision = 0;  // absolute, each u_i is known modulo p^precision
};
std::optional<PadicSolution> solve_left(long p, const std::vector<PVec>& rows, const PVec& target);

// ----------------------------------------------------------------------------
// Pure Z_p computations

// P(alpha) = sum_{k=1}^{p-1} (-1)^k (C(p,k)/p) omega(k) alpha^k mod p^2, alpha = omega(a)
Int generator_polynomial_mod_p2(long p, long a);
// residues a in [2, p-2] whose Teichmuller lift satisfies P(omega(a)) != 0 mod p^2
std::vector<long> find_alpha(long p);

}  // namespace iwlab
