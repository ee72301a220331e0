// Shared pieces of the check implementations.
#pragma once

#include <sstream>
#include <string>

#include "iwlab/theorem_lab.hpp"

namespace iwlab::lab {

// "p^e"
std::string pow_label(long p, long e);
std::string decision_label(Decision d);
Decision agree(const PadicCyclo& a, const PadicCyclo& b, int A);
// even/odd nontrivial characters mod m whose conductor is a multiple of `multiple_of`
std::vector<DirichletCharacter> characters_mod(long m, int parity, long multiple_of = 1);
bool selected(const std::string& selector, const DirichletCharacter& chi);
// Delta-character with theta(a) = omega(a)^k
const DeltaCharacter& delta_char(long p, int k);
// the Delta idempotent e_{omega^k} applied to x
PadicCyclo e_theta(int k, const PadicCyclo& x);
// T_Delta x
PadicCyclo t_delta(const PadicCyclo& x);
// group-ring element of Gamma(p, n, d) applied to an element of R_n
PadicCyclo act_gamma(const PadicGroupRing& x, const PadicCyclo& v);
// records both containments and returns their conjunction
Decision compare_lattices(CheckContext& ctx, const std::string& label, const PadicLattice& a, const PadicLattice& b);
// records the index [a : b] against p^expected
void check_index(CheckContext& ctx, const std::string& label, const PadicLattice& a, const PadicLattice& b, long expected);

// check bodies
void norm_relation(CheckContext&);
void gauss_l_lemma(CheckContext&);
void pd_identity(CheckContext&);
void d_identities(CheckContext&);
void euler_factor_theorem(CheckContext&);
void script_t_lemma(CheckContext&);
void unprimitive_x(CheckContext&);
void u_n_exists(CheckContext&);
void bernoulli_prime_to_p(CheckContext&);
void main_theorem(CheckContext&);
void iwasawa_corollary(CheckContext&);
void leopoldt_index(CheckContext&);
void log_index(CheckContext&);
void ell_corollary(CheckContext&);
void teich_generator(CheckContext&);
void teich_congruence(CheckContext&);
void alpha_exists(CheckContext&);
void teich_theorem(CheckContext&);
void trivial_prop(CheckContext&);
void trivial_index(CheckContext&);
void trivial_theorem(CheckContext&);
void norm_one_corollary(CheckContext&);
void minus_integrality(CheckContext&);
void minus_identity(CheckContext&);
void nu_membership(CheckContext&);
void stickelberger_ideal(CheckContext&);
void minus_index_prop(CheckContext&);
void minus_2_power(CheckContext&);
void main_index_theorem(CheckContext&);
void restriction_defect(CheckContext&);

}  // namespace iwlab::lab
