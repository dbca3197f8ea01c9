#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "abelsup/intmat.hpp"

namespace abelsup {

/// Cartan data in Bourbaki numbering. Labels are 1-based in the public API.
struct RootSystem {
  char type = 'A';
  int n = 0;
  IntMat cartan;          // a_ij = <alpha_i, alpha_j^vee>, so alpha_i = sum_j a_ij omega_j
  std::vector<int> tau;   // diagram symmetry as a 0-based permutation; empty when absent
  std::int64_t delta = 1;   // |P/Q|
  std::int64_t delta1 = 1;  // 2 for D_n with n even, else delta
  // Smith data of the Cartan matrix: U C V = diag(smith_d).
  IntMat smith_u;
  std::vector<std::int64_t> smith_d;

  std::string name() const { return std::string(1, type) + std::to_string(n); }
  bool has_tau() const { return !tau.empty(); }
};

RootSystem root_system(char type, int n);

/// Simple reflection s_i on weight coordinates (column vectors), i 1-based.
IntMat reflection(const RootSystem& rs, int i);
/// w = s_{o1} s_{o2} ... s_{on} on weight coordinates.
IntMat coxeter_map(const RootSystem& rs, const std::vector<int>& order);
/// Weight-coordinate map rewritten in root coordinates; throws if not integral on Q.
IntMat to_root_coords(const RootSystem& rs, const IntMat& w);
/// Root coordinates of (1 - w) omega_{o_k}: unit at o_k, zero at later labels.
bool lemma_coxeter_verify(const RootSystem& rs, const std::vector<int>& order);
/// Delta_1 (1 - w)^{-1} as an endomorphism of Q in root coordinates.
IntMat inv_one_minus_w(const RootSystem& rs, const std::vector<int>& order,
                       std::int64_t scale = 0);  // 0 means delta1
/// (1 + tau)(1 - w)^{-1} on Q, root coordinates (needs tau).
IntMat one_plus_tau_over(const RootSystem& rs, const std::vector<int>& order);
/// Permutation matrix of tau in root coordinates.
IntMat tau_matrix(const RootSystem& rs);

/// chi(alpha_i) = lambda^{e_i}, exponents mod M.
struct QCharacter {
  std::vector<std::int64_t> e;
  std::int64_t M = 1;
  bool operator==(const QCharacter&) const = default;
};

QCharacter reduce(QCharacter c);
QCharacter char_scale(const QCharacter& c, std::int64_t k);
QCharacter char_add(const QCharacter& a, const QCharacter& b);
/// chi o f for f an endomorphism of Q given in root coordinates.
QCharacter char_compose(const QCharacter& c, const IntMat& f);

bool extends_to_P(const RootSystem& rs, const QCharacter& c);
/// chi(tau x) = chi(x)^q; M must be q^2 - 1.
bool self_conjugate(const RootSystem& rs, const QCharacter& c, std::int64_t q);
/// Extends to a self-conjugate character of P.
bool extends_self_conjugately(const RootSystem& rs, const QCharacter& c, std::int64_t q);

/// Least (lexicographic) character that does not extend to P.
QCharacter least_nonextendable(const RootSystem& rs, std::int64_t M);
/// Least self-conjugate character with no self-conjugate extension to P.
QCharacter least_nonextendable_twisted(const RootSystem& rs, std::int64_t q);

/// Character-level certificate for the Chevalley-type constructions.
struct CharCertificate {
  std::string kind;  // bn, cn, e7, e6-case1, e6-case2, 2e6, 2dn
  char type = 'A';
  int n = 0;
  std::int64_t q = 0, p = 0, M = 0;
  std::vector<int> order;     // Coxeter element w
  std::int64_t field_power = 1;  // F raises to p^field_power
  bool graph = false;            // F also applies tau
  bool twisted = false;
  QCharacter chi, chi_prime;
};

/// Builds (chi, chi') for the given kind over F_q (n is the rank for bn, cn, 2dn);
/// throws when the arithmetic regime does not apply.
CharCertificate chevalley_supplement(const std::string& kind, int n, std::int64_t q);

/// Re-derives every claim of a character certificate from its data. Empty string on
/// success, else the first failed check.
std::string verify_char_certificate(const CharCertificate& c);

/// The two characters of the D4 triality case together with their checks.
struct D4Case4 {
  std::int64_t q = 0, M = 0;
  QCharacter xi, xi1;
  bool xi_extends = false;     // c3, c4 -> squares
  bool xi1_is_delta2 = false;  // c3 -> square, c4 -> non-square
  bool xi_rho_invariant = false;
};
D4Case4 d4_case4_characters(std::int64_t q);

/// Exponents of chi on the basis c_1..c_n of Q used for D_n, n even.
std::vector<std::int64_t> dn_c_values(const QCharacter& c);
/// Klein class (c_{n-1}, c_n square test) of a D_n (n even) character.
std::array<std::int64_t, 2> dn_even_class(const QCharacter& c);

}  // namespace abelsup
