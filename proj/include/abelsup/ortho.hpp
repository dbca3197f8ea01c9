#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abelsup/linear.hpp"
#include "abelsup/outgroup.hpp"
#include "abelsup/semimat.hpp"

namespace abelsup {

/// Split form on k^{2n}, basis (e_1..e_n, f_1..f_n), Gram matrix K_n = [[0, I], [I, 0]].
struct SimilitudeContext {
  FieldPtr F;
  int n = 0;
  Mat K;    // K_n
  Mat tau;  // swaps e_n and f_n
  Mat w0;   // swaps e_i and f_i for i < n

  static SimilitudeContext make(FieldPtr F, int n);
  /// diag(I_n, mu I_n)
  Mat o_mu(FieldElement mu) const;
  /// tau_n X tau_n
  Mat tw(const Mat& X) const { return tau * X * tau; }
};

/// mu with X^t K X = mu K, if X is a similitude.
std::optional<FieldElement> similitude_ratio(const SimilitudeContext& ctx, const Mat& X);
/// The ratio eta(X); throws when X is not a similitude.
FieldElement eta(const SimilitudeContext& ctx, const Mat& X);
/// Similitude with det X = eta(X)^n.
bool in_co_circ(const SimilitudeContext& ctx, const Mat& X);

/// Wedge square of a 4x4 matrix in the basis (v12, v13, v23, v34, v42, v14).
Mat sigma_ext_sq(const Mat& X);

/// a(mu) = [[0,-mu,0,0],[1,0,0,0],[0,0,0,-1],[0,0,mu,0]], eta = mu.
Mat a_block(const FieldPtr& f, FieldElement mu);
/// b(mu, nu) = diag(mu^{(p-1)/2}, 1, mu^{-(p-1)/2} nu, nu), eta = nu. Needs p odd.
Mat b_block(const FieldPtr& f, FieldElement mu, FieldElement nu);
/// h(mu) = diag(1, mu, mu, 1).
Mat h_block(const FieldPtr& f, FieldElement mu);

/// The rank-two pieces over F_q with lambda = omega.
struct D2Blocks {
  Mat n1, n2, h1, x1, x2, x3, y;
};
D2Blocks d2_blocks(const FieldPtr& f);

/// Orthogonal direct sum of blocks of size 4 or 6 on consecutive (e, f) index ranges.
Mat embed_blocks(const FieldPtr& f, const std::vector<Mat>& blocks);

/// Monomial representative n_i of the i-th simple reflection of D_n (1-based).
Mat weyl_generator(const SimilitudeContext& ctx, int i);

/// X = n_{i_1} ... n_{i_k} * diag(f_1..f_n, mu/f_1..mu/f_n).
struct MonomialSplit {
  std::vector<int> word;
  std::vector<FieldElement> f;
  FieldElement mu;
};
/// Throws when X is not a monomial element of CO_{2n}°.
MonomialSplit monomial_split(const SimilitudeContext& ctx, const Mat& X);
/// dlog exponents of alpha_1..alpha_n on the torus part (modulus q - 1).
std::vector<std::int64_t> torus_character(const SimilitudeContext& ctx, const Mat& X);
/// Diagonal part of the outer class: Klein vector (n even) or a class mod gcd(4, q-1).
std::array<std::int64_t, 2> similitude_class(const SimilitudeContext& ctx, const Mat& X);

/// Outer image of a word over CO_{2n}°: (s, tau^eps, class of X).
OutElement rho_ortho(const OutModel& om, const SemilinearWord& w);

/// A listed case: its subgroup of Out and a matching family of words.
struct OrthoCase {
  std::string name;
  std::vector<OutElement> t_gens;
  MatrixSupplement sup;
};

/// n odd, p odd, q = 1 mod 4: the listed cases for the residue of p mod 4.
std::vector<OrthoCase> dn_odd_cases(const OutModel& om, const FieldPtr& f);
/// n even, p odd: cases 1-3.
std::vector<OrthoCase> dn_even_cases(const OutModel& om, const FieldPtr& f);

/// Supplement when T equals one of the listed cases; throws otherwise.
MatrixSupplement dn_odd_supplement(const OutModel& om, const FieldPtr& f, const AbelianT& T);
MatrixSupplement dn_even_supplement(const OutModel& om, const FieldPtr& f, const AbelianT& T);

/// The two CO_8 matrices of the triality case and their relation check.
struct D4TrialityMatrices {
  Mat A1, B;
  bool relation = false;  // B^{-1} A1^{[p]} B = lambda^{(p-1)/2} A1
  std::array<std::int64_t, 2> a1_class{0, 0};
  std::array<std::int64_t, 2> b_class{0, 0};
};
D4TrialityMatrices d4_triality_matrices(const FieldPtr& f);

}  // namespace abelsup
