#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abelsup/outgroup.hpp"
#include "abelsup/semimat.hpp"

namespace abelsup {

/// Constructed generators plus the branch that produced them.
struct MatrixSupplement {
  std::vector<SemilinearWord> gens;
  std::string route;
  std::vector<std::pair<std::string, std::int64_t>> params;  // branch data (y, t, u, e, ...)
  CenterSpec center;
};

/// Companion-style A_{w,l}: ones below the diagonal, (-1)^{w-1} b^l in the corner,
/// where b = omega^base_log (base_log = 1 over F_q, q-1 for the unitary omega).
Mat build_A(const FieldPtr& f, int w, std::int64_t l, std::int64_t base_log = 1);
/// X_{w,c} = diag(b^{c(w-1)}, ..., b^c, 1).
Mat build_X(const FieldPtr& f, int w, std::int64_t c, std::int64_t base_log = 1);

/// Least y in [1, M] with y*n = d (mod M) and gcd(y, t) = 1.
std::int64_t find_y(std::int64_t n, std::int64_t d, std::int64_t M, std::int64_t t);
/// Least odd y >= 1 with y*n = d (mod M).
std::int64_t find_y_odd(std::int64_t n, std::int64_t d, std::int64_t M);

/// Shape of T when pi(T) = T/(T meets <delta>) is cyclic: T = <delta^k, phi^s g^eps delta^j>.
struct CyclicPiShape {
  std::int64_t k = 0, s = 0, j = 0;
  int eps = 0;
};
/// Shape when pi(T) = <phi^s, g>: T = <delta^{d/2}, phi^s delta^j, g delta^k>.
struct ThreeGenShape {
  std::int64_t s = 0, j = 0, k = 0;
};
std::optional<CyclicPiShape> cyclic_pi_shape(const OutModel& om, const AbelianT& T);
std::optional<ThreeGenShape> three_gen_shape(const OutModel& om, const AbelianT& T);

/// Lift of a single Out element to a word: (f, g, diag(b^v, 1, ..., 1)).
SemilinearWord diagonal_lift(const OutModel& om, const FieldPtr& f, const OutElement& x,
                             std::int64_t base_log = 1);

/// Pieces of the t != n branch, exposed for property tests.
struct PgammalPieces {
  Mat A, X, C;
  std::int64_t y = 0, t = 0, r = 0, u = 0;
};
PgammalPieces pgammal_pieces(const FieldPtr& f, int n, std::int64_t d, std::int64_t M,
                             std::int64_t k, std::int64_t s, int eps, std::int64_t base_log = 1);

/// Pieces of the three-generator construction (before the final conjugation).
struct ThreeGenPieces {
  Mat A, Xphi, Xgam, Xphi2, Xgam2;
  std::int64_t y = 0, r = 0;
};
ThreeGenPieces three_gen_pieces(const FieldPtr& f, int n, std::int64_t d, std::int64_t s);

/// Two-dimensional construction: <A, phi B> with A = [[0,-w],[1,0]], B = diag(w^{(p-1)/2}, 1).
MatrixSupplement psl2_supplement(const FieldPtr& f);

/// Dispatcher over the linear cases; T abelian, n >= 2. Cyclic T take the
/// cyclic-lift shortcut unless allow_cyclic_lift is false.
MatrixSupplement psl_supplement(const OutModel& om, const FieldPtr& f, const AbelianT& T,
                                bool allow_cyclic_lift = true);

}  // namespace abelsup
