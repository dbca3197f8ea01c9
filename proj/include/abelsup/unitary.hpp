#pragma once

#include "abelsup/linear.hpp"

namespace abelsup {

/// F_{q^2} with nu primitive and omega = nu^{q-1} of order q+1.
struct UnitaryContext {
  FieldPtr F;
  std::int64_t q = 0;
  FieldElement nu, omega;
  std::int64_t base_log = 0;  // dlog_nu(omega) = q-1

  static UnitaryContext make(std::int64_t q);
};

/// Unitary for the identity Hermitian form: (X^[q])^T X = I.
bool is_unitary(const UnitaryContext& ctx, const Mat& X);

/// Checks apply_word((s,0,X_{w,c}), A_{w,l}) = omega^c A_{w,l}; throws if
/// cw != l(p^s - 1) mod q+1 or the identity fails.
FieldElement ublock_scalar(const UnitaryContext& ctx, int w, std::int64_t l, std::int64_t c,
                           std::int64_t s);

/// Supplement for a maximal abelian T in the psu model (n >= 3).
MatrixSupplement psu_supplement(const OutModel& om, const UnitaryContext& ctx, const AbelianT& T,
                                bool allow_cyclic_lift = true);

}  // namespace abelsup
