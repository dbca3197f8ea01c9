#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace abelsup {

/// Dense integer matrix, row-major, small dimensions only.
using IntMat = std::vector<std::vector<std::int64_t>>;

IntMat int_identity(int n);
IntMat int_mul(const IntMat& a, const IntMat& b);
IntMat int_sub(const IntMat& a, const IntMat& b);
IntMat int_add(const IntMat& a, const IntMat& b);
IntMat int_transpose(const IntMat& a);
IntMat int_scaled(const IntMat& a, std::int64_t k);
std::int64_t int_det(const IntMat& a);
std::string int_to_string(const IntMat& a);

/// Exact inverse scaled by `scale`; nullopt when scale * a^{-1} is not integral.
/// Throws std::domain_error if a is singular.
std::optional<IntMat> scaled_inverse(const IntMat& a, std::int64_t scale);

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... (non-negative).
struct Smith {
  IntMat U, D, V;
};
Smith smith_normal_form(const IntMat& a);

/// Some x with A x = b (mod M), or nullopt.
std::optional<std::vector<std::int64_t>> solve_congruence(const IntMat& a,
                                                          const std::vector<std::int64_t>& b,
                                                          std::int64_t M);

}  // namespace abelsup
