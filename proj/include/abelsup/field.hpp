#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace abelsup {

/// Packed base-p code of a polynomial-basis element: sum c_i p^i.
struct FieldElement {
  std::uint32_t code = 0;
  constexpr auto operator<=>(const FieldElement&) const = default;
};

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Default cap on q for table construction.
inline constexpr std::int64_t kDefaultTableBound = std::int64_t{1} << 16;

/// A finite field F_q with a primitive element and full exp/log tables.
/// Immutable once built; share it through FieldPtr.
class FieldSpec {
 public:
  static FieldPtr make(std::int64_t p, std::int64_t m,
                       std::int64_t table_bound = kDefaultTableBound);
  /// Convenience: q must be a prime power.
  static FieldPtr of_order(std::int64_t q,
                           std::int64_t table_bound = kDefaultTableBound);

  std::int64_t p() const { return p_; }
  std::int64_t m() const { return m_; }
  std::int64_t q() const { return q_; }
  /// Coefficients c_0..c_{m-1} of the monic modulus x^m + sum c_i x^i.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement omega() const { return exp_[1 % (q_ - 1)]; }
  /// Image of the integer k in the prime subfield.
  FieldElement from_int(std::int64_t k) const;
  /// omega^k for any integer k.
  FieldElement pow_omega(std::int64_t k) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  /// a^k, k may be negative when a != 0.
  FieldElement pow(FieldElement a, std::int64_t k) const;
  /// a^(p^s).
  FieldElement frob(FieldElement a, std::int64_t s) const;

  /// Exponent in [0, q-2] with omega^e = x; throws on zero.
  std::int64_t dlog(FieldElement x) const;
  /// Multiplicative order of x != 0.
  std::int64_t order(FieldElement x) const;
  bool is_zero(FieldElement x) const { return x.code == 0; }
  bool is_square(FieldElement x) const;

  std::string to_string(FieldElement x) const;

 private:
  FieldSpec() = default;
  std::int64_t p_ = 0, m_ = 0, q_ = 0;
  std::vector<std::int64_t> modulus_;
  std::vector<FieldElement> exp_;     // exp_[k] = omega^k, k in [0, q-2]
  std::vector<std::int32_t> log_;     // log_[code], -1 for zero
  std::vector<std::uint32_t> pw_;     // p^i
};

/// dlog free-function spelling.
inline std::int64_t dlog(const FieldSpec& f, FieldElement x) { return f.dlog(x); }
inline FieldElement frob(const FieldSpec& f, FieldElement x, std::int64_t s) {
  return f.frob(x, s);
}

}  // namespace abelsup
