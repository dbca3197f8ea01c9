#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace abelsup {

/// Non-negative residue of a modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t gcd(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

constexpr std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(a, b), c);
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> egcd(std::int64_t a,
                                                                 std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  auto [g, x, y] = egcd(mod(a, m), m);
  (void)y;
  if (g != 1) throw std::domain_error("inverse_mod: not invertible");
  return mod(x, m);
}

constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Integer power with overflow check against `limit`.
inline std::int64_t ipow(std::int64_t base, std::int64_t e,
                         std::int64_t limit = (std::int64_t{1} << 62)) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (base != 0 && r > limit / (base < 0 ? -base : base))
      throw std::overflow_error("ipow: overflow");
    r *= base;
  }
  return r;
}

/// base^e mod m for e >= 0.
constexpr std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t r = 1;
  std::int64_t b = mod(base, m);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % m);
    b = static_cast<std::int64_t>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

/// Distinct prime divisors in increasing order (trial division).
inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Writes q = p^m; returns false if q is not a prime power.
inline bool prime_power(std::int64_t q, std::int64_t& p, std::int64_t& m) {
  if (q < 2) return false;
  auto ps = prime_divisors(q);
  if (ps.size() != 1) return false;
  p = ps.front();
  m = 0;
  while (q > 1) {
    q /= p;
    ++m;
  }
  return true;
}

}  // namespace abelsup
