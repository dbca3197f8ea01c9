#include "abelsup/field.hpp"

#include <sstream>
#include <stdexcept>

#include "abelsup/arith.hpp"

namespace abelsup {

namespace {

// Digits of a code, least significant first.
std::vector<std::int64_t> digits(std::uint32_t code, std::int64_t p, std::int64_t m) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(m));
  for (auto& x : d) {
    x = code % p;
    code /= static_cast<std::uint32_t>(p);
  }
  return d;
}

std::uint32_t pack(const std::vector<std::int64_t>& d, std::int64_t p) {
  std::uint32_t c = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it)
    c = c * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(*it);
  return c;
}

// Multiply a polynomial (digit vector) by x modulo the monic modulus.
void times_x(std::vector<std::int64_t>& v, const std::vector<std::int64_t>& mod_coeffs,
             std::int64_t p) {
  const std::size_t m = v.size();
  std::int64_t lead = v[m - 1];
  for (std::size_t i = m - 1; i > 0; --i) v[i] = v[i - 1];
  v[0] = 0;
  if (lead != 0)
    for (std::size_t i = 0; i < m; ++i) v[i] = mod(v[i] - lead * mod_coeffs[i], p);
}

// True iff x has order exactly q-1 modulo the candidate; fills exp codes.
bool x_is_primitive(const std::vector<std::int64_t>& coeffs, std::int64_t p, std::int64_t m,
                    std::int64_t q, std::vector<FieldElement>* exp_out) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(m), 0);
  v[0] = 1;
  std::vector<FieldElement> ex;
  if (exp_out) ex.reserve(static_cast<std::size_t>(q - 1));
  for (std::int64_t k = 0; k < q - 1; ++k) {
    std::uint32_t c = pack(v, p);
    if (k > 0 && c == 1) return false;
    if (exp_out) ex.push_back({c});
    times_x(v, coeffs, p);
  }
  if (pack(v, p) != 1) return false;
  if (exp_out) *exp_out = std::move(ex);
  return true;
}

}  // namespace

FieldPtr FieldSpec::make(std::int64_t p, std::int64_t m, std::int64_t table_bound) {
  if (!is_prime(p)) throw std::invalid_argument("make_field: p is not prime");
  if (m < 1) throw std::invalid_argument("make_field: m must be positive");
  std::int64_t q = 1;
  for (std::int64_t i = 0; i < m; ++i) {
    q *= p;
    if (q > table_bound)
      throw std::invalid_argument("make_field: q exceeds the table bound");
  }
  auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
  f->p_ = p;
  f->m_ = m;
  f->q_ = q;
  f->pw_.resize(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i)
    f->pw_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(ipow(p, i));

  if (m == 1) {
    // Least primitive residue; F_2 gets omega = 1.
    std::int64_t g = 1;
    for (; g < p; ++g) {
      std::int64_t x = g, ord = 1;
      while (x != 1) {
        x = x * g % p;
        ++ord;
      }
      if (ord == p - 1) break;
    }
    f->modulus_ = {mod(-g, p)};
    f->exp_.resize(static_cast<std::size_t>(p - 1));
    std::int64_t x = 1;
    for (std::int64_t k = 0; k < p - 1; ++k) {
      f->exp_[static_cast<std::size_t>(k)] = {static_cast<std::uint32_t>(x)};
      x = x * g % p;
    }
  } else {
    // Candidates in increasing code order; constant term must be nonzero.
    bool found = false;
    for (std::uint32_t c = 1; c < static_cast<std::uint32_t>(q) && !found; ++c) {
      auto coeffs = digits(c, p, m);
      if (coeffs[0] == 0) continue;
      if (x_is_primitive(coeffs, p, m, q, &f->exp_)) {
        f->modulus_ = coeffs;
        found = true;
      }
    }
    if (!found) throw std::logic_error("make_field: no primitive modulus found");
  }
  f->log_.assign(static_cast<std::size_t>(q), -1);
  for (std::int64_t k = 0; k < q - 1; ++k)
    f->log_[f->exp_[static_cast<std::size_t>(k)].code] = static_cast<std::int32_t>(k);
  return f;
}

FieldPtr FieldSpec::of_order(std::int64_t q, std::int64_t table_bound) {
  std::int64_t p = 0, m = 0;
  if (!prime_power(q, p, m)) throw std::invalid_argument("q is not a prime power");
  return make(p, m, table_bound);
}

FieldElement FieldSpec::from_int(std::int64_t k) const {
  return {static_cast<std::uint32_t>(mod(k, p_))};
}

FieldElement FieldSpec::pow_omega(std::int64_t k) const {
  return exp_[static_cast<std::size_t>(mod(k, q_ - 1))];
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  if (m_ == 1) return {static_cast<std::uint32_t>((a.code + b.code) % p_)};
  if (p_ == 2) return {a.code ^ b.code};
  std::uint32_t out = 0;
  const auto P = static_cast<std::uint32_t>(p_);
  for (std::int64_t i = 0; i < m_; ++i) {
    std::uint32_t da = a.code % P, db = b.code % P;
    a.code /= P;
    b.code /= P;
    out += ((da + db) % P) * pw_[static_cast<std::size_t>(i)];
  }
  return {out};
}

FieldElement FieldSpec::neg(FieldElement a) const {
  if (p_ == 2) return a;
  if (m_ == 1) return {static_cast<std::uint32_t>((p_ - a.code) % p_)};
  std::uint32_t out = 0;
  const auto P = static_cast<std::uint32_t>(p_);
  for (std::int64_t i = 0; i < m_; ++i) {
    std::uint32_t d = a.code % P;
    a.code /= P;
    out += ((P - d) % P) * pw_[static_cast<std::size_t>(i)];
  }
  return {out};
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  if (a.code == 0 || b.code == 0) return zero();
  std::int64_t e = log_[a.code] + log_[b.code];
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[static_cast<std::size_t>(e)];
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("field: inverse of zero");
  std::int64_t e = log_[a.code];
  return exp_[static_cast<std::size_t>(e == 0 ? 0 : q_ - 1 - e)];
}

FieldElement FieldSpec::pow(FieldElement a, std::int64_t k) const {
  if (a.code == 0) {
    if (k < 0) throw std::domain_error("field: negative power of zero");
    return k == 0 ? one() : zero();
  }
  return pow_omega(static_cast<std::int64_t>((__int128)log_[a.code] * k % (q_ - 1)));
}

FieldElement FieldSpec::frob(FieldElement a, std::int64_t s) const {
  if (a.code == 0) return a;
  // p^s mod (q-1) determines the power map on the cyclic group.
  std::int64_t e = powmod(p_, mod(s, m_), q_ - 1);
  return pow(a, e);
}

std::int64_t FieldSpec::dlog(FieldElement x) const {
  if (x.code == 0) throw std::domain_error("dlog: zero has no logarithm");
  return log_[x.code];
}

std::int64_t FieldSpec::order(FieldElement x) const {
  return (q_ - 1) / gcd(dlog(x), q_ - 1);
}

bool FieldSpec::is_square(FieldElement x) const {
  if (x.code == 0 || p_ == 2) return true;
  return dlog(x) % 2 == 0;
}

std::string FieldSpec::to_string(FieldElement x) const {
  if (x.code == 0) return "0";
  if (m_ == 1) return std::to_string(x.code);
  std::ostringstream os;
  os << "w^" << dlog(x);
  return os.str();
}

}  // namespace abelsup
