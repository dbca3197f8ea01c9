#include "abelsup/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "abelsup/arith.hpp"

namespace abelsup {

namespace {

IntMat cartan_from_roots(const IntMat& roots) {
  const std::size_t n = roots.size();
  auto dot = [&](std::size_t i, std::size_t j) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < roots[i].size(); ++k) s += roots[i][k] * roots[j][k];
    return s;
  };
  IntMat a(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = 2 * dot(i, j) / dot(j, j);
  return a;
}

IntMat cartan_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  IntMat a = int_scaled(int_identity(n), 2);
  for (auto [i, j] : edges) {
    a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = -1;
    a[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = -1;
  }
  return a;
}

void check_order(const RootSystem& rs, const std::vector<int>& order) {
  std::vector<int> s = order;
  std::sort(s.begin(), s.end());
  for (int i = 0; i < rs.n; ++i)
    if (static_cast<int>(s.size()) != rs.n || s[static_cast<std::size_t>(i)] != i + 1)
      throw std::invalid_argument("order must be a permutation of 1.." + std::to_string(rs.n));
}

}  // namespace

RootSystem root_system(char type, int n) {
  RootSystem rs;
  rs.type = type;
  rs.n = n;
  switch (type) {
    case 'A': {
      if (n < 1) throw std::invalid_argument("A_n needs n >= 1");
      std::vector<std::pair<int, int>> e;
      for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
      rs.cartan = cartan_from_edges(n, e);
      if (n >= 2)
        for (int i = 0; i < n; ++i) rs.tau.push_back(n - 1 - i);
      break;
    }
    case 'B':
    case 'C': {
      if (n < 2) throw std::invalid_argument("B_n/C_n need n >= 2");
      IntMat roots(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
      for (int i = 0; i + 1 < n; ++i) {
        roots[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        roots[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = -1;
      }
      roots[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)] = type == 'B' ? 1 : 2;
      rs.cartan = cartan_from_roots(roots);
      break;
    }
    case 'D': {
      if (n < 3) throw std::invalid_argument("D_n needs n >= 3");
      std::vector<std::pair<int, int>> e;
      for (int i = 1; i <= n - 2; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(n - 2, n);
      rs.cartan = cartan_from_edges(n, e);
      for (int i = 0; i < n; ++i) rs.tau.push_back(i);
      std::swap(rs.tau[static_cast<std::size_t>(n - 2)], rs.tau[static_cast<std::size_t>(n - 1)]);
      break;
    }
    case 'E': {
      if (n != 6 && n != 7) throw std::invalid_argument("only E6 and E7 are supported");
      std::vector<std::pair<int, int>> e{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
      if (n == 7) e.emplace_back(6, 7);
      rs.cartan = cartan_from_edges(n, e);
      if (n == 6) rs.tau = {5, 1, 4, 3, 2, 0};
      break;
    }
    default:
      throw std::invalid_argument(std::string("unsupported root system type ") + type);
  }
  rs.delta = int_det(rs.cartan);
  rs.delta1 = (type == 'D' && n % 2 == 0) ? 2 : rs.delta;
  Smith sm = smith_normal_form(rs.cartan);
  rs.smith_u = sm.U;
  for (int i = 0; i < n; ++i) rs.smith_d.push_back(sm.D[i][i]);
  return rs;
}

IntMat reflection(const RootSystem& rs, int i) {
  if (i < 1 || i > rs.n) throw std::out_of_range("reflection index");
  const auto ii = static_cast<std::size_t>(i - 1);
  IntMat s = int_identity(rs.n);
  // s_i(x) = x - x_i alpha_i, alpha_i = row i of the Cartan matrix
  for (std::size_t k = 0; k < s.size(); ++k) s[k][ii] -= rs.cartan[ii][k];
  return s;
}

IntMat coxeter_map(const RootSystem& rs, const std::vector<int>& order) {
  check_order(rs, order);
  IntMat w = int_identity(rs.n);
  for (int i : order) w = int_mul(w, reflection(rs, i));
  return w;
}

IntMat to_root_coords(const RootSystem& rs, const IntMat& w) {
  // weight coords x = A^T r
  IntMat at = int_transpose(rs.cartan);
  auto inv = scaled_inverse(at, rs.delta);
  IntMat num = int_mul(int_mul(*inv, w), at);
  for (auto& row : num)
    for (auto& x : row) {
      if (x % rs.delta) throw std::domain_error("map is not integral on Q");
      x /= rs.delta;
    }
  return num;
}

bool lemma_coxeter_verify(const RootSystem& rs, const std::vector<int>& order) {
  IntMat w = coxeter_map(rs, order);
  IntMat one_minus = int_sub(int_identity(rs.n), w);
  IntMat at = int_transpose(rs.cartan);
  auto inv = scaled_inverse(at, rs.delta);
  IntMat r = int_mul(*inv, one_minus);  // delta * root coords of (1-w) omega_j, column j
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto col = static_cast<std::size_t>(order[k] - 1);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i][col] % rs.delta) return false;
    if (r[col][col] != rs.delta) return false;
    for (std::size_t l = k + 1; l < order.size(); ++l)
      if (r[static_cast<std::size_t>(order[l] - 1)][col] != 0) return false;
  }
  return true;
}

IntMat inv_one_minus_w(const RootSystem& rs, const std::vector<int>& order, std::int64_t scale) {
  if (scale == 0) scale = rs.delta1;
  IntMat one_minus = int_sub(int_identity(rs.n), coxeter_map(rs, order));
  IntMat rc = to_root_coords(rs, one_minus);
  auto inv = scaled_inverse(rc, scale);
  if (!inv) throw std::domain_error("scaled inverse of 1 - w is not integral on Q");
  return *inv;
}

IntMat tau_matrix(const RootSystem& rs) {
  if (!rs.has_tau()) throw std::invalid_argument(rs.name() + " has no diagram symmetry");
  IntMat t(static_cast<std::size_t>(rs.n), std::vector<std::int64_t>(static_cast<std::size_t>(rs.n), 0));
  // column i holds tau(alpha_i)
  for (std::size_t i = 0; i < t.size(); ++i) t[static_cast<std::size_t>(rs.tau[i])][i] = 1;
  return t;
}

IntMat one_plus_tau_over(const RootSystem& rs, const std::vector<int>& order) {
  IntMat one_minus = to_root_coords(rs, int_sub(int_identity(rs.n), coxeter_map(rs, order)));
  IntMat tp = int_add(int_identity(rs.n), tau_matrix(rs));
  auto inv = scaled_inverse(one_minus, rs.delta);
  IntMat num = int_mul(tp, *inv);
  for (auto& row : num)
    for (auto& x : row) {
      if (x % rs.delta) throw std::domain_error("(1+tau)(1-w)^{-1} is not integral on Q");
      x /= rs.delta;
    }
  return num;
}

QCharacter reduce(QCharacter c) {
  for (auto& x : c.e) x = mod(x, c.M);
  return c;
}

QCharacter char_scale(const QCharacter& c, std::int64_t k) {
  QCharacter r = c;
  for (auto& x : r.e) x = mod(mod(k, c.M) * x, c.M);
  return r;
}

QCharacter char_add(const QCharacter& a, const QCharacter& b) {
  if (a.M != b.M || a.e.size() != b.e.size()) throw std::invalid_argument("char_add: mismatch");
  QCharacter r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = mod(a.e[i] + b.e[i], a.M);
  return r;
}

QCharacter char_compose(const QCharacter& c, const IntMat& f) {
  QCharacter r{std::vector<std::int64_t>(c.e.size(), 0), c.M};
  for (std::size_t i = 0; i < c.e.size(); ++i)
    for (std::size_t k = 0; k < c.e.size(); ++k)
      r.e[i] = mod(r.e[i] + mod(f[k][i], c.M) * mod(c.e[k], c.M), c.M);
  return r;
}

bool extends_to_P(const RootSystem& rs, const QCharacter& c) {
  if (rs.smith_d.size() != static_cast<std::size_t>(rs.n))
    return solve_congruence(rs.cartan, c.e, c.M).has_value();
  // C x = e solvable mod M  <=>  d_i y_i = (U e)_i solvable for every i
  for (std::size_t i = 0; i < rs.smith_d.size(); ++i) {
    std::int64_t ue = 0;
    for (std::size_t j = 0; j < c.e.size(); ++j) ue += rs.smith_u[i][j] * c.e[j];
    if (mod(ue, gcd(mod(rs.smith_d[i], c.M), c.M)) != 0) return false;
  }
  return true;
}

bool self_conjugate(const RootSystem& rs, const QCharacter& c, std::int64_t q) {
  if (!rs.has_tau()) throw std::invalid_argument(rs.name() + " has no diagram symmetry");
  for (std::size_t i = 0; i < c.e.size(); ++i)
    if (mod(c.e[static_cast<std::size_t>(rs.tau[i])] - q * c.e[i], c.M) != 0) return false;
  return true;
}

bool extends_self_conjugately(const RootSystem& rs, const QCharacter& c, std::int64_t q) {
  const auto n = static_cast<std::size_t>(rs.n);
  IntMat sys = rs.cartan;
  std::vector<std::int64_t> rhs = c.e;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int64_t> row(n, 0);
    row[static_cast<std::size_t>(rs.tau[j])] += 1;
    row[j] -= q;
    sys.push_back(row);
    rhs.push_back(0);
  }
  return solve_congruence(sys, rhs, c.M).has_value();
}

QCharacter least_nonextendable(const RootSystem& rs, std::int64_t M) {
  const auto n = static_cast<std::size_t>(rs.n);
  QCharacter c{std::vector<std::int64_t>(n, 0), M};
  for (;;) {
    // lexicographic successor, last coordinate fastest
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++c.e[i] < M) break;
      c.e[i] = 0;
      if (i == 0) throw std::domain_error("every character extends to P");
    }
    if (!extends_to_P(rs, c)) return c;
  }
}

QCharacter least_nonextendable_twisted(const RootSystem& rs, std::int64_t q) {
  if (!rs.has_tau()) throw std::invalid_argument(rs.name() + " has no diagram symmetry");
  const std::int64_t M = q * q - 1;
  const auto n = static_cast<std::size_t>(rs.n);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<std::size_t>(rs.tau[i]) >= i) free.push_back(i);
  // fixed labels carry multiples of q+1 only
  auto step = [&](std::size_t i) { return static_cast<std::size_t>(rs.tau[i]) == i ? q + 1 : 1; };
  std::vector<std::int64_t> v(free.size(), 0);
  QCharacter c{std::vector<std::int64_t>(n, 0), M};
  for (;;) {
    std::size_t k = free.size();
    while (k > 0) {
      --k;
      v[k] += step(free[k]);
      if (v[k] < M) break;
      v[k] = 0;
      if (k == 0) throw std::domain_error("every self-conjugate character extends");
    }
    for (std::size_t t = 0; t < free.size(); ++t) {
      c.e[free[t]] = v[t];
      c.e[static_cast<std::size_t>(rs.tau[free[t]])] = mod(q * v[t], M);
    }
    if (!extends_self_conjugately(rs, c, q)) return c;
  }
}

CharCertificate chevalley_supplement(const std::string& kind, int n, std::int64_t q) {
  std::int64_t p = 0, m = 0;
  if (!prime_power(q, p, m)) throw std::invalid_argument("q is not a prime power");
  CharCertificate c;
  c.kind = kind;
  c.q = q;
  c.p = p;
  c.n = n;
  // coefficient k with chi' = k zeta_chi (+ correction for e6-case2)
  std::int64_t num = 0, den = 1;
  if (kind == "bn" || kind == "cn" || kind == "e7") {
    c.type = kind == "bn" ? 'B' : kind == "cn" ? 'C' : 'E';
    if (kind == "e7") c.n = 7;
    if (p == 2) throw std::invalid_argument(kind + ": needs p odd");
    num = 1 - p;
    den = 2;
  } else if (kind == "e6-case1" || kind == "e6-case2" || kind == "2e6") {
    c.type = 'E';
    c.n = 6;
    c.order = {1, 4, 6, 3, 2, 5};
    den = 3;
    if (kind == "e6-case1") {
      if (mod(p, 3) != 1) throw std::invalid_argument("e6-case1: needs p = 1 mod 3");
      num = 1 - p;
    } else if (kind == "e6-case2") {
      if (mod(p, 3) != 2 || mod(q, 3) != 1)
        throw std::invalid_argument("e6-case2: needs p = -1 mod 3 and q = 1 mod 3");
      num = 1 + p;
      c.graph = true;
    } else {
      if (mod(q, 3) != 2) throw std::invalid_argument("2e6: needs q = -1 mod 3");
      num = 1 - p * p;
      c.twisted = true;
      c.field_power = 2;
    }
  } else if (kind == "2dn") {
    c.type = 'D';
    if (n < 4 || n % 2) throw std::invalid_argument("2dn: needs n even, n >= 4");
    if (p == 2) throw std::invalid_argument("2dn: needs p odd");
    num = 1 - p;
    den = 2;
    c.twisted = true;
  } else {
    throw std::invalid_argument("chevalley_supplement: unknown kind " + kind);
  }
  if (num % den) throw std::logic_error("chevalley_supplement: coefficient not integral");
  if (c.order.empty())
    for (int i = 1; i <= c.n; ++i) c.order.push_back(i);
  RootSystem rs = root_system(c.type, c.n);
  c.M = c.twisted ? q * q - 1 : q - 1;
  c.chi = c.twisted ? least_nonextendable_twisted(rs, q) : least_nonextendable(rs, c.M);
  QCharacter zeta = char_compose(c.chi, inv_one_minus_w(rs, c.order));
  c.chi_prime = char_scale(zeta, num / den);
  if (kind == "e6-case2")
    c.chi_prime = char_add(c.chi_prime,
                           char_scale(char_compose(c.chi, one_plus_tau_over(rs, c.order)), -p));
  if (auto err = verify_char_certificate(c); !err.empty())
    throw std::logic_error("chevalley_supplement: " + err);
  return c;
}

std::string verify_char_certificate(const CharCertificate& c) {
  RootSystem rs;
  try {
    rs = root_system(c.type, c.n);
  } catch (const std::exception& e) {
    return std::string("root system: ") + e.what();
  }
  std::int64_t p = 0, m = 0;
  if (!prime_power(c.q, p, m) || p != c.p) return "q/p mismatch";
  if (c.M != (c.twisted ? c.q * c.q - 1 : c.q - 1)) return "modulus mismatch";
  if (c.chi.M != c.M || c.chi_prime.M != c.M) return "character modulus mismatch";
  if (static_cast<int>(c.chi.e.size()) != c.n || static_cast<int>(c.chi_prime.e.size()) != c.n)
    return "character rank mismatch";
  try {
    if (!lemma_coxeter_verify(rs, c.order)) return "w is not a Coxeter element with (1-w)P = Q";
    IntMat one_minus = to_root_coords(rs, int_sub(int_identity(rs.n), coxeter_map(rs, c.order)));
    QCharacter lhs = char_compose(c.chi_prime, one_minus);
    // (1 - g) chi with g = p^i (optionally composed with tau)
    QCharacter g_chi = c.chi;
    if (c.graph) g_chi = char_compose(c.chi, tau_matrix(rs));
    QCharacter rhs = char_add(c.chi, char_scale(g_chi, -ipow(p, c.field_power)));
    if (!(reduce(lhs) == reduce(rhs))) return "character equation chi' o (1-w) = (1-g) chi fails";
    if (c.twisted) {
      if (!self_conjugate(rs, c.chi, c.q)) return "chi is not self-conjugate";
      if (!self_conjugate(rs, c.chi_prime, c.q)) return "chi' is not self-conjugate";
      if (extends_self_conjugately(rs, c.chi, c.q)) return "chi extends self-conjugately to P";
    } else if (extends_to_P(rs, c.chi)) {
      return "chi extends to P";
    }
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

std::vector<std::int64_t> dn_c_values(const QCharacter& c) {
  const std::size_t n = c.e.size();
  if (n < 4 || n % 2) throw std::invalid_argument("c-basis needs D_n with n even");
  std::vector<std::int64_t> v(c.e.begin(), c.e.end());
  std::int64_t odd = 0;
  for (std::size_t i = 0; i + 3 <= n - 1; i += 2) odd += c.e[i];  // alpha_1 + alpha_3 + ... + alpha_{n-3}
  v[n - 2] = mod(c.e[n - 2] - odd, c.M);
  v[n - 1] = mod(c.e[n - 1] - odd, c.M);
  return v;
}

std::array<std::int64_t, 2> dn_even_class(const QCharacter& c) {
  if (c.M % 2) throw std::invalid_argument("square classes need q odd");
  auto v = dn_c_values(c);
  const std::size_t n = v.size();
  return {mod(v[n - 2], 2), mod(v[n - 1], 2)};
}

D4Case4 d4_case4_characters(std::int64_t q) {
  std::int64_t p = 0, m = 0;
  if (!prime_power(q, p, m) || p == 2 || m % 2)
    throw std::invalid_argument("d4_case4_characters: needs p odd and m even");
  D4Case4 r;
  r.q = q;
  r.M = q - 1;
  const std::int64_t h = (p - 1) / 2;
  r.xi = reduce({{h, 1 - p, h, h}, r.M});
  r.xi1 = reduce({{-1, 1, -1, 0}, r.M});
  RootSystem d4 = root_system('D', 4);
  auto cx = dn_even_class(r.xi), c1 = dn_even_class(r.xi1);
  r.xi_extends = cx[0] == 0 && cx[1] == 0 && extends_to_P(d4, r.xi);
  r.xi1_is_delta2 = c1[0] == 0 && c1[1] == 1;
  // triality: alpha_1 -> alpha_3 -> alpha_4 -> alpha_1
  const std::vector<std::int64_t> rot{r.xi.e[2], r.xi.e[1], r.xi.e[3], r.xi.e[0]};
  r.xi_rho_invariant = rot == r.xi.e;
  return r;
}

}  // namespace abelsup
