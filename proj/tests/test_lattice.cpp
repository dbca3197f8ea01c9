#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "abelsup/arith.hpp"
#include "abelsup/lattice.hpp"

using namespace abelsup;

namespace {

const std::vector<std::pair<char, int>> kTypes = {
    {'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'A', 6}, {'B', 2}, {'B', 3},
    {'B', 4}, {'B', 5}, {'C', 2}, {'C', 3}, {'C', 4}, {'C', 5}, {'D', 3}, {'D', 4},
    {'D', 5}, {'D', 6}, {'E', 6}, {'E', 7}};

std::vector<std::vector<int>> orders_for(const RootSystem& rs) {
  std::vector<int> id;
  for (int i = 1; i <= rs.n; ++i) id.push_back(i);
  std::vector<int> rev(id.rbegin(), id.rend());
  std::vector<int> shuf = id;
  std::mt19937 rng(static_cast<unsigned>(rs.n * 131 + rs.type));
  std::shuffle(shuf.begin(), shuf.end(), rng);
  std::vector<std::vector<int>> out{id, rev, shuf};
  if (rs.type == 'E' && rs.n == 6) out.push_back({1, 4, 6, 3, 2, 5});
  return out;
}

IntMat mat_pow(const IntMat& a, int k) {
  IntMat r = int_identity(static_cast<int>(a.size()));
  for (int i = 0; i < k; ++i) r = int_mul(r, a);
  return r;
}

// Every restriction of a P-character, by enumeration of exponent vectors on omega_j.
std::set<std::vector<std::int64_t>> restrictions(const RootSystem& rs, std::int64_t M) {
  std::set<std::vector<std::int64_t>> out;
  const auto n = static_cast<std::size_t>(rs.n);
  std::vector<std::int64_t> u(n, 0);
  const std::int64_t total = ipow(M, rs.n);
  for (std::int64_t k = 0; k < total; ++k) {
    std::int64_t z = k;
    for (auto& x : u) {
      x = z % M;
      z /= M;
    }
    std::vector<std::int64_t> e(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e[i] = mod(e[i] + rs.cartan[i][j] * u[j], M);
    out.insert(e);
  }
  return out;
}

}  // namespace

TEST_CASE("root system data") {
  auto a1 = root_system('A', 1);
  CHECK(a1.cartan == IntMat{{2}});
  CHECK(a1.delta == 2);
  CHECK(root_system('E', 6).delta == 3);
  CHECK(root_system('E', 7).delta == 2);
  auto d4 = root_system('D', 4);
  CHECK(d4.delta == 4);
  CHECK(d4.delta1 == 2);
  CHECK(root_system('D', 5).delta1 == 4);
  for (int n = 1; n <= 6; ++n) CHECK(root_system('A', n).delta == n + 1);
  for (int n = 2; n <= 5; ++n) {
    CHECK(root_system('B', n).delta == 2);
    CHECK(root_system('C', n).delta == 2);
  }
  // B2: alpha_1 = 2 omega_1 - 2 omega_2 with omega_2 = (e1 + e2)/2
  CHECK(root_system('B', 2).cartan == IntMat{{2, -2}, {-1, 2}});
  CHECK(root_system('C', 2).cartan == IntMat{{2, -1}, {-2, 2}});
  CHECK_THROWS(root_system('F', 4));
  CHECK_THROWS(root_system('E', 8));
  CHECK_THROWS(root_system('D', 2));
}

TEST_CASE("reflections satisfy the Coxeter relations") {
  for (auto [t, n] : kTypes) {
    auto rs = root_system(t, n);
    for (int i = 1; i <= n; ++i) {
      CHECK(int_mul(reflection(rs, i), reflection(rs, i)) == int_identity(n));
      for (int j = i + 1; j <= n; ++j) {
        auto prod = rs.cartan[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] *
                    rs.cartan[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)];
        int mij = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
        CHECK(mat_pow(int_mul(reflection(rs, i), reflection(rs, j)), mij) == int_identity(n));
      }
    }
  }
}

TEST_CASE("Coxeter elements") {
  auto a2 = root_system('A', 2);
  IntMat w = coxeter_map(a2, {1, 2});
  IntMat one_minus = int_sub(int_identity(2), w);
  // (1 - w) omega_1 = alpha_1 = row 1 of the Cartan matrix
  CHECK(one_minus[0][0] == 2);
  CHECK(one_minus[1][0] == -1);
  for (auto [t, n] : kTypes) {
    auto rs = root_system(t, n);
    for (const auto& o : orders_for(rs)) {
      INFO(rs.name());
      CHECK(lemma_coxeter_verify(rs, o));
      // [P : (1-w)P] = [P : Q]
      CHECK(std::llabs(int_det(int_sub(int_identity(n), coxeter_map(rs, o)))) == rs.delta);
      CHECK_NOTHROW(inv_one_minus_w(rs, o));
    }
  }
  // a non-Coxeter word fails
  auto a3 = root_system('A', 3);
  CHECK_THROWS(coxeter_map(a3, {1, 1, 2}));
}

TEST_CASE("scaled inverse of 1 - w") {
  auto a1 = root_system('A', 1);
  CHECK(inv_one_minus_w(a1, {1}) == IntMat{{1}});
  auto e6 = root_system('E', 6);
  std::vector<int> o{1, 4, 6, 3, 2, 5};
  IntMat z = inv_one_minus_w(e6, o);
  IntMat rc = to_root_coords(e6, int_sub(int_identity(6), coxeter_map(e6, o)));
  CHECK(int_mul(z, rc) == int_scaled(int_identity(6), 3));
  CHECK_NOTHROW(one_plus_tau_over(e6, o));
  // D_n, n even: integral with 2 but not with 1
  for (int n : {4, 6}) {
    auto d = root_system('D', n);
    std::vector<int> id;
    for (int i = 1; i <= n; ++i) id.push_back(i);
    CHECK_NOTHROW(inv_one_minus_w(d, id));
    CHECK_THROWS(inv_one_minus_w(d, id, 1));
  }
}

TEST_CASE("character arithmetic") {
  QCharacter c{{1, 5, 7}, 12};
  CHECK(char_compose(c, int_identity(3)) == c);
  IntMat f{{1, 2, 0}, {0, 1, -1}, {3, 0, 1}};
  CHECK(char_compose(char_scale(c, 5), f) == char_scale(char_compose(c, f), 5));
  CHECK(char_add(c, char_scale(c, -1)) == QCharacter{{0, 0, 0}, 12});
}

TEST_CASE("extends_to_P against enumeration") {
  for (auto [t, n] : kTypes) {
    if (n > 3) continue;
    auto rs = root_system(t, n);
    for (std::int64_t M : {1, 2, 3, 4, 6, 8, 12}) {
      auto image = restrictions(rs, M);
      const std::int64_t total = ipow(M, n);
      QCharacter c{std::vector<std::int64_t>(static_cast<std::size_t>(n)), M};
      for (std::int64_t k = 0; k < total; ++k) {
        std::int64_t z = k;
        for (auto& x : c.e) {
          x = z % M;
          z /= M;
        }
        CHECK(extends_to_P(rs, c) == (image.count(c.e) > 0));
      }
    }
  }
  // A2 over F_4: lambda on alpha_1
  auto a2 = root_system('A', 2);
  CHECK_FALSE(extends_to_P(a2, {{1, 0}, 3}));
  CHECK(extends_to_P(a2, {{0, 0}, 3}));
}

TEST_CASE("D_n even square classes") {
  auto d4 = root_system('D', 4);
  QCharacter psi1{{0, 0, 1, 0}, 8};
  CHECK(dn_even_class(psi1) == std::array<std::int64_t, 2>{1, 0});
  CHECK_FALSE(extends_to_P(d4, psi1));
  // the squares test agrees with the Smith-form test
  for (std::int64_t M : {2, 4, 8}) {
    for (int n : {4, 6}) {
      auto d = root_system('D', n);
      std::mt19937 rng(static_cast<unsigned>(M * 10 + n));
      for (int t = 0; t < 200; ++t) {
        QCharacter c{std::vector<std::int64_t>(static_cast<std::size_t>(n)), M};
        for (auto& x : c.e) x = static_cast<std::int64_t>(rng() % static_cast<unsigned>(M));
        auto cls = dn_even_class(c);
        CHECK(extends_to_P(d, c) == (cls[0] == 0 && cls[1] == 0));
      }
    }
  }
}

TEST_CASE("self-conjugacy") {
  auto e6 = root_system('E', 6);
  const std::int64_t q = 5, M = 24;
  CHECK(self_conjugate(e6, {{0, 0, 0, 0, 0, 0}, M}, q));
  // tau-fixed values in the order-(q+1) subgroup
  QCharacter fixed{{4, 6, 8, 12, 8, 4}, M};
  CHECK(self_conjugate(e6, fixed, q) == (mod(4 * q - 4, M) == 0 && mod(8 * q - 8, M) == 0));
  CHECK(self_conjugate(e6, {{4, 0, 0, 0, 0, 20}, M}, q));
  CHECK_FALSE(self_conjugate(e6, {{1, 0, 0, 0, 0, 0}, M}, q));
  CHECK_THROWS(self_conjugate(root_system('B', 3), {{0, 0, 0}, M}, q));
}

TEST_CASE("Chevalley character certificates") {
  auto b2 = chevalley_supplement("bn", 2, 9);
  CHECK(b2.M == 8);
  auto rs = root_system('B', 2);
  CHECK(b2.chi_prime == char_scale(char_compose(b2.chi, inv_one_minus_w(rs, b2.order)), -1));
  CHECK(verify_char_certificate(b2).empty());

  auto e6 = chevalley_supplement("e6-case1", 0, 13);
  auto rs6 = root_system('E', 6);
  CHECK(e6.chi_prime == char_scale(char_compose(e6.chi, inv_one_minus_w(rs6, e6.order)), -4));
  CHECK(e6.order == std::vector<int>{1, 4, 6, 3, 2, 5});

  for (auto [kind, n, q] : std::vector<std::tuple<std::string, int, std::int64_t>>{
           {"bn", 3, 9}, {"bn", 3, 25}, {"cn", 3, 9}, {"cn", 3, 25}, {"e7", 7, 9}, {"e7", 7, 25},
           {"e6-case1", 6, 343}, {"e6-case2", 6, 25}, {"e6-case2", 6, 64}, {"2e6", 6, 5},
           {"2e6", 6, 8}, {"2dn", 4, 3}, {"2dn", 6, 5}}) {
    INFO(kind, " q=", q);
    auto c = chevalley_supplement(kind, n, q);
    CHECK(verify_char_certificate(c).empty());
    // corrupting chi' breaks the equation
    auto bad = c;
    bad.chi_prime.e[0] = mod(bad.chi_prime.e[0] + 1, bad.M);
    CHECK_FALSE(verify_char_certificate(bad).empty());
  }
  CHECK_THROWS(chevalley_supplement("e6-case1", 6, 25));
  CHECK_THROWS(chevalley_supplement("bn", 2, 8));
  CHECK_THROWS(chevalley_supplement("g2", 2, 9));
}

TEST_CASE("D4 triality characters") {
  auto r = d4_case4_characters(9);
  CHECK(r.xi_extends);
  CHECK(r.xi1_is_delta2);
  CHECK(r.xi_rho_invariant);
  auto c4 = dn_c_values(r.xi1);
  CHECK(c4[2] == 0);
  CHECK(c4[3] == 1);
  CHECK(d4_case4_characters(25).xi_extends);
  CHECK_THROWS(d4_case4_characters(27));
}
