#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abelsup/arith.hpp"
#include "abelsup/unitary.hpp"

using namespace abelsup;

namespace {

bool supplement_ok(const OutModel& om, const MatrixSupplement& s, const AbelianT& T) {
  for (std::size_t i = 0; i < s.gens.size(); ++i)
    for (std::size_t j = i + 1; j < s.gens.size(); ++j)
      if (!word_commutator_central(s.gens[i], s.gens[j], s.center)) return false;
  std::vector<OutElement> img;
  for (const auto& w : s.gens) img.push_back(rho_linear(om, w));
  return subgroup_closure(om, img) == T.elements;
}

// x^{q+1} == 1 entrywise for monomial matrices, checked without is_unitary.
bool monomial_norm_one(const UnitaryContext& c, const Mat& X) {
  if (!X.is_monomial()) return false;
  for (int i = 0; i < X.n(); ++i)
    for (int j = 0; j < X.n(); ++j)
      if (X(i, j).code && !(c.F->pow(X(i, j), c.q + 1) == c.F->one())) return false;
  return true;
}

}  // namespace

TEST_CASE("context") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    auto c = UnitaryContext::make(q);
    CHECK(c.F->q() == q * q);
    CHECK(c.F->order(c.omega) == q + 1);
    CHECK(c.F->order(c.nu) == q * q - 1);
  }
  CHECK_THROWS(UnitaryContext::make(6));
}

TEST_CASE("is_unitary examples") {
  auto c = UnitaryContext::make(3);
  CHECK(is_unitary(c, Mat::identity(c.F, 3)));
  CHECK(is_unitary(c, build_X(c.F, 2, 1, c.base_log)));
  CHECK_FALSE(is_unitary(c, Mat::diag(c.F, {c.nu, c.F->one()})));
  // A blocks have unit-norm entries
  for (int q : {3, 5, 7}) {
    auto u = UnitaryContext::make(q);
    for (int w = 2; w <= 5; ++w)
      for (int l = 0; l <= q; ++l) {
        Mat A = build_A(u.F, w, l, u.base_log);
        CHECK(is_unitary(u, A) == monomial_norm_one(u, A));
        CHECK(is_unitary(u, A));
      }
  }
}

TEST_CASE("ublock examples") {
  auto c3 = UnitaryContext::make(3);
  CHECK(ublock_scalar(c3, 3, 2, 0, 0) == c3.F->one());
  CHECK(ublock_scalar(c3, 2, 1, 1, 1) == c3.omega);
  auto c5 = UnitaryContext::make(5);
  CHECK_THROWS_AS(ublock_scalar(c5, 3, 1, 0, 1), std::invalid_argument);
  for (int cc = 0; cc < 6; ++cc) CHECK_THROWS(ublock_scalar(c5, 3, 1, cc, 1));
}

TEST_CASE("ublock on all solvable instances") {
  int hits = 0;
  for (int q : {3, 5, 7, 9}) {
    auto c = UnitaryContext::make(q);
    for (std::int64_t s = 0; s < c.F->m(); ++s)
      for (int w = 2; w <= 5; ++w)
        for (std::int64_t l = 0; l <= q; ++l)
          for (std::int64_t cc = 0; cc <= q; ++cc) {
            if (mod(cc * w - l * (ipow(c.F->p(), s) - 1), q + 1) != 0) continue;
            CHECK(ublock_scalar(c, w, l, cc, s) == c.F->pow(c.omega, cc));
            ++hits;
          }
  }
  CHECK(hits > 300);
}

TEST_CASE("psu examples") {
  auto c = UnitaryContext::make(3);
  auto om = out_model(Family::Psu, 4, 3);
  CHECK(om.d == 4);
  CHECK(om.phi_order == 2);
  auto phiT = make_abelian_t(om, {om.phi()});
  CHECK(psu_supplement(om, c, phiT).route == "cyclic-lift");
  // every maximal T with t = 2 uses the A_{2,y} + A_{2,k-y} block shape
  for (const auto& T : enumerate_maximal_abelian(om)) {
    auto s = psu_supplement(om, c, T, false);
    CHECK(supplement_ok(om, s, T));
    if (s.route == "pgu") {
      std::int64_t t = 0, y = 0;
      for (auto [k, v] : s.params) {
        if (k == "t") t = v;
        if (k == "y") y = v;
      }
      if (t == 2) {
        Mat A = s.gens[0].X;
        CHECK(A == block_diag({build_A(c.F, 2, y, c.base_log), build_A(c.F, 2, 2 - y, c.base_log)}));
      }
    }
  }
  CHECK_THROWS(psu_supplement(out_model(Family::Psl, 4, 3), c, phiT));
}

TEST_CASE("psu t = n branch") {
  // q = 8, n = 3: d = 3 and 3 | 2^2 - 1
  auto c = UnitaryContext::make(8);
  auto om = out_model(Family::Psu, 3, 8);
  auto T = make_abelian_t(om, parse_generators(om, "d,f^2"));
  REQUIRE(is_abelian(om, T.gens));
  auto s = psu_supplement(om, c, T, false);
  CHECK(s.route == "pgu-t=n");
  CHECK(s.gens[0].X == build_A(c.F, 3, 1, c.base_log));
  CHECK(s.gens[1].X == build_X(c.F, 3, 1, c.base_log));
  CHECK(word_commutator_central(s.gens[0], s.gens[1]));
  CHECK(supplement_ok(om, s, T));
}

TEST_CASE("psu sweep") {
  for (int n = 3; n <= 5; ++n)
    for (int q : {3, 5, 7, 9}) {
      auto c = UnitaryContext::make(q);
      auto om = out_model(Family::Psu, n, q);
      for (const auto& T : enumerate_maximal_abelian(om)) {
        for (bool lift : {true, false}) {
          auto s = psu_supplement(om, c, T, lift);
          INFO("n=", n, " q=", q, " route=", s.route);
          CHECK(supplement_ok(om, s, T));
          for (const auto& w : s.gens) CHECK(is_unitary(c, w.X));
        }
      }
    }
}
