#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abelsup/arith.hpp"
#include "abelsup/lattice.hpp"
#include "abelsup/ortho.hpp"

using namespace abelsup;

namespace {

Mat random_gl(const FieldPtr& f, int n, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->q() - 1));
  for (;;) {
    Mat a(f, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.set(i, j, {pick(rng)});
    if (a.det().code != 0) return a;
  }
}

Mat random_monomial(const FieldPtr& f, int n, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::int64_t> e;
  std::uniform_int_distribution<std::int64_t> ex(0, f->q() - 2);
  for (int i = 0; i < n; ++i) e.push_back(ex(rng));
  return Mat::permutation(f, perm) * Mat::diag_exp(f, e);
}

Mat tr_inv(const Mat& x) { return x.transpose().inverse(); }

FieldElement lam_pow(const FieldPtr& f, std::int64_t k) { return f->pow_omega(k); }

// The PSL_4 source data for <delta^2, phi, gamma> and <delta^2, phi, gamma delta>.
struct Source {
  Mat L, M, N;
  std::int64_t z1, z2, z3;  // as powers of lambda
};

std::vector<Source> sources(const FieldPtr& f) {
  const auto& F = *f;
  const std::int64_t p = F.p();
  const auto z = F.zero(), o = F.one(), lam = F.omega();
  auto rows = [&](std::vector<std::vector<FieldElement>> r) {
    Mat m(f, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.set(i, j, r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
  };
  Mat L = rows({{z, F.neg(lam), z, z}, {o, z, z, z}, {z, z, z, F.neg(lam)}, {z, z, o, z}});
  Mat M2 = Mat::diag_exp(f, {(p - 1) / 2, 0, (p - 1) / 2, 0});
  Mat N2 = Mat::diag_exp(f, {-1, 0, -1, 0});
  Mat P = rows({{z, F.neg(lam), z, z}, {o, z, z, z}, {z, z, o, z}, {z, z, z, o}});
  Mat M3 = M2 * P.pow((1 - p) / 2);
  Mat N3 = rows({{z, F.neg(o), z, z}, {o, z, z, z}, {z, z, lam_pow(f, -1), z}, {z, z, z, o}});
  return {{L, M2, N2, (p - 1) / 2, -1, 0}, {L, M3, N3, (p - 1) / 2, -1, 0}};
}

std::vector<OutElement> rho_images(const OutModel& om, const MatrixSupplement& s) {
  std::vector<OutElement> out;
  for (const auto& w : s.gens) out.push_back(rho_ortho(om, w));
  return out;
}

void check_supplement(const OutModel& om, const OrthoCase& c) {
  INFO(c.name, " n=", om.n, " q=", om.q);
  auto ctx = SimilitudeContext::make(c.sup.gens.front().X.field(), om.n);
  for (const auto& w : c.sup.gens) CHECK(in_co_circ(ctx, w.X));
  for (std::size_t i = 0; i < c.sup.gens.size(); ++i)
    for (std::size_t j = i + 1; j < c.sup.gens.size(); ++j)
      CHECK(word_commutator_central(c.sup.gens[i], c.sup.gens[j]).has_value());
  CHECK(subgroup_closure(om, rho_images(om, c.sup)) == subgroup_closure(om, c.t_gens));
}

}  // namespace

TEST_CASE("similitude context") {
  auto f = FieldSpec::of_order(9);
  for (int n : {2, 3, 4, 5}) {
    auto ctx = SimilitudeContext::make(f, n);
    CHECK((ctx.w0 * ctx.w0).is_identity());
    CHECK(ctx.w0 * ctx.tau == ctx.K);
    CHECK(ctx.tau * ctx.w0 == ctx.K);
    CHECK((ctx.tau * ctx.tau).is_identity());
    CHECK(eta(ctx, Mat::identity(f, 2 * n)) == f->one());
    auto mu = f->pow_omega(3);
    CHECK(eta(ctx, ctx.o_mu(mu)) == mu);
    CHECK(in_co_circ(ctx, ctx.o_mu(mu)));
    CHECK(similitude_ratio(ctx, ctx.tau) == f->one());
    CHECK_FALSE(in_co_circ(ctx, ctx.tau));
    CHECK_THROWS(eta(ctx, Mat::diag_exp(f, [&] {
      std::vector<std::int64_t> e(static_cast<std::size_t>(2 * n), 0);
      e[0] = 1;
      return e;
    }())));
  }
}

TEST_CASE("exterior square") {
  for (std::int64_t q : {5, 9}) {
    auto f = FieldSpec::of_order(q);
    auto ctx = SimilitudeContext::make(f, 3);
    auto mu = f->pow_omega(1);
    CHECK(sigma_ext_sq(Mat::diag(f, {f->one(), f->one(), f->one(), mu})) == ctx.o_mu(mu));
    CHECK(sigma_ext_sq(Mat::scalar(f, 4, mu)) == Mat::scalar(f, 6, f->mul(mu, mu)));
    std::mt19937 rng(static_cast<unsigned>(q));
    for (int t = 0; t < 100; ++t) {
      Mat x = random_gl(f, 4, rng), y = random_gl(f, 4, rng);
      Mat sx = sigma_ext_sq(x);
      CHECK(sigma_ext_sq(x * y) == sx * sigma_ext_sq(y));
      CHECK(eta(ctx, sx) == x.det());
      CHECK(in_co_circ(ctx, sx));
      // sigma(X^-t) = det(X)^-1 w0 sigma(X)^tau w0
      CHECK(sigma_ext_sq(tr_inv(x)) == (ctx.w0 * ctx.tw(sx) * ctx.w0).scaled(f->inv(x.det())));
    }
  }
  CHECK_THROWS(sigma_ext_sq(Mat(FieldSpec::of_order(5), 4)));
}

TEST_CASE("equivalences transported by sigma") {
  for (std::int64_t q : {5, 9, 25}) {
    auto f = FieldSpec::of_order(q);
    const auto& F = *f;
    auto ctx = SimilitudeContext::make(f, 3);
    std::mt19937 rng(static_cast<unsigned>(q * 7));
    for (const auto& s : sources(f)) {
      const auto z1 = lam_pow(f, s.z1), z2 = lam_pow(f, s.z2), z3 = lam_pow(f, s.z3);
      REQUIRE(s.M.inverse() * s.L.frob(1) * s.M == s.L.scaled(z1));
      REQUIRE(s.N.inverse() * tr_inv(s.L) * s.N == s.L.scaled(z2));
      REQUIRE(tr_inv(s.M) * s.N == (s.N.frob(1) * s.M).scaled(z3));
      for (int t = 0; t < 40; ++t) {
        Mat R = random_gl(f, 4, rng);
        Mat Ri = R.inverse();
        {
          Mat X = R * s.L * Ri, Y = R.frob(1) * s.M * Ri;
          REQUIRE(Y.inverse() * X.frob(1) * Y == X.scaled(z1));
          Mat sy = sigma_ext_sq(Y), sx = sigma_ext_sq(X);
          CHECK(sy.inverse() * sx.frob(1) * sy == sx.scaled(F.mul(z1, z1)));
        }
        {
          Mat X = R * s.L * Ri, Y = tr_inv(R) * s.N * Ri;
          REQUIRE(Y.inverse() * tr_inv(X) * Y == X.scaled(z2));
          Mat sx = sigma_ext_sq(X), Z = ctx.w0 * sigma_ext_sq(Y);
          CHECK(Z.inverse() * ctx.tw(sx) * Z == sx.scaled(F.mul(F.mul(z2, z2), X.det())));
        }
        {
          Mat X = R.frob(1) * s.M * Ri, Y = tr_inv(R) * s.N * Ri;
          REQUIRE(tr_inv(X) * Y == (Y.frob(1) * X).scaled(z3));
          Mat sx = sigma_ext_sq(X), Z = ctx.w0 * sigma_ext_sq(Y);
          CHECK(ctx.tw(sx) * Z == (Z.frob(1) * sx).scaled(F.mul(F.mul(z3, z3), X.det())));
        }
      }
    }
  }
}

TEST_CASE("a and b blocks") {
  auto f5 = FieldSpec::of_order(5);
  const auto& F = *f5;
  CHECK(F.omega() == F.from_int(2));
  Mat a = a_block(f5, F.omega());
  std::vector<std::vector<std::int64_t>> want{{0, -2, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 2, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(a(i, j) == F.from_int(want[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  for (std::int64_t q : {5, 9, 25, 49}) {
    auto f = FieldSpec::of_order(q);
    const std::int64_t p = f->p();
    auto ctx = SimilitudeContext::make(f, 2);
    for (std::int64_t k = 1; k < q - 1; k += 3) {
      auto mu = f->pow_omega(k), nu = f->pow_omega(5 * k + 1);
      Mat am = a_block(f, mu), bm = b_block(f, mu, nu);
      CHECK(eta(ctx, am) == mu);
      CHECK(eta(ctx, bm) == nu);
      CHECK(in_co_circ(ctx, am));
      CHECK(in_co_circ(ctx, bm));
      CHECK(bm.inverse() * am.frob(1) * bm == am.scaled(f->pow(mu, (p - 1) / 2)));
    }
    Mat b = b_block(f, f->omega(), f->pow_omega(p - 1));
    CHECK(b == Mat::diag_exp(f, {(p - 1) / 2, 0, (p - 1) / 2, p - 1}));
  }
  CHECK_THROWS(b_block(FieldSpec::of_order(4), FieldSpec::of_order(4)->one(), FieldSpec::of_order(4)->one()));
}

TEST_CASE("rank two blocks") {
  for (std::int64_t q : {9, 25, 5, 49}) {
    auto f = FieldSpec::of_order(q);
    const auto& F = *f;
    const std::int64_t p = F.p();
    auto ctx = SimilitudeContext::make(f, 2);
    auto d = d2_blocks(f);
    const auto lam = F.omega(), gam = F.pow_omega((p - 1) / 2);
    CHECK(d.n2 == ctx.tw(d.n1));
    CHECK(d.n1 * d.n2 == d.n2 * d.n1);
    CHECK(d.n1 == weyl_generator(ctx, 1));
    CHECK(d.n2 == weyl_generator(ctx, 2));
    CHECK(d.x2 == d.n2 * ctx.tw(d.h1));
    CHECK(d.x1 * d.x2 == d.x2 * d.x1);
    CHECK(ctx.tw(d.x3) == d.x3);
    CHECK(ctx.tw(d.y) == d.y);
    CHECK(eta(ctx, d.x1) == lam);
    CHECK(eta(ctx, d.h1) == lam);
    CHECK(eta(ctx, d.x2) == lam);
    CHECK(eta(ctx, d.x3) == F.mul(lam, lam));
    CHECK(eta(ctx, d.y) == F.pow_omega(p - 1));
    CHECK(d.y.inverse() * d.x1.frob(1) * d.y == d.x1.scaled(gam));
    CHECK(d.y.inverse() * d.x2.frob(1) * d.y == d.x2.scaled(gam));
    CHECK(d.y.inverse() * d.x3.frob(1) * d.y == d.x3.scaled(F.pow_omega(p - 1)));
    for (const auto* m : {&d.n1, &d.n2, &d.h1, &d.x1, &d.x2, &d.x3, &d.y}) CHECK(in_co_circ(ctx, *m));
    // alpha_1(h_1) = lambda^-1, alpha_2(h_1) = 1
    CHECK(torus_character(ctx, d.h1) == std::vector<std::int64_t>{q - 2, 0});
    CHECK(similitude_class(ctx, d.x1) == std::array<std::int64_t, 2>{1, 0});
    CHECK(similitude_class(ctx, d.x2) == std::array<std::int64_t, 2>{0, 1});
    CHECK(similitude_class(ctx, d.x3) == std::array<std::int64_t, 2>{1, 1});
    auto yc = p % 4 == 3 ? std::array<std::int64_t, 2>{1, 1} : std::array<std::int64_t, 2>{0, 0};
    CHECK(similitude_class(ctx, d.y) == yc);
    CHECK(h_block(f, lam) == d.h1);
  }
}

TEST_CASE("Weyl descent") {
  auto f = FieldSpec::of_order(25);
  std::mt19937 rng(11);
  for (int n : {2, 3, 4, 5, 6}) {
    auto ctx = SimilitudeContext::make(f, n);
    for (int i = 1; i <= n; ++i) {
      Mat g = weyl_generator(ctx, i);
      CHECK(eta(ctx, g) == f->one());
      CHECK(in_co_circ(ctx, g));
    }
    std::uniform_int_distribution<int> gen(1, n);
    std::uniform_int_distribution<std::int64_t> ex(0, 23);
    for (int t = 0; t < 40; ++t) {
      Mat w = Mat::identity(f, 2 * n);
      for (int k = 0; k < 12; ++k) w = w * weyl_generator(ctx, gen(rng));
      std::vector<std::int64_t> fe;
      for (int i = 0; i < n; ++i) fe.push_back(ex(rng));
      const std::int64_t mu = ex(rng);
      std::vector<std::int64_t> de = fe;
      for (int i = 0; i < n; ++i) de.push_back(mu - fe[static_cast<std::size_t>(i)]);
      Mat X = w * Mat::diag_exp(f, de);
      auto sp = monomial_split(ctx, X);
      Mat back = Mat::identity(f, 2 * n);
      for (int i : sp.word) back = back * weyl_generator(ctx, i);
      std::vector<FieldElement> diag = sp.f;
      for (int i = 0; i < n; ++i) diag.push_back(f->div(sp.mu, sp.f[static_cast<std::size_t>(i)]));
      CHECK(back * Mat::diag(f, diag) == X);
    }
    CHECK_THROWS(monomial_split(ctx, ctx.tau));
    CHECK_THROWS(monomial_split(ctx, Mat::identity(f, 2 * n) + ctx.K));
  }
}

TEST_CASE("classes of similitudes") {
  for (std::int64_t q : {9, 25, 5, 13}) {
    auto f = FieldSpec::of_order(q);
    const auto& F = *f;
    std::mt19937 rng(static_cast<unsigned>(q));
    // n = 3: the class of sigma(X) is the class of det X
    auto ctx3 = SimilitudeContext::make(f, 3);
    CHECK(similitude_class(ctx3, ctx3.o_mu(F.omega()))[0] == 1);
    for (int t = 0; t < 60; ++t) {
      Mat x = random_monomial(f, 4, rng);
      CHECK(similitude_class(ctx3, sigma_ext_sq(x))[0] == mod(F.dlog(x.det()), 4));
    }
    // n = 5, 7: each a(mu) block carries spinor norm mu against o_mu, adding 2 dlog mu
    auto ctx5 = SimilitudeContext::make(f, 5);
    auto ctx7 = SimilitudeContext::make(f, 7);
    for (int t = 0; t < 30; ++t) {
      Mat x = random_monomial(f, 4, rng);
      Mat a = a_block(f, x.det()), sx = sigma_ext_sq(x);
      const auto want = mod(F.dlog(x.det()), 4);
      CHECK(similitude_class(ctx5, embed_blocks(f, {a, sx}))[0] == mod(3 * want, 4));
      CHECK(similitude_class(ctx7, embed_blocks(f, {a, a, sx}))[0] == want);
    }
    CHECK(similitude_class(ctx5, ctx5.o_mu(F.omega()))[0] == 1);
    CHECK(similitude_class(ctx5, ctx5.o_mu(F.pow_omega(3)))[0] == 3);
  }
  for (std::int64_t q : {9, 25, 7, 27}) {
    auto f = FieldSpec::of_order(q);
    const auto& F = *f;
    const std::int64_t p = F.p();
    for (int n : {4, 6, 8}) {
      auto ctx = SimilitudeContext::make(f, n);
      auto d = d2_blocks(f);
      const int copies = n / 2 - 1;
      const Mat b = Mat::diag_exp(f, {(p - 1) / 2, 0, (p - 1) / 2, p - 1});
      std::vector<Mat> b1(static_cast<std::size_t>(copies), d.x1), b2 = b1, bb(static_cast<std::size_t>(copies), b);
      b1.push_back(d.x1);
      b2.push_back(d.x2);
      bb.push_back(d.y);
      Mat A1 = embed_blocks(f, b1), A2 = embed_blocks(f, b2), B = embed_blocks(f, bb);
      const bool half_odd = (n / 2) % 2 == 1;
      using K = std::array<std::int64_t, 2>;
      CHECK(similitude_class(ctx, A1) == (half_odd ? K{1, 0} : K{0, 1}));
      CHECK(similitude_class(ctx, A2) == (half_odd ? K{0, 1} : K{1, 0}));
      CHECK(similitude_class(ctx, A1 * A2) == K{1, 1});
      CHECK(similitude_class(ctx, B) == (half_odd && p % 4 == 3 ? K{1, 1} : K{0, 0}));
      // H(mu): c_{n-1} = mu^{m-2}, c_n = mu^{m-1} with m = n/2
      std::vector<Mat> hs(static_cast<std::size_t>(n / 2), h_block(f, F.omega()));
      auto c = dn_c_values({torus_character(ctx, embed_blocks(f, hs)), q - 1});
      CHECK(c[static_cast<std::size_t>(n - 2)] == mod(n / 2 - 2, q - 1));
      CHECK(c[static_cast<std::size_t>(n - 1)] == mod(n / 2 - 1, q - 1));
    }
  }
}

TEST_CASE("direct sums") {
  auto f = FieldSpec::of_order(9);
  std::mt19937 rng(5);
  auto ctx = SimilitudeContext::make(f, 5);
  auto ctx3 = SimilitudeContext::make(f, 3);
  for (int t = 0; t < 30; ++t) {
    Mat x = sigma_ext_sq(random_gl(f, 4, rng));
    auto mu = eta(ctx3, x);
    Mat z = a_block(f, mu);
    Mat y = embed_blocks(f, {z, x});
    CHECK(eta(ctx, y) == mu);
    CHECK(in_co_circ(ctx, y));
    CHECK(y.frob(1) == embed_blocks(f, {z.frob(1), x.frob(1)}));
    CHECK(ctx.tw(y) == embed_blocks(f, {z, ctx3.tw(x)}));
  }
  CHECK_THROWS(embed_blocks(f, {Mat::identity(f, 3)}));
}

TEST_CASE("D_n odd constructions") {
  for (std::int64_t q : {9, 25, 5, 13, 49}) {
    auto f = FieldSpec::of_order(q);
    const auto& F = *f;
    const std::int64_t p = F.p();
    for (int n : {3, 5, 7}) {
      auto om = out_model(Family::DnOdd, n, q);
      auto ctx = SimilitudeContext::make(f, n);
      auto cases = dn_odd_cases(om, f);
      REQUIRE(cases.size() == 3);
      for (const auto& c : cases) {
        check_supplement(om, c);
        CHECK(dn_odd_supplement(om, f, make_abelian_t(om, c.t_gens)).route == c.sup.route);
      }
      const Mat& A1 = cases[0].sup.gens[0].X;
      const Mat& B1 = cases[0].sup.gens[1].X;
      const auto half = F.pow_omega((p - 1) / 2);
      if (p % 4 == 1) {
        CHECK(B1.inverse() * A1.frob(1) * B1 == A1.scaled(half));
        CHECK(eta(ctx, A1) == F.omega());
        CHECK(eta(ctx, B1) == F.pow_omega(3 * (p - 1) / 2));
      } else {
        CHECK(B1.inverse() * ctx.tw(A1.frob(1)) * B1 == A1.scaled(half));
        CHECK(eta(ctx, B1) == F.pow_omega(-3 * (p + 1) / 2));
      }
      for (std::size_t k = 1; k < 3; ++k) {
        const Mat& A = cases[k].sup.gens[0].X;
        const Mat& B = cases[k].sup.gens[1].X;
        const Mat& C = cases[k].sup.gens[2].X;
        const auto lp = F.pow_omega(p - 1);
        CHECK(B.inverse() * A.frob(1) * B == A.scaled(lp));
        CHECK(C.inverse() * ctx.tw(A) * C == A);
        CHECK(ctx.tw(B) * C == (C.frob(1) * B).scaled(k == 1 ? lp : half));
        CHECK(eta(ctx, A) == F.pow_omega(2));
        CHECK(eta(ctx, B) == (k == 1 ? lp : half));
        CHECK(eta(ctx, C) == F.pow_omega(k == 1 ? -2 : -1));
      }
    }
    auto om = out_model(Family::DnOdd, 3, q);
    CHECK_THROWS(dn_odd_supplement(om, f, make_abelian_t(om, {om.phi()})));
  }
  CHECK_THROWS(dn_odd_cases(out_model(Family::DnOdd, 3, 7), FieldSpec::of_order(7)));
}

TEST_CASE("D_n even constructions") {
  for (std::int64_t q : {9, 25, 7, 27}) {
    auto f = FieldSpec::of_order(q);
    const auto& F = *f;
    const std::int64_t p = F.p();
    for (int n : {4, 6, 8}) {
      auto om = out_model(n == 4 ? Family::D4 : Family::DnEven, n, q);
      auto ctx = SimilitudeContext::make(f, n);
      auto cases = dn_even_cases(om, f);
      REQUIRE(cases.size() == 3);
      for (const auto& c : cases) check_supplement(om, c);
      const Mat& A1 = cases[0].sup.gens[0].X;
      const Mat& A2 = cases[0].sup.gens[1].X;
      const Mat& B = cases[0].sup.gens[1 + 1].X;
      const Mat A3 = cases[1].sup.gens[0].X;
      const auto half = F.pow_omega((p - 1) / 2);
      CHECK(A1 * A2 == A2 * A1);
      CHECK(ctx.tw(A1) == A2);
      CHECK(B.inverse() * A1.frob(1) * B == A1.scaled(half));
      CHECK(B.inverse() * A2.frob(1) * B == A2.scaled(half));
      CHECK(ctx.tw(A3) == A3);
      CHECK(ctx.tw(B) == B);
      CHECK(B.inverse() * A3.frob(1) * B == A3.scaled(F.pow_omega(p - 1)));
      CHECK(ctx.tw(A1) * A1 == A3);
      CHECK(eta(ctx, A1) == F.omega());
      CHECK(eta(ctx, A3) == F.pow_omega(2));
      CHECK(eta(ctx, B) == F.pow_omega(p - 1));
    }
  }
}

TEST_CASE("D4 triality matrices") {
  for (std::int64_t q : {9, 25, 81}) {
    auto r = d4_triality_matrices(FieldSpec::of_order(q));
    CHECK(r.relation);
    CHECK(r.a1_class == std::array<std::int64_t, 2>{0, 1});
    CHECK(r.b_class == std::array<std::int64_t, 2>{0, 0});
  }
}
