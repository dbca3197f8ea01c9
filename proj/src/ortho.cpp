#include "abelsup/ortho.hpp"

#include <stdexcept>

#include "abelsup/arith.hpp"
#include "abelsup/intmat.hpp"
#include "abelsup/lattice.hpp"

namespace abelsup {

namespace {

Mat from_rows(const FieldPtr& f, const std::vector<std::vector<FieldElement>>& rows) {
  Mat m(f, static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
  return m;
}

void require_odd(const FieldSpec& F, const char* what) {
  if (F.p() == 2) throw std::invalid_argument(std::string(what) + ": needs p odd");
}

// Signed image pattern of a monomial 2n x 2n matrix: column e_j lands on +-(r+1).
std::vector<int> signed_pattern(const Mat& Y, int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    int r = -1, rf = -1;
    for (int i = 0; i < 2 * n; ++i) {
      if (!Y.F().is_zero(Y(i, j))) {
        if (r >= 0) throw std::invalid_argument("matrix is not monomial");
        r = i;
      }
      if (!Y.F().is_zero(Y(i, j + n))) {
        if (rf >= 0) throw std::invalid_argument("matrix is not monomial");
        rf = i;
      }
    }
    if (r < 0 || rf < 0) throw std::invalid_argument("singular column");
    if (rf != (r < n ? r + n : r - n))
      throw std::invalid_argument("monomial pattern does not respect the hyperbolic pairs");
    w[static_cast<std::size_t>(j)] = r < n ? r + 1 : -(r - n + 1);
  }
  return w;
}

// Coxeter length in W(D_n), after reversing labels so that n_n becomes the branch node s_0.
int dn_length(const std::vector<int>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> v(w.size());
  for (int i = 0; i < n; ++i) {
    int x = w[static_cast<std::size_t>(i)];
    int rx = x > 0 ? n + 1 - x : -(n + 1 + x);
    v[static_cast<std::size_t>(n - 1 - i)] = rx;
  }
  int len = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto a = v[static_cast<std::size_t>(i)], b = v[static_cast<std::size_t>(j)];
      len += (a > b) + (a + b < 0);
    }
  return len;
}

}  // namespace

SimilitudeContext SimilitudeContext::make(FieldPtr F, int n) {
  if (n < 1) throw std::invalid_argument("similitude context needs n >= 1");
  SimilitudeContext c;
  c.F = F;
  c.n = n;
  std::vector<int> k(static_cast<std::size_t>(2 * n)), t(k.size()), w(k.size());
  for (int i = 0; i < 2 * n; ++i) {
    k[static_cast<std::size_t>(i)] = (i + n) % (2 * n);
    t[static_cast<std::size_t>(i)] = i;
    w[static_cast<std::size_t>(i)] = i;
  }
  std::swap(t[static_cast<std::size_t>(n - 1)], t[static_cast<std::size_t>(2 * n - 1)]);
  for (int i = 0; i + 1 < n; ++i) std::swap(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i + n)]);
  c.K = Mat::permutation(F, k);
  c.tau = Mat::permutation(F, t);
  c.w0 = Mat::permutation(F, w);
  return c;
}

Mat SimilitudeContext::o_mu(FieldElement mu) const {
  std::vector<FieldElement> d(static_cast<std::size_t>(2 * n), F->one());
  for (int i = n; i < 2 * n; ++i) d[static_cast<std::size_t>(i)] = mu;
  return Mat::diag(F, d);
}

std::optional<FieldElement> similitude_ratio(const SimilitudeContext& ctx, const Mat& X) {
  if (X.n() != 2 * ctx.n) throw std::invalid_argument("similitude_ratio: size mismatch");
  Mat g = X.transpose() * ctx.K * X;
  // mu is read off the (e_1, f_1) entry
  FieldElement mu = g(0, ctx.n);
  if (ctx.F->is_zero(mu)) return std::nullopt;
  if (g != ctx.K.scaled(mu)) return std::nullopt;
  return mu;
}

FieldElement eta(const SimilitudeContext& ctx, const Mat& X) {
  auto mu = similitude_ratio(ctx, X);
  if (!mu) throw std::domain_error("eta: not a similitude");
  return *mu;
}

bool in_co_circ(const SimilitudeContext& ctx, const Mat& X) {
  auto mu = similitude_ratio(ctx, X);
  return mu && X.det() == ctx.F->pow(*mu, ctx.n);
}

Mat sigma_ext_sq(const Mat& X) {
  if (X.n() != 4) throw std::invalid_argument("sigma_ext_sq: needs a 4x4 matrix");
  if (X.F().is_zero(X.det())) throw std::domain_error("sigma_ext_sq: singular matrix");
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 1}, {0, 3}};
  const FieldSpec& F = X.F();
  Mat s(X.field(), 6);
  for (int r = 0; r < 6; ++r) {
    const int k = kPairs[r][0], l = kPairs[r][1];
    for (int c = 0; c < 6; ++c) {
      const int i = kPairs[c][0], j = kPairs[c][1];
      s.set(r, c, F.sub(F.mul(X(k, i), X(l, j)), F.mul(X(l, i), X(k, j))));
    }
  }
  return s;
}

Mat a_block(const FieldPtr& f, FieldElement mu) {
  const auto& F = *f;
  const auto z = F.zero(), o = F.one();
  return from_rows(f, {{z, F.neg(mu), z, z}, {o, z, z, z}, {z, z, z, F.neg(o)}, {z, z, mu, z}});
}

Mat b_block(const FieldPtr& f, FieldElement mu, FieldElement nu) {
  const auto& F = *f;
  require_odd(F, "b_block");
  const std::int64_t h = (F.p() - 1) / 2;
  return Mat::diag(f, {F.pow(mu, h), F.one(), F.mul(F.pow(mu, -h), nu), nu});
}

Mat h_block(const FieldPtr& f, FieldElement mu) {
  return Mat::diag(f, {f->one(), mu, mu, f->one()});
}

D2Blocks d2_blocks(const FieldPtr& f) {
  const auto& F = *f;
  require_odd(F, "d2_blocks");
  const auto z = F.zero(), o = F.one(), m1 = F.neg(F.one());
  const std::int64_t p = F.p();
  D2Blocks d;
  d.n1 = from_rows(f, {{z, o, z, z}, {m1, z, z, z}, {z, z, z, o}, {z, z, m1, z}});
  d.n2 = from_rows(f, {{z, z, z, o}, {z, z, m1, z}, {z, o, z, z}, {m1, z, z, z}});
  d.h1 = h_block(f, F.omega());
  d.x1 = d.n1 * d.h1;
  auto ctx = SimilitudeContext::make(f, 2);
  d.x2 = ctx.tw(d.x1);
  d.x3 = d.x1 * d.x2;
  d.y = Mat::diag_exp(f, {p - 1, (p - 1) / 2, 0, (p - 1) / 2});
  return d;
}

Mat embed_blocks(const FieldPtr& f, const std::vector<Mat>& blocks) {
  int n = 0;
  for (const auto& b : blocks) {
    if (b.n() != 4 && b.n() != 6) throw std::invalid_argument("embed_blocks: blocks are 4x4 or 6x6");
    n += b.n() / 2;
  }
  Mat y(f, 2 * n);
  int off = 0;
  for (const auto& b : blocks) {
    const int h = b.n() / 2;
    auto pos = [&](int j) { return j < h ? off + j : n + off + (j - h); };
    for (int i = 0; i < b.n(); ++i)
      for (int j = 0; j < b.n(); ++j) y.set(pos(i), pos(j), b(i, j));
    off += h;
  }
  return y;
}

Mat weyl_generator(const SimilitudeContext& ctx, int i) {
  const int n = ctx.n;
  if (i < 1 || i > n || n < 2) throw std::out_of_range("weyl_generator index");
  const auto& F = *ctx.F;
  const auto o = F.one(), m1 = F.neg(F.one());
  Mat g = Mat::identity(ctx.F, 2 * n);
  auto map = [&](int from, int to, FieldElement c) {
    g.set(from, from, F.zero());
    g.set(to, from, c);
  };
  if (i < n) {
    const int a = i - 1, b = i;
    map(a, b, m1);
    map(b, a, o);
    map(n + a, n + b, m1);
    map(n + b, n + a, o);
  } else {
    const int a = n - 2, b = n - 1;
    map(a, n + b, m1);
    map(b, n + a, o);
    map(n + a, b, m1);
    map(n + b, a, o);
  }
  return g;
}

MonomialSplit monomial_split(const SimilitudeContext& ctx, const Mat& X) {
  const int n = ctx.n;
  auto mu = similitude_ratio(ctx, X);
  if (!mu) throw std::invalid_argument("monomial_split: not a similitude");
  auto pat = signed_pattern(X, n);
  int neg = 0;
  for (int x : pat) neg += x < 0;
  if (neg % 2) throw std::invalid_argument("monomial_split: swaps the two isotropic families");
  std::vector<Mat> inv_gens;
  for (int i = 1; i <= n; ++i) inv_gens.push_back(weyl_generator(ctx, i).inverse());
  MonomialSplit out;
  out.mu = *mu;
  Mat y = X;
  int len = dn_length(pat);
  while (len > 0) {
    bool moved = false;
    for (int i = 1; i <= n && !moved; ++i) {
      Mat c = inv_gens[static_cast<std::size_t>(i - 1)] * y;
      int l2 = dn_length(signed_pattern(c, n));
      if (l2 < len) {
        y = c;
        len = l2;
        out.word.push_back(i);
        moved = true;
      }
    }
    if (!moved) throw std::logic_error("monomial_split: no descent found");
  }
  if (!y.is_diagonal()) throw std::logic_error("monomial_split: residue is not diagonal");
  for (int i = 0; i < n; ++i) out.f.push_back(y(i, i));
  return out;
}

std::vector<std::int64_t> torus_character(const SimilitudeContext& ctx, const Mat& X) {
  auto sp = monomial_split(ctx, X);
  const auto& F = *ctx.F;
  const std::int64_t M = F.q() - 1;
  const int n = ctx.n;
  std::vector<std::int64_t> lf;
  for (auto x : sp.f) lf.push_back(F.dlog(x));
  std::vector<std::int64_t> e(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i)
    e[static_cast<std::size_t>(i)] = mod(lf[static_cast<std::size_t>(i)] - lf[static_cast<std::size_t>(i + 1)], M);
  e[static_cast<std::size_t>(n - 1)] =
      mod(lf[static_cast<std::size_t>(n - 2)] + lf[static_cast<std::size_t>(n - 1)] - F.dlog(sp.mu), M);
  return e;
}

std::array<std::int64_t, 2> similitude_class(const SimilitudeContext& ctx, const Mat& X) {
  const int n = ctx.n;
  if (n < 2) throw std::invalid_argument("similitude_class: needs n >= 2");
  auto e = torus_character(ctx, X);
  const std::int64_t M = ctx.F->q() - 1;
  if (n % 2 == 0) {
    if (M % 2) return {0, 0};
    std::int64_t odd = 0;
    for (int i = 0; i + 3 <= n - 1; i += 2) odd += e[static_cast<std::size_t>(i)];
    return {mod(e[static_cast<std::size_t>(n - 2)] - odd, 2), mod(e[static_cast<std::size_t>(n - 1)] - odd, 2)};
  }
  const std::int64_t g = gcd(4, M);
  if (g == 1) return {0, 0};
  // 4 omega_n in root coordinates; o_lambda is normalised to class 1
  auto rs = root_system('D', n);
  auto w4 = scaled_inverse(rs.cartan, 4);
  if (!w4) throw std::logic_error("4 omega_n is not in Q");
  const auto& row = (*w4)[static_cast<std::size_t>(n - 1)];
  std::int64_t raw = 0;
  for (int k = 0; k < n; ++k) raw += row[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(k)];
  const std::int64_t unit = mod(-row[static_cast<std::size_t>(n - 1)], g);
  return {mod(raw * inverse_mod(unit, g), g), 0};
}

OutElement rho_ortho(const OutModel& om, const SemilinearWord& w) {
  if (om.family != Family::DnOdd && om.family != Family::DnEven && om.family != Family::D4)
    throw std::invalid_argument("rho_ortho: not an orthogonal family");
  if (w.X.n() != 2 * om.n) throw std::invalid_argument("rho_ortho: wrong matrix size");
  if (w.eps && w.graph != GraphKind::Tau)
    throw std::invalid_argument("rho_ortho: graph part must be tau");
  auto ctx = SimilitudeContext::make(w.X.field(), om.n);
  if (!in_co_circ(ctx, w.X)) throw std::invalid_argument("rho_ortho: matrix outside CO°");
  OutElement r;
  r.f = w.s;
  r.g = w.eps ? om.graph().g : 0;
  r.v = similitude_class(ctx, w.X);
  return om.reduce(r);
}

namespace {

SemilinearWord word(std::int64_t s, bool tau, const Mat& X) {
  return {s, tau ? 1 : 0, tau ? GraphKind::Tau : GraphKind::None, X};
}

Mat direct_sum(const FieldPtr& f, const Mat& block, int copies, const Mat& last) {
  std::vector<Mat> bs(static_cast<std::size_t>(copies), block);
  bs.push_back(last);
  return embed_blocks(f, bs);
}

void require_regime(const OutModel& om, const FieldPtr& f, bool odd) {
  if (f->q() != om.q) throw std::invalid_argument("field does not match the model");
  if (om.p == 2) throw std::invalid_argument("orthogonal constructions need p odd");
  if (odd && om.family != Family::DnOdd) throw std::invalid_argument("needs the dn_odd model");
  if (!odd && om.family != Family::DnEven && om.family != Family::D4)
    throw std::invalid_argument("needs the dn_even model");
  if (odd && (om.q - 1) % 4 != 0) throw std::invalid_argument("dn_odd construction needs 4 | q-1");
}

MatrixSupplement pick_case(const OutModel& om, const std::vector<OrthoCase>& cases, const AbelianT& T) {
  for (const auto& c : cases)
    if (subgroup_closure(om, c.t_gens) == T.elements) return c.sup;
  throw std::invalid_argument("T is not one of the listed cases");
}

}  // namespace

std::vector<OrthoCase> dn_odd_cases(const OutModel& om, const FieldPtr& f) {
  require_regime(om, f, true);
  const auto& F = *f;
  const std::int64_t p = om.p;
  const int n = om.n, copies = (n - 3) / 2;
  const auto lam = F.omega(), z = F.zero(), o = F.one();
  auto pw = [&](std::int64_t k) { return F.pow_omega(k); };
  auto ctx6 = SimilitudeContext::make(f, 3);
  const OutElement d = om.delta(1), d2 = om.pow(d, 2), ph = om.phi(), ta = om.graph();

  auto L4 = from_rows(f, {{z, z, z, F.neg(lam)}, {o, z, z, z}, {z, o, z, z}, {z, z, o, z}});
  auto L22 = from_rows(f, {{z, F.neg(lam), z, z}, {o, z, z, z}, {z, z, z, F.neg(lam)}, {z, z, o, z}});
  std::vector<OrthoCase> out;

  // <delta^2, phi, tau>: L = A21 + A21, M = diag(l^{(p-1)/2}, 1, l^{(p-1)/2}, 1), N = diag(l^-1, 1, l^-1, 1)
  auto case_tau = [&](const std::string& name, std::vector<OutElement> tg, const Mat& M, const Mat& N,
                      const Mat& a, const Mat& b, const Mat& c) {
    Mat A1 = direct_sum(f, a, copies, sigma_ext_sq(L22));
    Mat B1 = direct_sum(f, b, copies, sigma_ext_sq(M));
    Mat C1 = direct_sum(f, c, copies, ctx6.w0 * sigma_ext_sq(N));
    MatrixSupplement s;
    s.route = "dn-odd-" + name;
    s.gens = {word(0, false, A1), word(1, false, B1), word(0, true, C1)};
    out.push_back({name, std::move(tg), std::move(s)});
  };

  if (p % 4 == 1) {
    const std::int64_t r = (p - 1) / 4;
    Mat M = Mat::diag_exp(f, {3 * r, 2 * r, r, 0});
    Mat a = a_block(f, lam), b = b_block(f, lam, pw(3 * (p - 1) / 2));
    MatrixSupplement s;
    s.route = "dn-odd-delta-phi";
    s.gens = {word(0, false, direct_sum(f, a, copies, sigma_ext_sq(L4))),
              word(1, false, direct_sum(f, b, copies, sigma_ext_sq(M)))};
    out.push_back({"delta-phi", {d, ph}, std::move(s)});
  } else {
    const std::int64_t r = (-p - 1) / 4;
    Mat M = Mat::diag_exp(f, {3 * r, 2 * r, r, 0});
    Mat a = a_block(f, lam), b = b_block(f, lam, pw(-3 * (p + 1) / 2));
    MatrixSupplement s;
    s.route = "dn-odd-delta-phitau";
    s.gens = {word(0, false, direct_sum(f, a, copies, sigma_ext_sq(L4))),
              word(1, true, direct_sum(f, b, copies, ctx6.w0 * sigma_ext_sq(M)))};
    out.push_back({"delta-phitau", {d, om.mul(ph, ta)}, std::move(s)});
  }

  {
    Mat M = Mat::diag_exp(f, {(p - 1) / 2, 0, (p - 1) / 2, 0});
    Mat N = Mat::diag_exp(f, {-1, 0, -1, 0});
    Mat a = a_block(f, pw(2));
    case_tau("delta2-phi-tau", {d2, ph, ta}, M, N, a, b_block(f, pw(2), pw(p - 1)), a.inverse());
  }
  {
    Mat P = from_rows(f, {{z, F.neg(lam), z, z}, {o, z, z, z}, {z, z, o, z}, {z, z, z, o}});
    Mat M = Mat::diag_exp(f, {(p - 1) / 2, 0, (p - 1) / 2, 0}) * P.pow((1 - p) / 2);
    Mat N = from_rows(f, {{z, F.neg(o), z, z}, {o, z, z, z}, {z, z, pw(-1), z}, {z, z, z, o}});
    Mat c = a_block(f, pw(-1));
    Mat cinv = c.inverse();
    Mat a = cinv * cinv;
    Mat b = b_block(f, pw(-1), pw((p - 1) / 2));
    std::vector<OutElement> tg = p % 4 == 1
        ? std::vector<OutElement>{d2, ph, om.mul(ta, d)}
        : std::vector<OutElement>{d2, om.mul(ph, d), om.mul(ta, d)};
    case_tau(p % 4 == 1 ? "delta2-phi-taudelta" : "delta2-phidelta-taudelta", std::move(tg), M, N, a, b, c);
  }
  return out;
}

std::vector<OrthoCase> dn_even_cases(const OutModel& om, const FieldPtr& f) {
  require_regime(om, f, false);
  const std::int64_t p = om.p;
  const int n = om.n, copies = n / 2 - 1;
  auto d2 = d2_blocks(f);
  const Mat a = d2.x1;  // a(lambda) in the x_1 sign convention
  const Mat b = Mat::diag_exp(f, {(p - 1) / 2, 0, (p - 1) / 2, p - 1});
  Mat A1 = direct_sum(f, a, copies, d2.x1);
  Mat A2 = direct_sum(f, a, copies, d2.x2);
  Mat B = direct_sum(f, b, copies, d2.y);
  Mat A3 = A1 * A2;
  const Mat I = Mat::identity(f, 2 * n);
  const OutElement ph = om.phi(), ta = om.graph();
  std::vector<OrthoCase> out;
  auto add = [&](const std::string& name, std::vector<OutElement> tg, std::vector<SemilinearWord> ws) {
    MatrixSupplement s;
    s.route = "dn-even-" + name;
    s.gens = std::move(ws);
    out.push_back({name, std::move(tg), std::move(s)});
  };
  add("case1", {om.delta(1), om.delta(2), ph}, {word(0, false, A1), word(0, false, A2), word(1, false, B)});
  add("case2", {om.delta(3), ph, ta}, {word(0, false, A3), word(1, false, B), word(0, true, I)});
  add("case3", {ph, om.mul(ta, om.delta(1))}, {word(0, true, A1), word(1, false, B)});
  return out;
}

MatrixSupplement dn_odd_supplement(const OutModel& om, const FieldPtr& f, const AbelianT& T) {
  return pick_case(om, dn_odd_cases(om, f), T);
}

MatrixSupplement dn_even_supplement(const OutModel& om, const FieldPtr& f, const AbelianT& T) {
  return pick_case(om, dn_even_cases(om, f), T);
}

D4TrialityMatrices d4_triality_matrices(const FieldPtr& f) {
  const auto& F = *f;
  require_odd(F, "d4_triality_matrices");
  const std::int64_t p = F.p();
  auto d2 = d2_blocks(f);
  const Mat b = Mat::diag_exp(f, {(p - 1) / 2, 0, (p - 1) / 2, p - 1});
  D4TrialityMatrices r;
  r.A1 = embed_blocks(f, {d2.x1, d2.x1});
  r.B = embed_blocks(f, {b, d2.y});
  Mat lhs = r.B.inverse() * r.A1.frob(1) * r.B;
  r.relation = lhs == r.A1.scaled(F.pow_omega((p - 1) / 2));
  auto ctx = SimilitudeContext::make(f, 4);
  r.a1_class = similitude_class(ctx, r.A1);
  r.b_class = similitude_class(ctx, r.B);
  return r;
}

}  // namespace abelsup
