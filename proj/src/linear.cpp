#include "abelsup/linear.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "abelsup/arith.hpp"

namespace abelsup {

Mat build_A(const FieldPtr& f, int w, std::int64_t l, std::int64_t base_log) {
  if (w < 2) throw std::invalid_argument("build_A: w must be at least 2");
  Mat a(f, w);
  for (int i = 1; i < w; ++i) a.set(i, i - 1, f->one());
  FieldElement corner = f->pow_omega(mod(base_log * mod(l, f->q() - 1), f->q() - 1));
  if ((w - 1) % 2) corner = f->neg(corner);
  a.set(0, w - 1, corner);
  return a;
}

Mat build_X(const FieldPtr& f, int w, std::int64_t c, std::int64_t base_log) {
  if (w < 2) throw std::invalid_argument("build_X: w must be at least 2");
  std::vector<std::int64_t> e;
  const std::int64_t cm = mod(c, f->q() - 1);
  for (int i = 1; i <= w; ++i)
    e.push_back(mod(base_log * mod(cm * (w - i), f->q() - 1), f->q() - 1));
  return Mat::diag_exp(f, e);
}

std::int64_t find_y(std::int64_t n, std::int64_t d, std::int64_t M, std::int64_t t) {
  for (std::int64_t y = 1; y <= M; ++y)
    if (mod(y * n - d, M) == 0 && gcd(y, t) == 1) return y;
  throw std::domain_error("find_y: no solution");
}

std::int64_t find_y_odd(std::int64_t n, std::int64_t d, std::int64_t M) {
  for (std::int64_t y = 1; y <= 2 * M + 1; y += 2)
    if (mod(y * n - d, M) == 0) return y;
  throw std::domain_error("find_y_odd: no solution");
}

namespace {

std::vector<OutElement> elements_of(const OutModel& om, const AbelianT& T) {
  std::vector<OutElement> v;
  for (auto i : T.elements) v.push_back(om.element(i));
  return v;
}

bool contains(const AbelianT& T, const OutModel& om, const OutElement& x) {
  return std::binary_search(T.elements.begin(), T.elements.end(), om.index(om.reduce(x)));
}

}  // namespace

std::optional<CyclicPiShape> cyclic_pi_shape(const OutModel& om, const AbelianT& T) {
  if (om.klein()) return std::nullopt;
  auto el = elements_of(om, T);
  std::set<std::pair<std::int64_t, int>> pi;
  std::int64_t k = om.na;
  for (const auto& e : el) {
    pi.insert({e.f, e.g});
    if (e.f == 0 && e.g == 0) k = gcd(k, e.v[0]);
  }
  const int gs = std::max(om.gsize, 1);
  for (const auto& h : pi) {
    std::set<std::pair<std::int64_t, int>> cyc;
    std::pair<std::int64_t, int> x{0, 0};
    do {
      cyc.insert(x);
      x = {mod(x.first + h.first, om.phi_order), (x.second + h.second) % gs};
    } while (x != std::pair<std::int64_t, int>{0, 0});
    if (cyc == pi && (h != std::pair<std::int64_t, int>{0, 0} || pi.size() == 1)) {
      CyclicPiShape s;
      s.k = k;
      s.s = h.first;
      s.eps = h.second;
      s.j = -1;
      for (const auto& e : el)
        if (e.f == h.first && e.g == h.second && (s.j < 0 || e.v[0] < s.j)) s.j = e.v[0];
      return s;
    }
  }
  return std::nullopt;
}

std::optional<ThreeGenShape> three_gen_shape(const OutModel& om, const AbelianT& T) {
  if (om.klein() || om.gsize != 2) return std::nullopt;
  auto el = elements_of(om, T);
  ThreeGenShape sh;
  sh.s = -1;
  sh.j = -1;
  sh.k = -1;
  for (const auto& e : el) {
    if (e.g == 0 && e.f > 0 && (sh.s < 0 || e.f < sh.s)) sh.s = e.f;
  }
  if (sh.s < 0) return std::nullopt;
  for (const auto& e : el) {
    if (e.g == 0 && e.f == sh.s && (sh.j < 0 || e.v[0] < sh.j)) sh.j = e.v[0];
    if (e.g == 1 && e.f == 0 && (sh.k < 0 || e.v[0] < sh.k)) sh.k = e.v[0];
  }
  if (sh.k < 0) return std::nullopt;
  return sh;
}

SemilinearWord diagonal_lift(const OutModel& om, const FieldPtr& f, const OutElement& x,
                             std::int64_t base_log) {
  SemilinearWord w;
  w.s = x.f;
  w.eps = x.g;
  w.graph = om.gsize == 2 ? GraphKind::InverseTranspose : GraphKind::None;
  std::vector<std::int64_t> e(static_cast<std::size_t>(om.n), 0);
  e[0] = base_log * x.v[0];
  w.X = Mat::diag_exp(f, e);
  return w;
}

PgammalPieces pgammal_pieces(const FieldPtr& f, int n, std::int64_t d, std::int64_t M,
                             std::int64_t k, std::int64_t s, int eps, std::int64_t base_log) {
  PgammalPieces pc;
  pc.t = d / k;
  const std::int64_t t = pc.t;
  if (t < 2 || t >= n) throw std::invalid_argument("pgammal_pieces: needs 1 < t < n");
  const std::int64_t ps = ipow(f->p(), s);
  const std::int64_t num = (eps ? -ps : ps) - 1;
  if (num % t != 0) throw std::invalid_argument("pgammal_pieces: t does not divide the twist");
  pc.r = num / t;
  pc.y = find_y(n, d, M, t);
  const int ti = static_cast<int>(t), rest = n - ti;
  pc.A = block_diag({build_A(f, ti, pc.y, base_log), build_A(f, rest, k - pc.y, base_log)});
  pc.X = block_diag({build_X(f, ti, pc.y * pc.r, base_log), build_X(f, rest, pc.y * pc.r, base_log)});
  auto [g, a, b] = egcd(pc.y, t);
  (void)g;
  Mat C0 = build_A(f, ti, pc.y, base_log).pow(a).scaled(f->pow_omega(base_log * b));
  pc.C = block_diag({C0, Mat::identity(f, rest)});
  pc.u = mod(f->dlog(pc.X.det()) / base_log, d);
  return pc;
}

ThreeGenPieces three_gen_pieces(const FieldPtr& f, int n, std::int64_t d, std::int64_t s) {
  if (d % 2 || n < 4) throw std::invalid_argument("three_gen_pieces: needs d even, n >= 4");
  ThreeGenPieces pc;
  pc.y = find_y_odd(n, d, f->q() - 1);
  pc.r = (ipow(f->p(), s) - 1) / 2;
  const std::int64_t y = pc.y, r = pc.r;
  Mat A2 = build_A(f, 2, y);
  pc.A = block_diag({A2, build_A(f, n - 2, d / 2 - y)});
  pc.Xphi = block_diag({build_X(f, 2, y * r), build_X(f, n - 2, y * r)});
  pc.Xgam = block_diag({build_X(f, 2, -y), build_X(f, n - 2, -y)});
  Mat Yphi = build_X(f, 2, y * r) * A2.pow(-r);
  Mat Ygam = build_X(f, 2, -y) * A2;
  pc.Xphi2 = block_diag({Yphi, build_X(f, n - 2, y * r)});
  pc.Xgam2 = block_diag({Ygam, build_X(f, n - 2, -y)});
  return pc;
}

MatrixSupplement psl2_supplement(const FieldPtr& f) {
  MatrixSupplement sup;
  if (f->p() == 2) {
    sup.route = "cyclic-lift";
    sup.gens.push_back({1, 0, GraphKind::None, Mat::identity(f, 2)});
    return sup;
  }
  sup.route = "psl2";
  sup.gens.push_back(SemilinearWord::inner(build_A(f, 2, 1)));
  sup.gens.push_back({1 % f->m(), 0, GraphKind::None, build_X(f, 2, (f->p() - 1) / 2)});
  return sup;
}

MatrixSupplement psl_supplement(const OutModel& om, const FieldPtr& f, const AbelianT& T,
                                bool allow_cyclic_lift) {
  if (om.family != Family::Psl) throw std::invalid_argument("psl_supplement: not a psl model");
  if (!is_abelian(om, T.gens)) throw std::invalid_argument("psl_supplement: T is not abelian");
  const int n = om.n;
  const std::int64_t d = om.d, M = om.q - 1;
  const GraphKind gk = om.gsize == 2 ? GraphKind::InverseTranspose : GraphKind::None;
  MatrixSupplement sup;

  auto cyc = cyclic_generator(om, T);
  if (cyc && allow_cyclic_lift) {
    sup.route = "cyclic-lift";
    sup.gens.push_back(diagonal_lift(om, f, *cyc));
    return sup;
  }
  if (auto sh = cyclic_pi_shape(om, T)) {
    const std::int64_t t = d / sh->k;
    if (t == 1) {
      sup.route = "cyclic-lift";
      sup.gens.push_back(diagonal_lift(om, f, *cyc));
      return sup;
    }
    const std::int64_t ps = ipow(om.p, sh->s);
    const std::int64_t num = (sh->eps ? -ps : ps) - 1;
    if (t == n) {
      sup.route = n == 2 ? "psl2" : "pgammal-t=n";
      sup.params = {{"t", t}, {"c", num / n}};
      sup.gens.push_back({0, 0, gk, build_A(f, n, 1)});
      sup.gens.push_back({sh->s, sh->eps, gk, build_X(f, n, num / n)});
      return sup;
    }
    auto pc = pgammal_pieces(f, n, d, M, sh->k, sh->s, sh->eps);
    sup.route = "pgammal";
    sup.params = {{"t", pc.t}, {"y", pc.y}, {"r", pc.r}, {"u", pc.u}, {"j", sh->j}};
    sup.gens.push_back({0, 0, gk, pc.A});
    sup.gens.push_back({sh->s, sh->eps, gk, pc.X * pc.C.pow(mod(sh->j - pc.u, d))});
    return sup;
  }

  auto sh = three_gen_shape(om, T);
  if (!sh) throw std::invalid_argument("psl_supplement: unrecognized shape of T");
  if (d % 2 == 1) {
    // Conjugate T into the field-graph subgroup by a diagonal element.
    for (std::int64_t e = 0; e < d; ++e) {
      OutElement x = om.pow(om.delta(), e);
      bool inside = true;
      std::vector<std::int64_t> conj_idx;
      for (auto i : T.elements) {
        auto c = om.conj(om.element(i), x);
        if (c.v[0] != 0) {
          inside = false;
          break;
        }
        conj_idx.push_back(om.index(c));
      }
      if (!inside) continue;
      std::sort(conj_idx.begin(), conj_idx.end());
      SemilinearWord xl = diagonal_lift(om, f, x);
      SemilinearWord xinv = inverse(xl);
      sup.route = "field-graph";
      sup.params = {{"e", e}};
      for (const auto& g : greedy_generators(om, conj_idx)) {
        SemilinearWord w{g.f, g.g, gk, Mat::identity(f, n)};
        sup.gens.push_back(conjugate(w, xinv));
      }
      return sup;
    }
    throw std::logic_error("psl_supplement: no conjugator into the field-graph subgroup");
  }
  if (!contains(T, om, om.pow(om.delta(), d / 2)))
    throw std::invalid_argument("psl_supplement: three-generator T must contain delta^{d/2}");

  auto pc = three_gen_pieces(f, n, d, sh->s);
  const std::int64_t u = mod(f->dlog(pc.Xgam.det()), d);
  const bool first = mod(u - sh->k, 2) == 0;
  const std::int64_t uu = first ? u : u + pc.y;
  std::int64_t e = 0;
  while (mod(uu + 2 * e - sh->k, d) != 0) ++e;
  SemilinearWord R{0, 0, gk, diagonal_lift(om, f, om.pow(om.delta(), e)).X};
  sup.route = "three-gen";
  sup.params = {{"y", pc.y}, {"u", u}, {"hat", first ? 1 : 2}, {"e", e}};
  std::vector<SemilinearWord> hat{
      {0, 0, gk, pc.A},
      {sh->s, 0, gk, first ? pc.Xphi : pc.Xphi2},
      {0, 1, gk, first ? pc.Xgam : pc.Xgam2}};
  for (auto& w : hat) sup.gens.push_back(conjugate(w, R));
  return sup;
}

}  // namespace abelsup
