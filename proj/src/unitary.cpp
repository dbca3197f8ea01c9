#include "abelsup/unitary.hpp"

#include <stdexcept>

#include "abelsup/arith.hpp"

namespace abelsup {

UnitaryContext UnitaryContext::make(std::int64_t q) {
  std::int64_t p = 0, m = 0;
  if (!prime_power(q, p, m)) throw std::invalid_argument("unitary: q is not a prime power");
  UnitaryContext c;
  c.q = q;
  c.F = FieldSpec::make(p, 2 * m);
  c.nu = c.F->omega();
  c.base_log = q - 1;
  c.omega = c.F->pow_omega(q - 1);
  return c;
}

bool is_unitary(const UnitaryContext& ctx, const Mat& X) {
  // Frobenius x -> x^q is frob by m where q = p^m.
  std::int64_t m = ctx.F->m() / 2;
  return (X.frob(m).transpose() * X).is_identity();
}

FieldElement ublock_scalar(const UnitaryContext& ctx, int w, std::int64_t l, std::int64_t c,
                           std::int64_t s) {
  const std::int64_t M = ctx.q + 1;
  const std::int64_t ps = ipow(ctx.F->p(), s);
  if (mod(c * w - l * (ps - 1), M) != 0)
    throw std::invalid_argument("ublock_scalar: congruence cw = l(p^s-1) mod q+1 fails");
  Mat A = build_A(ctx.F, w, l, ctx.base_log);
  SemilinearWord x{s, 0, GraphKind::None, build_X(ctx.F, w, c, ctx.base_log)};
  FieldElement z = ctx.F->pow_omega(mod(c * ctx.base_log, ctx.F->q() - 1));
  if (!(apply_word(x, A) == A.scaled(z)))
    throw std::logic_error("ublock_scalar: block identity failed");
  return z;
}

MatrixSupplement psu_supplement(const OutModel& om, const UnitaryContext& ctx, const AbelianT& T,
                                bool allow_cyclic_lift) {
  if (om.family != Family::Psu) throw std::invalid_argument("psu_supplement: not a psu model");
  if (om.n < 3) throw std::invalid_argument("psu_supplement: needs n >= 3");
  if (!is_abelian(om, T.gens)) throw std::invalid_argument("psu_supplement: T is not abelian");
  const int n = om.n;
  const std::int64_t d = om.d, M = ctx.q + 1, bl = ctx.base_log;
  const auto& f = ctx.F;
  MatrixSupplement sup;

  auto cyc = cyclic_generator(om, T);
  auto sh = cyclic_pi_shape(om, T);
  if (!sh) throw std::invalid_argument("psu_supplement: pi(T) must be cyclic");
  const std::int64_t t = d / sh->k;
  if ((cyc && allow_cyclic_lift) || t == 1) {
    if (!cyc) throw std::logic_error("psu_supplement: t = 1 but T not cyclic");
    sup.route = "cyclic-lift";
    sup.gens.push_back(diagonal_lift(om, f, *cyc, bl));
    return sup;
  }
  const std::int64_t num = ipow(om.p, sh->s) - 1;
  if (t == n) {
    sup.route = "pgu-t=n";
    sup.params = {{"t", t}, {"c", num / n}};
    sup.gens.push_back({0, 0, GraphKind::None, build_A(f, n, 1, bl)});
    sup.gens.push_back({sh->s, 0, GraphKind::None, build_X(f, n, num / n, bl)});
    return sup;
  }
  auto pc = pgammal_pieces(f, n, d, M, sh->k, sh->s, 0, bl);
  sup.route = "pgu";
  sup.params = {{"t", pc.t}, {"y", pc.y}, {"r", pc.r}, {"u", pc.u}, {"j", sh->j}};
  sup.gens.push_back({0, 0, GraphKind::None, pc.A});
  sup.gens.push_back({sh->s, 0, GraphKind::None, pc.X * pc.C.pow(mod(sh->j - pc.u, d))});
  return sup;
}

}  // namespace abelsup
