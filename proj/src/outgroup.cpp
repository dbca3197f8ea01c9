#include "abelsup/outgroup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "abelsup/arith.hpp"

namespace abelsup {

namespace {

// S3 as permutations of {delta1, delta2, delta3}, lexicographic order.
constexpr std::array<std::array<int, 3>, 6> kS3{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
constexpr int kTau = 2;  // swaps delta1 and delta2
constexpr int kRho = 3;  // delta1 -> delta2 -> delta3 -> delta1

int s3_index(const std::array<int, 3>& p) {
  for (int i = 0; i < 6; ++i)
    if (kS3[static_cast<std::size_t>(i)] == p) return i;
  throw std::logic_error("not a permutation");
}

// Right action: first a, then b.
int s3_mul(int a, int b) {
  std::array<int, 3> r{};
  for (std::size_t i = 0; i < 3; ++i)
    r[i] = kS3[static_cast<std::size_t>(b)][static_cast<std::size_t>(
        kS3[static_cast<std::size_t>(a)][i])];
  return s3_index(r);
}

int s3_inv(int a) {
  std::array<int, 3> r{};
  for (int i = 0; i < 3; ++i)
    r[static_cast<std::size_t>(kS3[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)])] = i;
  return s3_index(r);
}

std::array<std::int64_t, 2> klein_vec(int k) {
  if (k == 0) return {1, 0};
  if (k == 1) return {0, 1};
  return {1, 1};
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Psl: return "psl";
    case Family::Psu: return "psu";
    case Family::Bn: return "bn";
    case Family::Cn: return "cn";
    case Family::E6: return "e6";
    case Family::E7: return "e7";
    case Family::E6tw: return "2e6";
    case Family::DnOdd: return "dn_odd";
    case Family::DnEven: return "dn_even";
    case Family::D4: return "d4";
    case Family::DnTw: return "2dn";
  }
  return "?";
}

Family parse_family(const std::string& s, int n) {
  if (s == "psl") return Family::Psl;
  if (s == "psu") return Family::Psu;
  if (s == "bn" || s == "bc") return Family::Bn;
  if (s == "cn") return Family::Cn;
  if (s == "e6") return Family::E6;
  if (s == "e7") return Family::E7;
  if (s == "2e6") return Family::E6tw;
  if (s == "2dn") return Family::DnTw;
  if (s == "d4") return Family::D4;
  if (s == "dn" || s == "dn_odd" || s == "dn_even") {
    Family f = (n % 2) ? Family::DnOdd : (n == 4 ? Family::D4 : Family::DnEven);
    if (s == "dn_odd" && f != Family::DnOdd) throw std::invalid_argument("dn_odd needs odd n");
    if (s == "dn_even" && f == Family::DnOdd) throw std::invalid_argument("dn_even needs even n");
    return f;
  }
  throw std::invalid_argument("unsupported family: " + s);
}

bool family_fixed_rank(Family f) {
  return f == Family::E6 || f == Family::E7 || f == Family::E6tw || f == Family::D4;
}

int family_min_n(Family f) {
  switch (f) {
    case Family::Psl: return 2;
    case Family::Psu: return 3;
    case Family::Bn:
    case Family::Cn: return 2;
    case Family::E6:
    case Family::E6tw: return 6;
    case Family::E7: return 7;
    case Family::DnOdd: return 3;
    case Family::DnEven: return 4;
    case Family::D4: return 4;
    case Family::DnTw: return 4;
  }
  return 2;
}

OutModel out_model(Family fam, int n, std::int64_t q) {
  std::int64_t p = 0, m = 0;
  if (!prime_power(q, p, m)) throw std::invalid_argument("q is not a prime power");
  if (fam == Family::DnEven && n == 4) fam = Family::D4;
  if (family_fixed_rank(fam)) {
    int want = fam == Family::E7 ? 7 : (fam == Family::D4 ? 4 : 6);
    if (n != 0 && n != want)
      throw std::invalid_argument(family_name(fam) + " has rank " + std::to_string(want));
    n = want;
  }
  if (n < family_min_n(fam))
    throw std::invalid_argument(family_name(fam) + ": n too small");
  if (fam == Family::DnOdd && n % 2 == 0) throw std::invalid_argument("dn_odd needs odd n");
  if (fam == Family::DnEven && n % 2 == 1) throw std::invalid_argument("dn_even needs even n");

  OutModel om;
  om.family = fam;
  om.n = n;
  om.q = q;
  om.p = p;
  om.m = m;
  om.phi_order = m;
  auto qn_mod = [&](std::int64_t sign, std::int64_t modulus) {
    // (q^n + sign) mod modulus, sign in {-1, +1}
    return mod(powmod(q, n, modulus) + sign, modulus);
  };
  switch (fam) {
    case Family::Psl:
      om.d = gcd(n, q - 1);
      om.na = om.d;
      om.phi_mult = true;
      om.gsize = n >= 3 ? 2 : 1;
      break;
    case Family::Psu:
      om.d = gcd(n, q + 1);
      om.na = om.d;
      om.phi_mult = true;
      om.phi_order = 2 * m;
      break;
    case Family::Bn:
    case Family::Cn:
      om.d = gcd(2, q - 1);
      om.na = om.d;
      // B2 in characteristic 2: the exceptional graph map squares to phi.
      if (n == 2 && p == 2) om.phi_order = 2 * m;
      break;
    case Family::E7:
      om.d = gcd(2, q - 1);
      om.na = om.d;
      break;
    case Family::E6:
      om.d = gcd(3, q - 1);
      om.na = om.d;
      om.phi_mult = true;
      om.gsize = 2;
      break;
    case Family::E6tw:
      om.d = gcd(3, q + 1);
      om.na = om.d;
      om.phi_mult = true;
      om.phi_order = 2 * m;
      break;
    case Family::DnOdd:
      om.d = gcd(4, qn_mod(-1, 4) == 0 ? 4 : qn_mod(-1, 4));
      om.na = om.d;
      om.phi_mult = true;
      om.gsize = 2;
      break;
    case Family::DnEven:
    case Family::D4:
      om.d = gcd(4, qn_mod(-1, 4) == 0 ? 4 : qn_mod(-1, 4));
      if (p != 2) {
        om.na = 2;
        om.nb = 2;
      }
      om.gsize = fam == Family::D4 ? 6 : 2;
      break;
    case Family::DnTw:
      om.d = gcd(4, qn_mod(1, 4) == 0 ? 4 : qn_mod(1, 4));
      om.na = om.d;
      om.phi_mult = true;
      om.phi_order = 2 * m;
      break;
  }
  return om;
}

std::array<std::int64_t, 2> OutModel::act(std::int64_t f, int g,
                                          std::array<std::int64_t, 2> v) const {
  if (!klein()) {
    std::int64_t x = v[0];
    if (phi_mult && na > 1) x = x * powmod(p, mod(f, phi_order), na);
    if (gsize == 2 && g == 1) x = -x;
    return {mod(x, na), 0};
  }
  if (g == 0) return v;
  if (gsize == 2) return {v[1], v[0]};
  const auto& perm = kS3[static_cast<std::size_t>(g)];
  auto a = klein_vec(perm[0]), b = klein_vec(perm[1]);
  return {mod(v[0] * a[0] + v[1] * b[0], 2), mod(v[0] * a[1] + v[1] * b[1], 2)};
}

OutElement OutModel::reduce(OutElement a) const {
  a.f = mod(a.f, phi_order);
  a.g = static_cast<int>(mod(a.g, gsize));
  a.v = {mod(a.v[0], na), mod(a.v[1], nb)};
  return a;
}

OutElement OutModel::mul(const OutElement& a, const OutElement& b) const {
  OutElement r;
  r.f = mod(a.f + b.f, phi_order);
  r.g = gsize == 6 ? s3_mul(a.g, b.g) : (a.g + b.g) % std::max(gsize, 1);
  auto av = act(b.f, b.g, a.v);
  r.v = {mod(av[0] + b.v[0], na), mod(av[1] + b.v[1], nb)};
  return r;
}

OutElement OutModel::inv(const OutElement& a) const {
  OutElement r;
  r.f = mod(-a.f, phi_order);
  r.g = gsize == 6 ? s3_inv(a.g) : a.g;
  auto w = act(r.f, r.g, {-a.v[0], -a.v[1]});
  r.v = {mod(w[0], na), mod(w[1], nb)};
  return r;
}

OutElement OutModel::pow(const OutElement& a, std::int64_t k) const {
  OutElement base = k < 0 ? inv(a) : a;
  std::int64_t e = k < 0 ? -k : k;
  OutElement r = identity();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

OutElement OutModel::conj(const OutElement& a, const OutElement& x) const {
  return mul(mul(inv(x), a), x);
}

bool OutModel::commute(const OutElement& a, const OutElement& b) const {
  return mul(a, b) == mul(b, a);
}

std::int64_t OutModel::order(const OutElement& a) const {
  OutElement x = a;
  std::int64_t k = 1;
  while (x != identity()) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::int64_t OutModel::index(const OutElement& a) const {
  return ((a.f * gsize + a.g) * na + a.v[0]) * nb + a.v[1];
}

OutElement OutModel::element(std::int64_t idx) const {
  OutElement a;
  a.v[1] = idx % nb;
  idx /= nb;
  a.v[0] = idx % na;
  idx /= na;
  a.g = static_cast<int>(idx % gsize);
  a.f = idx / gsize;
  return a;
}

OutElement OutModel::delta(int which) const {
  if (!klein()) {
    if (which != 1) throw std::invalid_argument("delta index needs the Klein diagonal part");
    return reduce({0, 0, {1, 0}});
  }
  if (which < 1 || which > 3) throw std::invalid_argument("delta index must be 1..3");
  auto v = klein_vec(which - 1);
  return {0, 0, v};
}

OutElement OutModel::graph() const {
  if (gsize == 1) throw std::invalid_argument("model has no graph automorphism");
  return {0, gsize == 6 ? kTau : 1, {0, 0}};
}

OutElement OutModel::triality() const {
  if (gsize != 6) throw std::invalid_argument("triality exists only for d4");
  return {0, kRho, {0, 0}};
}

std::string OutModel::name(const OutElement& a) const {
  std::vector<std::string> parts;
  if (a.f) parts.push_back(a.f == 1 ? "f" : "f^" + std::to_string(a.f));
  if (a.g) {
    if (gsize == 2) {
      parts.push_back("g");
    } else {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) {
          int x = 0;
          for (int k = 0; k < i; ++k) x = s3_mul(x, kRho);
          if (j) x = s3_mul(x, kTau);
          if (x == a.g) {
            if (i) parts.push_back(i == 1 ? "r" : "r^2");
            if (j) parts.push_back("g");
          }
        }
    }
  }
  if (klein()) {
    if (a.v[0] || a.v[1]) {
      int k = (a.v[0] && a.v[1]) ? 3 : (a.v[0] ? 1 : 2);
      parts.push_back("d" + std::to_string(k));
    }
  } else if (a.v[0]) {
    parts.push_back(a.v[0] == 1 ? "d" : "d^" + std::to_string(a.v[0]));
  }
  if (parts.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
  return s;
}

std::string OutModel::presentation() const {
  std::ostringstream os;
  if (klein()) {
    os << "<d1, d2> = (Z/2)^2, d3 = d1*d2";
  } else if (na > 1) {
    os << "<d> = Z/" << na;
  } else {
    os << "<d> = 1";
  }
  os << "; |f| = " << phi_order;
  if (na > 1 && !klein())
    os << ", d^f = d^" << (phi_mult ? mod(p, na) : 1);
  if (gsize == 2) {
    os << "; |g| = 2, [f, g] = 1";
    if (na > 1) os << (klein() ? ", d1^g = d2" : ", d^g = d^-1");
  } else if (gsize == 6) {
    os << "; <g, r> = S3 with g: d1<->d2, r: d1->d2->d3->d1, [f, g] = [f, r] = 1";
  }
  return os.str();
}

bool aut_splits(Family fam, int n, std::int64_t q) {
  std::int64_t p = 0, m = 0;
  if (!prime_power(q, p, m)) throw std::invalid_argument("q is not a prime power");
  auto cond = [&](std::int64_t num_mod_dg, std::int64_t d) {
    // gcd(num/d, d, m) given num mod (d*g), g = gcd(d, m)
    std::int64_t g = gcd(d, m);
    std::int64_t x = num_mod_dg / d;
    return gcd(x, g) == 1;
  };
  switch (fam) {
    case Family::Psl:
    case Family::Bn:
    case Family::Cn:
    case Family::E6:
    case Family::E7: {
      OutModel om = out_model(fam, n, q);
      std::int64_t d = om.d, g = gcd(d, m);
      return cond(mod(q - 1, d * g), d);
    }
    case Family::DnOdd:
    case Family::DnEven:
    case Family::D4: {
      OutModel om = out_model(fam, n, q);
      std::int64_t d = om.d, g = gcd(d, m);
      return cond(mod(powmod(q, om.n, d * g) - 1, d * g), d);
    }
    case Family::Psu:
    case Family::E6tw: {
      OutModel om = out_model(fam, n, q);
      std::int64_t d = om.d, g = gcd(d, m);
      return cond(mod(q + 1, d * g), d);
    }
    case Family::DnTw:
      return n % 2 == 1 || p == 2;
  }
  return true;
}

namespace {

struct Table {
  std::int64_t size;
  std::vector<std::int32_t> mul;
  std::int32_t at(std::int64_t a, std::int64_t b) const {
    return mul[static_cast<std::size_t>(a * size + b)];
  }
};

Table make_table(const OutModel& om) {
  Table t{om.size(), {}};
  t.mul.resize(static_cast<std::size_t>(t.size * t.size));
  std::vector<OutElement> el;
  for (std::int64_t i = 0; i < t.size; ++i) el.push_back(om.element(i));
  for (std::int64_t i = 0; i < t.size; ++i)
    for (std::int64_t j = 0; j < t.size; ++j)
      t.mul[static_cast<std::size_t>(i * t.size + j)] = static_cast<std::int32_t>(
          om.index(om.mul(el[static_cast<std::size_t>(i)], el[static_cast<std::size_t>(j)])));
  return t;
}

std::vector<std::int64_t> closure_idx(const Table& t, const std::vector<std::int64_t>& gens) {
  std::vector<char> in(static_cast<std::size_t>(t.size), 0);
  std::vector<std::int64_t> list{0};
  in[0] = 1;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (auto g : gens) {
      auto x = t.at(list[i], g);
      if (!in[static_cast<std::size_t>(x)]) {
        in[static_cast<std::size_t>(x)] = 1;
        list.push_back(x);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

std::vector<std::int64_t> greedy_idx(const Table& t, const std::vector<std::int64_t>& elems) {
  std::vector<std::int64_t> gens;
  std::vector<std::int64_t> cur{0};
  for (auto x : elems) {
    if (std::binary_search(cur.begin(), cur.end(), x)) continue;
    gens.push_back(x);
    cur = closure_idx(t, gens);
    if (cur.size() == elems.size()) break;
  }
  return gens;
}

std::vector<AbelianT> abelian_lattice(const OutModel& om, std::int64_t limit, bool only_max) {
  if (om.size() > limit)
    throw std::invalid_argument("Out model too large for exhaustive enumeration");
  Table t = make_table(om);
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> queue{{0}};
  seen.insert({0});
  std::vector<AbelianT> out;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto S = queue[qi];
    auto gens = greedy_idx(t, S);
    bool maximal = true;
    for (std::int64_t x = 0; x < t.size; ++x) {
      if (std::binary_search(S.begin(), S.end(), x)) continue;
      bool central = true;
      for (auto g : gens)
        if (t.at(x, g) != t.at(g, x)) {
          central = false;
          break;
        }
      if (!central) continue;
      maximal = false;
      auto g2 = gens;
      g2.push_back(x);
      auto S2 = closure_idx(t, g2);
      if (seen.insert(S2).second) queue.push_back(std::move(S2));
    }
    if (maximal || !only_max) {
      AbelianT a;
      a.elements = S;
      a.maximal = maximal;
      for (auto g : gens) a.gens.push_back(om.element(g));
      out.push_back(std::move(a));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AbelianT& a, const AbelianT& b) { return a.elements < b.elements; });
  return out;
}

}  // namespace

std::vector<std::int64_t> subgroup_closure(const OutModel& om,
                                           const std::vector<OutElement>& gens) {
  std::set<OutElement> in{om.identity()};
  std::vector<OutElement> list{om.identity()};
  for (std::size_t i = 0; i < list.size(); ++i)
    for (const auto& g : gens) {
      auto x = om.mul(list[i], om.reduce(g));
      if (in.insert(x).second) list.push_back(x);
    }
  std::vector<std::int64_t> idx;
  for (const auto& x : list) idx.push_back(om.index(x));
  std::sort(idx.begin(), idx.end());
  return idx;
}

bool is_abelian(const OutModel& om, const std::vector<OutElement>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!om.commute(gens[i], gens[j])) return false;
  return true;
}

std::vector<OutElement> greedy_generators(const OutModel& om,
                                          const std::vector<std::int64_t>& elems) {
  std::vector<OutElement> gens;
  std::vector<std::int64_t> cur{0};
  for (auto x : elems) {
    if (std::binary_search(cur.begin(), cur.end(), x)) continue;
    gens.push_back(om.element(x));
    cur = subgroup_closure(om, gens);
    if (cur.size() == elems.size()) break;
  }
  return gens;
}

AbelianT make_abelian_t(const OutModel& om, const std::vector<OutElement>& gens) {
  AbelianT t;
  for (const auto& g : gens) t.gens.push_back(om.reduce(g));
  t.elements = subgroup_closure(om, t.gens);
  return t;
}

std::optional<OutElement> cyclic_generator(const OutModel& om, const AbelianT& T) {
  for (auto i : T.elements) {
    auto x = om.element(i);
    if (static_cast<std::size_t>(om.order(x)) == T.elements.size()) return x;
  }
  return std::nullopt;
}

std::vector<AbelianT> enumerate_maximal_abelian(const OutModel& om, std::int64_t limit) {
  return abelian_lattice(om, limit, true);
}

std::vector<AbelianT> enumerate_all_abelian(const OutModel& om, std::int64_t limit) {
  return abelian_lattice(om, limit, false);
}

std::vector<OutElement> parse_generators(const OutModel& om, const std::string& expr) {
  std::vector<OutElement> out;
  std::stringstream ss(expr);
  std::string gen;
  while (std::getline(ss, gen, ',')) {
    OutElement acc = om.identity();
    std::stringstream gs(gen);
    std::string tok;
    bool any = false;
    while (std::getline(gs, tok, '*')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return std::isspace(
                                                                        static_cast<unsigned char>(c)); }),
                tok.end());
      if (tok.empty()) throw std::invalid_argument("empty factor in generator expression");
      std::int64_t e = 1;
      auto caret = tok.find('^');
      std::string base = tok.substr(0, caret);
      if (caret != std::string::npos) {
        std::size_t used = 0;
        std::string es = tok.substr(caret + 1);
        try {
          e = std::stoll(es, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("bad exponent in '" + tok + "'");
        }
        if (used != es.size()) throw std::invalid_argument("bad exponent in '" + tok + "'");
      }
      OutElement x;
      if (base == "1") x = om.identity();
      else if (base == "d") x = om.klein() ? om.delta(1) : om.delta(1);
      else if (base == "d1" || base == "d2" || base == "d3") x = om.delta(base[1] - '0');
      else if (base == "f") x = om.phi();
      else if (base == "g") x = om.graph();
      else if (base == "r") x = om.triality();
      else throw std::invalid_argument("unknown generator letter '" + base + "'");
      acc = om.mul(acc, om.pow(x, e));
      any = true;
    }
    if (!any) throw std::invalid_argument("empty generator");
    out.push_back(acc);
  }
  if (out.empty()) throw std::invalid_argument("empty generator expression");
  return out;
}

OutElement rho_linear(const OutModel& om, const SemilinearWord& w) {
  const FieldSpec& F = w.X.F();
  OutElement r;
  r.f = mod(w.s, om.phi_order);
  r.g = w.eps;
  if (w.eps && om.gsize != 2) throw std::invalid_argument("graph part not in the model");
  std::int64_t e = F.dlog(w.X.det());
  if (om.family == Family::Psu) {
    if (e % (om.q - 1) != 0)
      throw std::invalid_argument("determinant outside the order-(q+1) subgroup");
    e /= (om.q - 1);
  } else if (om.family != Family::Psl) {
    throw std::invalid_argument("rho_linear: not a linear or unitary family");
  }
  r.v = {mod(e, om.na), 0};
  return r;
}

}  // namespace abelsup
