#include "abelsup/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "abelsup/arith.hpp"
#include "abelsup/linear.hpp"
#include "abelsup/ortho.hpp"
#include "abelsup/unitary.hpp"
#include "json.hpp"

namespace abelsup {

using json = nlohmann::json;

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::Matrix: return "matrix";
    case CertKind::Character: return "character";
    case CertKind::Abstract: return "abstract";
  }
  return "abstract";
}

static CertKind cert_kind_from_name(const std::string& s) {
  if (s == "matrix") return CertKind::Matrix;
  if (s == "character") return CertKind::Character;
  if (s == "abstract") return CertKind::Abstract;
  throw std::invalid_argument("unknown certificate kind '" + s + "'");
}

namespace {

bool is_matrix_family(Family f) {
  return f == Family::Psl || f == Family::Psu || f == Family::DnOdd || f == Family::DnEven ||
         f == Family::D4;
}

bool is_orthogonal(Family f) {
  return f == Family::DnOdd || f == Family::DnEven || f == Family::D4;
}

std::int64_t word_field_order(const OutModel& om) {
  return om.family == Family::Psu ? om.q * om.q : om.q;
}

int word_dim(const OutModel& om) { return is_orthogonal(om.family) ? 2 * om.n : om.n; }

OutElement word_rho(const OutModel& om, const SemilinearWord& w) {
  return is_orthogonal(om.family) ? rho_ortho(om, w) : rho_linear(om, w);
}

std::set<std::int64_t> closure_set(const OutModel& om, const std::vector<OutElement>& gens) {
  auto v = subgroup_closure(om, gens);
  return {v.begin(), v.end()};
}

bool conj_inside(const OutModel& om, const std::vector<OutElement>& T, const OutElement& y,
                 const std::set<std::int64_t>& B) {
  for (const auto& t : T)
    if (!B.count(om.index(om.conj(t, y)))) return false;
  return true;
}

SemilinearWord identity_word(const FieldPtr& f, int dim) {
  return {0, 0, GraphKind::None, Mat::identity(f, dim)};
}

/// A word over the base for every target, found by search over products of base words.
std::vector<SemilinearWord> restrict_words(const OutModel& om,
                                           const std::vector<SemilinearWord>& base,
                                           const std::vector<OutElement>& targets,
                                           const FieldPtr& f, int dim) {
  std::map<std::int64_t, SemilinearWord> found;
  std::queue<std::int64_t> todo;
  found.emplace(0, identity_word(f, dim));
  todo.push(0);
  while (!todo.empty()) {
    SemilinearWord u = found.at(todo.front());
    todo.pop();
    for (const auto& g : base) {
      SemilinearWord c = compose(u, g);
      auto idx = om.index(word_rho(om, c));
      if (found.emplace(idx, c).second) todo.push(idx);
    }
  }
  std::vector<SemilinearWord> out;
  for (const auto& t : targets) {
    auto it = found.find(om.index(om.reduce(t)));
    if (it == found.end()) throw std::logic_error("restriction: target outside the base");
    out.push_back(it->second);
  }
  return out;
}

struct Data {
  CertKind kind = CertKind::Abstract;
  std::string route;
  bool partial = false;
  std::vector<OutElement> base;
  OutElement conjugator;
  std::vector<std::pair<std::string, std::int64_t>> params;
  std::vector<SemilinearWord> words;
  std::optional<CharCertificate> character;
};

struct WordBase {
  std::string route;
  std::vector<SemilinearWord> words;
  std::vector<OutElement> gens;  // rho images
  std::set<std::int64_t> elems;
  std::vector<std::pair<std::string, std::int64_t>> params;
};

WordBase make_word_base(const OutModel& om, std::string route, std::vector<SemilinearWord> words,
                        std::vector<std::pair<std::string, std::int64_t>> params = {}) {
  WordBase b;
  b.route = std::move(route);
  b.words = std::move(words);
  b.params = std::move(params);
  for (const auto& w : b.words) b.gens.push_back(om.reduce(word_rho(om, w)));
  b.elems = closure_set(om, b.gens);
  return b;
}

// ---- orthogonal lifts -------------------------------------------------------

/// Diagonal CO° elements indexed by their class, found among torus generators.
std::map<std::array<std::int64_t, 2>, Mat> class_table(const OutModel& om,
                                                      const SimilitudeContext& ctx) {
  std::map<std::array<std::int64_t, 2>, Mat> tab;
  const int N = 2 * om.n;
  tab.emplace(std::array<std::int64_t, 2>{0, 0}, Mat::identity(ctx.F, N));
  if (om.na * om.nb == 1) return tab;
  std::vector<Mat> gens{ctx.o_mu(ctx.F->omega())};
  for (int i = 0; i < om.n; ++i) {
    std::vector<std::int64_t> e(N, 0);
    e[i] = 1;
    e[om.n + i] = -1;
    gens.push_back(Mat::diag_exp(ctx.F, e));
  }
  std::queue<Mat> todo;
  todo.push(Mat::identity(ctx.F, N));
  while (!todo.empty()) {
    Mat u = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Mat c = u * g;
      if (tab.emplace(similitude_class(ctx, c), c).second) todo.push(c);
    }
  }
  return tab;
}

struct OrthoLifter {
  const OutModel& om;
  SimilitudeContext ctx;
  std::map<std::array<std::int64_t, 2>, Mat> tab;

  std::optional<SemilinearWord> lift(const OutElement& x) const {
    const OutElement r = om.reduce(x);
    int eps = 0;
    if (r.g != 0) {
      if (r.g != om.graph().g) return std::nullopt;
      eps = 1;
    }
    for (const auto& [cls, D] : tab) {
      SemilinearWord w{mod(r.f, ctx.F->m()), eps, eps ? GraphKind::Tau : GraphKind::None, D};
      if (om.reduce(rho_ortho(om, w)) == r) return w;
    }
    return std::nullopt;
  }
};

/// The words of T = x conj(T, y) x^{-1}: restriction inside the base, then conjugation
/// by a lift of y^{-1}.
std::optional<std::vector<SemilinearWord>> conjugated_words(
    const OutModel& om, const WordBase& b, const std::vector<OutElement>& T, const OutElement& y,
    const std::function<std::optional<SemilinearWord>(const OutElement&)>& lift,
    const FieldPtr& f, int dim) {
  std::vector<OutElement> inner;
  for (const auto& t : T) inner.push_back(om.conj(t, y));
  auto ws = restrict_words(om, b.words, inner, f, dim);
  if (y == om.identity()) return ws;
  for (const auto& cand : {om.inv(y), y}) {
    auto L = lift(cand);
    if (!L) continue;
    std::vector<SemilinearWord> out;
    bool ok = true;
    for (std::size_t i = 0; i < ws.size() && ok; ++i) {
      out.push_back(conjugate(ws[i], *L));
      ok = om.reduce(word_rho(om, out.back())) == om.reduce(T[i]);
    }
    if (ok) return out;
  }
  return std::nullopt;
}

std::vector<OutElement> graph_field_gens(const OutModel& om) {
  std::vector<OutElement> g{om.phi()};
  if (om.has_graph()) g.push_back(om.graph());
  if (om.family == Family::D4) g.push_back(om.triality());
  return g;
}

std::vector<OutElement> case4_gens(const OutModel& om) {
  return {om.phi(), om.mul(om.triality(), om.delta(2))};
}

bool triality_regime(const OutModel& om, const FieldPtr& f) {
  try {
    auto m = d4_triality_matrices(f);
    auto c = d4_case4_characters(om.q);
    return m.relation && c.xi_extends && c.xi1_is_delta2 && c.xi_rho_invariant;
  } catch (const std::exception&) {
    return false;
  }
}

std::optional<Data> build_ortho(const OutModel& om, const std::vector<OutElement>& T,
                                const AbelianT& at) {
  FieldPtr f = FieldSpec::of_order(om.q);
  const int dim = 2 * om.n;
  OrthoLifter L{om, SimilitudeContext::make(f, om.n), {}};
  if (om.p % 2 == 1 || om.na * om.nb == 1) L.tab = class_table(om, L.ctx);
  auto lift = [&](const OutElement& x) { return L.lift(x); };

  Data d;
  if (auto cyc = cyclic_generator(om, at)) {
    if (auto w = lift(*cyc)) {
      d.kind = CertKind::Matrix;
      d.route = "cyclic-lift";
      d.base = T;
      WordBase b = make_word_base(om, "cyclic-lift", {*w});
      d.words = restrict_words(om, b.words, T, f, dim);
      return d;
    }
    // No matrix lift: inside <phi, rho delta_2> the triality checks say more.
    if (om.family == Family::D4 && triality_regime(om, f) &&
        conj_inside(om, T, om.identity(), closure_set(om, case4_gens(om)))) {
      d.route = "triality-case4";
      d.partial = true;
      d.base = case4_gens(om);
      return d;
    }
    d.route = "cyclic-lift";
    d.base = T;
    return d;
  }

  std::vector<WordBase> bases;
  if (om.p % 2 == 1) {
    try {
      auto cases = om.family == Family::DnOdd ? dn_odd_cases(om, f) : dn_even_cases(om, f);
      for (auto& c : cases) bases.push_back(make_word_base(om, c.sup.route, c.sup.gens, c.sup.params));
    } catch (const std::exception&) {
      // outside the regime of the listed cases
    }
  }
  {
    std::vector<SemilinearWord> gf{{1 % f->m(), 0, GraphKind::None, Mat::identity(f, dim)},
                                   {0, 1, GraphKind::Tau, Mat::identity(f, dim)}};
    bases.push_back(make_word_base(om, "graph-field", gf));
  }

  const std::int64_t N = om.size();
  // Concrete words: conjugators without a triality part.
  for (std::int64_t yi = 0; yi < N; ++yi) {
    const OutElement y = om.element(yi);
    if (!lift(y) || !lift(om.inv(y))) continue;
    for (const auto& b : bases) {
      if (!conj_inside(om, T, y, b.elems)) continue;
      auto ws = conjugated_words(om, b, T, y, lift, f, dim);
      if (!ws) continue;
      d.kind = CertKind::Matrix;
      d.route = b.route;
      d.params = b.params;
      if (yi != 0) d.params.push_back({"conjugated", 1});
      if (closure_set(om, T) != b.elems) d.params.push_back({"restricted", 1});
      d.base = T;
      d.words = *ws;
      return d;
    }
  }
  // Abstract reductions.
  const auto gf_all = closure_set(om, graph_field_gens(om));
  const bool tri = om.family == Family::D4 && triality_regime(om, f);
  const auto c4 = tri ? closure_set(om, case4_gens(om)) : std::set<std::int64_t>{};
  for (std::int64_t yi = 0; yi < N; ++yi) {
    const OutElement y = om.element(yi);
    for (const auto& b : bases) {
      if (!conj_inside(om, T, y, b.elems)) continue;
      d.kind = CertKind::Matrix;
      d.route = b.route;
      d.params = b.params;
      d.base = b.gens;
      d.conjugator = y;
      d.words = b.words;
      return d;
    }
    if (conj_inside(om, T, y, gf_all)) {
      d.route = "graph-field";
      d.base = graph_field_gens(om);
      d.conjugator = y;
      return d;
    }
    if (tri && conj_inside(om, T, y, c4)) {
      d.route = "triality-case4";
      d.partial = true;
      d.base = case4_gens(om);
      d.conjugator = y;
      return d;
    }
  }
  return std::nullopt;
}

// ---- linear and unitary ---------------------------------------------------

std::optional<Data> build_linear(const OutModel& om, const std::vector<OutElement>& T,
                                 const AbelianT& at) {
  const bool unitary = om.family == Family::Psu;
  std::optional<UnitaryContext> uc;
  FieldPtr f;
  if (unitary) {
    uc = UnitaryContext::make(om.q);
    f = uc->F;
  } else {
    f = FieldSpec::of_order(om.q);
  }
  auto run = [&](const AbelianT& t) {
    return unitary ? psu_supplement(om, *uc, t) : psl_supplement(om, f, t);
  };
  Data d;
  d.kind = CertKind::Matrix;
  d.base = T;
  try {
    auto sup = run(at);
    d.route = sup.route;
    d.params = sup.params;
    WordBase b = make_word_base(om, sup.route, sup.gens);
    d.words = restrict_words(om, b.words, T, f, om.n);
    if (b.elems != closure_set(om, T)) throw std::logic_error("construction misses T");
    return d;
  } catch (const std::invalid_argument&) {
    // shape not covered directly; restrict from a maximal subgroup
  }
  std::set<std::int64_t> tset(at.elements.begin(), at.elements.end());
  for (const auto& M : enumerate_maximal_abelian(om)) {
    if (!std::includes(M.elements.begin(), M.elements.end(), tset.begin(), tset.end())) continue;
    try {
      auto sup = run(M);
      WordBase b = make_word_base(om, sup.route, sup.gens);
      d.words = restrict_words(om, b.words, T, f, om.n);
      d.route = sup.route;
      d.params = sup.params;
      d.params.push_back({"restricted", 1});
      return d;
    } catch (const std::invalid_argument&) {
    }
  }
  return std::nullopt;
}

// ---- character families ---------------------------------------------------

std::string char_kind(const OutModel& om) {
  switch (om.family) {
    case Family::Bn: return "bn";
    case Family::Cn: return "cn";
    case Family::E7: return "e7";
    case Family::E6: return om.p % 3 == 1 ? "e6-case1" : "e6-case2";
    case Family::E6tw: return "2e6";
    case Family::DnTw: return "2dn";
    default: return "";
  }
}

/// The subgroup a character certificate of the given kind addresses.
std::vector<OutElement> char_base(const OutModel& om, const std::string& kind) {
  if (kind == "e6-case2") return {om.delta(), om.mul(om.phi(), om.graph())};
  if (kind == "2e6") return {om.delta(), om.pow(om.phi(), 2)};
  return {om.delta(), om.phi()};
}

std::optional<Data> build_character(const OutModel& om, const std::vector<OutElement>& T,
                                    const AbelianT& at) {
  Data d;
  if (cyclic_generator(om, at)) {
    d.route = "cyclic-lift";
    d.base = T;
    return d;
  }
  const std::string kind = char_kind(om);
  std::optional<CharCertificate> cc;
  if (!kind.empty()) {
    try {
      cc = chevalley_supplement(kind, om.n, om.q);
    } catch (const std::exception&) {
    }
  }
  const auto cb = cc ? closure_set(om, char_base(om, kind)) : std::set<std::int64_t>{};
  const auto gf = closure_set(om, graph_field_gens(om));
  for (std::int64_t yi = 0; yi < om.size(); ++yi) {
    const OutElement y = om.element(yi);
    if (cc && conj_inside(om, T, y, cb)) {
      d.kind = CertKind::Character;
      d.route = "character-" + kind;
      d.base = char_base(om, kind);
      d.conjugator = y;
      d.character = cc;
      return d;
    }
    if (conj_inside(om, T, y, gf)) {
      d.route = "graph-field";
      d.base = graph_field_gens(om);
      d.conjugator = y;
      return d;
    }
  }
  return std::nullopt;
}

// ---- serialization ------------------------------------------------------------

json elem_json(const OutElement& e) { return json{{"f", e.f}, {"g", e.g}, {"v", {e.v[0], e.v[1]}}}; }

OutElement elem_from(const json& j) {
  OutElement e;
  e.f = j.at("f").get<std::int64_t>();
  e.g = j.at("g").get<int>();
  const auto& v = j.at("v");
  if (!v.is_array() || v.size() != 2) throw std::invalid_argument("bad element vector");
  e.v = {v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
  return e;
}

json elems_json(const std::vector<OutElement>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back(elem_json(e));
  return a;
}

std::vector<OutElement> elems_from(const json& j) {
  std::vector<OutElement> out;
  for (const auto& e : j) out.push_back(elem_from(e));
  return out;
}

json mat_json(const Mat& X) {
  json rows = json::array();
  for (int i = 0; i < X.n(); ++i) {
    json r = json::array();
    for (int k = 0; k < X.n(); ++k) {
      auto x = X(i, k);
      r.push_back(X.F().is_zero(x) ? std::int64_t{-1} : X.F().dlog(x));
    }
    rows.push_back(r);
  }
  return rows;
}

Mat mat_from(const json& j, const FieldPtr& f) {
  const int n = static_cast<int>(j.size());
  Mat X(f, n);
  for (int i = 0; i < n; ++i) {
    if (j[i].size() != static_cast<std::size_t>(n)) throw std::invalid_argument("matrix not square");
    for (int k = 0; k < n; ++k) {
      auto e = j[i][k].get<std::int64_t>();
      if (e < -1 || e >= f->q() - 1) throw std::invalid_argument("matrix entry out of range");
      X.set(i, k, e < 0 ? f->zero() : f->pow_omega(e));
    }
  }
  return X;
}

json char_json(const QCharacter& c) { return json{{"e", c.e}, {"M", c.M}}; }

QCharacter char_from(const json& j) {
  QCharacter c;
  c.e = j.at("e").get<std::vector<std::int64_t>>();
  c.M = j.at("M").get<std::int64_t>();
  return c;
}

json to_json(const Certificate& c, bool with_digest) {
  json j;
  j["schema"] = "abelsup-certificate";
  j["version"] = c.version;
  j["family"] = c.family;
  j["n"] = c.n;
  j["q"] = c.q;
  j["T"] = elems_json(c.T);
  j["route"] = c.route;
  j["kind"] = cert_kind_name(c.kind);
  j["partial"] = c.partial;
  j["base"] = elems_json(c.base);
  j["conjugator"] = elem_json(c.conjugator);
  json params = json::array();
  for (const auto& [k, v] : c.params) params.push_back(json{{"name", k}, {"value", v}});
  j["params"] = params;
  if (c.kind == CertKind::Matrix) {
    j["field_order"] = c.field_order;
    j["center_order"] = c.center_order;
    json gens = json::array();
    for (const auto& w : c.generators)
      gens.push_back(
          json{{"s", w.s}, {"eps", w.eps}, {"graph", graph_kind_name(w.graph)}, {"X", mat_json(w.X)}});
    j["generators"] = gens;
    json comm = json::array();
    for (const auto& e : c.commutators)
      comm.push_back(json{{"i", e.i}, {"j", e.j}, {"scalar", e.scalar ? json(*e.scalar) : json()}});
    j["commutators"] = comm;
    j["rho"] = elems_json(c.rho);
  }
  if (c.character) {
    const auto& h = *c.character;
    j["character"] = json{{"kind", h.kind},
                          {"type", std::string(1, h.type)},
                          {"n", h.n},
                          {"q", h.q},
                          {"p", h.p},
                          {"M", h.M},
                          {"order", h.order},
                          {"field_power", h.field_power},
                          {"graph", h.graph},
                          {"twisted", h.twisted},
                          {"chi", char_json(h.chi)},
                          {"chi_prime", char_json(h.chi_prime)}};
  }
  json checks = json::array();
  for (const auto& e : c.checks) checks.push_back(json{{"name", e.name}, {"ok", e.ok}});
  j["checks"] = checks;
  j["verdict"] = c.pass ? "PASS" : "FAIL";
  j["reason"] = c.reason;
  if (with_digest) j["digest"] = c.digest;
  return j;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

// ---- verification -----------------------------------------------------------

void verify_certificate(Certificate& c) {
  c.commutators.clear();
  c.rho.clear();
  c.checks.clear();
  auto check = [&](const std::string& name, bool ok) {
    c.checks.push_back({name, ok});
    return ok;
  };
  try {
    check("version", c.version == kCertificateVersion);
    const Family fam = parse_family(c.family, c.n);
    const OutModel om = out_model(fam, c.n, c.q);
    check("model", om.n == c.n && family_name(fam) == c.family);

    auto normal = [&](const std::vector<OutElement>& es) {
      return std::all_of(es.begin(), es.end(), [&](const OutElement& e) { return om.reduce(e) == e; });
    };
    check("elements-normal", normal(c.T) && normal(c.base) && om.reduce(c.conjugator) == c.conjugator);
    check("T-abelian", is_abelian(om, c.T));
    const auto B = closure_set(om, c.base);
    check("T-covered", conj_inside(om, c.T, c.conjugator, B));
    const bool direct = c.conjugator == om.identity() && closure_set(om, c.T) == B;

    if (c.kind == CertKind::Matrix) {
      check("family-has-matrices", is_matrix_family(fam));
      const std::int64_t fo = word_field_order(om);
      const int dim = word_dim(om);
      check("field", c.field_order == fo);
      check("center", c.center_order == 0);
      FieldPtr f = FieldSpec::of_order(fo);
      std::optional<SimilitudeContext> sc;
      if (is_orthogonal(fam)) sc = SimilitudeContext::make(f, om.n);
      bool wf = !c.generators.empty() || B.size() == 1;
      for (const auto& w : c.generators) {
        wf = wf && w.X.n() == dim && w.X.F().q() == fo && w.s >= 0 && w.s < f->m() &&
             (w.eps == 0 || w.eps == 1);
        if (!wf) break;
        wf = !w.X.F().is_zero(w.X.det());
        if (fam == Family::Psl)
          wf = wf && (w.eps == 0 || (om.gsize == 2 && w.graph == GraphKind::InverseTranspose)) &&
               w.graph != GraphKind::Tau;
        if (fam == Family::Psu) {
          wf = wf && w.eps == 0 && w.graph == GraphKind::None;
          wf = wf && (w.X.frob(om.m).transpose() * w.X).scalar_value().has_value();
        }
        if (sc) {
          wf = wf && w.graph != GraphKind::InverseTranspose && (w.eps == 0 || w.graph == GraphKind::Tau);
          wf = wf && in_co_circ(*sc, w.X);
        }
      }
      if (check("generators-well-formed", wf)) {
        bool central = true;
        const CenterSpec z{c.center_order};
        for (int i = 0; i < static_cast<int>(c.generators.size()); ++i)
          for (int j = i + 1; j < static_cast<int>(c.generators.size()); ++j) {
            auto s = word_commutator_central(c.generators[i], c.generators[j], z);
            c.commutators.push_back({i, j, s ? std::optional<std::int64_t>(f->dlog(*s)) : std::nullopt});
            central = central && s.has_value();
          }
        check("commutators-central", central);
        for (const auto& w : c.generators) c.rho.push_back(om.reduce(word_rho(om, w)));
        check("rho-generates-base", closure_set(om, c.rho) == B);
      }
    } else if (c.kind == CertKind::Character) {
      const std::string kind = char_kind(om);
      const bool have = c.character.has_value();
      check("character-present", have);
      if (have) {
        const auto& h = *c.character;
        check("character-kind", !kind.empty() && h.kind == kind);
        check("character-cell", h.q == c.q && (family_fixed_rank(fam) || h.n == c.n));
        check("character-base", B == closure_set(om, char_base(om, h.kind)));
        check("character-equation", verify_char_certificate(h).empty());
      }
    } else if (c.route == "cyclic-lift") {
      bool cyc = false;
      const auto Ts = closure_set(om, c.T);
      for (auto i : Ts) cyc = cyc || static_cast<std::size_t>(om.order(om.element(i))) == Ts.size();
      check("T-cyclic", cyc && direct);
    } else if (c.route == "split-by-classification") {
      check("aut-splits", aut_splits(fam, om.n, om.q) && direct);
    } else if (c.route == "graph-field") {
      bool inside = true;
      for (auto i : B) inside = inside && om.element(i).v == std::array<std::int64_t, 2>{0, 0};
      check("base-graph-field", inside);
    } else if (c.route == "triality-case4") {
      check("family-d4", fam == Family::D4);
      if (fam == Family::D4) {
        check("case4-base", B == closure_set(om, case4_gens(om)));
        auto m = d4_triality_matrices(FieldSpec::of_order(om.q));
        check("co8-relation", m.relation);
        check("co8-classes", m.a1_class == std::array<std::int64_t, 2>{0, 1} &&
                                  m.b_class == std::array<std::int64_t, 2>{0, 0});
        auto l = d4_case4_characters(om.q);
        check("lattice-xi-extends", l.xi_extends);
        check("lattice-xi1-delta2", l.xi1_is_delta2);
        check("lattice-rho-invariant", l.xi_rho_invariant);
      }
    } else {
      check("known-route", false);
    }
  } catch (const std::exception& e) {
    check(std::string("exception: ") + e.what(), false);
  }
  c.pass = !c.checks.empty();
  c.reason.clear();
  for (const auto& e : c.checks)
    if (!e.ok) {
      c.pass = false;
      c.reason = e.name;
      break;
    }
}

std::string certificate_digest(const Certificate& c) { return fnv1a(to_json(c, false).dump()); }

std::string certificate_to_json(const Certificate& c, int indent) {
  return to_json(c, true).dump(indent);
}

Certificate certificate_from_json(const std::string& text) {
  Certificate c;
  try {
    json j = json::parse(text);
    if (j.at("schema").get<std::string>() != "abelsup-certificate")
      throw std::invalid_argument("not a certificate");
    c.version = j.at("version").get<int>();
    c.family = j.at("family").get<std::string>();
    c.n = j.at("n").get<int>();
    c.q = j.at("q").get<std::int64_t>();
    c.T = elems_from(j.at("T"));
    c.route = j.at("route").get<std::string>();
    c.kind = cert_kind_from_name(j.at("kind").get<std::string>());
    c.partial = j.at("partial").get<bool>();
    c.base = elems_from(j.at("base"));
    c.conjugator = elem_from(j.at("conjugator"));
    for (const auto& p : j.at("params"))
      c.params.push_back({p.at("name").get<std::string>(), p.at("value").get<std::int64_t>()});
    if (c.kind == CertKind::Matrix) {
      c.field_order = j.at("field_order").get<std::int64_t>();
      c.center_order = j.at("center_order").get<std::int64_t>();
      std::int64_t p = 0, m = 0;
      if (!prime_power(c.field_order, p, m)) throw std::invalid_argument("bad field order");
      FieldPtr f = FieldSpec::of_order(c.field_order);
      for (const auto& g : j.at("generators")) {
        SemilinearWord w;
        w.s = g.at("s").get<std::int64_t>();
        w.eps = g.at("eps").get<int>();
        w.graph = graph_kind_from_name(g.at("graph").get<std::string>());
        w.X = mat_from(g.at("X"), f);
        c.generators.push_back(std::move(w));
      }
      for (const auto& e : j.at("commutators")) {
        CommutatorEntry ce{e.at("i").get<int>(), e.at("j").get<int>(), std::nullopt};
        if (!e.at("scalar").is_null()) ce.scalar = e.at("scalar").get<std::int64_t>();
        c.commutators.push_back(ce);
      }
      c.rho = elems_from(j.at("rho"));
    }
    if (j.contains("character")) {
      const auto& h = j.at("character");
      CharCertificate cc;
      cc.kind = h.at("kind").get<std::string>();
      auto t = h.at("type").get<std::string>();
      if (t.size() != 1) throw std::invalid_argument("bad root type");
      cc.type = t[0];
      cc.n = h.at("n").get<int>();
      cc.q = h.at("q").get<std::int64_t>();
      cc.p = h.at("p").get<std::int64_t>();
      cc.M = h.at("M").get<std::int64_t>();
      cc.order = h.at("order").get<std::vector<int>>();
      cc.field_power = h.at("field_power").get<std::int64_t>();
      cc.graph = h.at("graph").get<bool>();
      cc.twisted = h.at("twisted").get<bool>();
      cc.chi = char_from(h.at("chi"));
      cc.chi_prime = char_from(h.at("chi_prime"));
      c.character = cc;
    }
    for (const auto& e : j.at("checks"))
      c.checks.push_back({e.at("name").get<std::string>(), e.at("ok").get<bool>()});
    auto v = j.at("verdict").get<std::string>();
    if (v != "PASS" && v != "FAIL") throw std::invalid_argument("bad verdict");
    c.pass = v == "PASS";
    c.reason = j.at("reason").get<std::string>();
    c.digest = j.at("digest").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("certificate json: ") + e.what());
  }
  return c;
}

ReplayResult replay_certificate(const std::string& json_text) {
  ReplayResult r;
  Certificate c;
  try {
    c = certificate_from_json(json_text);
  } catch (const std::exception& e) {
    r.reason = std::string("parse: ") + e.what();
    return r;
  }
  const Certificate recorded = c;
  if (certificate_digest(recorded) != recorded.digest) {
    r.reason = "digest mismatch";
    r.recomputed = c;
    return r;
  }
  verify_certificate(c);
  c.digest = certificate_digest(c);
  r.recomputed = c;
  if (!c.pass) {
    r.reason = "verification: " + c.reason;
  } else if (!recorded.pass) {
    r.reason = "recorded verdict is FAIL";
  } else if (c.commutators != recorded.commutators || c.rho != recorded.rho ||
             c.checks != recorded.checks) {
    r.reason = "transcript mismatch";
  } else if (certificate_to_json(c) != certificate_to_json(recorded)) {
    r.reason = "serialization mismatch";
  } else {
    r.pass = true;
  }
  return r;
}

Certificate mutate_certificate(const Certificate& c, std::uint64_t seed) {
  Certificate m = c;
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  if (!m.generators.empty()) {
    auto& w = m.generators[pick(m.generators.size())];
    const int i = static_cast<int>(pick(static_cast<std::size_t>(w.X.n())));
    const int k = static_cast<int>(pick(static_cast<std::size_t>(w.X.n())));
    const FieldSpec& F = w.X.F();
    const FieldElement old = w.X(i, k);
    FieldElement nw = old;
    if (F.q() == 2 || (!F.is_zero(old) && rng() % 4 == 0)) {
      nw = F.is_zero(old) ? F.one() : F.zero();
    } else {
      while (nw == old) nw = F.pow_omega(static_cast<std::int64_t>(rng() % (F.q() - 1)));
    }
    w.X.set(i, k, nw);
  } else if (m.character) {
    auto& ch = rng() % 2 ? m.character->chi : m.character->chi_prime;
    if (!ch.e.empty() && ch.M > 1) {
      auto& e = ch.e[pick(ch.e.size())];
      e = mod(e + 1 + static_cast<std::int64_t>(rng() % (ch.M - 1)), ch.M);
    } else {
      m.character->q += 1;
    }
  } else {
    m.conjugator.f += 1;
  }
  return m;
}

Certificate certify_supplement(const std::string& family, int n, std::int64_t q,
                               const std::vector<OutElement>& gens) {
  const Family fam = parse_family(family, n);
  const OutModel om = out_model(fam, n, q);
  std::vector<OutElement> T;
  for (const auto& g : gens) T.push_back(om.reduce(g));
  if (!is_abelian(om, T)) throw std::invalid_argument("certify: T is not abelian");
  const AbelianT at = make_abelian_t(om, T);

  std::optional<Data> d;
  if (fam == Family::Psl || fam == Family::Psu)
    d = build_linear(om, T, at);
  else if (is_orthogonal(fam))
    d = build_ortho(om, T, at);
  else
    d = build_character(om, T, at);
  if (!d) {
    if (!aut_splits(fam, om.n, q))
      throw std::invalid_argument("certify: no route for T in " + family_name(fam) + "(n=" +
                                  std::to_string(om.n) + ", q=" + std::to_string(q) + ")");
    d = Data{};
    d->route = "split-by-classification";
    d->base = T;
  }

  Certificate c;
  c.family = family_name(fam);
  c.n = om.n;
  c.q = q;
  c.T = T;
  c.route = d->route;
  c.kind = d->kind;
  c.partial = d->partial;
  c.base = d->base;
  c.conjugator = om.reduce(d->conjugator);
  c.params = d->params;
  if (c.kind == CertKind::Matrix) {
    c.field_order = word_field_order(om);
    c.generators = d->words;
    for (auto& w : c.generators) w.s = mod(w.s, w.X.F().m());
  }
  c.character = d->character;
  verify_certificate(c);
  c.digest = certificate_digest(c);
  return c;
}

// ---- sweep --------------------------------------------------------------------

namespace {

struct Cell {
  std::string family;
  int n = 0;
  std::int64_t q = 0;
};

std::vector<SweepEntry> run_cell(const Cell& cell, std::int64_t limit) {
  std::vector<SweepEntry> out;
  SweepEntry base;
  base.family = cell.family;
  base.n = cell.n;
  base.q = cell.q;
  try {
    const Family fam = parse_family(cell.family, cell.n);
    const OutModel om = out_model(fam, cell.n, cell.q);
    base.family = family_name(fam);
    base.n = om.n;
    auto Ts = enumerate_maximal_abelian(om, limit);
    for (std::size_t i = 0; i < Ts.size(); ++i) {
      SweepEntry e = base;
      e.t_index = static_cast<int>(i);
      for (std::size_t k = 0; k < Ts[i].gens.size(); ++k)
        e.t_names += (k ? "," : "") + om.name(Ts[i].gens[k]);
      if (e.t_names.empty()) e.t_names = "1";
      try {
        auto c = certify_supplement(base.family, om.n, cell.q, Ts[i].gens);
        e.route = c.route;
        e.verdict = c.pass ? "PASS" : "FAIL";
        e.partial = c.partial;
        e.reason = c.reason;
        e.digest = c.digest;
      } catch (const std::exception& ex) {
        e.verdict = "ERROR";
        e.reason = ex.what();
      }
      out.push_back(std::move(e));
    }
  } catch (const std::exception& ex) {
    base.verdict = "ERROR";
    base.reason = ex.what();
    out.push_back(base);
  }
  return out;
}

}  // namespace

SweepReport sweep(const SweepSpec& spec) {
  std::vector<Cell> cells;
  for (const auto& fam_s : spec.families) {
    if (spec.ns.empty()) continue;
    bool fixed_done = false;
    for (int n : spec.ns) {
      Family fam;
      try {
        fam = parse_family(fam_s, n);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (family_fixed_rank(fam) && fam != Family::D4) {
        if (fixed_done) continue;
        fixed_done = true;
        n = 0;
      } else if (n < family_min_n(fam)) {
        continue;
      }
      for (auto q : spec.qs) cells.push_back({fam_s, n, q});
    }
  }
  std::vector<std::vector<SweepEntry>> slots(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) slots[i] = run_cell(cells[i], spec.out_limit);
  };
  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  SweepReport r;
  r.cells = static_cast<std::int64_t>(cells.size());
  for (auto& s : slots)
    for (auto& e : s) {
      if (e.verdict == "PASS") ++r.pass;
      else if (e.verdict == "FAIL") ++r.fail;
      else ++r.error;
      if (e.partial) ++r.partial;
      r.entries.push_back(std::move(e));
    }
  return r;
}

std::string sweep_report_json(const SweepReport& r, int indent) {
  json j;
  j["schema"] = "abelsup-sweep";
  j["version"] = kCertificateVersion;
  j["cells"] = r.cells;
  j["counts"] = json{{"pass", r.pass}, {"fail", r.fail}, {"error", r.error}, {"partial", r.partial}};
  json es = json::array();
  for (const auto& e : r.entries)
    es.push_back(json{{"family", e.family},
                      {"n", e.n},
                      {"q", e.q},
                      {"t_index", e.t_index},
                      {"T", e.t_names},
                      {"route", e.route},
                      {"verdict", e.verdict},
                      {"partial", e.partial},
                      {"reason", e.reason},
                      {"digest", e.digest}});
  j["entries"] = es;
  return j.dump(indent);
}

}  // namespace abelsup
