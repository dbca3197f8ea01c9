#pragma once

#include <array>
#include <optional>
#include <cstdint>
#include <string>
#include <vector>

#include "abelsup/semimat.hpp"

namespace abelsup {

enum class Family { Psl, Psu, Bn, Cn, E6, E7, E6tw, DnOdd, DnEven, D4, DnTw };

/// Canonical lowercase tag ("psl", "2e6", "dn_odd", ...).
std::string family_name(Family f);
/// Parses a tag; "bc" means bn and "dn" picks dn_odd/dn_even/d4 from n.
Family parse_family(const std::string& s, int n);
/// True for families whose rank n is fixed by the type (e6, e7, 2e6).
bool family_fixed_rank(Family f);
int family_min_n(Family f);

/// Normal form phi^f * g * delta^v (field part, graph part, diagonal part).
struct OutElement {
  std::int64_t f = 0;
  int g = 0;
  std::array<std::int64_t, 2> v{0, 0};
  auto operator<=>(const OutElement&) const = default;
};

/// Finite model of Out(G0): N x| (<phi> x G), N = Z/na x Z/nb, G in {1, C2, S3}.
class OutModel {
 public:
  Family family;
  int n = 0;
  std::int64_t q = 0, p = 0, m = 0;
  std::int64_t d = 1;            // index of G0 in its inner-diagonal group
  std::int64_t na = 1, nb = 1;   // shape of the diagonal part
  std::int64_t phi_order = 1;    // m, or 2m for twisted families
  int gsize = 1;                 // graph part order: 1, 2 or 6
  bool phi_mult = false;         // phi acts on cyclic N by x p (else trivially)

  std::int64_t size() const { return na * nb * phi_order * gsize; }
  OutElement identity() const { return {}; }
  OutElement mul(const OutElement& a, const OutElement& b) const;
  OutElement inv(const OutElement& a) const;
  OutElement pow(const OutElement& a, std::int64_t k) const;
  OutElement conj(const OutElement& a, const OutElement& x) const;  // x^{-1} a x
  bool commute(const OutElement& a, const OutElement& b) const;
  std::int64_t order(const OutElement& a) const;
  /// Right action of phi^f g on the diagonal part.
  std::array<std::int64_t, 2> act(std::int64_t f, int g, std::array<std::int64_t, 2> v) const;
  OutElement reduce(OutElement a) const;

  std::int64_t index(const OutElement& a) const;
  OutElement element(std::int64_t idx) const;

  // Named generators.
  OutElement delta(int which = 1) const;  // which in {1,2,3} for the Klein case
  OutElement phi() const { return reduce({1, 0, {0, 0}}); }
  OutElement graph() const;       // gamma / tau
  OutElement triality() const;    // rho (d4 only)

  bool has_graph() const { return gsize > 1; }
  bool klein() const { return nb > 1; }
  std::string name(const OutElement& a) const;
  std::string presentation() const;
};

OutModel out_model(Family fam, int n, std::int64_t q);

/// Whether Aut(G0) splits over G0, from the (d, m) arithmetic.
bool aut_splits(Family fam, int n, std::int64_t q);

/// Sorted element indices of the subgroup generated by gens.
std::vector<std::int64_t> subgroup_closure(const OutModel& om, const std::vector<OutElement>& gens);
bool is_abelian(const OutModel& om, const std::vector<OutElement>& gens);
/// Greedy generating set in index order.
std::vector<OutElement> greedy_generators(const OutModel& om,
                                          const std::vector<std::int64_t>& elems);

struct AbelianT {
  std::vector<OutElement> gens;
  std::vector<std::int64_t> elements;  // sorted indices
  bool maximal = false;
};

/// Builds an AbelianT record from generators (maximal flag left false).
AbelianT make_abelian_t(const OutModel& om, const std::vector<OutElement>& gens);

/// A single generator when T is cyclic (least index).
std::optional<OutElement> cyclic_generator(const OutModel& om, const AbelianT& T);

/// Every maximal abelian subgroup, sorted by element list. Throws when |Out| > limit.
std::vector<AbelianT> enumerate_maximal_abelian(const OutModel& om, std::int64_t limit = 1024);
/// All abelian subgroups (test oracle scale).
std::vector<AbelianT> enumerate_all_abelian(const OutModel& om, std::int64_t limit = 256);

/// Parses "d^2,f*g*d" style generator lists over letters d d1 d2 d3 f g r.
std::vector<OutElement> parse_generators(const OutModel& om, const std::string& expr);

/// Outer image of a linear or unitary word: (s, eps, class of det X).
/// Unitary words live over F_{q^2} and use omega = nu^{q-1}.
OutElement rho_linear(const OutModel& om, const SemilinearWord& w);

}  // namespace abelsup
