#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abelsup/field.hpp"

namespace abelsup {

/// Dense square matrix over a FieldSpec.
class Mat {
 public:
  Mat() = default;
  Mat(FieldPtr f, int n);  // zero matrix
  static Mat identity(FieldPtr f, int n);
  static Mat scalar(FieldPtr f, int n, FieldElement x);
  static Mat diag(FieldPtr f, const std::vector<FieldElement>& d);
  /// Diagonal matrix with entries omega^e_i.
  static Mat diag_exp(FieldPtr f, const std::vector<std::int64_t>& e);
  /// Permutation matrix sending e_j to e_{perm[j]}.
  static Mat permutation(FieldPtr f, const std::vector<int>& perm);

  int n() const { return n_; }
  const FieldPtr& field() const { return f_; }
  const FieldSpec& F() const { return *f_; }

  FieldElement operator()(int i, int j) const { return a_[idx(i, j)]; }
  FieldElement& at(int i, int j) { return a_[idx(i, j)]; }
  void set(int i, int j, FieldElement x) { a_[idx(i, j)] = x; }

  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat scaled(FieldElement x) const;
  Mat transpose() const;
  Mat inverse() const;  // throws std::domain_error when singular
  Mat frob(std::int64_t s) const;
  Mat pow(std::int64_t k) const;
  FieldElement det() const;
  bool is_identity() const;
  bool is_diagonal() const;
  bool is_monomial() const;
  /// Returns x when the matrix equals x*I.
  std::optional<FieldElement> scalar_value() const;

  std::string to_string() const;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }
  FieldPtr f_;
  int n_ = 0;
  std::vector<FieldElement> a_;
};

/// Block-diagonal sum; all blocks over the same field.
Mat block_diag(const std::vector<Mat>& blocks);

/// lambda with a = lambda*b, if any.
std::optional<FieldElement> projective_scalar(const Mat& a, const Mat& b);

enum class GraphKind { None, InverseTranspose, Tau };

const char* graph_kind_name(GraphKind g);
GraphKind graph_kind_from_name(const std::string& s);

/// Automorphism a -> X^{-1} frob_s(graph^eps(a)) X of a matrix group.
struct SemilinearWord {
  std::int64_t s = 0;
  int eps = 0;
  GraphKind graph = GraphKind::None;
  Mat X;

  static SemilinearWord inner(const Mat& x, GraphKind g = GraphKind::None) {
    return {0, 0, g, x};
  }
  bool operator==(const SemilinearWord& o) const;
};

/// Frobenius part plus graph map, applied to a matrix (no conjugation).
Mat apply_sigma(std::int64_t s, int eps, GraphKind g, const Mat& a);
Mat apply_word(const SemilinearWord& w, const Mat& a);

/// "u then v": apply_word(compose(u, v), a) == apply_word(v, apply_word(u, a)).
SemilinearWord compose(const SemilinearWord& u, const SemilinearWord& v);
SemilinearWord inverse(const SemilinearWord& u);
/// Conjugate u by x: x^{-1} u x in the composition order above.
SemilinearWord conjugate(const SemilinearWord& u, const SemilinearWord& x);
SemilinearWord power(const SemilinearWord& u, std::int64_t k);

/// Scalars to quotient by: all of them, or those with x^order = 1.
struct CenterSpec {
  std::int64_t order = 0;  // 0 means every nonzero scalar
  bool contains(const FieldSpec& f, FieldElement x) const;
};

/// Matrix of the linear map u^{-1}v^{-1}uv; throws if field/graph parts do not cancel.
Mat commutator_matrix(const SemilinearWord& u, const SemilinearWord& v);
/// Central scalar of [u, v] in the given center, or nothing.
std::optional<FieldElement> word_commutator_central(const SemilinearWord& u,
                                                    const SemilinearWord& v,
                                                    const CenterSpec& z = {});

}  // namespace abelsup
