#include "abelsup/semimat.hpp"

#include <sstream>
#include <stdexcept>

#include "abelsup/arith.hpp"

namespace abelsup {

Mat::Mat(FieldPtr f, int n)
    : f_(std::move(f)), n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
  if (!f_) throw std::invalid_argument("Mat: null field");
  if (n < 0) throw std::invalid_argument("Mat: negative dimension");
}

Mat Mat::identity(FieldPtr f, int n) { return scalar(std::move(f), n, FieldElement{1}); }

Mat Mat::scalar(FieldPtr f, int n, FieldElement x) {
  Mat r(std::move(f), n);
  for (int i = 0; i < n; ++i) r.set(i, i, x);
  return r;
}

Mat Mat::diag(FieldPtr f, const std::vector<FieldElement>& d) {
  Mat r(std::move(f), static_cast<int>(d.size()));
  for (int i = 0; i < r.n(); ++i) r.set(i, i, d[static_cast<std::size_t>(i)]);
  return r;
}

Mat Mat::diag_exp(FieldPtr f, const std::vector<std::int64_t>& e) {
  std::vector<FieldElement> d;
  d.reserve(e.size());
  for (auto k : e) d.push_back(f->pow_omega(k));
  return diag(std::move(f), d);
}

Mat Mat::permutation(FieldPtr f, const std::vector<int>& perm) {
  Mat r(std::move(f), static_cast<int>(perm.size()));
  for (int j = 0; j < r.n(); ++j) r.set(perm[static_cast<std::size_t>(j)], j, FieldElement{1});
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (n_ != o.n_) return false;
  if (f_ != o.f_ && (f_->p() != o.f_->p() || f_->m() != o.f_->m())) return false;
  return a_ == o.a_;
}

Mat Mat::operator*(const Mat& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Mat: dimension mismatch");
  const FieldSpec& F = *f_;
  Mat r(f_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      FieldElement x = (*this)(i, k);
      if (x.code == 0) continue;
      for (int j = 0; j < n_; ++j) {
        FieldElement y = o(k, j);
        if (y.code == 0) continue;
        r.at(i, j) = F.add(r(i, j), F.mul(x, y));
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Mat: dimension mismatch");
  Mat r(f_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
  return r;
}

Mat Mat::scaled(FieldElement x) const {
  Mat r(f_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], x);
  return r;
}

Mat Mat::transpose() const {
  Mat r(f_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(j, i, (*this)(i, j));
  return r;
}

Mat Mat::inverse() const {
  const FieldSpec& F = *f_;
  Mat a = *this;
  Mat r = identity(f_, n_);
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int i = c; i < n_; ++i)
      if (a(i, c).code != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("Mat: singular matrix");
    if (piv != c)
      for (int j = 0; j < n_; ++j) {
        std::swap(a.at(piv, j), a.at(c, j));
        std::swap(r.at(piv, j), r.at(c, j));
      }
    FieldElement s = F.inv(a(c, c));
    for (int j = 0; j < n_; ++j) {
      a.at(c, j) = F.mul(a(c, j), s);
      r.at(c, j) = F.mul(r(c, j), s);
    }
    for (int i = 0; i < n_; ++i) {
      if (i == c || a(i, c).code == 0) continue;
      FieldElement t = F.neg(a(i, c));
      for (int j = 0; j < n_; ++j) {
        a.at(i, j) = F.add(a(i, j), F.mul(t, a(c, j)));
        r.at(i, j) = F.add(r(i, j), F.mul(t, r(c, j)));
      }
    }
  }
  return r;
}

Mat Mat::frob(std::int64_t s) const {
  if (mod(s, f_->m()) == 0) return *this;
  Mat r(f_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->frob(a_[i], s);
  return r;
}

Mat Mat::pow(std::int64_t k) const {
  Mat base = k < 0 ? inverse() : *this;
  std::int64_t e = k < 0 ? -k : k;
  Mat r = identity(f_, n_);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FieldElement Mat::det() const {
  const FieldSpec& F = *f_;
  Mat a = *this;
  FieldElement d = F.one();
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int i = c; i < n_; ++i)
      if (a(i, c).code != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return F.zero();
    if (piv != c) {
      for (int j = 0; j < n_; ++j) std::swap(a.at(piv, j), a.at(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, a(c, c));
    FieldElement s = F.inv(a(c, c));
    for (int i = c + 1; i < n_; ++i) {
      if (a(i, c).code == 0) continue;
      FieldElement t = F.neg(F.mul(a(i, c), s));
      for (int j = c; j < n_; ++j) a.at(i, j) = F.add(a(i, j), F.mul(t, a(c, j)));
    }
  }
  return d;
}

bool Mat::is_identity() const {
  auto s = scalar_value();
  return s && s->code == 1;
}

bool Mat::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && (*this)(i, j).code != 0) return false;
  return true;
}

bool Mat::is_monomial() const {
  std::vector<int> col_hits(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    int hits = 0;
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j).code != 0) {
        ++hits;
        ++col_hits[static_cast<std::size_t>(j)];
      }
    if (hits != 1) return false;
  }
  for (int h : col_hits)
    if (h != 1) return false;
  return true;
}

std::optional<FieldElement> Mat::scalar_value() const {
  if (n_ == 0) return f_->one();
  if (!is_diagonal()) return std::nullopt;
  FieldElement x = (*this)(0, 0);
  for (int i = 1; i < n_; ++i)
    if ((*this)(i, i) != x) return std::nullopt;
  return x;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << f_->to_string((*this)(i, j));
  }
  os << "]";
  return os.str();
}

Mat block_diag(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag: no blocks");
  int n = 0;
  for (const auto& b : blocks) {
    if (b.field()->q() != blocks.front().field()->q())
      throw std::invalid_argument("block_diag: mixed fields");
    n += b.n();
  }
  Mat r(blocks.front().field(), n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.n(); ++i)
      for (int j = 0; j < b.n(); ++j) r.set(off + i, off + j, b(i, j));
    off += b.n();
  }
  return r;
}

std::optional<FieldElement> projective_scalar(const Mat& a, const Mat& b) {
  if (a.n() != b.n()) throw std::invalid_argument("projective_scalar: dimension mismatch");
  const FieldSpec& F = a.F();
  std::optional<FieldElement> lam;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      FieldElement x = a(i, j), y = b(i, j);
      if (y.code == 0) {
        if (x.code != 0) return std::nullopt;
        continue;
      }
      if (x.code == 0) return std::nullopt;
      FieldElement r = F.div(x, y);
      if (lam && *lam != r) return std::nullopt;
      lam = r;
    }
  return lam;
}

const char* graph_kind_name(GraphKind g) {
  switch (g) {
    case GraphKind::None: return "none";
    case GraphKind::InverseTranspose: return "inverse-transpose";
    case GraphKind::Tau: return "tau";
  }
  return "none";
}

GraphKind graph_kind_from_name(const std::string& s) {
  if (s == "none") return GraphKind::None;
  if (s == "inverse-transpose") return GraphKind::InverseTranspose;
  if (s == "tau") return GraphKind::Tau;
  throw std::invalid_argument("unknown graph kind: " + s);
}

bool SemilinearWord::operator==(const SemilinearWord& o) const {
  return s == o.s && eps == o.eps && graph == o.graph && X == o.X;
}

namespace {

Mat apply_graph(GraphKind g, const Mat& a) {
  switch (g) {
    case GraphKind::None: return a;
    case GraphKind::InverseTranspose: return a.transpose().inverse();
    case GraphKind::Tau: {
      // Conjugation by a permutation: permute rows and columns directly.
      const int n = a.n(), h = n / 2;
      if (n % 2) throw std::invalid_argument("tau graph needs even dimension");
      auto sw = [&](int i) { return i == h - 1 ? n - 1 : (i == n - 1 ? h - 1 : i); };
      Mat r(a.field(), n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.set(sw(i), sw(j), a(i, j));
      return r;
    }
  }
  return a;
}

}  // namespace

Mat apply_sigma(std::int64_t s, int eps, GraphKind g, const Mat& a) {
  Mat r = eps ? apply_graph(g, a) : a;
  return r.frob(s);
}

Mat apply_word(const SemilinearWord& w, const Mat& a) {
  Mat b = apply_sigma(w.s, w.eps, w.graph, a);
  return w.X.inverse() * b * w.X;
}

namespace {
GraphKind merge_graph(GraphKind a, GraphKind b) {
  if (a == GraphKind::None) return b;
  if (b == GraphKind::None) return a;
  if (a != b) throw std::invalid_argument("words use different graph maps");
  return a;
}
}  // namespace

SemilinearWord compose(const SemilinearWord& u, const SemilinearWord& v) {
  const std::int64_t fm = u.X.F().m();
  SemilinearWord r;
  r.graph = merge_graph(u.graph, v.graph);
  r.s = mod(u.s + v.s, fm);
  r.eps = (u.eps + v.eps) % 2;
  r.X = apply_sigma(v.s, v.eps, r.graph, u.X) * v.X;
  return r;
}

SemilinearWord inverse(const SemilinearWord& u) {
  const std::int64_t fm = u.X.F().m();
  SemilinearWord r;
  r.graph = u.graph;
  r.s = mod(-u.s, fm);
  r.eps = u.eps;
  // sigma^{-1} = frob^{-s} graph^{eps}, the two parts commute.
  r.X = apply_sigma(-u.s, u.eps, u.graph, u.X.inverse());
  return r;
}

SemilinearWord conjugate(const SemilinearWord& u, const SemilinearWord& x) {
  return compose(compose(inverse(x), u), x);
}

SemilinearWord power(const SemilinearWord& u, std::int64_t k) {
  SemilinearWord base = k < 0 ? inverse(u) : u;
  std::int64_t e = k < 0 ? -k : k;
  SemilinearWord r{0, 0, u.graph, Mat::identity(u.X.field(), u.X.n())};
  while (e > 0) {
    if (e & 1) r = compose(r, base);
    base = compose(base, base);
    e >>= 1;
  }
  return r;
}

bool CenterSpec::contains(const FieldSpec& f, FieldElement x) const {
  if (x.code == 0) return false;
  if (order == 0) return true;
  return f.pow(x, order).code == 1;
}

Mat commutator_matrix(const SemilinearWord& u, const SemilinearWord& v) {
  SemilinearWord c = compose(compose(compose(inverse(u), inverse(v)), u), v);
  if (c.s != 0 || c.eps != 0)
    throw std::logic_error("commutator is not linear: field/graph parts do not cancel");
  return c.X;
}

std::optional<FieldElement> word_commutator_central(const SemilinearWord& u,
                                                    const SemilinearWord& v,
                                                    const CenterSpec& z) {
  Mat c = commutator_matrix(u, v);
  auto s = c.scalar_value();
  if (!s || !z.contains(c.F(), *s)) return std::nullopt;
  return s;
}

}  // namespace abelsup
