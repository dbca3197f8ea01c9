#include "abelsup/intmat.hpp"

#include <boost/rational.hpp>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "abelsup/arith.hpp"

namespace abelsup {

IntMat int_identity(int n) {
  IntMat m(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 1;
  return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
  if (a.empty()) return {};
  const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  if (a[0].size() != k) throw std::invalid_argument("int_mul: shape mismatch");
  IntMat out(r, std::vector<std::int64_t>(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (!a[i][t]) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

IntMat int_add(const IntMat& a, const IntMat& b) {
  IntMat out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  return out;
}

IntMat int_sub(const IntMat& a, const IntMat& b) { return int_add(a, int_scaled(b, -1)); }

IntMat int_transpose(const IntMat& a) {
  if (a.empty()) return {};
  IntMat t(a[0].size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntMat int_scaled(const IntMat& a, std::int64_t k) {
  IntMat out = a;
  for (auto& row : out)
    for (auto& x : row) x *= k;
  return out;
}

namespace {

using Q = boost::rational<std::int64_t>;
using QMat = std::vector<std::vector<Q>>;

QMat to_q(const IntMat& a) {
  QMat m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto x : a[i]) m[i].emplace_back(x);
  return m;
}

}  // namespace

std::int64_t int_det(const IntMat& a) {
  QMat m = to_q(a);
  const std::size_t n = m.size();
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].numerator() == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Q f = m[r][c] / m[c][c];
      if (f.numerator() == 0) continue;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  if (det.denominator() != 1) throw std::logic_error("int_det: non-integral determinant");
  return det.numerator();
}

std::optional<IntMat> scaled_inverse(const IntMat& a, std::int64_t scale) {
  const std::size_t n = a.size();
  QMat m = to_q(a);
  QMat inv = to_q(int_identity(static_cast<int>(n)));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].numerator() == 0) ++piv;
    if (piv == n) throw std::domain_error("scaled_inverse: singular matrix");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    Q d = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].numerator() == 0) continue;
      Q f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  IntMat out(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Q v = inv[i][j] * scale;
      if (v.denominator() != 1) return std::nullopt;
      out[i][j] = v.numerator();
    }
  return out;
}

std::string int_to_string(const IntMat& a) {
  std::ostringstream os;
  for (const auto& row : a) {
    os << '[';
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "]\n";
  }
  return os.str();
}

Smith smith_normal_form(const IntMat& a) {
  const int r = static_cast<int>(a.size());
  const int c = r ? static_cast<int>(a[0].size()) : 0;
  Smith s{int_identity(r), a, int_identity(c)};
  IntMat& D = s.D;
  auto row_op = [&](int i, int j, std::int64_t k) {  // row_i += k * row_j
    for (int t = 0; t < c; ++t) D[i][t] += k * D[j][t];
    for (int t = 0; t < r; ++t) s.U[i][t] += k * s.U[j][t];
  };
  auto col_op = [&](int i, int j, std::int64_t k) {  // col_i += k * col_j
    for (int t = 0; t < r; ++t) D[t][i] += k * D[t][j];
    for (int t = 0; t < c; ++t) s.V[t][i] += k * s.V[t][j];
  };
  auto row_swap = [&](int i, int j) {
    std::swap(D[i], D[j]);
    std::swap(s.U[i], s.U[j]);
  };
  auto col_swap = [&](int i, int j) {
    for (int t = 0; t < r; ++t) std::swap(D[t][i], D[t][j]);
    for (int t = 0; t < c; ++t) std::swap(s.V[t][i], s.V[t][j]);
  };
  auto row_neg = [&](int i) {
    for (auto& x : D[i]) x = -x;
    for (auto& x : s.U[i]) x = -x;
  };

  for (int k = 0; k < std::min(r, c); ++k) {
    for (;;) {
      // least nonzero |entry| in the trailing block as pivot
      int pi = -1, pj = -1;
      for (int i = k; i < r; ++i)
        for (int j = k; j < c; ++j)
          if (D[i][j] && (pi < 0 || std::llabs(D[i][j]) < std::llabs(D[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) return s;
      row_swap(k, pi);
      col_swap(k, pj);
      bool clean = true;
      for (int i = k + 1; i < r; ++i) {
        row_op(i, k, -(D[i][k] / D[k][k]));
        if (D[i][k]) clean = false;
      }
      for (int j = k + 1; j < c; ++j) {
        col_op(j, k, -(D[k][j] / D[k][k]));
        if (D[k][j]) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into row k
      int bad = -1;
      for (int i = k + 1; i < r && bad < 0; ++i)
        for (int j = k + 1; j < c; ++j)
          if (D[i][j] % D[k][k]) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_op(k, bad, 1);
    }
    if (D[k][k] < 0) row_neg(k);
  }
  return s;
}

std::optional<std::vector<std::int64_t>> solve_congruence(const IntMat& a,
                                                          const std::vector<std::int64_t>& b,
                                                          std::int64_t M) {
  const std::size_t r = a.size();
  const std::size_t c = r ? a[0].size() : 0;
  Smith s = smith_normal_form(a);
  // D y = U b (mod M), x = V y
  std::vector<std::int64_t> ub(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) ub[i] = mod(ub[i] + mod(s.U[i][j], M) * mod(b[j], M), M);
  std::vector<std::int64_t> y(c, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t di = i < c ? s.D[i][i] : 0;
    const std::int64_t g = gcd(mod(di, M), M);  // gcd(0, M) = M
    if (ub[i] % g) return std::nullopt;
    if (i < c && di) {
      // (di/g) y = ub/g (mod M/g)
      const std::int64_t Mg = M / g;
      y[i] = Mg == 1 ? 0 : mod((ub[i] / g) * inverse_mod(mod(di / g, Mg), Mg), Mg);
    }
  }
  std::vector<std::int64_t> x(c, 0);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) x[i] = mod(x[i] + mod(s.V[i][j], M) * y[j], M);
  return x;
}

}  // namespace abelsup
