#pragma once

// Reference computations kept separate from the engine: plain Gaussian
// elimination over Q(i) on row-major matrices, and closed-form Hodge tables.

#include <vector>

#include "fixtures.hpp"

namespace oracle {

using deformae::Bidegree;
using deformae::Form;
using deformae::Mask;
using deformae::Model;
using deformae::Scalar;

using Rows = std::vector<std::vector<Scalar>>;

inline int rank(Rows a) {
  int r = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!a[i][c].is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    const Scalar inv = a[r][c].inverse();
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Scalar f = a[i][c] * inv;
      for (int k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Matrix of ∂̄ from A^{p,q} to A^{p,q+1}, one row per target monomial.
inline Rows delbar_rows(const Model& m, Bidegree src) {
  const int n = m.dim();
  const auto from = deformae::basis(n, src);
  const auto to = deformae::basis(n, {src.p, src.q + 1});
  Rows out(to.size(), std::vector<Scalar>(from.size()));
  for (std::size_t j = 0; j < from.size(); ++j) {
    const Form<Scalar> img = deformae::delbar(m, Form<Scalar>::monomial(n, from[j], Scalar(1)));
    for (std::size_t i = 0; i < to.size(); ++i) out[i][j] = img.coeff(to[i]);
  }
  return out;
}

inline int dolbeault_dim(const Model& m, int p, int q) {
  const int n = m.dim();
  const int dim = static_cast<int>(deformae::basis(n, {p, q}).size());
  const int out_rank = q < n ? rank(delbar_rows(m, {p, q})) : 0;
  const int in_rank = q > 0 ? rank(delbar_rows(m, {p, q - 1})) : 0;
  return dim - out_rank - in_rank;
}

// Iwasawa: ∂̄ only sees the antiholomorphic factor, whose complex is the
// Heisenberg algebra with Betti numbers 1, 2, 2, 1, so h^{p,q} = C(3,p) b_q.
inline std::vector<std::vector<int>> iwasawa_hodge() {
  const int heisenberg[4] = {1, 2, 2, 1};
  std::vector<std::vector<int>> h(4, std::vector<int>(4));
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) h[p][q] = static_cast<int>(binomial(3, p)) * heisenberg[q];
  }
  return h;
}

// Coefficients of 1/(1 - x) as Σ x^k.
inline deformae::Series geometric(const Scalar& c, int j, int k, int order) {
  deformae::Series out = deformae::series_term(1, 0, 0, order);
  deformae::Series power = out;
  const deformae::Series x = deformae::series_term(c, j, k, order);
  for (int i = 1; i <= order; ++i) {
    power = power * x;
    out += power;
  }
  return out;
}

}  // namespace oracle
