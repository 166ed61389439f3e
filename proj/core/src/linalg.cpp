#include "deformae/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "deformae/errors.hpp"

namespace deformae {

Vec DenseMatrix::column(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec DenseMatrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw Error(ErrorKind::Unsupported, "vector length mismatch");
  Vec out(rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).is_zero() && !x[c].is_zero()) out[r] += (*this)(r, c) * x[c];
    }
  }
  return out;
}

bool DenseMatrix::is_zero() const {
  for (const auto& x : a_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

DenseMatrix DenseMatrix::augment(const DenseMatrix& o) const {
  if (o.rows_ != rows_) throw Error(ErrorKind::Unsupported, "row count mismatch");
  DenseMatrix out(rows_, cols_ + o.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (int c = 0; c < o.cols_; ++c) out(r, cols_ + c) = o(r, c);
  }
  return out;
}

DenseMatrix DenseMatrix::from_columns(int rows, const std::vector<Vec>& cols) {
  DenseMatrix out(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < out.cols(); ++c) {
    for (int r = 0; r < rows; ++r) out(r, c) = cols[c][r];
  }
  return out;
}

DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.cols_ != y.rows_) throw Error(ErrorKind::Unsupported, "matrix shapes do not compose");
  DenseMatrix out(x.rows_, y.cols_);
  for (int i = 0; i < x.rows_; ++i) {
    for (int k = 0; k < x.cols_; ++k) {
      if (x(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols_; ++j) {
        if (!y(k, j).is_zero()) out(i, j) += x(i, k) * y(k, j);
      }
    }
  }
  return out;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

std::vector<int> reversed_order(int cols) {
  std::vector<int> o(cols);
  std::iota(o.rbegin(), o.rend(), 0);
  return o;
}

namespace {

// Clears denominators row by row so elimination runs over Z[i].
void integralize(DenseMatrix& a) {
  for (int r = 0; r < a.rows(); ++r) {
    mpz_class l = 1;
    for (int c = 0; c < a.cols(); ++c) {
      const Scalar& x = a(r, c);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
    }
    if (l == 1) continue;
    const Scalar s(mpq_class(l), mpq_class(0));
    for (int c = 0; c < a.cols(); ++c) a(r, c) *= s;
  }
}

}  // namespace

Echelon echelon(const DenseMatrix& input, std::vector<int> order) {
  Echelon e;
  if (order.empty()) {
    order.resize(input.cols());
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(input.cols());
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) throw Error(ErrorKind::Validation, "pivot order is not a permutation of the matrix columns");
  e.order = order;
  DenseMatrix a = input;
  integralize(a);
  Scalar prev = 1;
  int row = 0;
  for (int col : order) {
    if (row == a.rows()) break;
    int piv = -1;
    for (int r = row; r < a.rows(); ++r) {
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
    }
    const Scalar p = a(row, col);
    const Scalar prev_inv = prev.inverse();
    for (int r = row + 1; r < a.rows(); ++r) {
      const Scalar f = a(r, col);
      for (int c = 0; c < a.cols(); ++c) {
        if (f.is_zero()) {
          a(r, c) = a(r, c) * p * prev_inv;
        } else {
          a(r, c) = (p * a(r, c) - f * a(row, c)) * prev_inv;
        }
      }
    }
    prev = p;
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.reduced = std::move(a);
  return e;
}

int rank(const DenseMatrix& a) { return echelon(a).rank(); }

namespace {

// Back substitution on an echelon form with `rhs_col` as right-hand side
// (or -1 for the homogeneous system), fixed values for the free columns.
Vec back_substitute(const Echelon& e, int ncols, const std::vector<Scalar>& free_values, int rhs_col) {
  Vec x(ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  for (int c = 0; c < ncols; ++c) {
    if (!is_pivot[c]) x[c] = free_values[c];
  }
  for (int r = e.rank() - 1; r >= 0; --r) {
    const int pc = e.pivot_cols[r];
    Scalar acc = rhs_col >= 0 ? e.reduced(r, rhs_col) : Scalar();
    for (int c = 0; c < ncols; ++c) {
      if (c == pc || e.reduced(r, c).is_zero() || x[c].is_zero()) continue;
      acc -= e.reduced(r, c) * x[c];
    }
    x[pc] = acc * e.reduced(r, pc).inverse();
  }
  return x;
}

}  // namespace

std::vector<Vec> nullspace(const DenseMatrix& a, const std::vector<int>& order) {
  Echelon e = echelon(a, order);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> out;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> free(a.cols());
    free[f] = 1;
    out.push_back(back_substitute(e, a.cols(), free, -1));
  }
  return out;
}

std::optional<Vec> solve(const DenseMatrix& a, const Vec& b, const std::vector<int>& order) {
  if (static_cast<int>(b.size()) != a.rows()) throw Error(ErrorKind::Unsupported, "right-hand side length mismatch");
  DenseMatrix aug = a.augment(DenseMatrix::from_columns(a.rows(), {b}));
  std::vector<int> ord = order;
  if (ord.empty()) {
    ord.resize(a.cols());
    std::iota(ord.begin(), ord.end(), 0);
  }
  ord.push_back(a.cols());
  Echelon e = echelon(aug, ord);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
  return back_substitute(e, a.cols(), std::vector<Scalar>(a.cols()), a.cols());
}

bool in_column_span(const DenseMatrix& a, const Vec& v) {
  return rank(a.augment(DenseMatrix::from_columns(a.rows(), {v}))) == rank(a);
}

}  // namespace deformae
