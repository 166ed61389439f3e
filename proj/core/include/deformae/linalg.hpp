#pragma once

#include <optional>
#include <vector>

#include "deformae/scalar.hpp"

namespace deformae {

using Vec = std::vector<Scalar>;

/// Dense rows x cols matrix over Q(i).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Scalar& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  Vec column(int c) const;
  Vec apply(const Vec& x) const;
  bool is_zero() const;
  /// Horizontal concatenation [this | other].
  DenseMatrix augment(const DenseMatrix& other) const;
  static DenseMatrix from_columns(int rows, const std::vector<Vec>& cols);

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y);
  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

/// Row echelon data from fraction-free (Bareiss) elimination. Columns are
/// visited in `order`; within a column the first remaining row with a
/// nonzero entry is the pivot.
struct Echelon {
  DenseMatrix reduced;
  std::vector<int> order;       // column visiting order
  std::vector<int> pivot_cols;  // pivot column of echelon row r
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

Echelon echelon(const DenseMatrix& a, std::vector<int> order = {});
int rank(const DenseMatrix& a);
/// Basis of ker a: one vector per free column, that column set to 1 and the
/// other free columns to 0.
std::vector<Vec> nullspace(const DenseMatrix& a, const std::vector<int>& order = {});
/// Canonical solution of a x = b (free variables zero), or nullopt.
std::optional<Vec> solve(const DenseMatrix& a, const Vec& b, const std::vector<int>& order = {});
/// Whether v lies in the column span of a.
bool in_column_span(const DenseMatrix& a, const Vec& v);
/// Column-index order visiting columns last to first.
std::vector<int> reversed_order(int cols);
bool is_zero(const Vec& v);

}  // namespace deformae
