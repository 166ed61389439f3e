#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deformae/errors.hpp"
#include "deformae/scalar.hpp"
#include "deformae/series.hpp"

namespace deformae {

// Coframe generators of a dimension-n model are numbered 0..2n-1: generator
// g < n is ω^{g+1}, generator g >= n is ω̄^{g-n+1}. A monomial is the bitmask
// of its factors, read in increasing generator order, so the holomorphic
// block always precedes the antiholomorphic block.
using Mask = std::uint32_t;

inline constexpr int kMaxDim = 8;

struct Bidegree {
  int p = 0;
  int q = 0;
  auto operator<=>(const Bidegree&) const = default;
};

inline Mask hol_part(Mask m, int n) { return m & ((Mask{1} << n) - 1); }
inline Mask antihol_part(Mask m, int n) { return m & ~((Mask{1} << n) - 1); }
inline int degree(Mask m) { return std::popcount(m); }
inline Bidegree bidegree_of(Mask m, int n) {
  return {std::popcount(hol_part(m, n)), std::popcount(antihol_part(m, n))};
}

/// +1/-1 for the sign of a∧b brought to canonical order, 0 if they share a
/// factor.
inline int merge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Index-list view of a monomial: 1-based holomorphic and antiholomorphic
/// indices, strictly increasing.
struct Monomial {
  std::vector<int> hol;
  std::vector<int> antihol;
  auto operator<=>(const Monomial&) const = default;
};

Mask mask_of(int n, const Monomial& mono);
Monomial monomial_of(int n, Mask m);
/// Canonical mask and sign for factors given in arbitrary wedge order, using
/// the file convention (j > 0 is ω^j, j < 0 is ω̄^{-j}). Sign 0 means a
/// repeated factor.
std::pair<Mask, int> normalize_factors(int n, const std::vector<int>& factors);
std::string monomial_str(int n, Mask m);
/// Conjugate monomial and the reordering sign: conj(ω^H ∧ ω̄^A) = ± ω^A ∧ ω̄^H.
std::pair<Mask, int> conjugate_mask(Mask m, int n);

inline Scalar ring_conj(const Scalar& s) { return s.conj(); }
inline Truncated ring_conj(const Truncated& s) { return s.conj(); }

/// Element of the exterior algebra over the complexified coframe with
/// coefficients in R (Scalar, Series or ChartPoly). The bidegree is not fixed
/// by the type: a Form may be homogeneous or mixed; `bidegree()` reports the
/// homogeneous case. Zero coefficients are never stored.
template <class R>
class Form {
 public:
  Form() = default;
  explicit Form(int n) : n_(n) {
    if (n < 0 || n > kMaxDim) throw Error(ErrorKind::Unsupported, "dimension out of range");
  }

  static Form generator(int n, int g, const R& c = R(Scalar(1))) {
    Form f(n);
    f.add(Mask{1} << g, c);
    return f;
  }
  static Form monomial(int n, Mask m, const R& c) {
    Form f(n);
    f.add(m, c);
    return f;
  }
  static Form one(int n, const R& c = R(Scalar(1))) { return monomial(n, 0, c); }

  int dim() const { return n_; }
  const std::map<Mask, R>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  R coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? R() : it->second;
  }

  void add(Mask m, const R& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::set<Bidegree> bidegrees() const {
    std::set<Bidegree> out;
    for (const auto& [m, c] : terms_) out.insert(bidegree_of(m, n_));
    return out;
  }
  /// Bidegree when homogeneous and nonzero.
  std::optional<Bidegree> bidegree() const {
    auto b = bidegrees();
    if (b.size() != 1) return std::nullopt;
    return *b.begin();
  }
  bool is_homogeneous(Bidegree bd) const {
    for (const auto& [m, c] : terms_) {
      if (bidegree_of(m, n_) != bd) return false;
    }
    return true;
  }
  Form component(Bidegree bd) const {
    Form out(n_);
    for (const auto& [m, c] : terms_) {
      if (bidegree_of(m, n_) == bd) out.terms_.emplace(m, c);
    }
    return out;
  }
  Form of_degree(int k) const {
    Form out(n_);
    for (const auto& [m, c] : terms_) {
      if (degree(m) == k) out.terms_.emplace(m, c);
    }
    return out;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using S = std::decay_t<decltype(f(std::declval<const R&>()))>;
    Form<S> out(n_);
    for (const auto& [m, c] : terms_) out.add(m, f(c));
    return out;
  }

  Form conj() const {
    Form out(n_);
    for (const auto& [m, c] : terms_) {
      auto [cm, sign] = conjugate_mask(m, n_);
      R v = ring_conj(c);
      out.add(cm, sign < 0 ? -v : v);
    }
    return out;
  }

  Form operator-() const {
    Form out(n_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }
  Form& operator+=(const Form& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Form& operator*=(const R& s) {
    std::map<Mask, R> next;
    for (const auto& [m, c] : terms_) {
      R v = c * s;
      if (!v.is_zero()) next.emplace(m, std::move(v));
    }
    terms_ = std::move(next);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const R& s) { return a *= s; }
  friend Form operator*(const R& s, Form a) { return a *= s; }
  friend bool operator==(const Form& a, const Form& b) {
    return a.terms_ == b.terms_ && (a.n_ == b.n_ || a.terms_.empty());
  }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  void check_dim(const Form& o) const {
    if (n_ != o.n_ && !o.terms_.empty()) {
      throw Error(ErrorKind::ModelMismatch, "forms over models of dimension " + std::to_string(n_) +
                                                " and " + std::to_string(o.n_));
    }
  }
  template <class S>
  void check_dim(const Form<S>& o) const {
    if (n_ != o.dim() && !o.is_zero()) {
      throw Error(ErrorKind::ModelMismatch, "forms over models of dimension " + std::to_string(n_) +
                                                " and " + std::to_string(o.dim()));
    }
  }

 private:
  int n_ = 0;
  std::map<Mask, R> terms_;
};

template <class R, class Fmt>
std::string form_str(const Form<R>& f, Fmt&& fmt) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) out += " + ";
    first = false;
    out += "(" + fmt(c) + ")";
    if (m != 0) out += "*" + monomial_str(f.dim(), m);
  }
  return out;
}

template <class R>
std::string form_str(const Form<R>& f) {
  return form_str(f, [](const R& c) { return c.str(); });
}

/// Exterior product. Bilinear and graded-anticommutative.
template <class R>
Form<R> wedge(const Form<R>& a, const Form<R>& b) {
  a.check_dim(b);
  Form<R> out(a.dim());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = merge_sign(ma, mb);
      if (s == 0) continue;
      R v = ca * cb;
      out.add(ma | mb, s < 0 ? -v : v);
    }
  }
  return out;
}

template <class R>
Form<R> conjugate(const Form<R>& a) {
  return a.conj();
}

/// Lift a Scalar-coefficient form into a coefficient ring R.
template <class R>
Form<R> lift(const Form<Scalar>& f) {
  return f.map_coeffs([](const Scalar& c) { return R(c); });
}

/// Applies the derivation determined by generator images: a factor g at
/// position s is replaced in place by rows[g]; an image term of degree k gets
/// the sign (-1)^{(k-1)s}. Degree-1 images give an even derivation (i_φ,
/// endomorphism contraction), degree-2 images an odd one (d, [φ,ψ]⌟).
template <class R, class S>
Form<R> substitute_derivation(const Form<R>& a, const std::vector<Form<S>>& rows) {
  Form<R> out(a.dim());
  for (const auto& [m, c] : a.terms()) {
    for (Mask rest_bits = m; rest_bits; rest_bits &= rest_bits - 1) {
      const int g = std::countr_zero(rest_bits);
      const Form<S>& img = rows[g];
      if (img.is_zero()) continue;
      a.check_dim(img);
      const Mask bit = Mask{1} << g;
      const Mask prefix = m & (bit - 1);
      const Mask suffix = m & ~((bit << 1) - 1);
      const Mask rest = prefix | suffix;
      const int s = std::popcount(prefix);
      for (const auto& [u, e] : img.terms()) {
        if (u & rest) continue;
        int sign = merge_sign(prefix, u) * merge_sign(prefix | u, suffix);
        if (((degree(u) - 1) * s) & 1) sign = -sign;
        R v = c * e;
        out.add(rest | u, sign < 0 ? -v : v);
      }
    }
  }
  return out;
}

/// Applies the algebra homomorphism determined by generator images.
template <class R>
Form<R> substitute_homomorphism(const Form<R>& a, const std::vector<Form<R>>& rows) {
  Form<R> out(a.dim());
  std::map<Mask, Form<R>> cache;
  for (const auto& [m, c] : a.terms()) {
    auto it = cache.find(m);
    if (it == cache.end()) {
      Form<R> prod = Form<R>::one(a.dim());
      for (Mask rest = m; rest; rest &= rest - 1) prod = wedge(prod, rows[std::countr_zero(rest)]);
      it = cache.emplace(m, std::move(prod)).first;
    }
    out += it->second * c;
  }
  return out;
}

/// Vector-valued form: one row per coframe generator, row g being the image
/// of generator g under the associated contraction. A T^{1,0}-valued form
/// φ = Σ θ_i ⊗ φ^i has only holomorphic rows (row i = φ^i); a T^{0,1}-valued
/// form only antiholomorphic rows. An endomorphism of one coframe sector is a
/// vector form whose rows are 1-forms of that sector.
template <class R>
class VectorForm {
 public:
  VectorForm() = default;
  explicit VectorForm(int n) : n_(n), rows_(2 * n, Form<R>(n)) {}

  int dim() const { return n_; }
  const std::vector<Form<R>>& rows() const { return rows_; }
  const Form<R>& row(int g) const { return rows_[g]; }
  Form<R>& row(int g) { return rows_[g]; }
  /// Holomorphic row i (0-based): φ^{i+1}.
  const Form<R>& hol_row(int i) const { return rows_[i]; }
  Form<R>& hol_row(int i) { return rows_[i]; }
  const Form<R>& antihol_row(int i) const { return rows_[n_ + i]; }
  Form<R>& antihol_row(int i) { return rows_[n_ + i]; }

  bool is_zero() const {
    for (const auto& r : rows_) {
      if (!r.is_zero()) return false;
    }
    return true;
  }

  VectorForm conj() const {
    VectorForm out(n_);
    for (int g = 0; g < 2 * n_; ++g) out.rows_[g < n_ ? g + n_ : g - n_] = rows_[g].conj();
    return out;
  }
  VectorForm& operator+=(const VectorForm& o) {
    check(o);
    for (int g = 0; g < 2 * n_; ++g) rows_[g] += o.rows_[g];
    return *this;
  }
  VectorForm& operator-=(const VectorForm& o) {
    check(o);
    for (int g = 0; g < 2 * n_; ++g) rows_[g] -= o.rows_[g];
    return *this;
  }
  VectorForm& operator*=(const R& s) {
    for (auto& r : rows_) r *= s;
    return *this;
  }
  VectorForm operator-() const {
    VectorForm out = *this;
    for (auto& r : out.rows_) r = -r;
    return out;
  }
  friend VectorForm operator+(VectorForm a, const VectorForm& b) { return a += b; }
  friend VectorForm operator-(VectorForm a, const VectorForm& b) { return a -= b; }
  friend VectorForm operator*(VectorForm a, const R& s) { return a *= s; }
  friend VectorForm operator*(const R& s, VectorForm a) { return a *= s; }
  friend bool operator==(const VectorForm& a, const VectorForm& b) { return a.rows_ == b.rows_; }
  friend bool operator!=(const VectorForm& a, const VectorForm& b) { return !(a == b); }

 private:
  void check(const VectorForm& o) const {
    if (n_ != o.n_) throw Error(ErrorKind::ModelMismatch, "vector forms over different models");
  }
  int n_ = 0;
  std::vector<Form<R>> rows_;
};

template <class R>
VectorForm<R> lift(const VectorForm<Scalar>& v) {
  VectorForm<R> out(v.dim());
  for (int g = 0; g < 2 * v.dim(); ++g) out.row(g) = lift<R>(v.row(g));
  return out;
}

/// X⌟a.
template <class R>
Form<R> contract(const VectorForm<R>& x, const Form<R>& a) {
  return substitute_derivation(a, x.rows());
}

/// X⌟Y: X contracts the form part of every row of Y.
template <class R>
VectorForm<R> contract(const VectorForm<R>& x, const VectorForm<R>& y) {
  VectorForm<R> out(y.dim());
  for (int g = 0; g < 2 * y.dim(); ++g) out.row(g) = contract(x, y.row(g));
  return out;
}

/// Contraction by φ ∈ A^{0,1}(T^{1,0}): the derivation with ω^i ↦ φ^i and
/// ω̄^j ↦ 0. Only the holomorphic rows of `phi` are used.
template <class R>
Form<R> contract_vector_form(const VectorForm<R>& phi, const Form<R>& a) {
  VectorForm<R> hol(phi.dim());
  for (int i = 0; i < phi.dim(); ++i) hol.hol_row(i) = phi.hol_row(i);
  return contract(hol, a);
}

enum class Sector { Hol, Antihol };

/// Square matrix over R with value semantics.
template <class R>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = R(Scalar(1));
    return m;
  }

  int size() const { return n_; }
  R& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const R& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  Matrix conj() const {
    Matrix out(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = ring_conj(a_[k]);
    return out;
  }
  bool is_zero() const {
    for (const auto& x : a_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix out(x.n_);
    for (int i = 0; i < x.n_; ++i) {
      for (int k = 0; k < x.n_; ++k) {
        if (x(i, k).is_zero()) continue;
        for (int j = 0; j < x.n_; ++j) out(i, j) += x(i, k) * y(k, j);
      }
    }
    return out;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] += y.a_[k];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] -= y.a_[k];
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

 private:
  int n_ = 0;
  std::vector<R> a_;
};

/// Gauss-Jordan inverse choosing, column by column, the first row whose
/// pivot is a unit of R. Throws NotInvertible naming `what`.
template <class R>
Matrix<R> matrix_inverse(const Matrix<R>& m, const std::string& what) {
  const int n = m.size();
  Matrix<R> a = m;
  Matrix<R> inv = Matrix<R>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (a(r, col).is_unit()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw Error(ErrorKind::NotInvertible, "matrix " + what + " is not invertible");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    R pinv = a(col, col).inverse();
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * pinv;
      inv(col, j) = inv(col, j) * pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      R f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// (1 - M)^{-1} = Σ M^k for M with entries in the truncation ideal.
inline Matrix<Series> neumann_inverse(const Matrix<Series>& m, int order) {
  const int n = m.size();
  Matrix<Series> result = Matrix<Series>::identity(n);
  Matrix<Series> power = result;
  for (int k = 1; k <= order; ++k) {
    power = power * m;
    if (power.is_zero()) break;
    result = result + power;
  }
  return result;
}

/// Endomorphism of a coframe sector as a vector form: generator i of the
/// sector maps to Σ_k M(i,k) · (generator k of the sector).
template <class R>
VectorForm<R> endomorphism_from_matrix(int n, Sector sector, const Matrix<R>& m) {
  VectorForm<R> out(n);
  const int off = sector == Sector::Hol ? 0 : n;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) out.row(off + i).add(Mask{1} << (off + k), m(i, k));
  }
  return out;
}

template <class R>
Matrix<R> matrix_of_endomorphism(const VectorForm<R>& e, Sector sector) {
  const int n = e.dim();
  Matrix<R> m(n);
  const int off = sector == Sector::Hol ? 0 : n;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m(i, k) = e.row(off + i).coeff(Mask{1} << (off + k));
  }
  return m;
}

template <class R>
VectorForm<R> identity_endomorphism(int n, Sector sector) {
  return endomorphism_from_matrix(n, sector, Matrix<R>::identity(n));
}

/// Contraction by a sector endomorphism: the degree-(0,0) derivation
/// ω^i ↦ Σ_k m^i_k ω^k (or its antiholomorphic analogue). The identity of a
/// sector therefore multiplies a (p,q)-form by p (hol) or q (antihol).
template <class R>
Form<R> contract_endomorphism(const VectorForm<R>& m, const Form<R>& a) {
  return contract(m, a);
}

/// Canonical monomial basis of A^{p,q}, lexicographic on (hol, antihol).
std::vector<Mask> basis(int n, Bidegree bd);

}  // namespace deformae
