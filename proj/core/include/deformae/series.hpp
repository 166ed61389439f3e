#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "deformae/scalar.hpp"

namespace deformae {

/// Exponent vector of a truncated polynomial. Variables come in conjugate
/// pairs: slots [0, pairs) are the holomorphic variables (t, or z^1..z^n),
/// slots [pairs, 2*pairs) their conjugates.
inline constexpr int kMaxPairs = 4;
using Exponent = std::array<std::uint8_t, 2 * kMaxPairs>;

/// Polynomial in conjugate variable pairs with Scalar coefficients, truncated
/// at total degree `order`. With one pair this is a bivariate formal series in
/// (t, t̄); with n pairs it is a chart coefficient in (z, z̄).
///
/// A default-constructed value is an unbound constant: it carries no shape
/// and adopts the shape of whatever it is combined with. Combining two bound
/// values of different shape throws an order-mismatch error.
class Truncated {
 public:
  Truncated() = default;
  Truncated(const Scalar& c);  // NOLINT(google-explicit-constructor)
  Truncated(long c) : Truncated(Scalar(c)) {}  // NOLINT(google-explicit-constructor)

  static Truncated zero(int pairs, int order);
  static Truncated constant(const Scalar& c, int pairs, int order);
  /// Single monomial c * x^e; dropped (and flagged) when deg e > order.
  static Truncated monomial(const Scalar& c, const Exponent& e, int pairs, int order);

  bool bound() const { return order_ >= 0; }
  int pairs() const { return pairs_; }
  int order() const { return order_; }
  /// Set when some product discarded nonzero terms beyond the order.
  bool truncated() const { return truncated_; }

  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  Scalar coeff(const Exponent& e) const;
  Scalar constant_term() const;

  bool is_zero() const { return terms_.empty(); }
  bool is_unit() const { return !constant_term().is_zero(); }

  Truncated conj() const;
  /// Multiplicative inverse modulo the truncation ideal. Requires a nonzero
  /// constant term.
  Truncated inverse() const;
  /// Formal partial derivative in slot `var` (0 <= var < 2*pairs).
  Truncated derivative(int var) const;
  /// Terms of total degree <= deg.
  Truncated below(int deg) const;
  /// Terms of total degree exactly deg.
  Truncated homogeneous(int deg) const;
  /// Smallest total degree with a nonzero term, or -1 for zero.
  int lowest_degree() const;

  Truncated operator-() const;
  Truncated& operator+=(const Truncated& o);
  Truncated& operator-=(const Truncated& o);
  Truncated& operator*=(const Truncated& o);
  Truncated& operator*=(const Scalar& s);

  friend Truncated operator+(Truncated a, const Truncated& b) { return a += b; }
  friend Truncated operator-(Truncated a, const Truncated& b) { return a -= b; }
  friend Truncated operator*(const Truncated& a, const Truncated& b);
  friend Truncated operator*(Truncated a, const Scalar& s) { return a *= s; }
  friend Truncated operator*(const Scalar& s, Truncated a) { return a *= s; }
  /// Coefficient-wise equality; shapes are ignored (an unbound zero equals
  /// a bound zero), the truncation flag too.
  friend bool operator==(const Truncated& a, const Truncated& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Truncated& a, const Truncated& b) { return !(a == b); }

  std::string str() const;
  /// Text in chart coordinates z1.., zb1.. whatever the number of pairs.
  std::string chart_str() const;

 private:
  std::string render(bool chart) const;
  void adopt(const Truncated& o);
  void add_term(const Exponent& e, const Scalar& c);

  int pairs_ = -1;
  int order_ = -1;
  bool truncated_ = false;
  std::map<Exponent, Scalar> terms_;
};

std::ostream& operator<<(std::ostream& os, const Truncated& s);

inline Truncated conj(const Truncated& s) { return s.conj(); }

int total_degree(const Exponent& e);

/// Formal series in t and t̄ truncated at total degree N.
using Series = Truncated;
/// Chart coefficient: polynomial in z^1..z^n, z̄^1..z̄^n truncated at degree D.
using ChartPoly = Truncated;

inline constexpr int kDefaultOrder = 6;

/// t^j t̄^k * c at truncation order N.
Series series_term(const Scalar& c, int j, int k, int order);
Scalar series_coeff(const Series& s, int j, int k);
Series series_mul(const Series& a, const Series& b);
Series series_invert(const Series& a);

/// Coefficient of z^e zbar^f * c in an n-variable chart ring.
ChartPoly chart_term(const Scalar& c, const std::array<int, kMaxPairs>& z,
                     const std::array<int, kMaxPairs>& zbar, int n, int maxdeg);
ChartPoly chart_variable(int index, bool conjugate, int n, int maxdeg);

}  // namespace deformae
