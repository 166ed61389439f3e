#include "deformae/series.hpp"

#include <sstream>

#include "deformae/errors.hpp"

namespace deformae {

int total_degree(const Exponent& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

Truncated::Truncated(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Exponent{}, c);
}

Truncated Truncated::zero(int pairs, int order) {
  if (pairs < 1 || pairs > kMaxPairs || order < 0) {
    throw Error(ErrorKind::Unsupported, "unsupported truncated-polynomial shape");
  }
  Truncated t;
  t.pairs_ = pairs;
  t.order_ = order;
  return t;
}

Truncated Truncated::constant(const Scalar& c, int pairs, int order) {
  Truncated t = zero(pairs, order);
  if (!c.is_zero()) t.terms_.emplace(Exponent{}, c);
  return t;
}

Truncated Truncated::monomial(const Scalar& c, const Exponent& e, int pairs, int order) {
  Truncated t = zero(pairs, order);
  for (int k = 2 * pairs; k < 2 * kMaxPairs; ++k) {
    if (e[k] != 0) throw Error(ErrorKind::Unsupported, "exponent outside variable range");
  }
  if (total_degree(e) > order) {
    t.truncated_ = !c.is_zero();
  } else if (!c.is_zero()) {
    t.terms_.emplace(e, c);
  }
  return t;
}

Scalar Truncated::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar Truncated::constant_term() const { return coeff(Exponent{}); }

void Truncated::adopt(const Truncated& o) {
  if (!o.bound()) return;
  if (!bound()) {
    pairs_ = o.pairs_;
    order_ = o.order_;
    return;
  }
  if (pairs_ != o.pairs_ || order_ != o.order_) {
    throw Error(ErrorKind::OrderMismatch,
                "truncation mismatch: order " + std::to_string(order_) + " vs " +
                    std::to_string(o.order_));
  }
}

void Truncated::add_term(const Exponent& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Truncated Truncated::conj() const {
  Truncated out;
  out.pairs_ = pairs_;
  out.order_ = order_;
  out.truncated_ = truncated_;
  if (terms_.empty()) return out;
  int p = bound() ? pairs_ : 0;
  for (const auto& [e, c] : terms_) {
    Exponent f{};
    for (int k = 0; k < p; ++k) {
      f[k] = e[k + p];
      f[k + p] = e[k];
    }
    out.terms_.emplace(f, c.conj());
  }
  return out;
}

Truncated Truncated::operator-() const {
  Truncated out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Truncated& Truncated::operator+=(const Truncated& o) {
  adopt(o);
  truncated_ = truncated_ || o.truncated_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Truncated& Truncated::operator-=(const Truncated& o) {
  adopt(o);
  truncated_ = truncated_ || o.truncated_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Truncated operator*(const Truncated& a, const Truncated& b) {
  Truncated out;
  out.pairs_ = a.pairs_;
  out.order_ = a.order_;
  out.adopt(b);
  out.truncated_ = a.truncated_ || b.truncated_;
  if (a.terms_.empty() || b.terms_.empty()) return out;
  const int slots = out.bound() ? 2 * out.pairs_ : 0;
  for (const auto& [ea, ca] : a.terms_) {
    const int da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (out.bound() && da + total_degree(eb) > out.order_) {
        out.truncated_ = true;
        continue;
      }
      Exponent e{};
      for (int k = 0; k < slots; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Truncated& Truncated::operator*=(const Truncated& o) { return *this = *this * o; }

Truncated& Truncated::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Truncated Truncated::inverse() const {
  Scalar c0 = constant_term();
  if (c0.is_zero()) throw Error(ErrorKind::NotInvertible, "series with zero constant term is not invertible");
  Scalar c0inv = c0.inverse();
  if (!bound()) return Truncated(c0inv);
  // 1/(c0 (1 + u)) = c0^{-1} sum_k (-u)^k, u nilpotent modulo the order.
  Truncated u = *this * c0inv;
  u -= Truncated::constant(1, pairs_, order_);
  Truncated minus_u = -u;
  Truncated result = Truncated::constant(1, pairs_, order_);
  Truncated power = result;
  for (int k = 1; k <= order_; ++k) {
    power = power * minus_u;
    if (power.is_zero()) break;
    result += power;
  }
  result.truncated_ = truncated_;
  return result * c0inv;
}

Truncated Truncated::derivative(int var) const {
  Truncated out;
  out.pairs_ = pairs_;
  out.order_ = order_;
  out.truncated_ = truncated_;
  if (!bound()) return out;
  if (var < 0 || var >= 2 * pairs_) throw Error(ErrorKind::Unsupported, "derivative variable out of range");
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    out.add_term(f, c * Scalar(static_cast<long>(e[var])));
  }
  return out;
}

Truncated Truncated::below(int deg) const {
  Truncated out = *this;
  std::erase_if(out.terms_, [deg](const auto& kv) { return total_degree(kv.first) > deg; });
  return out;
}

Truncated Truncated::homogeneous(int deg) const {
  Truncated out = *this;
  std::erase_if(out.terms_, [deg](const auto& kv) { return total_degree(kv.first) != deg; });
  return out;
}

int Truncated::lowest_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = total_degree(e);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

std::string Truncated::str() const { return render(false); }

std::string Truncated::chart_str() const { return render(true); }

std::string Truncated::render(bool chart) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const int p = bound() ? pairs_ : 0;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int k = 0; k < 2 * p; ++k) {
      if (e[k] == 0) continue;
      std::string name;
      if (p == 1 && !chart) {
        name = k == 0 ? "t" : "tb";
      } else {
        name = (k < p ? "z" : "zb") + std::to_string(k % p + 1);
      }
      os << "*" << name;
      if (e[k] > 1) os << "^" << static_cast<int>(e[k]);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Truncated& s) { return os << s.str(); }

Series series_term(const Scalar& c, int j, int k, int order) {
  Exponent e{};
  e[0] = static_cast<std::uint8_t>(j);
  e[1] = static_cast<std::uint8_t>(k);
  return Truncated::monomial(c, e, 1, order);
}

Scalar series_coeff(const Series& s, int j, int k) {
  Exponent e{};
  e[0] = static_cast<std::uint8_t>(j);
  e[1] = static_cast<std::uint8_t>(k);
  return s.coeff(e);
}

Series series_mul(const Series& a, const Series& b) {
  if (a.bound() && b.bound() && a.order() != b.order()) {
    throw Error(ErrorKind::OrderMismatch, "series_mul: truncation orders " +
                                              std::to_string(a.order()) + " and " +
                                              std::to_string(b.order()) + " differ");
  }
  return a * b;
}

Series series_invert(const Series& a) { return a.inverse(); }

ChartPoly chart_term(const Scalar& c, const std::array<int, kMaxPairs>& z,
                     const std::array<int, kMaxPairs>& zbar, int n, int maxdeg) {
  Exponent e{};
  for (int k = 0; k < n; ++k) {
    e[k] = static_cast<std::uint8_t>(z[k]);
    e[k + n] = static_cast<std::uint8_t>(zbar[k]);
  }
  for (int k = n; k < kMaxPairs; ++k) {
    if (z[k] != 0 || zbar[k] != 0) throw Error(ErrorKind::Unsupported, "chart variable beyond dimension");
  }
  return Truncated::monomial(c, e, n, maxdeg);
}

ChartPoly chart_variable(int index, bool conjugate, int n, int maxdeg) {
  std::array<int, kMaxPairs> z{};
  std::array<int, kMaxPairs> zb{};
  (conjugate ? zb : z)[index] = 1;
  return chart_term(1, z, zb, n, maxdeg);
}

}  // namespace deformae
