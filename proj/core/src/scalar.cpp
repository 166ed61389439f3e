#include "deformae/scalar.hpp"

#include <cctype>

#include "deformae/errors.hpp"

namespace deformae {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

mpq_class parse_rational(const std::string& text, std::string_view whole) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty number in '" + std::string(whole) + "'");
  for (char c : text) {
    if (c == '.' || c == 'e' || c == 'E') {
      throw Error(ErrorKind::Parse,
                  "'" + std::string(whole) +
                      "' is not exact: only integers, fractions p/q and Gaussian rationals "
                      "like 1/10+1/7i are accepted");
    }
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') {
      throw Error(ErrorKind::Parse, "malformed number '" + std::string(whole) + "'");
    }
  }
  auto slash = text.find('/');
  if (slash == 0 || slash + 1 == text.size() ||
      (slash != std::string::npos && text.find('/', slash + 1) != std::string::npos)) {
    throw Error(ErrorKind::Parse, "malformed fraction '" + std::string(whole) + "'");
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error(ErrorKind::Parse, "malformed number '" + std::string(whole) + "'");
  if (slash != std::string::npos && sgn(q.get_den()) == 0) {
    throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(whole) + "'");
  }
  q.canonicalize();
  return q;
}

// One signed term: "+3/4", "-i", "2i".
void accumulate_term(const std::string& term, std::string_view whole, mpq_class& re,
                     mpq_class& im) {
  std::string body = term;
  int sign = 1;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    sign = body[0] == '-' ? -1 : 1;
    body = trim(body.substr(1));
  }
  if (body.empty()) throw Error(ErrorKind::Parse, "malformed number '" + std::string(whole) + "'");
  bool imaginary = body.back() == 'i';
  if (imaginary) {
    body.pop_back();
    body = trim(body);
    if (!body.empty() && body.back() == '*') body = trim(body.substr(0, body.size() - 1));
  }
  mpq_class v = imaginary && body.empty() ? mpq_class(1) : parse_rational(body, whole);
  if (sign < 0) v = -v;
  if (imaginary) {
    im += v;
  } else {
    re += v;
  }
}

std::string rational_str(const mpq_class& q) { return q.get_str(10); }

}  // namespace

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::NotInvertible, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q, 0);
}

Scalar Scalar::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty number");
  mpq_class re = 0;
  mpq_class im = 0;
  // Split at '+'/'-' that are not leading and not right after '/'.
  size_t start = 0;
  for (size_t k = 1; k <= s.size(); ++k) {
    bool cut = k == s.size();
    if (!cut && (s[k] == '+' || s[k] == '-')) {
      size_t prev = k;
      while (prev > 0 && std::isspace(static_cast<unsigned char>(s[prev - 1]))) --prev;
      cut = prev > 0 && s[prev - 1] != '/' && s[prev - 1] != 'e' && s[prev - 1] != 'E';
    }
    if (cut) {
      accumulate_term(trim(std::string_view(s).substr(start, k - start)), text, re, im);
      start = k;
    }
  }
  return Scalar(re, im);
}

Scalar Scalar::inverse() const {
  mpq_class n = norm();
  if (sgn(n) == 0) throw Error(ErrorKind::NotInvertible, "division by zero scalar");
  return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(re_) != 0) out = rational_str(re_);
  if (sgn(im_) != 0) {
    mpq_class a = abs(im_);
    std::string mag = a == 1 ? "" : rational_str(a);
    if (sgn(im_) < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    out += mag + "i";
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace deformae
