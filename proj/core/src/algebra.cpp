#include "deformae/algebra.hpp"

#include <algorithm>

namespace deformae {

Mask mask_of(int n, const Monomial& mono) {
  Mask m = 0;
  auto put = [&](int g) {
    Mask bit = Mask{1} << g;
    if (m & bit) throw Error(ErrorKind::Parse, "repeated factor in monomial");
    m |= bit;
  };
  int prev = 0;
  for (int i : mono.hol) {
    if (i < 1 || i > n || i <= prev) throw Error(ErrorKind::Parse, "holomorphic indices must be strictly increasing in 1..n");
    prev = i;
    put(i - 1);
  }
  prev = 0;
  for (int j : mono.antihol) {
    if (j < 1 || j > n || j <= prev) throw Error(ErrorKind::Parse, "antiholomorphic indices must be strictly increasing in 1..n");
    prev = j;
    put(n + j - 1);
  }
  return m;
}

Monomial monomial_of(int n, Mask m) {
  Monomial out;
  for (int g = 0; g < 2 * n; ++g) {
    if (!(m & (Mask{1} << g))) continue;
    if (g < n) {
      out.hol.push_back(g + 1);
    } else {
      out.antihol.push_back(g - n + 1);
    }
  }
  return out;
}

std::pair<Mask, int> normalize_factors(int n, const std::vector<int>& factors) {
  Mask m = 0;
  int sign = 1;
  for (int f : factors) {
    if (f == 0 || f > n || -f > n) throw Error(ErrorKind::Parse, "factor index " + std::to_string(f) + " out of range");
    Mask bit = Mask{1} << (f > 0 ? f - 1 : n - f - 1);
    int s = merge_sign(m, bit);
    if (s == 0) return {0, 0};
    sign *= s;
    m |= bit;
  }
  return {m, sign};
}

std::string monomial_str(int n, Mask m) {
  std::string out;
  for (int g = 0; g < 2 * n; ++g) {
    if (!(m & (Mask{1} << g))) continue;
    if (!out.empty()) out += "^";
    out += g < n ? "w" + std::to_string(g + 1) : "wb" + std::to_string(g - n + 1);
  }
  return out.empty() ? "1" : out;
}

std::pair<Mask, int> conjugate_mask(Mask m, int n) {
  const Mask h = hol_part(m, n);
  const Mask a = antihol_part(m, n) >> n;
  // conj(ω^H ∧ ω̄^A) = ω̄^H ∧ ω^A = (-1)^{|H||A|} ω^A ∧ ω̄^H.
  const int sign = ((std::popcount(h) * std::popcount(a)) & 1) ? -1 : 1;
  return {a | (h << n), sign};
}

std::vector<Mask> basis(int n, Bidegree bd) {
  std::vector<Mask> hols;
  std::vector<Mask> antis;
  if (bd.p < 0 || bd.q < 0 || bd.p > n || bd.q > n) return {};
  for (Mask h = 0; h < (Mask{1} << n); ++h) {
    if (std::popcount(h) == bd.p) hols.push_back(h);
    if (std::popcount(h) == bd.q) antis.push_back(h);
  }
  // Lexicographic on increasing index lists.
  auto lex = [n](Mask x, Mask y) {
    auto a = monomial_of(n, x).hol;
    auto b = monomial_of(n, y).hol;
    return a < b;
  };
  std::sort(hols.begin(), hols.end(), lex);
  std::sort(antis.begin(), antis.end(), lex);
  std::vector<Mask> out;
  for (Mask h : hols) {
    for (Mask a : antis) out.push_back(h | (a << n));
  }
  return out;
}

}  // namespace deformae
