#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace deformae;
using fx::mono;

namespace {

VectorForm<Scalar> theta(int n, int i, int j, const Scalar& c = 1) {
  VectorForm<Scalar> v(n);
  v.hol_row(i - 1).add(Mask{1} << (n + j - 1), c);
  return v;
}

}  // namespace

TEST(Algebra, WedgeOrdering) {
  const auto w1 = mono(3, 1, {1});
  const auto w2 = mono(3, 1, {2});
  const Form<Scalar> a = wedge(w1, w2);
  const Form<Scalar> b = wedge(w2, w1);
  const Mask m12 = mask_of(3, Monomial{{1, 2}, {}});
  EXPECT_EQ(a.coeff(m12), Scalar(1));
  EXPECT_EQ(b.coeff(m12), Scalar(-1));
  EXPECT_TRUE(wedge(w1, w1).is_zero());
}

TEST(Algebra, Conjugation) {
  EXPECT_EQ(mono(3, 1, {1}).conj(), mono(3, 1, {-1}));
  // conj(i w1 ^ wb2) = -i wb1 ^ w2 = +i w2 ^ wb1.
  EXPECT_EQ(mono(3, Scalar::i(), {1, -2}).conj(), mono(3, Scalar::i(), {2, -1}));
  std::mt19937_64 rng(7);
  for (int s = 0; s < 50; ++s) {
    Form<Scalar> a(3);
    for (int k = 0; k < 4; ++k) {
      a.add(static_cast<Mask>(rng() % 64), Scalar(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 5) - 2));
    }
    EXPECT_EQ(a.conj().conj(), a);
  }
}

TEST(Algebra, ContractionIsADerivation) {
  const auto phi = theta(3, 1, 1);
  EXPECT_EQ(contract(phi, mono(3, 1, {1})), mono(3, 1, {-1}));
  EXPECT_EQ(contract(phi, mono(3, 1, {1, 2})), mono(3, 1, {-1, 2}));
  EXPECT_TRUE(contract(phi, mono(3, 1, {-2})).is_zero());
}

TEST(Algebra, EndomorphismCounting) {
  const auto id = identity_endomorphism<Scalar>(3, Sector::Hol);
  EXPECT_EQ(contract_endomorphism(id, mono(3, 1, {1, 2})), mono(3, 2, {1, 2}));

  Matrix<Scalar> diag(3);
  diag(0, 0) = 2;
  diag(1, 1) = 1;
  diag(2, 2) = 1;
  EXPECT_EQ(contract_endomorphism(endomorphism_from_matrix(3, Sector::Hol, diag), mono(3, 1, {1})), mono(3, 2, {1}));

  EXPECT_TRUE(contract_endomorphism(VectorForm<Scalar>(3), mono(3, 1, {1, -2})).is_zero());
}

TEST(Algebra, BasisOrder) {
  const auto b10 = basis(3, {1, 0});
  ASSERT_EQ(b10.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(b10[i], Mask{1} << i);

  const auto b11 = basis(3, {1, 1});
  ASSERT_EQ(b11.size(), 9u);
  std::vector<Monomial> seen;
  for (Mask m : b11) seen.push_back(monomial_of(3, m));
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));

  const auto top = basis(2, {2, 2});
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0], mask_of(2, Monomial{{1, 2}, {1, 2}}));

  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) {
      EXPECT_EQ(static_cast<long>(basis(3, {p, q}).size()), oracle::binomial(3, p) * oracle::binomial(3, q));
    }
  }
}

TEST(Algebra, NormalizeFactors) {
  auto [m, s] = normalize_factors(3, {-1, 2});
  EXPECT_EQ(m, mask_of(3, Monomial{{2}, {1}}));
  EXPECT_EQ(s, -1);
  EXPECT_EQ(normalize_factors(3, {2, 2}).second, 0);
}
