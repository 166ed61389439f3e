#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace deformae;

TEST(Scalar, ParsesExactValues) {
  EXPECT_EQ(Scalar::parse("1/10+1/7i"), Scalar(mpq_class(1, 10), mpq_class(1, 7)));
  EXPECT_EQ(Scalar::parse("-i"), Scalar(0, -1));
  EXPECT_EQ(Scalar::parse("-2/3i"), Scalar(0, mpq_class(-2, 3)));
  EXPECT_EQ(Scalar::parse(" 3 "), Scalar(3));
  EXPECT_EQ(Scalar::parse("2/4"), Scalar::rational(1, 2));
}

TEST(Scalar, RejectsInexactInput) {
  for (const char* bad : {"0.1", "1e3", "", "1//2", "abc", "1/0"}) {
    try {
      Scalar::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << bad;
    }
  }
}

TEST(Scalar, CanonicalText) {
  EXPECT_EQ(Scalar::parse("1/2-3/5i").str(), "1/2-3/5i");
  EXPECT_EQ(Scalar(0).str(), "0");
  EXPECT_EQ(Scalar(0, -1).str(), "-i");
  EXPECT_EQ(Scalar::parse(Scalar::parse("-7/3+2i").str()), Scalar::parse("-7/3+2i"));
}

TEST(Scalar, FieldOperations) {
  const Scalar z = Scalar::parse("1/2+i");
  EXPECT_EQ(z * z.inverse(), Scalar(1));
  EXPECT_EQ(z * z.conj(), Scalar(mpq_class(5, 4), 0));
  EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
  EXPECT_THROW(Scalar(0).inverse(), Error);
}

TEST(Series, Products) {
  const Series one = series_term(1, 0, 0, 2);
  const Series t = series_term(1, 1, 0, 2);
  const Series tb = series_term(1, 0, 1, 2);
  EXPECT_EQ((one + t) * (one - t), one - t * t);
  EXPECT_EQ(series_coeff((one + t) * (one - t), 2, 0), Scalar(-1));

  const Series one1 = series_term(1, 0, 0, 1);
  const Series t1 = series_term(1, 1, 0, 1);
  const Series p = (one1 + t1) * (one1 - t1);
  EXPECT_EQ(p, one1);
  EXPECT_TRUE(p.truncated());

  const Series sq = (t + tb) * (t + tb);
  EXPECT_EQ(series_coeff(sq, 2, 0), Scalar(1));
  EXPECT_EQ(series_coeff(sq, 1, 1), Scalar(2));
  EXPECT_EQ(series_coeff(sq, 0, 2), Scalar(1));
}

TEST(Series, MismatchedOrdersThrow) {
  try {
    series_mul(series_term(1, 1, 0, 2), series_term(1, 1, 0, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderMismatch);
  }
}

TEST(Series, Inverses) {
  const Series inv = series_invert(series_term(1, 0, 0, 3) - series_term(1, 1, 0, 3));
  EXPECT_EQ(inv, oracle::geometric(1, 1, 0, 3));

  EXPECT_EQ(series_invert(series_term(2, 0, 0, 2)), series_term(Scalar::rational(1, 2), 0, 0, 2));

  // 1/(1 + t t̄) = 1 - t t̄ + t² t̄² at N = 4, checked by multiplying back.
  const Series a = series_term(1, 0, 0, 4) + series_term(1, 1, 1, 4);
  const Series b = series_invert(a);
  EXPECT_EQ(b, series_term(1, 0, 0, 4) - series_term(1, 1, 1, 4) + series_term(1, 2, 2, 4));
  EXPECT_EQ(a * b, series_term(1, 0, 0, 4));

  try {
    series_invert(series_term(1, 1, 0, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}

TEST(Series, ConjugationSwapsVariables) {
  const Series s = series_term(Scalar::parse("1+2i"), 2, 1, 4);
  EXPECT_EQ(s.conj(), series_term(Scalar::parse("1-2i"), 1, 2, 4));
}
