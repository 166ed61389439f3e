#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace deformae;
using fx::mono;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Parse;
}

}  // namespace

TEST(Models, AcceptsTorusAndIwasawa) {
  EXPECT_NO_THROW(fx::torus(3));
  const Model m = fx::iwasawa();
  // d(dω^3) = -d(ω^1 ^ ω^2) = 0 because ω^1, ω^2 are closed.
  for (int g = 0; g < 6; ++g) EXPECT_TRUE(d(m, m.d_generator(g)).is_zero());
}

TEST(Models, RejectsNonzeroDSquared) {
  // d(w1) = w2 ^ wb2, d(w2) = w1 ^ wb1: d²w1 = dw2 ^ wb2 - w2 ^ dwb2
  //   = w1 ^ wb1 ^ wb2 - w2 ^ wb1 ^ w1 = w1 ^ wb1 ^ wb2 + w1 ^ w2 ^ wb1 != 0.
  EXPECT_EQ(kind_of([] { Model::invariant("broken", 2, {mono(2, 1, {2, -2}), mono(2, 1, {1, -1})}); }),
            ErrorKind::Validation);
}

TEST(Models, RejectsZeroTwoPart) {
  try {
    Model::invariant("j", 2, {mono(2, 1, {-1, -2}), Form<Scalar>(2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_NE(std::string(e.what()).find("(0,2)"), std::string::npos);
  }
}

TEST(Models, RejectsNonTwoForms) {
  EXPECT_EQ(kind_of([] { Model::invariant("x", 2, {mono(2, 1, {2}), Form<Scalar>(2)}); }), ErrorKind::Validation);
}

TEST(Models, Differentials) {
  const Model t = fx::torus(3);
  EXPECT_TRUE(d(t, mono(3, 1, {1, -2})).is_zero());

  const Model m = fx::iwasawa();
  EXPECT_EQ(del(m, mono(3, 1, {3})), mono(3, -1, {1, 2}));
  EXPECT_TRUE(delbar(m, mono(3, 1, {3})).is_zero());
  EXPECT_EQ(delbar(m, mono(3, 1, {-3})), mono(3, -1, {-1, -2}));
  EXPECT_TRUE(del(m, mono(3, 1, {-1})).is_zero());
}

TEST(Models, KodairaThurstonMixedType) {
  const Model m = fx::kodaira_thurston();
  EXPECT_EQ(del(m, mono(2, 1, {-2})), mono(2, -1, {1, -1}));
  EXPECT_EQ(delbar(m, mono(2, 1, {2})), mono(2, 1, {1, -1}));
  for (int p = 0; p <= 2; ++p) {
    for (int q = 0; q <= 2; ++q) {
      for (Mask b : basis(2, {p, q})) {
        const auto w = Form<Scalar>::monomial(2, b, 1);
        EXPECT_TRUE(delbar(m, delbar(m, w)).is_zero());
        EXPECT_TRUE((del(m, delbar(m, w)) + delbar(m, del(m, w))).is_zero());
        EXPECT_EQ(d(m, w), del(m, w) + delbar(m, w));
      }
    }
  }
}

TEST(Models, ChartDifferentialOfCoordinates) {
  const Model c = Model::chart("c", 1, 4);
  Form<ChartPoly> f(1);
  f.add(0, chart_term(1, {1}, {1}, 1, 4));  // z zbar
  const auto df = d(c, f);
  EXPECT_EQ(df.coeff(mask_of(1, Monomial{{1}, {}})), chart_term(1, {0}, {1}, 1, 4));
  EXPECT_EQ(df.coeff(mask_of(1, Monomial{{}, {1}})), chart_term(1, {1}, {0}, 1, 4));
  EXPECT_TRUE(d(c, df).is_zero());
}
