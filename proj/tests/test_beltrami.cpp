#include <gtest/gtest.h>

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

TEST(Bracket, VanishesOnTorus) {
  const Model t = fx::torus(3);
  EXPECT_TRUE(bracket(theta(3, 1, 2, 3) + theta(3, 2, 1), theta(3, 3, 3, Scalar::i()), t).is_zero());
}

TEST(Bracket, IwasawaHandExpansion) {
  // Only α = ω^3 contributes: -ψ⌟(φ⌟∂ω^3) = -ψ⌟(-ω̄^1∧ω^2) = ω̄^1∧ω̄^2.
  const Model m = fx::iwasawa();
  const auto br = bracket(theta(3, 1, 1), theta(3, 2, 2), m);
  EXPECT_TRUE(br.hol_row(0).is_zero());
  EXPECT_TRUE(br.hol_row(1).is_zero());
  EXPECT_EQ(br.hol_row(2), mono(3, 1, {-1, -2}));
}

TEST(Bracket, SymmetricOnOneForms) {
  const Model m = fx::kodaira_thurston();
  const auto a = theta(2, 1, 2) + theta(2, 2, 1, 3);
  const auto b = theta(2, 2, 2, Scalar::i()) + theta(2, 1, 1, -1);
  EXPECT_EQ(bracket(a, b, m), bracket(b, a, m));
}

TEST(DelbarVector, Examples) {
  EXPECT_TRUE(delbar_vector(fx::torus(2), theta(2, 1, 2)).is_zero());
  const auto r = delbar_vector(fx::iwasawa(), theta(3, 3, 3));
  EXPECT_TRUE(r.hol_row(0).is_zero());
  EXPECT_TRUE(r.hol_row(1).is_zero());
  EXPECT_EQ(r.hol_row(2), mono(3, -1, {-1, -2}));
}

TEST(Integrability, TorusPassesEveryOrder) {
  BeltramiSeries s;
  s.dim = 1;
  s.add_entry(1, 1, 1, Scalar::rational(1, 3));
  const auto rep = check_integrability(fx::torus(1), s, 6);
  EXPECT_TRUE(rep.maurer_cartan.pass);
  EXPECT_TRUE(rep.frame_ideal.pass);
}

TEST(Integrability, IwasawaTheta11) {
  // ∂̄φ = 0 (∂̄ω^i = 0) and [φ,φ]⌟ω^3 = -φ⌟(φ⌟(-ω^1∧ω^2)) = φ⌟(t ω̄^1∧ω^2) = 0.
  BeltramiSeries s;
  s.dim = 3;
  s.add_entry(1, 1, 1, 1);
  const auto rep = check_integrability(fx::iwasawa(), s, 6);
  EXPECT_TRUE(rep.integrable());
  EXPECT_TRUE(rep.agree());
}

TEST(Integrability, InjectedMismatchFailsAtOrderTwo) {
  // Dropping the -ab t² θ_3⊗ω̄^3 term leaves ½[φ_1,φ_1] unbalanced at t².
  const auto rep = check_integrability(fx::iwasawa(), fx::iwasawa_family(1, 1, false), 6);
  EXPECT_FALSE(rep.maurer_cartan.pass);
  EXPECT_EQ(rep.maurer_cartan.leading_order, 2);
  EXPECT_TRUE(rep.agree());
  ASSERT_FALSE(rep.maurer_cartan.residuals.empty());
  EXPECT_FALSE(rep.maurer_cartan.residuals.front().rows.empty());
  EXPECT_TRUE(check_integrability(fx::iwasawa(), fx::iwasawa_family(1, 1, true), 6).integrable());
}

TEST(Integrability, KodairaThurston) {
  BeltramiSeries good;
  good.dim = 2;
  good.add_entry(1, 1, 1, 1);
  EXPECT_TRUE(check_integrability(fx::kodaira_thurston(), good, 6).integrable());
  BeltramiSeries bad;
  bad.dim = 2;
  bad.add_entry(1, 1, 2, 1);
  const auto rep = check_integrability(fx::kodaira_thurston(), bad, 6);
  EXPECT_FALSE(rep.integrable());
  EXPECT_TRUE(rep.agree());
  EXPECT_EQ(rep.maurer_cartan.leading_order, 1);
}

TEST(Endomorphisms, ZeroGivesIdentity) {
  const auto e = build_endomorphisms(VectorForm<Scalar>(2));
  EXPECT_EQ(e.inv_antihol_matrix, Matrix<Scalar>::identity(2));
  EXPECT_EQ(e.inv_hol_matrix, Matrix<Scalar>::identity(2));
}

TEST(Endomorphisms, OneDimensionalGeometricSeries) {
  const Scalar c = Scalar::parse("1/2+i");
  BeltramiSeries s;
  s.dim = 1;
  s.add_entry(1, 1, 1, c);
  const int N = 6;
  const auto e = build_endomorphisms(s.as_series(N), N);
  const Scalar norm(c.norm(), 0);
  EXPECT_EQ(e.phibar_phi_matrix(0, 0), series_term(norm, 1, 1, N));
  EXPECT_EQ(e.inv_antihol_matrix(0, 0), oracle::geometric(norm, 1, 1, N));
  EXPECT_EQ(e.inv_hol_matrix(0, 0), oracle::geometric(norm, 1, 1, N));
}

TEST(Endomorphisms, DegenerateValue) {
  BeltramiSeries s;
  s.dim = 1;
  s.add_entry(1, 1, 1, 1);
  try {
    const Model t = fx::torus(1);
    value_context(t, s, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degenerate);
  }
  try {
    build_endomorphisms(s.evaluate(Scalar::i()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}
