#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace deformae;

namespace {

std::vector<Form<Scalar>> all_basis_forms(int n, int maxdeg) {
  std::vector<Form<Scalar>> out;
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      if (p + q > maxdeg) continue;
      for (Mask m : basis(n, {p, q})) out.push_back(Form<Scalar>::monomial(n, m, Scalar(1)));
    }
  }
  return out;
}

}  // namespace

TEST(Transport, MasterIdentityValueIwasawa) {
  Model m = fx::iwasawa();
  auto fam = fx::iwasawa_family(1, Scalar::rational(1, 2));
  auto ctx = value_context(m, fam, Scalar::rational(1, 3));
  ASSERT_TRUE(context_integrable(ctx));
  for (const auto& w : all_basis_forms(3, 6)) {
    auto r = extension_residual(ctx, w);
    EXPECT_TRUE(r.residual.is_zero()) << form_str(w) << " -> " << form_str(r.residual);
  }
}

TEST(Transport, MasterIdentitySeriesIwasawa) {
  Model m = fx::iwasawa();
  auto fam = fx::iwasawa_family(1, Scalar(0, 1));
  auto ctx = series_context(m, fam, 4);
  for (const auto& w : all_basis_forms(3, 3)) {
    auto r = extension_residual(ctx, lift<Series>(w));
    EXPECT_TRUE(r.residual.is_zero()) << form_str(w) << " -> " << form_str(r.residual);
  }
}

TEST(Transport, P0AndGeneralAgree) {
  Model m = fx::iwasawa();
  auto ctx = value_context(m, fx::iwasawa_family(1, 2), Scalar::rational(1, 5));
  for (int p = 0; p <= 3; ++p) {
    for (Mask b : basis(3, {p, 0})) {
      auto w = Form<Scalar>::monomial(3, b, 1);
      EXPECT_EQ(extension_formula_p0(ctx, w), extension_formula_general(ctx, w)) << form_str(w);
    }
  }
  for (int q = 0; q <= 3; ++q) {
    for (Mask b : basis(3, {0, q})) {
      auto w = Form<Scalar>::monomial(3, b, 1);
      EXPECT_EQ(extension_formula_0q(ctx, w), extension_formula_general(ctx, w)) << form_str(w);
    }
  }
}

TEST(Transport, CanonicalMapDefinitionsAgree) {
  Model m = fx::iwasawa();
  auto ctx = value_context(m, fx::iwasawa_family(1, 2), Scalar::rational(1, 5));
  for (const auto& w : all_basis_forms(3, 6)) {
    EXPECT_EQ(canonical_map(ctx, w), canonical_map_by_blocks(ctx, w));
    EXPECT_EQ(inverse_canonical_map(ctx, canonical_map(ctx, w)), w);
  }
}

TEST(Transport, IntegrabilityIwasawa) {
  Model m = fx::iwasawa();
  auto good = check_integrability(m, fx::iwasawa_family(1, 1), 5);
  EXPECT_TRUE(good.integrable());
  EXPECT_TRUE(good.agree());
  auto bad = check_integrability(m, fx::iwasawa_family(1, 1, false), 5);
  EXPECT_FALSE(bad.integrable());
  EXPECT_TRUE(bad.agree());
  EXPECT_EQ(bad.maurer_cartan.leading_order, 2);
}

TEST(Transport, ZeroDeformationCollapsesToD) {
  for (const Model& m : {fx::iwasawa(), fx::kodaira_thurston(), fx::solvable_b()}) {
    BeltramiSeries zero;
    zero.dim = m.dim();
    auto ctx = series_context(m, zero, 3);
    for (const auto& w0 : all_basis_forms(m.dim(), 2 * m.dim())) {
      const auto w = lift<Series>(w0);
      const auto dw = lift<Series>(d(m, w0));
      const auto bd = *w0.bidegree();
      EXPECT_EQ(extension_formula_general(ctx, w), dw);
      if (bd.q == 0) EXPECT_EQ(extension_formula_p0(ctx, w), dw);
      if (bd.p == 0) EXPECT_EQ(extension_formula_0q(ctx, w), dw);
    }
  }
}

TEST(Transport, AbelianResidual) {
  const Model t = fx::torus(1);
  auto ctx = series_context(t, fx::single(1, 1, 1, Scalar::parse("2/3-i")), 6);
  const auto w = lift<Series>(fx::mono(1, 1, {1, -1}));
  const auto r = extension_residual(ctx, w);
  EXPECT_TRUE(r.lhs.is_zero());
  EXPECT_TRUE(r.rhs.is_zero());
}

TEST(Transport, ConjugationSymmetry) {
  const Model m = fx::kodaira_thurston();
  auto ctx = series_context(m, fx::single(2, 1, 1, Scalar::parse("1/2+i")), 5);
  for (int q = 0; q <= 2; ++q) {
    for (Mask b : basis(2, {0, q})) {
      const auto w = lift<Series>(Form<Scalar>::monomial(2, b, 1));
      EXPECT_EQ(extension_formula_0q(ctx, w), extension_formula_p0(ctx, w.conj()).conj());
    }
  }
}

TEST(Transport, DeformedDolbeaultSquaresToZero) {
  const Model m = fx::iwasawa();
  auto ctx = value_context(m, fx::iwasawa_family(1, 1), Scalar::rational(1, 10));
  for (const auto& w : all_basis_forms(3, 5)) {
    const auto dd = deformed_dolbeault(ctx, w);
    EXPECT_TRUE(deformed_dolbeault(ctx, dd.delbar_t).delbar_t.is_zero()) << form_str(w);
  }
  auto bad = value_context(m, fx::iwasawa_family(1, 1, false), Scalar::rational(1, 10));
  EXPECT_FALSE(context_integrable(bad));
  try {
    deformed_dolbeault(bad, fx::mono(3, 1, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Integrability);
  }
}

namespace {

Form<ChartPoly> coordinate(int n, int D, int i, bool conjugate, const Scalar& c = 1) {
  std::array<int, kMaxPairs> z{}, zb{};
  (conjugate ? zb : z)[i] = 1;
  Form<ChartPoly> f(n);
  f.add(0, chart_term(c, z, zb, n, D));
  return f;
}

VectorForm<ChartPoly> chart_theta(const Model& m, int i, int j, const ChartPoly& c) {
  VectorForm<ChartPoly> v(m.dim());
  v.hol_row(i).add(Mask{1} << (m.dim() + j), c);
  return v;
}

}  // namespace

TEST(Chart, HolomorphicityAtZero) {
  const Model c = Model::chart("c", 1, 5);
  auto ctx = chart_context(c, VectorForm<ChartPoly>(1));
  EXPECT_TRUE(holomorphicity_criterion(ctx, coordinate(1, 5, 0, false)).holomorphic);
  const auto r = holomorphicity_criterion(ctx, coordinate(1, 5, 0, true));
  EXPECT_FALSE(r.holomorphic);
  Form<ChartPoly> dzb(1);
  dzb.add(Mask{1} << 1, chart_term(1, {}, {}, 1, 5));
  EXPECT_EQ(r.obstruction, dzb);
  EXPECT_TRUE(r.df_identity_holds);
}

TEST(Chart, DeformedCoordinateIsHolomorphic) {
  // ∂̄f - φ⌟∂f = c dz̄ - c dz̄ for f = z + c z̄.
  const Model m = Model::chart("c", 1, 5);
  const Scalar c = Scalar::parse("1/3+1/2i");
  auto ctx = chart_context(m, chart_theta(m, 0, 0, chart_term(c, {}, {}, 1, 5)));
  const auto f = coordinate(1, 5, 0, false) + coordinate(1, 5, 0, true, c);
  const auto r = holomorphicity_criterion(ctx, f);
  EXPECT_TRUE(r.obstruction.is_zero());
  EXPECT_TRUE(r.df_identity_holds);
}

TEST(Chart, LocalFrameDifferential) {
  const Model m1 = Model::chart("c1", 1, 6);
  {
    const auto r = verify_dvz(chart_context(m1, VectorForm<ChartPoly>(1)));
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.lhs[0].is_zero());
  }
  {
    // φ = c z θ⊗dz̄: d(dz + c z dz̄) = c dz∧dz̄ at lowest degree.
    const Scalar c = Scalar::rational(1, 2);
    const auto r = verify_dvz(chart_context(m1, chart_theta(m1, 0, 0, chart_term(c, {1}, {}, 1, 6))));
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.integrable);
    Form<ChartPoly> expect(1);
    expect.add(mask_of(1, Monomial{{1}, {1}}), chart_term(c, {}, {}, 1, 6));
    EXPECT_EQ(below_degree(r.lhs[0], 0), expect);
  }
  const Model m2 = Model::chart("c2", 2, 5);
  VectorForm<ChartPoly> phi(2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) phi.hol_row(i).add(Mask{1} << (2 + j), chart_term(Scalar(i + 1, j - 1), {}, {}, 2, 5));
  }
  const auto r = verify_dvz(chart_context(m2, phi));
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.lhs[0].is_zero());
}

TEST(Chart, RequiresChartBackend) {
  try {
    const Model t = fx::torus(1);
    chart_context(t, VectorForm<ChartPoly>(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}
