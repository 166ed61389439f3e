#include <gtest/gtest.h>

#include "deformae/extension_solver.hpp"
#include "oracles.hpp"

using namespace deformae;
using fx::mono;

TEST(ExtendP0, TorusStaysConstant) {
  const Model t = fx::torus(1);
  const OperatorCache cache(t);
  const auto run = extend_p0(cache, fx::single(1, 1, 1, Scalar::rational(1, 3)), mono(1, 1, {1}), 6);
  ASSERT_TRUE(run.success());
  ASSERT_EQ(run.sigma.size(), 7u);
  for (std::size_t k = 1; k < run.sigma.size(); ++k) EXPECT_TRUE(run.sigma[k].is_zero());
  for (const auto& step : run.obstruction_log) EXPECT_TRUE(step.vanishes());
}

TEST(ExtendP0, IwasawaOmega1) {
  const Model m = fx::iwasawa();
  const OperatorCache cache(m);
  const auto run = extend_p0(cache, fx::single(3, 1, 1), mono(3, 1, {1}), 6);
  ASSERT_TRUE(run.success());
  ASSERT_EQ(run.obstruction_log.size(), 6u);
  // η_1 = -∂(φ_1⌟ω^1) = -∂ω̄^1 = 0.
  EXPECT_TRUE(run.obstruction_log[0].eta.is_zero());
  for (const auto& step : run.obstruction_log) EXPECT_TRUE(step.vanishes());
  for (std::size_t k = 1; k < run.sigma.size(); ++k) EXPECT_TRUE(run.sigma[k].is_zero());
  EXPECT_FALSE(run.warnings.empty());
}

TEST(ExtendP0, IwasawaOmega3Fails) {
  const Model m = fx::iwasawa();
  const OperatorCache cache(m);
  const auto run = extend_p0(cache, fx::single(3, 1, 1), mono(3, 1, {3}), 6);
  ASSERT_TRUE(run.failure.has_value());
  EXPECT_EQ(run.failure->order, 0);
  EXPECT_EQ(run.failure->kind, ErrorKind::Obstruction);
  EXPECT_NE(run.failure->message.find("E^{2,0}"), std::string::npos);
  try {
    run.throw_if_failed();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.exit_code(), 3);
  }
}

TEST(ExtendP0, RejectsNonHolomorphicInput) {
  const Model m = fx::kodaira_thurston();
  const OperatorCache cache(m);
  // ∂̄ω^2 = ω^1∧ω̄^1.
  try {
    extend_p0(cache, fx::single(2, 1, 1), mono(2, 1, {2}), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(ExtendP0, KuranishiFamilyNontrivialSteps) {
  const Model m = fx::solvable_b();
  const OperatorCache cache(m);
  BeltramiSeries fam;
  fam.dim = 3;
  fam.add_entry(1, 1, 3, 1);
  fam.add_entry(1, 3, 3, 1);
  const auto run = extend_p0(cache, fam, mono(3, 1, {1, 2, 3}), 6);
  EXPECT_TRUE(run.success());
  for (const auto& step : run.obstruction_log) EXPECT_TRUE(step.vanishes());
  const auto ctx = series_context(m, fam, 6);
  const auto st = run.sigma_series();
  EXPECT_TRUE((delbar(m, st) + del(m, contract(ctx.phi, st)) - contract(ctx.phi, del(m, st))).is_zero());
}

TEST(Extend0q, TorusAndIwasawa) {
  {
    const Model t = fx::torus(1);
    const OperatorCache cache(t);
    const auto run = extend_0q(cache, fx::single(1, 1, 1, Scalar::rational(1, 3)), mono(1, 1, {-1}), 6);
    EXPECT_TRUE(run.success());
    for (std::size_t k = 1; k < run.sigma.size(); ++k) EXPECT_TRUE(run.sigma[k].is_zero());
  }
  const Model m = fx::iwasawa();
  const OperatorCache cache(m);
  const auto run = extend_0q(cache, fx::iwasawa_family(1, Scalar::rational(1, 2)), mono(3, 1, {-1}), 6);
  EXPECT_TRUE(run.success());
  EXPECT_TRUE(run.residual.is_zero());
  EXPECT_TRUE(run.transport_residual.is_zero());
  // Conjugate of the (1,0) run on ω^1.
  const auto p0 = extend_p0(cache, fx::iwasawa_family(1, Scalar::rational(1, 2)), mono(3, 1, {1}), 6);
  ASSERT_EQ(p0.sigma.size(), run.sigma.size());
  for (std::size_t k = 0; k < run.sigma.size(); ++k) EXPECT_EQ(run.sigma[k], p0.sigma[k].conj());
}

TEST(Extend0q, RejectsNonClosedInput) {
  const Model m = fx::iwasawa();
  const OperatorCache cache(m);
  try {
    extend_0q(cache, fx::single(3, 1, 1), mono(3, 1, {-3}), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_EQ(e.exit_code(), 2);
  }
}

TEST(Correspondence, TorusHasFullRank) {
  const Model t = fx::torus(2);
  const OperatorCache cache(t);
  BeltramiSeries fam = fx::single(2, 1, 2);
  fam.add_entry(1, 2, 1, Scalar::rational(1, 2));
  const auto c = build_0q_correspondence(cache, fam, 1, 4, {Scalar::rational(1, 10), Scalar::parse("1/10+1/7i")});
  EXPECT_EQ(c.classes.size(), 2u);
  for (const auto& s : c.samples) {
    EXPECT_EQ(s.rank, 2);
    EXPECT_EQ(s.h0q_t, 2);
    EXPECT_TRUE(s.all_closed);
  }
}

TEST(Correspondence, SolvableModelPreservesRank) {
  const Model m = fx::solvable_b();
  const OperatorCache cache(m);
  BeltramiSeries fam;
  fam.dim = 3;
  fam.add_entry(1, 1, 3, 1);
  fam.add_entry(1, 3, 3, 1);
  for (int q = 1; q <= 3; ++q) {
    const auto c = build_0q_correspondence(cache, fam, q, 6, {Scalar::rational(1, 10), Scalar::rational(1, 5)});
    EXPECT_TRUE(c.representatives_unique);
    for (const auto& run : c.runs) EXPECT_TRUE(run.success());
    for (const auto& s : c.samples) {
      EXPECT_EQ(s.rank, static_cast<int>(c.classes.size()));
      // Reference rank of ∂̄_t on the ambient complex at this value.
      const auto ctx = value_context(m, fam, s.t0);
      EXPECT_EQ(hodge_numbers(ctx).h[0][q], s.h0q_t);
    }
  }
}

TEST(Correspondence, GateNamesFailingClass) {
  const Model m = fx::kodaira_thurston();
  const OperatorCache cache(m);
  try {
    build_0q_correspondence(cache, fx::single(2, 1, 1), 1, 3, {Scalar::rational(1, 10)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Hypothesis);
    EXPECT_NE(std::string(e.what()).find("B^{1,1}"), std::string::npos);
  }
}
