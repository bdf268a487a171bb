#include <gtest/gtest.h>

#include <cmath>

#include "scatdesign/quadrature.hpp"

using namespace scatdesign;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x, w;
  gauss_legendre(7, x, w);
  ASSERT_EQ(x.size(), 7u);
  for (int p = 0; p <= 13; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], p);
    const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
    EXPECT_NEAR(s, exact, 1e-14) << p;
  }
  for (std::size_t i = 1; i < x.size(); ++i) EXPECT_LT(x[i - 1], x[i]);
}

TEST(RadialRuleTest, MapsToInterval) {
  const auto r = make_radial_rule(10, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r.nodes[i], 0.0);
    EXPECT_LT(r.nodes[i], 2.0);
    s += r.weights[i] * r.nodes[i] * r.nodes[i];
  }
  EXPECT_NEAR(s, 8.0 / 3.0, 1e-13);
  EXPECT_THROW(make_radial_rule(0, 1.0), std::invalid_argument);
  EXPECT_THROW(make_radial_rule(4, -1.0), std::invalid_argument);
}

TEST(SphereRuleTest, ExactForHarmonicProducts) {
  const auto rule = make_sphere_rule(6);
  EXPECT_EQ(rule->exact_degree, 13);
  EXPECT_EQ(rule->size(), static_cast<std::size_t>(rule->n_theta * rule->n_phi));
  double area = 0.0;
  for (double w : rule->weights) area += w;
  EXPECT_NEAR(area, kFourPi, 1e-13);
  for (int l = 0; l <= 6; ++l) {
    for (int lp = 0; lp <= 6; ++lp) {
      for (int m = -std::min(l, lp); m <= std::min(l, lp); ++m) {
        const auto a = sample_on(rule, [&](const specfun::UnitVector& d) { return specfun::sph_harm({l, m}, d); });
        const auto b = sample_on(rule, [&](const specfun::UnitVector& d) { return specfun::sph_harm({lp, m}, d); });
        const cplx ip = inner_s2(a, b);
        EXPECT_NEAR(std::abs(ip - cplx(l == lp ? 1.0 : 0.0)), 0.0, 1e-13);
      }
    }
  }
}

TEST(SphereRuleTest, NodeOrderIsThetaMajor) {
  const auto rule = make_sphere_rule(3);
  EXPECT_DOUBLE_EQ(rule->nodes[0].theta(), rule->nodes[1].theta());
  EXPECT_LT(rule->nodes[0].phi(), rule->nodes[1].phi());
  EXPECT_THROW(make_sphere_rule(-1), std::invalid_argument);
}

TEST(BallGridTest, IntegratesPolynomialsOverBall) {
  const auto g = make_ball_grid(8, 6, 1.5);
  const auto one = BallField::constant(g, 1.0);
  const double vol = 4.0 / 3.0 * kPi * std::pow(1.5, 3);
  EXPECT_NEAR(one.integral().real(), vol, 1e-12);
  // |x|^2 over B_R = 4 pi R^5 / 5; z^2 over B_R = 4 pi R^5 / 15.
  const auto r2 = BallField::sample(g, [](const Vec3& x) { return cplx(dot(x, x)); });
  EXPECT_NEAR(r2.integral().real(), 4.0 * kPi * std::pow(1.5, 5) / 5.0, 1e-11);
  const auto z2 = BallField::sample(g, [](const Vec3& x) { return cplx(x[2] * x[2]); });
  EXPECT_NEAR(z2.integral().real(), 4.0 * kPi * std::pow(1.5, 5) / 15.0, 1e-11);
  EXPECT_NEAR(one.norm_l2(), std::sqrt(vol), 1e-12);
}

TEST(BallGridTest, IndexLayout) {
  const auto g = make_ball_grid(3, 2, 1.0);
  const std::size_t per_shell = g->angular->size();
  EXPECT_EQ(g->size(), 3 * per_shell);
  EXPECT_EQ(g->n_rings(), 3u * g->angular->n_theta);
  EXPECT_EQ(g->radial_index(per_shell + 2), 1u);
  EXPECT_EQ(g->angular_index(per_shell + 2), 2u);
  const double r = std::sqrt(dot(g->nodes[per_shell + 2], g->nodes[per_shell + 2]));
  EXPECT_NEAR(r, g->radial->nodes[1], 1e-14);
}

TEST(BallGridTest, MismatchedGridsAreRejected) {
  const auto a = BallField::zeros(make_ball_grid(3, 2, 1.0));
  const auto b = BallField::zeros(make_ball_grid(4, 2, 1.0));
  const auto c = BallField::zeros(make_ball_grid(3, 2, 1.0));
  EXPECT_THROW(require_same_grid(a, b, "test"), RuleMismatch);
  EXPECT_NO_THROW(require_same_grid(a, c, "test"));
}

TEST(SphereSamplesTest, NormOfConstant) {
  const auto rule = make_sphere_rule(4);
  const auto f = sample_on(rule, [](const specfun::UnitVector&) { return cplx(0.0, 2.0); });
  EXPECT_NEAR(norm_s2(f), 2.0 * std::sqrt(kFourPi), 1e-13);
  EXPECT_THROW(inner_s2(f, SphereSamples::zeros(make_sphere_rule(5))), RuleMismatch);
}
