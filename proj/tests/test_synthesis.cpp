#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scatdesign/synthesis.hpp"
#include "scatdesign/forward.hpp"

using namespace scatdesign;
using namespace scatdesign::synthesis;

namespace {

sht::AngularCoefficients unit_random(int L, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  sht::AngularCoefficients c(L);
  for (auto& v : c.coeffs) v = {n01(rng), n01(rng)};
  const double s = std::sqrt(c.energy());
  for (auto& v : c.coeffs) v /= s;
  return c;
}

}  // namespace

TEST(Synthesis, GammaMatchesClosedFormForL0) {
  // int_0^1 r^2 sin^2 r / r^2 dr = 1/2 - sin(2)/4 at k = R = 1.
  const RadialRule rule = make_radial_rule(24, 1.0);
  EXPECT_NEAR(gamma_l(0, 1.0, rule), 1.0 / (0.5 - std::sin(2.0) / 4.0), 1e-12);
}

TEST(Synthesis, MomentIdentityPerChannel) {
  const auto c = unit_random(6, 1);
  const auto rule = std::make_shared<const RadialRule>(make_radial_rule(24, 1.0));
  const auto p = radial_profiles(c, 1.0, rule);
  for (int l = 0; l <= 6; ++l) {
    for (int m = -l; m <= l; ++m) EXPECT_LT(std::abs(moment_check(p, l, m) - c.at(l, m)), 1e-12 * (1 + std::abs(c.at(l, m))));
  }
}

TEST(Synthesis, AmplitudeReproducesTargetAndMatchesBornForm) {
  const auto c = unit_random(4, 2);
  auto radial = std::make_shared<const RadialRule>(make_radial_rule(20, 1.0));
  auto rule = make_sphere_rule(12);
  auto grid = make_ball_grid(radial, rule);
  const auto h = assemble_h(radial_profiles(c, 1.0, radial), grid);
  const auto A = amplitude_from_h(h, 1.0, rule);
  EXPECT_LT(forward::residual_norm(A, sht::synthesize(c, rule)), 1e-9);
}

TEST(Synthesis, NullComponentLeavesAmplitudeUnchanged) {
  const auto c = unit_random(3, 4);
  auto radial = std::make_shared<const RadialRule>(make_radial_rule(20, 1.0));
  auto rule = make_sphere_rule(10);
  auto grid = make_ball_grid(radial, rule);
  const auto perp = orthogonal_profile(2, 1.0, *radial, [](double r) { return r * r; });
  double moment = 0.0;
  for (std::size_t i = 0; i < radial->size(); ++i) {
    const double r = radial->nodes[i];
    moment += radial->weights[i] * r * r * specfun::spherical_bessel_j(2, r) * perp[i];
  }
  EXPECT_LT(std::abs(moment), 1e-14);
  const std::vector<NullComponent> extra{{specfun::HarmonicIndex(2, 1), cplx(6.0, -8.0), perp}};
  const auto A0 = amplitude_from_h(assemble_h(radial_profiles(c, 1.0, radial), grid), 1.0, rule);
  const auto A1 = amplitude_from_h(assemble_h(radial_profiles(c, 1.0, radial, extra), grid), 1.0, rule);
  EXPECT_LT(forward::residual_norm(A0, A1), 1e-10);
}

TEST(Synthesis, OrthogonalProfileRejectsBesselSeed) {
  const RadialRule radial = make_radial_rule(16, 1.0);
  EXPECT_THROW(orthogonal_profile(1, 1.0, radial, [](double r) { return specfun::spherical_bessel_j(1, r); }),
               std::invalid_argument);
}

TEST(Synthesis, ZeroTargetGivesZeroSource) {
  auto radial = std::make_shared<const RadialRule>(make_radial_rule(6, 1.0));
  const auto h = assemble_h(radial_profiles(sht::AngularCoefficients(2), 1.0, radial),
                            make_ball_grid(radial, make_sphere_rule(4)));
  EXPECT_EQ(h.max_abs(), 0.0);
}

TEST(Synthesis, AssembleRejectsForeignRadialRule) {
  auto radial = std::make_shared<const RadialRule>(make_radial_rule(6, 1.0));
  const auto p = radial_profiles(sht::AngularCoefficients(1), 1.0, radial);
  EXPECT_THROW(assemble_h(p, make_ball_grid(7, 4, 1.0)), RuleMismatch);
}

TEST(Synthesis, LeastSquaresRecoversCombination) {
  auto grid = make_ball_grid(8, 6, 1.0);
  auto rule = make_sphere_rule(8);
  std::vector<BallField> basis;
  basis.push_back(BallField::constant(grid, 1.0));
  basis.push_back(BallField::sample(grid, [](const Vec3& x) { return cplx(x[2], 0.0); }));
  basis.push_back(BallField::sample(grid, [](const Vec3& x) { return cplx(x[0] * x[1], x[0]); }));
  const CVector truth{cplx(0.5, 0.1), cplx(-1.0, 0.0), cplx(0.0, 2.0)};
  BallField combo = BallField::zeros(grid);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t n = 0; n < combo.size(); ++n) combo.values[n] += truth[j] * basis[j].values[n];
  }
  const auto f = amplitude_from_h(combo, 1.0, rule);
  const auto fit = lsq_fit(f, basis, 1.0, LsqOptions{0.0});
  ASSERT_TRUE(fit.ok);
  for (std::size_t j = 0; j < truth.size(); ++j) EXPECT_LT(std::abs(fit.coefficients[j] - truth[j]), 1e-8);
  EXPECT_LT(fit.residual, 1e-10);
}
