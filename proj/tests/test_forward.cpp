#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "scatdesign/forward.hpp"
#include "scatdesign/reconstruction.hpp"

using namespace scatdesign;
using namespace scatdesign::forward;

namespace {

const UnitVector kAlpha(0.0, 0.0);

// -(q0 / 4pi) * int_{B_R} exp(i Q.y) dy with Q = k (alpha - beta).
cplx analytic_born_ball(double q0, double R, double k, const UnitVector& alpha, const UnitVector& beta) {
  const Vec3 a = alpha.cartesian(), b = beta.cartesian();
  const double Q = k * norm(Vec3{a[0] - b[0], a[1] - b[1], a[2] - b[2]});
  const double vol = Q * R < 1e-8 ? kFourPi * R * R * R / 3.0
                                  : kFourPi * R * R * R * specfun::spherical_bessel_j(1, Q * R) / (Q * R);
  return -q0 / kFourPi * vol;
}

}  // namespace

TEST(Gmres, SolvesSmallDenseSystem) {
  const std::vector<cplx> A{cplx(4, 1), cplx(1, 0), cplx(0, 2), cplx(1, -1), cplx(3, 0), cplx(1, 1),
                            cplx(0, 0), cplx(2, 0), cplx(5, -2)};
  auto apply = [&](std::span<const cplx> x, std::span<cplx> y) {
    for (int i = 0; i < 3; ++i) {
      y[i] = 0.0;
      for (int j = 0; j < 3; ++j) y[i] += A[3 * i + j] * x[j];
    }
  };
  const std::vector<cplx> b{cplx(1, 0), cplx(0, 1), cplx(2, -1)};
  std::vector<cplx> x(3, 0.0), r(3);
  const auto st = gmres(apply, b, x, GmresOptions{1e-13, 10});
  EXPECT_TRUE(st.converged);
  EXPECT_LE(st.iterations, 3);
  apply(x, r);
  for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(r[i] - b[i]), 1e-12);
}

TEST(Gmres, ZeroRightHandSide) {
  auto apply = [](std::span<const cplx> x, std::span<cplx> y) { std::copy(x.begin(), x.end(), y.begin()); };
  std::vector<cplx> b(4, 0.0), x(4, 1.0);
  const auto st = gmres(apply, b, x, {});
  EXPECT_TRUE(st.converged);
  for (const auto& v : x) EXPECT_EQ(v, cplx(0.0));
}

TEST(Forward, ZeroPotentialGivesIncidentField) {
  const auto g = make_ball_grid(4, 3, 1.0);
  const auto s = solve_scattering(BallField::zeros(g), 1.0, kAlpha);
  EXPECT_TRUE(s.stats.converged);
  EXPECT_EQ(s.stats.iterations, 0);
  const auto u0 = reconstruction::incident_field(g, 1.0, kAlpha);
  for (std::size_t n = 0; n < g->size(); ++n) EXPECT_LT(std::abs(s.u.values[n] - u0.values[n]), 1e-15);
  EXPECT_EQ(norm_s2(amplitude_from_q(BallField::zeros(g), s.u, 1.0, make_sphere_rule(3))), 0.0);
}

TEST(Forward, SolutionSatisfiesDiscreteEquation) {
  const auto g = make_ball_grid(8, 6, 1.0);
  const VolumeOperator op(g, 1.5);
  const auto q = BallField::sample(g, [](const Vec3& p) { return cplx(3.0 * (1.0 - dot(p, p)), -0.5); });
  const auto s = solve_scattering(q, op, UnitVector(0.5, 1.0), GmresOptions{1e-11, 500});
  ASSERT_TRUE(s.stats.converged);
  EXPECT_LT(lippmann_schwinger_residual(q, s.u, op, UnitVector(0.5, 1.0)), 1e-10);
  EXPECT_FALSE(s.im_q_positive);
}

TEST(Forward, ReportsNonConvergence) {
  const auto g = make_ball_grid(8, 6, 1.0);
  const auto s = solve_scattering(BallField::constant(g, -40.0), 1.0, kAlpha, GmresOptions{1e-12, 2});
  EXPECT_FALSE(s.stats.converged);
  EXPECT_EQ(s.stats.iterations, 2);
}

TEST(Forward, RejectsNonFinitePotential) {
  const auto g = make_ball_grid(3, 2, 1.0);
  auto q = BallField::zeros(g);
  q.values[0] = std::nan("");
  EXPECT_THROW(solve_scattering(q, 1.0, kAlpha), std::invalid_argument);
}

TEST(Forward, FlagsPositiveImaginaryPart) {
  const auto g = make_ball_grid(3, 2, 1.0);
  const auto s = solve_scattering(BallField::constant(g, cplx(0.1, 0.2)), 1.0, kAlpha);
  EXPECT_TRUE(s.im_q_positive);
}

TEST(Forward, GridBornMatchesAnalyticBorn) {
  const auto g = make_ball_grid(16, 12, 1.0);
  const auto q = BallField::constant(g, 0.01);
  for (const UnitVector& beta : {UnitVector(0.0, 0.0), UnitVector(1.0, 2.0), UnitVector(kPi, 0.0)}) {
    const cplx ref = analytic_born_ball(0.01, 1.0, 1.0, kAlpha, beta);
    EXPECT_LT(std::abs(born_amplitude(q, 1.0, kAlpha, beta) - ref), 1e-12 * std::abs(ref) + 1e-16);
  }
}

TEST(Forward, WeakPotentialApproachesBorn) {
  const auto g = make_ball_grid(12, 8, 1.0);
  const auto rule = make_sphere_rule(6);
  double gaps[2];
  int i = 0;
  for (double q0 : {0.01, 0.001}) {
    const auto q = BallField::constant(g, q0);
    const auto s = solve_scattering(q, 1.0, kAlpha);
    const auto A = amplitude_from_q(q, s.u, 1.0, rule);
    double gap = 0.0;
    for (std::size_t j = 0; j < rule->size(); ++j) {
      const cplx B = analytic_born_ball(q0, 1.0, 1.0, kAlpha, rule->nodes[j]);
      gap = std::max(gap, std::abs(A.values[j] - B) / std::abs(B));
    }
    gaps[i++] = gap;
  }
  EXPECT_LT(gaps[0], 0.03);
  EXPECT_LT(gaps[1], gaps[0] / 5.0);
}

TEST(PartialWave, BesselYMatchesReference) {
  std::ifstream in(std::string(SCATDESIGN_TEST_DATA_DIR) + "/bessel_y_reference.txt");
  ASSERT_TRUE(in.good());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int l;
    double x, ref;
    ss >> l >> x >> ref;
    std::vector<double> j(l + 1), y(l + 1);
    spherical_bessel_jy(l, x, j, y);
    EXPECT_NEAR(y[l] / ref, 1.0, 1e-11) << l << ' ' << x;
    ++rows;
  }
  EXPECT_GT(rows, 20);
}

TEST(PartialWave, WronskianIdentity) {
  std::vector<double> j(16), y(16);
  for (double x : {0.3, 2.0, 11.0}) {
    spherical_bessel_jy(15, x, j, y);
    for (int l = 1; l <= 15; ++l) EXPECT_NEAR((j[l] * y[l - 1] - j[l - 1] * y[l]) * x * x, 1.0, 1e-9) << l << ' ' << x;
  }
}

TEST(PartialWave, ZeroPotentialAndBornLimit) {
  EXPECT_EQ(partial_wave_amplitude(0.0, 1.0, 1.0, 0.3, 20), cplx(0.0));
  for (double c : {1.0, 0.2, -1.0}) {
    const double theta = std::acos(c);
    const cplx born = analytic_born_ball(1e-6, 1.0, 1.0, kAlpha, UnitVector(theta, 0.0));
    EXPECT_NEAR(std::abs(partial_wave_amplitude(1e-6, 1.0, 1.0, c, 20) - born) / std::abs(born), 0.0, 1e-5);
  }
}

TEST(PartialWave, OpticalTheoremForRealPotential) {
  // Im A(alpha, alpha) = (k / 4pi) * int |A|^2 over S^2.
  const double k = 1.3;
  const auto rule = make_sphere_rule(20);
  double total = 0.0;
  for (std::size_t j = 0; j < rule->size(); ++j) {
    total += rule->weights[j] * std::norm(partial_wave_amplitude(2.0, 1.0, k, std::cos(rule->nodes[j].theta()), 30));
  }
  EXPECT_NEAR(partial_wave_amplitude(2.0, 1.0, k, 1.0, 30).imag(), k / kFourPi * total, 1e-10);
}

TEST(PartialWave, SolverAgreesForUnitWell) {
  const auto g = make_ball_grid(12, 8, 1.0);
  const auto q = BallField::constant(g, 1.0);
  const auto s = solve_scattering(q, 1.0, kAlpha);
  const auto rule = make_sphere_rule(8);
  const auto A = amplitude_from_q(q, s.u, 1.0, rule);
  const auto P = sample_on(rule, [](const UnitVector& b) {
    return partial_wave_amplitude(1.0, 1.0, 1.0, std::cos(b.theta()), 30);
  });
  EXPECT_LT(residual_norm(A, P) / norm_s2(P), 1e-4);
}

TEST(AmplitudeDifference, IdentityHoldsForSmoothPotentials) {
  const auto g = make_ball_grid(8, 6, 1.0);
  const VolumeOperator op(g, 1.0);
  const auto q1 = BallField::sample(g, [](const Vec3& p) { return cplx(0.5 * std::exp(-2 * dot(p, p)), -0.1); });
  const auto q2 = BallField::sample(g, [](const Vec3& p) { return cplx(0.3 * p[0] + 0.2, 0.0); });
  const double res = amplitude_difference_residual(q1, q2, op, UnitVector(0.4, 0.1), UnitVector(2.0, 4.0), GmresOptions{1e-12, 500});
  EXPECT_LT(res, 1e-9);
}

TEST(AmplitudeDifference, EqualPotentialsGiveZeroDifference) {
  const auto g = make_ball_grid(5, 3, 1.0);
  const auto q = BallField::constant(g, 0.2);
  EXPECT_LT(amplitude_difference_residual(q, q, 1.0, kAlpha, UnitVector(1.0, 1.0)), 1e-12);
}

TEST(ResidualNorm, ZeroForIdenticalSamples) {
  const auto rule = make_sphere_rule(3);
  const auto f = sample_on(rule, [](const UnitVector& b) { return cplx(b.theta(), b.phi()); });
  EXPECT_EQ(residual_norm(f, f), 0.0);
  EXPECT_THROW(residual_norm(f, SphereSamples::zeros(make_sphere_rule(4))), RuleMismatch);
}
