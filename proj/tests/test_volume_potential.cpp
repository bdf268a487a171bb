#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "scatdesign/forward.hpp"
#include "scatdesign/volume_potential.hpp"

using namespace scatdesign;

namespace {

// Potential of f(|y|) * P(y/|y|) with P of degree l, evaluated at radius r,
// from the shell expansion ik * int s^2 f(s) j_l(k r<) h_l(k r>) ds, times
// the angular factor. Integrated with split Gauss rules on [0, r] and [r, R].
cplx shell_potential(int l, double k, double R, double r, const std::function<double(double)>& f) {
  std::vector<double> x, w;
  gauss_legendre(60, x, w);
  std::vector<double> j(l + 1), y(l + 1);
  auto hl = [&](double z) {
    forward::spherical_bessel_jy(l, z, j, y);
    return cplx(j[l], y[l]);
  };
  auto jl = [&](double z) { return specfun::spherical_bessel_j(l, z); };
  cplx sum = 0.0;
  auto piece = [&](double a, double b, bool inner) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = 0.5 * (b - a) * x[i] + 0.5 * (b + a);
      const double ws = 0.5 * (b - a) * w[i];
      const cplx kern = inner ? jl(k * s) * hl(k * r) : jl(k * r) * hl(k * s);
      sum += ws * s * s * f(s) * kern;
    }
  };
  if (r > 0.0) piece(0.0, std::min(r, R), true);
  if (r < R) piece(r, R, false);
  return cplx(0.0, k) * sum;
}

double relative_gap_at_nodes(int n_radial, int degree, int l, const std::function<double(double)>& f) {
  const double k = 1.0, R = 1.0;
  const auto g = make_ball_grid(n_radial, degree, R);
  // l = 0: h = f(r); l = 1: h = f(r) * z / r.
  const auto h = BallField::sample(g, [&](const Vec3& p) {
    const double r = norm(p);
    return cplx(f(r) * (l == 0 ? 1.0 : p[2] / r), 0.0);
  });
  const VolumeOperator op(g, k);
  const auto v = op.apply(h);
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < g->size(); ++n) {
    const double r = norm(g->nodes[n]);
    const cplx ref = shell_potential(l, k, R, r, f) * (l == 0 ? 1.0 : g->nodes[n][2] / r);
    num = std::max(num, std::abs(v.values[n] - ref));
    den = std::max(den, std::abs(ref));
  }
  return num / den;
}

}  // namespace

TEST(BallPotential, CentreValueClosedForm) {
  const cplx s0 = ball_potential(0.0, 1.0, 1.0);
  // int_0^R r exp(ikr) dr at k = R = 1.
  const cplx ref = std::exp(cplx(0.0, 1.0)) * cplx(1.0, -1.0) - 1.0;
  EXPECT_LT(std::abs(s0 - ref), 1e-14);
  EXPECT_NEAR(s0.real(), 0.3817732, 1e-7);
  EXPECT_NEAR(s0.imag(), 0.3011687, 1e-7);
}

TEST(BallPotential, MatchesShellIntegralInsideAndOutside) {
  for (double rho : {0.1, 0.5, 0.99, 1.0, 1.5, 3.0}) {
    const cplx ref = shell_potential(0, 1.3, 1.0, rho, [](double) { return 1.0; });
    EXPECT_LT(std::abs(ball_potential(rho, 1.3, 1.0) - ref), 1e-12) << rho;
  }
}

TEST(BallPotential, ContinuousAcrossBoundary) {
  EXPECT_LT(std::abs(ball_potential(1.0 - 1e-9, 2.0, 1.0) - ball_potential(1.0 + 1e-9, 2.0, 1.0)), 1e-7);
}

TEST(VolumeOperatorTest, ConstantDensityReproducesBallPotential) {
  const auto g = make_ball_grid(6, 4, 1.0);
  const VolumeOperator op(g, 1.0);
  const auto v = op.apply(BallField::constant(g, 1.0));
  for (std::size_t n = 0; n < g->size(); ++n) {
    EXPECT_LT(std::abs(v.values[n] - ball_potential(norm(g->nodes[n]), 1.0, 1.0)), 1e-12);
  }
}

TEST(VolumeOperatorTest, MatchesDirectSumAtNodes) {
  const auto g = make_ball_grid(5, 3, 1.0);
  const VolumeOperator op(g, 0.8);
  const auto h = BallField::sample(g, [](const Vec3& p) { return cplx(std::cos(p[0] + 2 * p[1]), p[2] * p[2]); });
  const auto v = op.apply(h);
  const auto direct = volume_potential(h, g->nodes, 0.8);
  for (std::size_t n = 0; n < g->size(); ++n) EXPECT_LT(std::abs(v.values[n] - direct[n]), 1e-12);
}

TEST(VolumeOperatorTest, ConvergesToShellOracleForRadialDensity) {
  auto f = [](double r) { return std::cos(2.0 * r); };
  const double coarse = relative_gap_at_nodes(8, 6, 0, f);
  const double fine = relative_gap_at_nodes(16, 12, 0, f);
  EXPECT_LT(fine, 5e-3);
  EXPECT_LT(fine, coarse / 2.5);
}

TEST(VolumeOperatorTest, ConvergesToShellOracleForDipoleDensity) {
  auto f = [](double r) { return r * (1.0 + r); };
  const double coarse = relative_gap_at_nodes(8, 6, 1, f);
  const double fine = relative_gap_at_nodes(16, 12, 1, f);
  EXPECT_LT(fine, 5e-3);
  EXPECT_LT(fine, coarse / 2.5);
}

TEST(VolumeOperatorTest, Linearity) {
  const auto g = make_ball_grid(4, 3, 1.0);
  const VolumeOperator op(g, 1.0);
  const auto a = BallField::sample(g, [](const Vec3& p) { return cplx(p[0], 1.0); });
  const auto b = BallField::sample(g, [](const Vec3& p) { return cplx(p[1] * p[2], -p[0]); });
  BallField c = a;
  for (std::size_t n = 0; n < c.size(); ++n) c.values[n] = 2.0 * a.values[n] - cplx(0, 3) * b.values[n];
  const auto va = op.apply(a), vb = op.apply(b), vc = op.apply(c);
  for (std::size_t n = 0; n < c.size(); ++n) {
    EXPECT_LT(std::abs(vc.values[n] - (2.0 * va.values[n] - cplx(0, 3) * vb.values[n])), 1e-12);
  }
}

TEST(VolumeOperatorTest, OffGridCentreValue) {
  const auto g = make_ball_grid(10, 6, 1.0);
  const std::vector<Vec3> origin{Vec3{0.0, 0.0, 0.0}};
  const auto v = volume_potential(BallField::constant(g, 1.0), origin, 1.0);
  EXPECT_LT(std::abs(v[0] - cplx(0.3817732, 0.3011687)), 1e-6);
}

TEST(VolumeOperatorTest, RejectsForeignField) {
  const VolumeOperator op(make_ball_grid(4, 3, 1.0), 1.0);
  EXPECT_THROW((void)op.apply(BallField::zeros(make_ball_grid(5, 3, 1.0))), RuleMismatch);
}

TEST(CellRadius, VolumeOfEquivalentBall) {
  EXPECT_NEAR(cell_radius(4.0 / 3.0 * kPi), 1.0, 1e-15);
}
