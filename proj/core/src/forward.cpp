#include "scatdesign/forward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scatdesign/reconstruction.hpp"
#include "scatdesign/synthesis.hpp"

namespace scatdesign::forward {

ScatteringSolution solve_scattering(const BallField& q, const VolumeOperator& op, const UnitVector& alpha,
                                    const GmresOptions& options) {
  if (!same_grid(*q.grid, *op.grid())) throw RuleMismatch("solve_scattering: q and operator grids differ");
  for (const auto& v : q.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("solve_scattering: q must be bounded (non-finite value found)");
    }
  }
  ScatteringSolution sol;
  sol.im_q_positive = reconstruction::imaginary_part_diagnostic(q).max_imag > 0.0;
  const BallField u0 = reconstruction::incident_field(q.grid, op.k(), alpha);
  sol.u = u0;
  const std::size_t n = q.size();
  CVector qv(n);
  auto apply = [&](std::span<const cplx> v, std::span<cplx> out) {
    for (std::size_t i = 0; i < n; ++i) qv[i] = q.values[i] * v[i];
    op.apply(qv, out);
    for (std::size_t i = 0; i < n; ++i) out[i] += v[i];
  };
  sol.stats = gmres(apply, u0.values, sol.u.values, options);
  return sol;
}

ScatteringSolution solve_scattering(const BallField& q, double k, const UnitVector& alpha,
                                    const GmresOptions& options) {
  return solve_scattering(q, VolumeOperator(q.grid, k), alpha, options);
}

double lippmann_schwinger_residual(const BallField& q, const BallField& u, const VolumeOperator& op,
                                   const UnitVector& alpha, std::span<const char> node_mask) {
  require_same_grid(q, u, "lippmann_schwinger_residual");
  const std::size_t n = q.size();
  if (!node_mask.empty() && node_mask.size() != n) throw std::invalid_argument("residual: mask size mismatch");
  CVector qu(n);
  for (std::size_t i = 0; i < n; ++i) qu[i] = q.values[i] * u.values[i];
  const CVector vqu = op.apply(std::span<const cplx>(qu));
  const BallField u0 = reconstruction::incident_field(q.grid, op.k(), alpha);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!node_mask.empty() && !node_mask[i]) continue;
    worst = std::max(worst, std::abs(u.values[i] + vqu[i] - u0.values[i]));
    scale = std::max(scale, std::abs(u0.values[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

SphereSamples amplitude_from_q(const BallField& q, const BallField& u, double k,
                               std::shared_ptr<const SphereRule> angular) {
  require_same_grid(q, u, "amplitude_from_q");
  BallField h = BallField::zeros(q.grid);
  for (std::size_t i = 0; i < q.size(); ++i) h.values[i] = q.values[i] * u.values[i];
  return synthesis::amplitude_from_h(h, k, std::move(angular));
}

cplx born_amplitude(const BallField& q, double k, const UnitVector& alpha, const UnitVector& beta) {
  const Vec3 a = alpha.cartesian();
  const Vec3 b = beta.cartesian();
  const Vec3 p{k * (a[0] - b[0]), k * (a[1] - b[1]), k * (a[2] - b[2])};
  const auto& grid = *q.grid;
  cplx sum = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    sum += grid.weights[n] * q.values[n] * std::polar(1.0, dot(p, grid.nodes[n]));
  }
  return -sum / kFourPi;
}

void spherical_bessel_jy(int lmax, double x, std::span<double> j, std::span<double> y) {
  if (!(x > 0.0)) throw std::domain_error("spherical_bessel_jy: need x > 0");
  specfun::spherical_bessel_j_array(lmax, x, j);
  y[0] = -std::cos(x) / x;
  if (lmax == 0) return;
  y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int l = 1; l < lmax; ++l) y[l + 1] = (2.0 * l + 1.0) / x * y[l] - y[l - 1];
}

namespace {

// Logarithmic derivative at r = R of the regular interior solution
// j_l(kappa r), kappa^2 = kappa2 (any sign). Written as r^l F_l(kappa^2 r^2),
// which covers the oscillatory, evanescent and kappa = 0 cases alike.
double interior_log_derivative(int l, double kappa2, double R) {
  const double w = kappa2 * R * R;
  if (w > 50.0) {
    const double kappa = std::sqrt(kappa2);
    const double z = kappa * R;
    const double jl = specfun::spherical_bessel_j(l, z);
    const double dj = l == 0 ? -specfun::spherical_bessel_j(1, z)
                             : specfun::spherical_bessel_j(l - 1, z) - (l + 1.0) / z * jl;
    return kappa * dj / jl;
  }
  double a = 1.0;  // series coefficient a_s of w^s
  double f = 1.0, df = 0.0;
  double wp = 1.0;  // w^(s-1)
  for (int s = 1; s < 400; ++s) {
    a *= -0.5 / (s * (2.0 * l + 2.0 * s + 1.0));
    const double term_df = s * a * wp;
    wp *= w;
    const double term_f = a * wp;
    f += term_f;
    df += term_df;
    if (std::abs(term_f) < 1e-18 * std::abs(f) && std::abs(term_df) < 1e-18 * (std::abs(df) + 1e-300)) break;
  }
  return l / R + 2.0 * kappa2 * R * df / f;
}

}  // namespace

cplx partial_wave_amplitude(double q0, double R, double k, double cos_gamma, int L_pw) {
  if (!(k > 0.0) || !(R > 0.0)) throw std::invalid_argument("partial_wave_amplitude: need k > 0, R > 0");
  if (L_pw < 0) throw std::invalid_argument("partial_wave_amplitude: need L_pw >= 0");
  if (q0 == 0.0) return 0.0;
  const double x = k * R;
  std::vector<double> j(static_cast<std::size_t>(L_pw) + 2), y(static_cast<std::size_t>(L_pw) + 2);
  spherical_bessel_jy(L_pw + 1, x, j, y);
  const double kappa2 = k * k - q0;
  const cplx i(0.0, 1.0);
  cplx sum = 0.0;
  for (int l = 0; l <= L_pw; ++l) {
    const auto ul = static_cast<std::size_t>(l);
    // f_l' = -f_{l+1} + l/x f_l holds for both j and y.
    const double dj = -j[ul + 1] + l / x * j[ul];
    const double dy = -y[ul + 1] + l / x * y[ul];
    const double beta = interior_log_derivative(l, kappa2, R);
    const cplx h = j[ul] + i * y[ul];
    const cplx dh = dj + i * dy;
    const cplx t = -(k * dj - beta * j[ul]) / (k * dh - beta * h);
    sum += (2.0 * l + 1.0) * t * specfun::legendre_p(l, std::clamp(cos_gamma, -1.0, 1.0));
  }
  return sum / (i * k);
}

double amplitude_difference_residual(const BallField& q1, const BallField& q2, const VolumeOperator& op,
                              const UnitVector& alpha, const UnitVector& beta, const GmresOptions& options) {
  require_same_grid(q1, q2, "amplitude_difference_residual");
  const UnitVector minus_beta = beta.negated();
  const auto u1 = solve_scattering(q1, op, alpha, options);
  const auto u2 = solve_scattering(q2, op, alpha, options);
  const auto u2_back = solve_scattering(q2, op, minus_beta, options);
  if (!u1.stats.converged || !u2.stats.converged || !u2_back.stats.converged) {
    throw std::runtime_error("amplitude_difference_residual: forward solve did not converge");
  }
  const Vec3 b = beta.cartesian();
  const auto& grid = *q1.grid;
  const double k = op.k();
  cplx lhs = 0.0, rhs = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const cplx e = std::polar(1.0, -k * dot(b, grid.nodes[n]));
    // -4 pi A_i(beta) = sum W e q_i u_i
    lhs += grid.weights[n] * e * (q1.values[n] * u1.u.values[n] - q2.values[n] * u2.u.values[n]);
    rhs += grid.weights[n] * (q1.values[n] - q2.values[n]) * u1.u.values[n] * u2_back.u.values[n];
  }
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-14);
}

double amplitude_difference_residual(const BallField& q1, const BallField& q2, double k, const UnitVector& alpha,
                              const UnitVector& beta, const GmresOptions& options) {
  return amplitude_difference_residual(q1, q2, VolumeOperator(q1.grid, k), alpha, beta, options);
}

double residual_norm(const SphereSamples& A, const SphereSamples& f) {
  if (!A.rule || !f.rule || !A.rule->compatible(*f.rule)) throw RuleMismatch("residual_norm: rules differ");
  CVector d(A.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = A.values[j] - f.values[j];
  return norm_s2(SphereSamples(A.rule, std::move(d)));
}

}  // namespace scatdesign::forward
