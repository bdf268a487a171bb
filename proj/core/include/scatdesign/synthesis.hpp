#pragma once

// Construction of h on the ball from a band-limited far-field target, and
// the linear map h -> A(beta) = -(1/4pi) int_B exp(-i k beta.y) h(y) dy.
//
// Channel (l, m) of h is chosen so that its j_l moment reproduces f_{l,m}:
//   (-i)^{l+2} int_0^R r^2 j_l(kr) h_{l,m}(r) dr = f_{l,m},
// whose minimal-norm solution is h_{l,m} = (-i)^{-l-2} f_{l,m} gamma_l j_l(kr)
// with gamma_l = 1 / int_0^R r^2 j_l(kr)^2 dr. Any profile orthogonal to
// r^2 j_l(kr) may be added without changing the moment.

#include <functional>
#include <optional>

#include "scatdesign/quadrature.hpp"
#include "scatdesign/sht.hpp"

namespace scatdesign::synthesis {

struct RadialProfiles {
  int L = 0;
  double k = 0.0;
  std::shared_ptr<const RadialRule> rule;
  std::vector<CVector> channels;  // flat (l, m) order, each sampled on rule->nodes

  [[nodiscard]] const CVector& channel(int l, int m) const {
    return channels[static_cast<std::size_t>(l * l + l + m)];
  }
  [[nodiscard]] CVector& channel(int l, int m) { return channels[static_cast<std::size_t>(l * l + l + m)]; }
};

/// Null-space addition c * h_perp(r) for one (l, m) channel.
struct NullComponent {
  specfun::HarmonicIndex index;
  cplx coefficient = 0.0;
  std::vector<double> profile;  // sampled on the radial rule; must satisfy the zero j_l moment
};

/// 1 / (sum_i w_i r_i^2 j_l(k r_i)^2) on the given rule.
double gamma_l(int l, double k, const RadialRule& rule);

RadialProfiles radial_profiles(const sht::AngularCoefficients& c, double k,
                               std::shared_ptr<const RadialRule> rule,
                               std::span<const NullComponent> null_components = {});

/// (-i)^{l+2} sum_i w_i r_i^2 j_l(k r_i) h_{l,m}(r_i).
cplx moment_check(const RadialProfiles& p, int l, int m);

/// seed minus its r^2-weighted projection onto j_l(kr). Throws
/// std::invalid_argument when the seed is (numerically) proportional to j_l.
std::vector<double> orthogonal_profile(int l, double k, const RadialRule& rule,
                                       std::span<const double> seed_samples);
std::vector<double> orthogonal_profile(int l, double k, const RadialRule& rule,
                                       const std::function<double(double)>& seed_shape);

/// h(y) = sum_{l,m} h_{l,m}(|y|) Y_{l,m}(y/|y|) at every grid node.
BallField assemble_h(const RadialProfiles& p, std::shared_ptr<const BallGrid> grid);

/// Far-field amplitude of a source h on the sphere-rule directions.
SphereSamples amplitude_from_h(const BallField& h, double k, std::shared_ptr<const SphereRule> angular);

struct LsqOptions {
  /// Tikhonov shift added to the Gram diagonal; nullopt selects 1e-12 * trace(G) / n.
  std::optional<double> ridge;
};

struct LsqResult {
  CVector coefficients;
  BallField h;
  double residual = 0.0;  // ||f - sum c_j g_j||_{L^2(S^2)}
  double ridge = 0.0;
  bool ok = true;         // false if the (shifted) Gram matrix was not positive definite
};

/// Least-squares fit of f by the amplitudes g_j of the basis fields phi_j.
LsqResult lsq_fit(const SphereSamples& f, std::span<const BallField> basis, double k,
                  const LsqOptions& options = {});

}  // namespace scatdesign::synthesis
