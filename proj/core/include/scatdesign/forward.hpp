#pragma once

// Forward scattering for verification: the Lippmann-Schwinger equation
//   u + V[q u] = u0,  u0 = exp(i k alpha.x),
// in Nystrom form on a BallGrid, plus closed-form oracles (Born, partial
// waves for a constant spherical well) and the amplitude-difference identity
//   -4 pi [A_1(beta) - A_2(beta)] = int (q_1 - q_2) u_1(x, alpha) u_2(x, -beta) dx.

#include <optional>

#include "scatdesign/gmres.hpp"
#include "scatdesign/quadrature.hpp"
#include "scatdesign/volume_potential.hpp"

namespace scatdesign::forward {

using specfun::UnitVector;

struct ScatteringSolution {
  BallField u;
  SolveStats stats;
  /// max Im q > 0: existence and uniqueness of the scattering solution are not guaranteed.
  bool im_q_positive = false;
};

/// Solves (I + V Q) u = u0 by unrestarted GMRES from the initial guess u0.
ScatteringSolution solve_scattering(const BallField& q, const VolumeOperator& op, const UnitVector& alpha,
                                    const GmresOptions& options = {});
ScatteringSolution solve_scattering(const BallField& q, double k, const UnitVector& alpha,
                                    const GmresOptions& options = {});

/// max_n |u_n + V[q u]_n - u0_n| / max_n |u0_n| over the selected nodes
/// (all nodes when the mask is empty).
double lippmann_schwinger_residual(const BallField& q, const BallField& u, const VolumeOperator& op,
                                   const UnitVector& alpha, std::span<const char> node_mask = {});

/// Amplitude of h = q u.
SphereSamples amplitude_from_q(const BallField& q, const BallField& u, double k,
                               std::shared_ptr<const SphereRule> angular);

/// -(1/4pi) int exp(-i k beta.y) q(y) exp(i k alpha.y) dy by grid quadrature.
cplx born_amplitude(const BallField& q, double k, const UnitVector& alpha, const UnitVector& beta);

/// Exact amplitude for q = q0 on B_R (0 outside), summed over l <= L_pw.
cplx partial_wave_amplitude(double q0, double R, double k, double cos_gamma, int L_pw);

/// Regular and irregular spherical Bessel functions for real x > 0; y_l by
/// upward recurrence. Used by the partial-wave oracle.
void spherical_bessel_jy(int lmax, double x, std::span<double> j, std::span<double> y);

/// |LHS - RHS| / (|LHS| + |RHS| + 1e-14) of the amplitude-difference identity.
/// Throws std::runtime_error if any of the three forward solves fails.
double amplitude_difference_residual(const BallField& q1, const BallField& q2, const VolumeOperator& op,
                              const UnitVector& alpha, const UnitVector& beta, const GmresOptions& options = {});
double amplitude_difference_residual(const BallField& q1, const BallField& q2, double k, const UnitVector& alpha,
                              const UnitVector& beta, const GmresOptions& options = {});

/// ||A - f||_{L^2(S^2)}.
double residual_norm(const SphereSamples& A, const SphereSamples& f);

}  // namespace scatdesign::forward
