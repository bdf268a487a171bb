#pragma once

// Volume potential V[v](x) = int_{B_R} g(x,y) v(y) dy with the outgoing
// Helmholtz kernel g(x,y) = exp(ik|x-y|) / (4 pi |x-y|), discretized on a
// BallGrid by singularity subtraction:
//
//   V[v](x_i) = v_i S(x_i) + sum_{n != i} W_n g(x_i, y_n) (v_n - v_i),
//   S(x)      = int_{B_R} g(x,y) dy   (closed form, radial in |x|).
//
// The uniform phi grid makes the off-diagonal part block circulant in the
// azimuthal index, so it is stored and applied per azimuthal Fourier mode.

#include "scatdesign/quadrature.hpp"

namespace scatdesign {

/// exp(ik r) / (4 pi r).
inline cplx helmholtz_green(double k, double r) { return std::polar(1.0 / (kFourPi * r), k * r); }

/// int_{B_R} g(x, y) dy for |x| = rho (inside or outside the ball).
cplx ball_potential(double rho, double k, double R);

class VolumeOperator {
 public:
  VolumeOperator(std::shared_ptr<const BallGrid> grid, double k);

  /// out = V[v] at every grid node.
  void apply(std::span<const cplx> v, std::span<cplx> out) const;
  [[nodiscard]] CVector apply(std::span<const cplx> v) const;
  [[nodiscard]] BallField apply(const BallField& v) const;

  [[nodiscard]] double k() const { return k_; }
  [[nodiscard]] const std::shared_ptr<const BallGrid>& grid() const { return grid_; }
  /// Diagonal coefficient D_ring = S(r) - sum_{n != i} W_n g(x_i, y_n).
  [[nodiscard]] std::span<const cplx> diagonal() const { return diagonal_; }

 private:
  std::shared_ptr<const BallGrid> grid_;
  double k_;
  std::size_t rings_;
  std::size_t nphi_;
  std::size_t nmodes_;            // nphi / 2 + 1 distinct modes
  std::vector<cplx> modes_;       // [mode][target ring][source ring]
  std::vector<cplx> diagonal_;    // per ring
  std::vector<cplx> twiddle_;     // exp(-2 pi i t / nphi), t in [0, nphi)
};

/// V[h] at arbitrary target points (direct sum). The subtraction constant is
/// h at the nearest grid node, so node targets reproduce VolumeOperator.
CVector volume_potential(const BallField& h, std::span<const Vec3> targets, double k);

/// Quadrature radius of a node: radius of the ball with the node's weight as volume.
double cell_radius(double weight);

}  // namespace scatdesign
