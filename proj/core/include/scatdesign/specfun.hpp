#pragma once

// Special functions with the normalization used throughout the library:
// regular spherical Bessel functions, Legendre polynomials, associated
// Legendre functions without the Condon-Shortley phase, and spherical
// harmonics carrying an i^l factor and a (-1)^((m+|m|)/2) sign.

#include "scatdesign/types.hpp"

namespace scatdesign::specfun {

/// Largest degree accepted by the Bessel and harmonic routines.
inline constexpr int kMaxDegree = 128;

struct HarmonicIndex {
  int l = 0;
  int m = 0;

  HarmonicIndex() = default;
  /// Throws std::domain_error unless l >= 0 and |m| <= l.
  HarmonicIndex(int l_, int m_);

  /// Flat position in an (l, m) ordered array: l*l + l + m.
  [[nodiscard]] int flat() const { return l * l + l + m; }
  static HarmonicIndex from_flat(int index);
  /// Number of (l, m) pairs with l <= L.
  static constexpr int count(int L) { return (L + 1) * (L + 1); }
};

/// Direction on S^2 in spherical coordinates, theta in [0, pi], phi in [0, 2pi).
class UnitVector {
 public:
  UnitVector() = default;
  UnitVector(double theta, double phi);

  /// Normalizes v; throws std::domain_error for the zero vector.
  static UnitVector from_cartesian(const Vec3& v);

  [[nodiscard]] double theta() const { return theta_; }
  [[nodiscard]] double phi() const { return phi_; }
  [[nodiscard]] Vec3 cartesian() const;
  [[nodiscard]] UnitVector negated() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// j_l(x) for x >= 0. Throws std::domain_error for negative or non-finite
/// x, or l outside [0, kMaxDegree].
double spherical_bessel_j(int l, double x);

/// Fills out[0..lmax] with j_0(x) .. j_lmax(x).
void spherical_bessel_j_array(int lmax, double x, std::span<double> out);

/// Power series of j_l; reference path for small arguments.
double spherical_bessel_j_series(int l, double x);

double legendre_p(int l, double t);

/// P_{l,m}(t) = (1-t^2)^{m/2} d^m P_l / dt^m, no (-1)^m phase.
double assoc_legendre(int l, int m, double t);

cplx sph_harm(const HarmonicIndex& idx, const UnitVector& dir);

/// All Y_{l,m}(dir) for l <= L in flat order.
void sph_harm_all(int L, const UnitVector& dir, std::span<cplx> out);

/// Partial sum over l <= L of the plane-wave expansion of exp(-i k beta.y).
cplx plane_wave_partial_sum(double k, const UnitVector& beta, const Vec3& y, int L);

}  // namespace scatdesign::specfun
