#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatdesign {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVector = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Raised when two sampled objects live on incompatible quadrature rules.
class RuleMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (-i)^n computed by quadrant rotation, exact for any integer n.
inline cplx minus_i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

/// i^n computed by quadrant rotation.
inline cplx i_pow(int n) { return minus_i_pow(-n); }

}  // namespace scatdesign
