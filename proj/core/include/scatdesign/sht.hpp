#pragma once

#include <filesystem>
#include <iosfwd>

#include "scatdesign/quadrature.hpp"

namespace scatdesign::sht {

/// Coefficients f_{l,m} = (f, Y_{l,m}) for l <= L, flat (l, m) order.
struct AngularCoefficients {
  int L = 0;
  CVector coeffs;

  AngularCoefficients() : coeffs(1, 0.0) {}
  explicit AngularCoefficients(int degree);

  [[nodiscard]] cplx& at(int l, int m) { return coeffs[static_cast<std::size_t>(l * l + l + m)]; }
  [[nodiscard]] cplx at(int l, int m) const {
    if (l > L) return 0.0;
    return coeffs[static_cast<std::size_t>(l * l + l + m)];
  }
  /// Sum |f_{l,m}|^2, the squared L^2(S^2) norm of the band-limited function.
  [[nodiscard]] double energy() const;
  /// Copy restricted (or zero-padded) to degree new_L.
  [[nodiscard]] AngularCoefficients truncated(int new_L) const;
};

/// Throws std::invalid_argument if the rule cannot resolve degree L.
AngularCoefficients analyze(const SphereSamples& f, int L);

SphereSamples synthesize(const AngularCoefficients& c, std::shared_ptr<const SphereRule> rule);

struct TruncationChoice {
  int L = 0;
  double tail_norm = 0.0;   // sqrt(||f||^2 - ||f_L||^2)
  double total_norm = 0.0;  // ||f|| on the sampling rule
  bool attained = true;     // false when L_max could not reach tail < eps/2
};

/// Smallest L <= L_max with tail norm below eps/2. The rule must resolve L_max.
TruncationChoice choose_L(const SphereSamples& f, double eps, int L_max);

/// Text format: header "# L=<int>", then one "l m re im" line per coefficient.
void write_coefficients(std::ostream& out, const AngularCoefficients& c);
void write_coefficients(const std::filesystem::path& path, const AngularCoefficients& c);
AngularCoefficients read_coefficients(std::istream& in);
AngularCoefficients read_coefficients(const std::filesystem::path& path);

}  // namespace scatdesign::sht
