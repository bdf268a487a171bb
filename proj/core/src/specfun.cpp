#include "scatdesign/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scatdesign::specfun {

namespace {

void check_degree(int l) {
  if (l < 0 || l > kMaxDegree) {
    throw std::domain_error("spherical_bessel_j: degree " + std::to_string(l) +
                            " outside [0, " + std::to_string(kMaxDegree) + "]");
  }
}

void check_argument(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("spherical_bessel_j: argument must be finite and >= 0");
  }
}

void check_cosine(double t) {
  if (!(std::abs(t) <= 1.0)) {
    throw std::domain_error("legendre: argument outside [-1, 1]");
  }
}

double small_argument_cutoff(int l) { return std::max(1e-3, 1e-4 * l); }

double j0_closed(double x) { return std::sin(x) / x; }
double j1_closed(double x) { return (std::sin(x) / x - std::cos(x)) / x; }

// Miller's downward recurrence, normalized against whichever of j_0, j_1 is
// larger in magnitude. Values are rescaled on the way down to stay in range.
void miller(int lmax, double x, std::span<double> out) {
  const int start = lmax + 40 + static_cast<int>(std::sqrt(40.0 * (lmax + x)));
  std::fill(out.begin(), out.begin() + lmax + 1, 0.0);
  double above = 0.0;     // f_{n+1}
  double current = 1e-280;  // f_n
  for (int n = start; n >= 1; --n) {
    if (n <= lmax) out[n] = current;
    const double below = (2.0 * n + 1.0) / x * current - above;
    above = current;
    current = below;
    if (std::abs(current) > 1e200) {
      current *= 1e-200;
      above *= 1e-200;
      for (int i = std::max(n, 0); i <= lmax; ++i) out[i] *= 1e-200;
    }
  }
  out[0] = current;
  const double f1 = lmax >= 1 ? out[1] : above;
  const double j0 = j0_closed(x);
  const double j1 = j1_closed(x);
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / current : j1 / f1;
  for (int i = 0; i <= lmax; ++i) out[i] *= scale;
}

void upward(int lmax, double x, std::span<double> out) {
  out[0] = j0_closed(x);
  if (lmax == 0) return;
  out[1] = j1_closed(x);
  for (int n = 1; n < lmax; ++n) {
    out[n + 1] = (2.0 * n + 1.0) / x * out[n] - out[n - 1];
  }
}

}  // namespace

HarmonicIndex::HarmonicIndex(int l_, int m_) : l(l_), m(m_) {
  if (l < 0 || std::abs(m) > l) {
    throw std::domain_error("HarmonicIndex: need l >= 0 and |m| <= l, got (" +
                            std::to_string(l) + ", " + std::to_string(m) + ")");
  }
}

HarmonicIndex HarmonicIndex::from_flat(int index) {
  if (index < 0) throw std::domain_error("HarmonicIndex: negative flat index");
  const int l = static_cast<int>(std::sqrt(static_cast<double>(index)));
  int ll = l;
  while (ll * ll > index) --ll;
  while ((ll + 1) * (ll + 1) <= index) ++ll;
  return {ll, index - ll * ll - ll};
}

UnitVector::UnitVector(double theta, double phi) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= kPi) || !std::isfinite(phi)) {
    throw std::domain_error("UnitVector: theta must lie in [0, pi]");
  }
  phi_ = std::fmod(phi, 2.0 * kPi);
  if (phi_ < 0.0) phi_ += 2.0 * kPi;
  if (phi_ >= 2.0 * kPi) phi_ = 0.0;
}

UnitVector UnitVector::from_cartesian(const Vec3& v) {
  const double rho = std::hypot(v[0], v[1]);
  if (rho == 0.0 && v[2] == 0.0) {
    throw std::domain_error("UnitVector: zero vector has no direction");
  }
  return {std::atan2(rho, v[2]), std::atan2(v[1], v[0])};
}

Vec3 UnitVector::cartesian() const {
  const double s = std::sin(theta_);
  return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
}

UnitVector UnitVector::negated() const { return {kPi - theta_, phi_ + kPi}; }

double spherical_bessel_j_series(int l, double x) {
  check_degree(l);
  check_argument(x);
  double lead = 1.0;
  for (int i = 1; i <= l; ++i) lead *= x / (2.0 * i + 1.0);
  const double half_x2 = 0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int s = 1; s < 200; ++s) {
    term *= -half_x2 / (s * (2.0 * l + 2.0 * s + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

double spherical_bessel_j(int l, double x) {
  check_degree(l);
  check_argument(x);
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x < small_argument_cutoff(l)) return spherical_bessel_j_series(l, x);
  if (l == 0) return j0_closed(x);
  std::vector<double> buf(static_cast<std::size_t>(l) + 1);
  if (x > l) {
    upward(l, x, buf);
  } else {
    miller(l, x, buf);
  }
  return buf[static_cast<std::size_t>(l)];
}

void spherical_bessel_j_array(int lmax, double x, std::span<double> out) {
  check_degree(lmax);
  check_argument(x);
  if (out.size() < static_cast<std::size_t>(lmax) + 1) {
    throw std::invalid_argument("spherical_bessel_j_array: output span too small");
  }
  if (x < small_argument_cutoff(0)) {
    for (int l = 0; l <= lmax; ++l) {
      out[l] = x == 0.0 ? (l == 0 ? 1.0 : 0.0) : spherical_bessel_j_series(l, x);
    }
    return;
  }
  if (x > lmax) {
    upward(lmax, x, out);
  } else {
    miller(lmax, x, out);
  }
}

double legendre_p(int l, double t) {
  if (l < 0) throw std::domain_error("legendre_p: negative degree");
  check_cosine(t);
  if (l == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int n = 1; n < l; ++n) {
    const double next = ((2.0 * n + 1.0) * t * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double assoc_legendre(int l, int m, double t) {
  if (m < 0 || m > l) throw std::domain_error("assoc_legendre: need 0 <= m <= l");
  check_cosine(t);
  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * s;
  if (l == m) return pmm;
  double prev = pmm;
  double cur = (2.0 * m + 1.0) * t * pmm;
  for (int n = m + 1; n < l; ++n) {
    const double next = ((2.0 * n + 1.0) * t * cur - (n + m) * prev) / (n - m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// p_{l,m} = sqrt((2l+1)(l-m)!/(l+m)!) P_{l,m}(t) for 0 <= m <= l <= L, flat
// layout l*(l+1)/2 + m.
void normalized_legendre_table(int L, double t, std::vector<double>& p) {
  p.assign(static_cast<std::size_t>((L + 1) * (L + 2) / 2), 0.0);
  auto at = [&](int l, int m) -> double& {
    return p[static_cast<std::size_t>(l * (l + 1) / 2 + m)];
  };
  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  at(0, 0) = 1.0;
  for (int m = 1; m <= L; ++m) {
    at(m, m) = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * at(m - 1, m - 1);
  }
  for (int m = 0; m < L; ++m) {
    at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * t * at(m, m);
    for (int l = m + 2; l <= L; ++l) {
      const double l2 = static_cast<double>(l) * l;
      const double m2 = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      const double lm1 = l - 1.0;
      const double b = std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
      at(l, m) = a * (t * at(l - 1, m) - b * at(l - 2, m));
    }
  }
}

}  // namespace

void sph_harm_all(int L, const UnitVector& dir, std::span<cplx> out) {
  if (L < 0 || L > kMaxDegree) throw std::domain_error("sph_harm_all: degree out of range");
  if (out.size() < static_cast<std::size_t>(HarmonicIndex::count(L))) {
    throw std::invalid_argument("sph_harm_all: output span too small");
  }
  std::vector<double> p;
  normalized_legendre_table(L, std::cos(dir.theta()), p);
  const double inv_sqrt_4pi = 1.0 / std::sqrt(kFourPi);
  for (int l = 0; l <= L; ++l) {
    const cplx il = i_pow(l) * inv_sqrt_4pi;
    for (int m = -l; m <= l; ++m) {
      const int am = std::abs(m);
      const double sign = (m > 0 && (m % 2 != 0)) ? -1.0 : 1.0;
      const double plm = p[static_cast<std::size_t>(l * (l + 1) / 2 + am)];
      const cplx phase = std::polar(1.0, m * dir.phi());
      out[static_cast<std::size_t>(l * l + l + m)] = sign * plm * il * phase;
    }
  }
}

cplx sph_harm(const HarmonicIndex& idx, const UnitVector& dir) {
  if (idx.l < 0 || std::abs(idx.m) > idx.l) throw std::domain_error("sph_harm: invalid index");
  std::vector<cplx> all(static_cast<std::size_t>(HarmonicIndex::count(idx.l)));
  sph_harm_all(idx.l, dir, all);
  return all[static_cast<std::size_t>(idx.flat())];
}

cplx plane_wave_partial_sum(double k, const UnitVector& beta, const Vec3& y, int L) {
  if (L < 0) throw std::domain_error("plane_wave_partial_sum: negative truncation");
  const double r = norm(y);
  const UnitVector y_dir = r > 0.0 ? UnitVector::from_cartesian(y) : UnitVector{};
  const auto count = static_cast<std::size_t>(HarmonicIndex::count(L));
  std::vector<cplx> y_minus_beta(count), y_hat(count);
  sph_harm_all(L, beta.negated(), y_minus_beta);
  sph_harm_all(L, y_dir, y_hat);
  std::vector<double> jl(static_cast<std::size_t>(L) + 1);
  spherical_bessel_j_array(L, k * r, jl);
  cplx total = 0.0;
  for (int l = 0; l <= L; ++l) {
    cplx inner = 0.0;
    for (int m = -l; m <= l; ++m) {
      const auto i = static_cast<std::size_t>(l * l + l + m);
      inner += y_minus_beta[i] * std::conj(y_hat[i]);
    }
    total += kFourPi * i_pow(l) * jl[static_cast<std::size_t>(l)] * inner;
  }
  return total;
}

}  // namespace scatdesign::specfun
