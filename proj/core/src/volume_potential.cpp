#include "scatdesign/volume_potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scatdesign {

namespace {

// (sin z - z cos z) / z, accurate near z = 0.
double radial_moment_ratio(double z) {
  if (z < 1e-2) {
    const double z2 = z * z;
    return z2 / 3.0 - z2 * z2 / 30.0 + z2 * z2 * z2 / 840.0;
  }
  return (std::sin(z) - z * std::cos(z)) / z;
}

double j0(double z) {
  if (z < 1e-4) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

}  // namespace

cplx ball_potential(double rho, double k, double R) {
  if (!(k > 0.0) || !(R > 0.0) || !(rho >= 0.0)) {
    throw std::invalid_argument("ball_potential: need k > 0, R > 0, rho >= 0");
  }
  const cplx i(0.0, 1.0);
  const double k2 = k * k;
  if (rho > R) {
    return std::polar(1.0, k * rho) / rho * radial_moment_ratio(k * R) * R / k2;
  }
  // Contribution from |y| < rho: exp(ik rho) (sin k rho - k rho cos k rho) / (k^3 rho).
  const cplx inner = std::polar(1.0, k * rho) * radial_moment_ratio(k * rho) / k2;
  auto antiderivative = [&](double r) { return std::polar(1.0, k * r) * (-i * r / k + 1.0 / k2); };
  const cplx outer = j0(k * rho) * (antiderivative(R) - antiderivative(rho));
  return inner + outer;
}

double cell_radius(double weight) { return std::cbrt(3.0 * weight / kFourPi); }

VolumeOperator::VolumeOperator(std::shared_ptr<const BallGrid> grid, double k)
    : grid_(std::move(grid)), k_(k) {
  if (!grid_) throw std::invalid_argument("VolumeOperator: null grid");
  if (!(k > 0.0)) throw std::invalid_argument("VolumeOperator: k must be > 0");
  rings_ = grid_->n_rings();
  nphi_ = grid_->n_phi();
  nmodes_ = nphi_ / 2 + 1;
  const std::size_t half = nphi_ / 2;
  const auto& nodes = grid_->nodes;
  const auto& weights = grid_->weights;

  twiddle_.resize(nphi_);
  for (std::size_t t = 0; t < nphi_; ++t) {
    twiddle_[t] = std::polar(1.0, -2.0 * kPi * static_cast<double>(t) / static_cast<double>(nphi_));
  }

  modes_.assign(nmodes_ * rings_ * rings_, 0.0);
  diagonal_.assign(rings_, 0.0);
  std::vector<cplx> row(half + 1);
  for (std::size_t a = 0; a < rings_; ++a) {
    const Vec3& x = nodes[a * nphi_];
    cplx off_sum = 0.0;
    for (std::size_t b = 0; b < rings_; ++b) {
      const double w = weights[b * nphi_];
      // Kernel depends on cos(phi offset); offsets d and nphi - d coincide.
      for (std::size_t d = 0; d <= half; ++d) {
        if (a == b && d == 0) {
          row[d] = 0.0;
          continue;
        }
        row[d] = w * helmholtz_green(k_, distance(x, nodes[b * nphi_ + d]));
      }
      cplx ring_sum = row[0] + row[half];
      for (std::size_t d = 1; d < half; ++d) ring_sum += 2.0 * row[d];
      off_sum += ring_sum;
      for (std::size_t m = 0; m < nmodes_; ++m) {
        cplx c = row[0] + (m % 2 == 0 ? row[half] : -row[half]);
        for (std::size_t d = 1; d < half; ++d) c += 2.0 * twiddle_[(m * d) % nphi_].real() * row[d];
        modes_[(m * rings_ + a) * rings_ + b] = c;
      }
    }
    diagonal_[a] = ball_potential(norm(x), k_, grid_->R()) - off_sum;
  }
}

void VolumeOperator::apply(std::span<const cplx> v, std::span<cplx> out) const {
  if (v.size() != grid_->size() || out.size() != grid_->size()) {
    throw std::invalid_argument("VolumeOperator::apply: size mismatch");
  }
  // Forward DFT along phi for each ring: spectrum[m][ring].
  std::vector<cplx> spectrum(nphi_ * rings_);
  for (std::size_t b = 0; b < rings_; ++b) {
    const cplx* vb = v.data() + b * nphi_;
    for (std::size_t m = 0; m < nphi_; ++m) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < nphi_; ++j) s += vb[j] * twiddle_[(m * j) % nphi_];
      spectrum[m * rings_ + b] = s;
    }
  }
  std::vector<cplx> product(nphi_ * rings_);
  for (std::size_t m = 0; m < nphi_; ++m) {
    const std::size_t stored = m < nmodes_ ? m : nphi_ - m;
    const cplx* vm = spectrum.data() + m * rings_;
    for (std::size_t a = 0; a < rings_; ++a) {
      const cplx* c = modes_.data() + (stored * rings_ + a) * rings_;
      cplx s = 0.0;
      for (std::size_t b = 0; b < rings_; ++b) s += c[b] * vm[b];
      product[m * rings_ + a] = s;
    }
  }
  const double scale = 1.0 / static_cast<double>(nphi_);
  for (std::size_t a = 0; a < rings_; ++a) {
    for (std::size_t i = 0; i < nphi_; ++i) {
      cplx s = 0.0;
      for (std::size_t m = 0; m < nphi_; ++m) s += product[m * rings_ + a] * std::conj(twiddle_[(m * i) % nphi_]);
      const std::size_t node = a * nphi_ + i;
      out[node] = s * scale + diagonal_[a] * v[node];
    }
  }
}

CVector VolumeOperator::apply(std::span<const cplx> v) const {
  CVector out(v.size());
  apply(v, out);
  return out;
}

BallField VolumeOperator::apply(const BallField& v) const {
  if (!same_grid(*v.grid, *grid_)) throw RuleMismatch("VolumeOperator::apply: field on a different grid");
  return {grid_, apply(std::span<const cplx>(v.values))};
}

CVector volume_potential(const BallField& h, std::span<const Vec3> targets, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("volume_potential: k must be > 0");
  const auto& grid = *h.grid;
  CVector out(targets.size());
  const double coincide = 1e-12 * grid.R();
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Vec3& x = targets[t];
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const double d = distance(x, grid.nodes[n]);
      if (d < best) {
        best = d;
        nearest = n;
      }
    }
    const cplx c = h.values[nearest];
    cplx sum = c * ball_potential(norm(x), k, grid.R());
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const double d = distance(x, grid.nodes[n]);
      if (d <= coincide) continue;
      sum += grid.weights[n] * helmholtz_green(k, d) * (h.values[n] - c);
    }
    out[t] = sum;
  }
  return out;
}

}  // namespace scatdesign
