#include "scatdesign/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scatdesign::reconstruction {

using specfun::UnitVector;

namespace {

constexpr int kMaxRegularizationPasses = 8;

}  // namespace

BallField incident_field(std::shared_ptr<const BallGrid> grid, double k, const UnitVector& alpha) {
  const Vec3 a = alpha.cartesian();
  return BallField::sample(std::move(grid), [&](const Vec3& x) { return std::polar(1.0, k * dot(a, x)); });
}

BallField scattering_field_from_h(const BallField& h, const VolumeOperator& op, const UnitVector& alpha) {
  BallField u = incident_field(h.grid, op.k(), alpha);
  const CVector potential = op.apply(std::span<const cplx>(h.values));
  for (std::size_t n = 0; n < u.size(); ++n) u.values[n] -= potential[n];
  return u;
}

BallField scattering_field_from_h(const BallField& h, double k, const UnitVector& alpha) {
  return scattering_field_from_h(h, VolumeOperator(h.grid, k), alpha);
}

PotentialField potential_from_h(const BallField& h, const BallField& u) {
  require_same_grid(h, u, "potential_from_h");
  PotentialField out{BallField::zeros(h.grid), {}};
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (u.values[n] == cplx(0.0)) {
      out.q.values[n] = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
      out.singular_nodes.push_back(n);
    } else {
      out.q.values[n] = h.values[n] / u.values[n];
    }
  }
  return out;
}

ZeroSetReport zero_set(const BallField& u, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("zero_set: delta must be > 0");
  ZeroSetReport report;
  report.delta = delta;
  report.total_nodes = u.size();
  report.min_abs_u = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < u.size(); ++n) {
    const double a = std::abs(u.values[n]);
    report.min_abs_u = std::min(report.min_abs_u, a);
    if (a < delta || u.values[n] == cplx(0.0)) report.nodes_in_N.push_back(n);
  }
  if (u.size() == 0) report.min_abs_u = 0.0;
  report.fraction = u.size() == 0 ? 0.0 : static_cast<double>(report.nodes_in_N.size()) / u.size();
  return report;
}

double tube_integral_bound(const ZeroSetReport& report, const BallGrid& grid) {
  if (report.nodes_in_N.empty()) return 0.0;
  std::vector<char> excised(grid.size(), 0);
  for (auto n : report.nodes_in_N) excised[n] = 1;
  double sup = 0.0;
  for (std::size_t x = 0; x < grid.size(); ++x) {
    if (excised[x]) continue;
    double sum = 0.0;
    for (auto n : report.nodes_in_N) sum += grid.weights[n] / (kFourPi * distance(grid.nodes[x], grid.nodes[n]));
    sup = std::max(sup, sum);
  }
  return sup;
}

Regularized regularize(const BallField& h, const VolumeOperator& op, const UnitVector& alpha, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("regularize: delta must be > 0");
  const BallField u = scattering_field_from_h(h, op, alpha);
  Regularized out;
  out.report = zero_set(u, delta);
  if (out.report.nodes_in_N.size() == u.size()) {
    throw std::runtime_error("regularize: target unreachable at this delta (|u| < delta on the whole ball)");
  }
  out.h_delta = h;
  std::vector<char> excised(h.size(), 0);
  double max_h_on_N = 0.0;
  for (auto n : out.report.nodes_in_N) {
    excised[n] = 1;
    max_h_on_N = std::max(max_h_on_N, std::abs(h.values[n]));
    out.h_delta.values[n] = 0.0;
  }
  out.tube_integral = tube_integral_bound(out.report, *h.grid);
  out.lower_bound = delta - max_h_on_N * out.tube_integral;

  if (out.report.empty()) {
    out.u_delta = u;
    out.passes = 0;
  } else {
    out.u_delta = scattering_field_from_h(out.h_delta, op, alpha);
    // A kept node whose |u_delta| fell to delta/2 or below joins the excised
    // set; u_delta is recomputed so that u_delta = u0 - V[h_delta] still holds.
    out.passes = 1;
    for (int pass = 1; pass <= kMaxRegularizationPasses; ++pass) {
      std::size_t moved = 0;
      for (std::size_t n = 0; n < h.size(); ++n) {
        if (!excised[n] && std::abs(out.u_delta.values[n]) <= 0.5 * delta) {
          excised[n] = 1;
          out.h_delta.values[n] = 0.0;
          ++moved;
        }
      }
      if (moved == 0) break;
      out.reclassified += moved;
      out.u_delta = scattering_field_from_h(out.h_delta, op, alpha);
      ++out.passes;
    }
    out.report.nodes_in_N.clear();
    for (std::size_t n = 0; n < h.size(); ++n) {
      if (excised[n]) out.report.nodes_in_N.push_back(n);
    }
    out.report.fraction = static_cast<double>(out.report.nodes_in_N.size()) / h.size();
  }

  out.q_delta = BallField::zeros(h.grid);
  out.min_abs_u_delta = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (excised[n]) continue;
    out.q_delta.values[n] = out.h_delta.values[n] / out.u_delta.values[n];
    out.min_abs_u_delta = std::min(out.min_abs_u_delta, std::abs(out.u_delta.values[n]));
  }
  return out;
}

Regularized regularize(const BallField& h, double k, const UnitVector& alpha, double delta) {
  return regularize(h, VolumeOperator(h.grid, k), alpha, delta);
}

double single_cell_potential(const BallGrid& grid) {
  double w = 0.0;
  for (double wn : grid.weights) w = std::max(w, wn);
  const double rho = cell_radius(w);
  return 0.5 * rho * rho;
}

double default_delta(const BallField& h) {
  return std::max(1e-2, 2.0 * h.max_abs() * single_cell_potential(*h.grid));
}

ImaginaryPartDiagnostic imaginary_part_diagnostic(const BallField& q) {
  ImaginaryPartDiagnostic d;
  d.max_imag = -std::numeric_limits<double>::infinity();
  for (const auto& v : q.values) {
    if (std::isfinite(v.imag())) d.max_imag = std::max(d.max_imag, v.imag());
  }
  if (q.values.empty()) d.max_imag = 0.0;
  d.nonpositive = d.max_imag <= 0.0;
  return d;
}

BallField mollify(const BallField& field, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("mollify: width must be > 0");
  const auto& grid = *field.grid;
  const double cutoff = 3.0 * width;
  const double inv2w2 = 1.0 / (2.0 * width * width);
  BallField out = BallField::zeros(field.grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cplx num = 0.0;
    double den = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const double d = distance(grid.nodes[i], grid.nodes[n]);
      if (d > cutoff) continue;
      const double w = grid.weights[n] * std::exp(-d * d * inv2w2);
      num += w * field.values[n];
      den += w;
    }
    out.values[i] = num / den;
  }
  return out;
}

}  // namespace scatdesign::reconstruction
