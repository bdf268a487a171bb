#pragma once

#include <optional>

#include "scatdesign/quadrature.hpp"
#include "scatdesign/volume_potential.hpp"

namespace scatdesign::reconstruction {

/// exp(i k alpha.x) at every grid node.
BallField incident_field(std::shared_ptr<const BallGrid> grid, double k, const specfun::UnitVector& alpha);

/// u = u0 - V[h].
BallField scattering_field_from_h(const BallField& h, const VolumeOperator& op, const specfun::UnitVector& alpha);
BallField scattering_field_from_h(const BallField& h, double k, const specfun::UnitVector& alpha);

struct PotentialField {
  BallField q;
  /// Nodes where u was exactly zero; q holds NaN there until regularized.
  std::vector<std::size_t> singular_nodes;
};

/// q = h / u pointwise.
PotentialField potential_from_h(const BallField& h, const BallField& u);

struct ZeroSetReport {
  double delta = 0.0;
  std::vector<std::size_t> nodes_in_N;  // ascending node indices with |u| < delta (or u == 0)
  double fraction = 0.0;                // |nodes_in_N| / node count
  double min_abs_u = 0.0;
  std::size_t total_nodes = 0;

  [[nodiscard]] bool empty() const { return nodes_in_N.empty(); }
};

ZeroSetReport zero_set(const BallField& u, double delta);

/// sup over nodes outside N of sum_{n in N} W_n / (4 pi |x - y_n|).
double tube_integral_bound(const ZeroSetReport& report, const BallGrid& grid);

struct Regularized {
  BallField h_delta;
  BallField u_delta;
  BallField q_delta;
  ZeroSetReport report;   // final excised set (includes any reclassified nodes)
  double tube_integral = 0.0;    // I(delta) for the initial excised set
  double lower_bound = 0.0;      // delta - max_N|h| * I(delta)
  double min_abs_u_delta = 0.0;  // inf over kept nodes of |u_delta|
  std::size_t reclassified = 0;  // kept nodes moved into N because |u_delta| <= delta/2
  int passes = 1;                // number of u_delta evaluations
};

/// Excise {|u| < delta}, recompute u_delta from h_delta and set
/// q_delta = h_delta / u_delta on the kept nodes, 0 on the excised ones.
/// Throws std::runtime_error when every node is excised.
Regularized regularize(const BallField& h, const VolumeOperator& op, const specfun::UnitVector& alpha, double delta);
Regularized regularize(const BallField& h, double k, const specfun::UnitVector& alpha, double delta);

/// max_n cell_radius(W_n)^2 / 2: the potential of one quadrature cell at its centre.
double single_cell_potential(const BallGrid& grid);

/// max(1e-2, 2 * ||h||_inf * single_cell_potential(grid)).
double default_delta(const BallField& h);

struct ImaginaryPartDiagnostic {
  double max_imag = 0.0;
  bool nonpositive = true;  // Im q <= 0 everywhere: scattering solution is unique
};

ImaginaryPartDiagnostic imaginary_part_diagnostic(const BallField& q);

/// Normalized Gaussian smoothing of a field over the grid (export-time only).
BallField mollify(const BallField& field, double width);

}  // namespace scatdesign::reconstruction
