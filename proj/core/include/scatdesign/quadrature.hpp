#pragma once

#include <memory>

#include "scatdesign/specfun.hpp"
#include "scatdesign/types.hpp"

namespace scatdesign {

/// Gauss-Legendre rule on [0, R]. Weights are plain dr weights; the r^2
/// Jacobian is applied by callers (and by BallGrid).
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double R = 0.0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Product rule on S^2: Gauss-Legendre in cos(theta) times uniform phi.
/// Node order is theta-major, phi fastest.
struct SphereRule {
  int degree = 0;        // Y_l Y_l' orthonormality exact for l, l' <= degree
  int exact_degree = 0;  // harmonics integrated exactly up to this degree
  int n_theta = 0;
  int n_phi = 0;
  std::vector<specfun::UnitVector> nodes;
  std::vector<Vec3> points;  // cartesian copies of nodes
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] bool compatible(const SphereRule& other) const {
    return degree == other.degree && n_theta == other.n_theta && n_phi == other.n_phi;
  }
};

/// Tensor product of a RadialRule and a SphereRule covering B_R.
/// Node index = ring * n_phi + phi_index, ring = radial_index * n_theta + theta_index.
struct BallGrid {
  std::shared_ptr<const RadialRule> radial;
  std::shared_ptr<const SphereRule> angular;
  std::vector<Vec3> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] double R() const { return radial->R; }
  [[nodiscard]] std::size_t n_rings() const { return radial->size() * static_cast<std::size_t>(angular->n_theta); }
  [[nodiscard]] std::size_t n_phi() const { return static_cast<std::size_t>(angular->n_phi); }
  [[nodiscard]] std::size_t radial_index(std::size_t node) const {
    return node / (static_cast<std::size_t>(angular->n_theta) * n_phi());
  }
  [[nodiscard]] std::size_t angular_index(std::size_t node) const { return node % angular->size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

RadialRule make_radial_rule(int n, double R);
std::shared_ptr<const SphereRule> make_sphere_rule(int degree);
std::shared_ptr<const BallGrid> make_ball_grid(std::shared_ptr<const RadialRule> radial,
                                               std::shared_ptr<const SphereRule> angular);
std::shared_ptr<const BallGrid> make_ball_grid(int n_radial, int sphere_degree, double R);

/// Function values at the nodes of a SphereRule.
struct SphereSamples {
  std::shared_ptr<const SphereRule> rule;
  CVector values;

  SphereSamples() = default;
  SphereSamples(std::shared_ptr<const SphereRule> r, CVector v);
  static SphereSamples zeros(std::shared_ptr<const SphereRule> r);

  [[nodiscard]] std::size_t size() const { return values.size(); }
};

/// Sum_j w_j a_j conj(b_j). Throws RuleMismatch when the rules differ.
cplx inner_s2(const SphereSamples& a, const SphereSamples& b);
double norm_s2(const SphereSamples& a);

/// Samples a callable f(UnitVector) -> cplx on every node of the rule.
template <typename F>
SphereSamples sample_on(std::shared_ptr<const SphereRule> rule, F&& f) {
  CVector values(rule->size());
  for (std::size_t j = 0; j < rule->size(); ++j) values[j] = f(rule->nodes[j]);
  return {std::move(rule), std::move(values)};
}

/// Complex samples on every node of a BallGrid.
struct BallField {
  std::shared_ptr<const BallGrid> grid;
  CVector values;

  BallField() = default;
  BallField(std::shared_ptr<const BallGrid> g, CVector v);
  static BallField zeros(std::shared_ptr<const BallGrid> g);
  static BallField constant(std::shared_ptr<const BallGrid> g, cplx value);

  template <typename F>
  static BallField sample(std::shared_ptr<const BallGrid> g, F&& f) {
    CVector v(g->size());
    for (std::size_t n = 0; n < g->size(); ++n) v[n] = f(g->nodes[n]);
    return {std::move(g), std::move(v)};
  }

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] double norm_l2() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] cplx integral() const;
};

/// Same grid object or structurally identical grids.
bool same_grid(const BallGrid& a, const BallGrid& b);
void require_same_grid(const BallField& a, const BallField& b, const char* where);

}  // namespace scatdesign
