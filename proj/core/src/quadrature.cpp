#include "scatdesign/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scatdesign {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Final derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < n; ++k) {
      const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

RadialRule make_radial_rule(int n, double R) {
  if (n < 1) throw std::invalid_argument("make_radial_rule: need n >= 1, got " + std::to_string(n));
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("make_radial_rule: need R > 0");
  RadialRule rule;
  rule.R = R;
  gauss_legendre(n, rule.nodes, rule.weights);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = 0.5 * R * (rule.nodes[i] + 1.0);
    rule.weights[i] *= 0.5 * R;
  }
  return rule;
}

std::shared_ptr<const SphereRule> make_sphere_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("make_sphere_rule: need degree >= 0");
  auto rule = std::make_shared<SphereRule>();
  rule->degree = degree;
  rule->n_theta = degree + 1;
  rule->n_phi = 2 * degree + 2;
  rule->exact_degree = 2 * degree + 1;
  std::vector<double> t, w;
  gauss_legendre(rule->n_theta, t, w);
  const double dphi = 2.0 * kPi / rule->n_phi;
  // Descending cos(theta) so theta increases with the index.
  for (int it = rule->n_theta - 1; it >= 0; --it) {
    const double theta = std::acos(t[static_cast<std::size_t>(it)]);
    for (int ip = 0; ip < rule->n_phi; ++ip) {
      rule->nodes.emplace_back(theta, ip * dphi);
      rule->points.push_back(rule->nodes.back().cartesian());
      rule->weights.push_back(w[static_cast<std::size_t>(it)] * dphi);
    }
  }
  return rule;
}

std::shared_ptr<const BallGrid> make_ball_grid(std::shared_ptr<const RadialRule> radial,
                                               std::shared_ptr<const SphereRule> angular) {
  if (!radial || !angular) throw std::invalid_argument("make_ball_grid: null rule");
  auto grid = std::make_shared<BallGrid>();
  grid->radial = radial;
  grid->angular = angular;
  grid->nodes.reserve(radial->size() * angular->size());
  grid->weights.reserve(radial->size() * angular->size());
  for (std::size_t i = 0; i < radial->size(); ++i) {
    const double r = radial->nodes[i];
    const double wr = radial->weights[i] * r * r;
    for (std::size_t j = 0; j < angular->size(); ++j) {
      const Vec3& p = angular->points[j];
      grid->nodes.push_back({r * p[0], r * p[1], r * p[2]});
      grid->weights.push_back(wr * angular->weights[j]);
    }
  }
  return grid;
}

std::shared_ptr<const BallGrid> make_ball_grid(int n_radial, int sphere_degree, double R) {
  return make_ball_grid(std::make_shared<const RadialRule>(make_radial_rule(n_radial, R)),
                        make_sphere_rule(sphere_degree));
}

SphereSamples::SphereSamples(std::shared_ptr<const SphereRule> r, CVector v)
    : rule(std::move(r)), values(std::move(v)) {
  if (!rule) throw std::invalid_argument("SphereSamples: null rule");
  if (values.size() != rule->size()) {
    throw RuleMismatch("SphereSamples: value count does not match rule size");
  }
}

SphereSamples SphereSamples::zeros(std::shared_ptr<const SphereRule> r) {
  const auto n = r->size();
  return {std::move(r), CVector(n, 0.0)};
}

cplx inner_s2(const SphereSamples& a, const SphereSamples& b) {
  if (!a.rule || !b.rule || !a.rule->compatible(*b.rule)) {
    throw RuleMismatch("inner_s2: samples live on different sphere rules");
  }
  cplx sum = 0.0;
  const auto& w = a.rule->weights;
  for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * a.values[j] * std::conj(b.values[j]);
  return sum;
}

double norm_s2(const SphereSamples& a) { return std::sqrt(std::max(0.0, inner_s2(a, a).real())); }

BallField::BallField(std::shared_ptr<const BallGrid> g, CVector v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw std::invalid_argument("BallField: null grid");
  if (values.size() != grid->size()) throw RuleMismatch("BallField: value count does not match grid size");
}

BallField BallField::zeros(std::shared_ptr<const BallGrid> g) {
  const auto n = g->size();
  return {std::move(g), CVector(n, 0.0)};
}

BallField BallField::constant(std::shared_ptr<const BallGrid> g, cplx value) {
  const auto n = g->size();
  return {std::move(g), CVector(n, value)};
}

double BallField::norm_l2() const {
  double sum = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n) sum += grid->weights[n] * std::norm(values[n]);
  return std::sqrt(sum);
}

double BallField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

cplx BallField::integral() const {
  cplx sum = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n) sum += grid->weights[n] * values[n];
  return sum;
}

bool same_grid(const BallGrid& a, const BallGrid& b) {
  if (&a == &b) return true;
  if (a.size() != b.size() || !a.angular->compatible(*b.angular)) return false;
  if (a.radial->size() != b.radial->size() || a.radial->R != b.radial->R) return false;
  for (std::size_t i = 0; i < a.radial->size(); ++i) {
    if (a.radial->nodes[i] != b.radial->nodes[i]) return false;
  }
  return true;
}

void require_same_grid(const BallField& a, const BallField& b, const char* where) {
  if (!a.grid || !b.grid || !same_grid(*a.grid, *b.grid)) {
    throw RuleMismatch(std::string(where) + ": fields live on different grids");
  }
}

}  // namespace scatdesign
