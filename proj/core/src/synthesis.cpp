#include "scatdesign/synthesis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace scatdesign::synthesis {

using specfun::HarmonicIndex;

namespace {

std::vector<double> bessel_on_rule(int l, double k, const RadialRule& rule) {
  std::vector<double> out(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) out[i] = specfun::spherical_bessel_j(l, k * rule.nodes[i]);
  return out;
}

bool same_radial(const RadialRule& a, const RadialRule& b) {
  if (&a == &b) return true;
  if (a.size() != b.size() || a.R != b.R) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.nodes[i] != b.nodes[i] || a.weights[i] != b.weights[i]) return false;
  }
  return true;
}

}  // namespace

double gamma_l(int l, double k, const RadialRule& rule) {
  if (!(k > 0.0)) throw std::invalid_argument("gamma_l: k must be > 0");
  double denom = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes[i];
    const double j = specfun::spherical_bessel_j(l, k * r);
    denom += rule.weights[i] * r * r * j * j;
  }
  return 1.0 / denom;
}

RadialProfiles radial_profiles(const sht::AngularCoefficients& c, double k,
                               std::shared_ptr<const RadialRule> rule,
                               std::span<const NullComponent> null_components) {
  if (!(k > 0.0)) throw std::invalid_argument("radial_profiles: k must be > 0");
  RadialProfiles p;
  p.L = c.L;
  p.k = k;
  p.rule = rule;
  p.channels.assign(c.coeffs.size(), CVector(rule->size(), 0.0));
  for (int l = 0; l <= c.L; ++l) {
    const std::vector<double> jl = bessel_on_rule(l, k, *rule);
    const double gamma = gamma_l(l, k, *rule);
    const cplx phase = minus_i_pow(-l - 2);
    for (int m = -l; m <= l; ++m) {
      const cplx amp = phase * c.at(l, m) * gamma;
      CVector& h = p.channel(l, m);
      for (std::size_t i = 0; i < rule->size(); ++i) h[i] = amp * jl[i];
    }
  }
  for (const auto& nc : null_components) {
    if (nc.index.l > c.L) {
      throw std::invalid_argument("radial_profiles: null component above truncation degree");
    }
    if (nc.profile.size() != rule->size()) {
      throw RuleMismatch("radial_profiles: null profile not sampled on the radial rule");
    }
    CVector& h = p.channel(nc.index.l, nc.index.m);
    for (std::size_t i = 0; i < rule->size(); ++i) h[i] += nc.coefficient * nc.profile[i];
  }
  return p;
}

cplx moment_check(const RadialProfiles& p, int l, int m) {
  const HarmonicIndex idx(l, m);
  if (l > p.L) return 0.0;
  const auto& rule = *p.rule;
  const CVector& h = p.channel(idx.l, idx.m);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes[i];
    sum += rule.weights[i] * r * r * specfun::spherical_bessel_j(l, p.k * r) * h[i];
  }
  return minus_i_pow(l + 2) * sum;
}

std::vector<double> orthogonal_profile(int l, double k, const RadialRule& rule,
                                       std::span<const double> seed_samples) {
  if (seed_samples.size() != rule.size()) throw RuleMismatch("orthogonal_profile: seed size mismatch");
  const std::vector<double> jl = bessel_on_rule(l, k, rule);
  double sj = 0.0, jj = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double w = rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    sj += w * seed_samples[i] * jl[i];
    jj += w * jl[i] * jl[i];
    ss += w * seed_samples[i] * seed_samples[i];
  }
  const double c = sj / jj;
  std::vector<double> out(rule.size());
  double rr = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    out[i] = seed_samples[i] - c * jl[i];
    rr += rule.weights[i] * rule.nodes[i] * rule.nodes[i] * out[i] * out[i];
  }
  if (!(rr > 1e-20 * ss)) {
    throw std::invalid_argument("orthogonal_profile: seed is degenerate (proportional to j_l(kr))");
  }
  return out;
}

std::vector<double> orthogonal_profile(int l, double k, const RadialRule& rule,
                                       const std::function<double(double)>& seed_shape) {
  std::vector<double> seed(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) seed[i] = seed_shape(rule.nodes[i]);
  return orthogonal_profile(l, k, rule, seed);
}

BallField assemble_h(const RadialProfiles& p, std::shared_ptr<const BallGrid> grid) {
  if (!same_radial(*p.rule, *grid->radial)) {
    throw RuleMismatch("assemble_h: grid radial rule differs from the profiles' rule");
  }
  const auto& ang = *grid->angular;
  const auto nlm = static_cast<std::size_t>(HarmonicIndex::count(p.L));
  std::vector<cplx> ylm(nlm * ang.size());
  for (std::size_t j = 0; j < ang.size(); ++j) {
    specfun::sph_harm_all(p.L, ang.nodes[j], std::span<cplx>(ylm.data() + j * nlm, nlm));
  }
  CVector values(grid->size(), 0.0);
  for (std::size_t i = 0; i < grid->radial->size(); ++i) {
    for (std::size_t j = 0; j < ang.size(); ++j) {
      cplx sum = 0.0;
      const cplx* y = ylm.data() + j * nlm;
      for (std::size_t c = 0; c < nlm; ++c) sum += p.channels[c][i] * y[c];
      values[i * ang.size() + j] = sum;
    }
  }
  return {std::move(grid), std::move(values)};
}

SphereSamples amplitude_from_h(const BallField& h, double k, std::shared_ptr<const SphereRule> angular) {
  const auto& grid = *h.grid;
  // Weighted source once; the exponential is evaluated per (beta, node) pair.
  CVector weighted(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) weighted[n] = grid.weights[n] * h.values[n];
  CVector values(angular->size());
  for (std::size_t b = 0; b < angular->size(); ++b) {
    const Vec3& beta = angular->points[b];
    cplx sum = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
      if (weighted[n] == cplx(0.0)) continue;
      sum += std::polar(1.0, -k * dot(beta, grid.nodes[n])) * weighted[n];
    }
    values[b] = -sum / kFourPi;
  }
  return {std::move(angular), std::move(values)};
}

LsqResult lsq_fit(const SphereSamples& f, std::span<const BallField> basis, double k, const LsqOptions& options) {
  if (basis.empty()) throw std::invalid_argument("lsq_fit: need at least one basis field");
  const auto n = basis.size();
  std::vector<SphereSamples> g;
  g.reserve(n);
  for (const auto& phi : basis) {
    require_same_grid(phi, basis.front(), "lsq_fit");
    g.push_back(amplitude_from_h(phi, k, f.rule));
  }
  Eigen::MatrixXcd gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    rhs(static_cast<Eigen::Index>(i)) = inner_s2(f, g[i]);
    for (std::size_t j = 0; j < n; ++j) {
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inner_s2(g[j], g[i]);
    }
  }
  LsqResult result;
  result.ridge = options.ridge.value_or(1e-12 * gram.trace().real() / static_cast<double>(n));
  if (result.ridge < 0.0) throw std::invalid_argument("lsq_fit: ridge must be >= 0");
  Eigen::MatrixXcd shifted = gram;
  shifted.diagonal().array() += result.ridge;
  Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
  Eigen::VectorXcd c;
  if (llt.info() == Eigen::Success) {
    c = llt.solve(rhs);
  } else {
    result.ok = false;
    c = shifted.completeOrthogonalDecomposition().solve(rhs);
  }
  result.coefficients.assign(c.data(), c.data() + c.size());

  CVector hv(basis.front().size(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t node = 0; node < hv.size(); ++node) hv[node] += result.coefficients[j] * basis[j].values[node];
  }
  result.h = BallField(basis.front().grid, std::move(hv));

  CVector fit(f.size(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t b = 0; b < fit.size(); ++b) fit[b] += result.coefficients[j] * g[j].values[b];
  }
  for (std::size_t b = 0; b < fit.size(); ++b) fit[b] = f.values[b] - fit[b];
  result.residual = norm_s2(SphereSamples(f.rule, std::move(fit)));
  return result;
}

}  // namespace scatdesign::synthesis
