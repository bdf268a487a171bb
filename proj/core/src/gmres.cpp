#include "scatdesign/gmres.hpp"

#include <cmath>
#include <stdexcept>

namespace scatdesign {

namespace {

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// sum conj(a_i) b_i
cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

SolveStats gmres(const LinearMap& apply, std::span<const cplx> b, std::span<cplx> x, const GmresOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("gmres: tol must be > 0");
  const std::size_t n = b.size();
  if (x.size() != n) throw std::invalid_argument("gmres: size mismatch");
  SolveStats stats;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), cplx(0.0));
    stats.converged = true;
    return stats;
  }

  CVector r(n), w(n);
  apply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double beta = norm2(r);
  stats.final_residual = beta / bnorm;
  if (stats.final_residual <= options.tol) {
    stats.converged = true;
    return stats;
  }

  const auto max_it = static_cast<std::size_t>(std::max(options.max_iterations, 1));
  std::vector<CVector> basis;
  basis.reserve(max_it + 1);
  basis.emplace_back(n);
  for (std::size_t i = 0; i < n; ++i) basis[0][i] = r[i] / beta;

  // Hessenberg columns after Givens rotation; rotations (c, s).
  std::vector<CVector> hcols;
  std::vector<double> cs;
  std::vector<cplx> sn;
  CVector g(max_it + 1, 0.0);
  g[0] = beta;

  std::size_t j = 0;
  for (; j < max_it; ++j) {
    apply(basis[j], w);
    CVector h(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      h[i] = dotc(basis[i], w);
      for (std::size_t t = 0; t < n; ++t) w[t] -= h[i] * basis[i][t];
    }
    h[j + 1] = norm2(w);
    for (std::size_t i = 0; i < j; ++i) {
      const cplx tmp = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -std::conj(sn[i]) * h[i] + cs[i] * h[i + 1];
      h[i] = tmp;
    }
    const double a = std::abs(h[j]);
    const double bb = std::abs(h[j + 1]);
    const double rho = std::hypot(a, bb);
    double c = 1.0;
    cplx s = 0.0;
    if (rho > 0.0) {
      if (a == 0.0) {
        c = 0.0;
        s = std::conj(h[j + 1]) / bb;
      } else {
        c = a / rho;
        s = (h[j] / a) * std::conj(h[j + 1]) / rho;
      }
    }
    cs.push_back(c);
    sn.push_back(s);
    h[j] = c * h[j] + s * h[j + 1];
    h[j + 1] = 0.0;
    g[j + 1] = -std::conj(s) * g[j];
    g[j] = c * g[j];
    hcols.push_back(std::move(h));

    stats.iterations = static_cast<int>(j + 1);
    stats.final_residual = std::abs(g[j + 1]) / bnorm;
    if (stats.final_residual <= options.tol || rho == 0.0) {
      ++j;
      break;
    }
    const double next_norm = norm2(w);
    if (next_norm == 0.0) {
      ++j;
      break;
    }
    basis.emplace_back(n);
    for (std::size_t t = 0; t < n; ++t) basis.back()[t] = w[t] / next_norm;
  }

  // Back substitution on the triangular system.
  const std::size_t m = j;
  CVector y(m, 0.0);
  for (std::size_t ii = m; ii-- > 0;) {
    cplx s = g[ii];
    for (std::size_t k = ii + 1; k < m; ++k) s -= hcols[k][ii] * y[k];
    y[ii] = s / hcols[ii][ii];
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t t = 0; t < n; ++t) x[t] += y[k] * basis[k][t];
  }

  // True residual of the returned iterate.
  apply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  stats.final_residual = norm2(r) / bnorm;
  stats.converged = stats.final_residual <= options.tol;
  return stats;
}

}  // namespace scatdesign
