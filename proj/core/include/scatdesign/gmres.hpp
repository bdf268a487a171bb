#pragma once

#include <functional>

#include "scatdesign/types.hpp"

namespace scatdesign {

using LinearMap = std::function<void(std::span<const cplx>, std::span<cplx>)>;

struct SolveStats {
  int iterations = 0;
  double final_residual = 0.0;  // ||b - A x|| / ||b||
  bool converged = false;
};

struct GmresOptions {
  double tol = 1e-8;
  int max_iterations = 500;
};

/// Unrestarted GMRES with modified Gram-Schmidt. x holds the initial guess
/// on entry and the iterate on exit.
SolveStats gmres(const LinearMap& apply, std::span<const cplx> b, std::span<cplx> x, const GmresOptions& options);

}  // namespace scatdesign
