#pragma once

#include <optional>
#include <span>

#include "oacgrid/encoder.hpp"

namespace oac {

/// Gaussian upper-tail probability Q(x) = erfc(x/sqrt(2))/2.
double qfunc(double x);

/// Closed-form MSE split into its in-phase and (q^2-weighted) quadrature
/// parts. error_bound is populated by the MAP formula only.
struct MseBreakdown {
  double real_term = 0.0;
  double imag_term = 0.0;
  double total = 0.0;
  std::optional<double> error_bound;
};

/// ML decoding MSE: mu1(d1) + q^2 mu2(d2) with
/// mu_i(x) = 2 sum_{m=1}^{N_i-1} alpha_{i,m} Q((2m-1) x / (sqrt(2) sigma)).
/// Gaussian noise only.
MseBreakdown mse_ml(const GridSpacing& sp, const SystemConfig& cfg);

/// MAP decoding MSE approximation: omega1(d1) + q^2 omega2(d2) with
/// omega_1(x) = 2 sum_{m=1}^{2q} (2m-1) Q(eta (2m-1) x / (sqrt(2) sigma))
/// (2n terms on the quadrature axis) and eta = 1 + sigma^2/K. error_bound
/// carries the tail-truncation bound on the approximation error.
MseBreakdown mse_map(const GridSpacing& sp, const SystemConfig& cfg);

/// N-dimensional grid MSE: sum_i q^(i-1) mu_i(d_i) with
/// mu_i(x) = sum_{m=1}^{NK-1} alpha_m Q((2m-1) x / sigma_i), NK = K(q-1)+1.
/// Follows the N-dimensional formula literally; it omits the factor 2 and the
/// sqrt(2) noise split of the two-dimensional formula.
double mse_ndim(const NDimSpacing& sp, std::span<const double> sigmas,
                const SystemConfig& cfg);

}  // namespace oac
