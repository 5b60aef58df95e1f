#include "oacgrid/analytic_mse.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oacgrid/decoder.hpp"

namespace oac {

double qfunc(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

namespace {

constexpr double kExpFloor = 745.0;

// mu(x) = 2 sum_{m=1}^{N-1} alpha_m Q((2m-1) x / (sqrt(2) sigma)).
// Terms with theta_m (x/sigma)^2 > 745 are below the double underflow range.
double mu_sum(int N, double x, double sigma) {
  const auto& tab = CoefficientTable::get(N);
  const double r2 = (x / sigma) * (x / sigma);
  double s = 0.0;
  for (int m = 1; m < N; ++m) {
    if (tab.theta(m) * r2 > kExpFloor) break;
    s += tab.alpha(m) * qfunc((2.0 * m - 1.0) * x / (std::numbers::sqrt2 * sigma));
  }
  return 2.0 * s;
}

double omega_sum(int limit, double x, double eta, double sigma) {
  const double r2 = (eta * x / sigma) * (eta * x / sigma);
  double s = 0.0;
  for (int m = 1; m <= limit; ++m) {
    const double b = 2.0 * m - 1.0;
    if (0.25 * b * b * r2 > kExpFloor) break;
    s += b * qfunc(eta * b * x / (std::numbers::sqrt2 * sigma));
  }
  return 2.0 * s;
}

// Tail bound on the MAP approximation error for one axis: dropped lattice
// terms beyond the first `levels` error magnitudes plus the neglected prior
// mass at the grid edge.
double map_axis_error_bound(double d, int levels, int K, double eta, double sigma) {
  if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
  const double b = 2.0 * levels - 1.0;
  const double u = d * eta / sigma;
  const double t1 = (4.0 * sigma / (d * eta * std::sqrt(std::numbers::pi))) *
                    std::exp(-0.5 * u * u * b * b) * (b + 4.0 / (u * u * b));
  const double mu_p = (levels - 1.0) * K / 2.0;
  const double var_p = (double(levels) * levels - 1.0) * K / 12.0;
  const double t2 = (2.0 * d * eta * levels * levels / (std::numbers::pi * std::sqrt(var_p) * sigma)) *
                    std::exp(-(levels - mu_p) * (levels - mu_p) / (2.0 * var_p) - 0.5 * u * u);
  return t1 + t2;
}

double gaussian_sigma(const SystemConfig& cfg, const char* who) {
  if (cfg.noise.kind != NoiseKind::Gaussian)
    throw InvalidConfig(std::string(who) + " requires Gaussian noise");
  return std::sqrt(cfg.noise.sigma2);
}

}  // namespace

MseBreakdown mse_ml(const GridSpacing& sp, const SystemConfig& cfg) {
  const double sigma = gaussian_sigma(cfg, "mse_ml");
  const int n1 = cfg.K * (cfg.q - 1) + 1;
  const int n2 = cfg.K * (cfg.n - 1) + 1;
  MseBreakdown out;
  out.real_term = mu_sum(n1, sp.d1, sigma);
  out.imag_term = double(cfg.q) * cfg.q * mu_sum(n2, sp.d2, sigma);
  out.total = out.real_term + out.imag_term;
  return out;
}

MseBreakdown mse_map(const GridSpacing& sp, const SystemConfig& cfg) {
  const double sigma = gaussian_sigma(cfg, "mse_map");
  const double eta = map_eta(cfg);
  MseBreakdown out;
  out.real_term = omega_sum(2 * cfg.q, sp.d1, eta, sigma);
  out.imag_term = double(cfg.q) * cfg.q * omega_sum(2 * cfg.n, sp.d2, eta, sigma);
  out.total = out.real_term + out.imag_term;
  out.error_bound = map_axis_error_bound(sp.d1, cfg.q, cfg.K, eta, sigma) +
                    double(cfg.q) * cfg.q * map_axis_error_bound(sp.d2, cfg.n, cfg.K, eta, sigma);
  return out;
}

double mse_ndim(const NDimSpacing& sp, std::span<const double> sigmas, const SystemConfig& cfg) {
  if (sp.d.size() != sigmas.size())
    throw InvalidConfig("mse_ndim needs one noise deviation per dimension");
  const int nk = cfg.K * (sp.q - 1) + 1;
  const auto& tab = CoefficientTable::get(nk);
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t i = 0; i < sp.d.size(); ++i) {
    double mu = 0.0;
    for (int m = 1; m < nk; ++m) {
      const double u = (2.0 * m - 1.0) * sp.d[i] / sigmas[i];
      if (0.5 * u * u > kExpFloor) break;
      mu += tab.alpha(m) * qfunc(u);
    }
    total += weight * mu;
    weight *= sp.q;
  }
  return total;
}

}  // namespace oac
