#pragma once

#include <vector>

#include "oacgrid/errors.hpp"

namespace oac {

enum class NoiseKind { Gaussian, Cauchy };

/// Additive channel noise. Gaussian is circularly symmetric complex with total
/// variance sigma2 (sigma2/2 per component). Cauchy is per-component centered
/// Cauchy with scale gamma.
struct NoiseModel {
  NoiseKind kind = NoiseKind::Gaussian;
  double sigma2 = 1.0;
  double gamma = 0.0;

  static NoiseModel gaussian(double sigma2);
  static NoiseModel cauchy(double gamma);

  /// Squared noise scale entering the SNR definition: sigma2 for Gaussian,
  /// gamma^2 for Cauchy.
  double scale2() const { return kind == NoiseKind::Gaussian ? sigma2 : gamma * gamma; }
  /// Amplitude scale: sigma for Gaussian, gamma for Cauchy.
  double scale() const;
};

/// Problem instance: per-node constellation has q in-phase and n quadrature
/// levels (modulation order Q = q*n), K transmitting nodes, average per-symbol
/// power budget `power`. SNR is power / noise.scale2().
struct SystemConfig {
  int q = 4;
  int n = 4;
  int K = 2;
  double power = 1.0;
  NoiseModel noise;

  /// Config from a linear SNR with unit power budget (Gaussian noise).
  static SystemConfig from_snr(int q, int n, int K, double snr, double power = 1.0);
  /// Config with explicit power budget and noise model.
  static SystemConfig from_noise(int q, int n, int K, double power, NoiseModel noise);

  double snr() const { return power / noise.scale2(); }
  void validate() const;
};

double snr_from_db(double db);
double snr_to_db(double xi);

/// Quantities derived from a config that every solver and MSE formula reuses.
struct DerivedGrid {
  int q = 0;
  int n = 0;
  int K = 0;
  double snr = 0.0;
  int n1k = 0;       // K(q-1)+1 real levels of the superimposed grid
  int n2k = 0;       // K(n-1)+1 imaginary levels
  int bar_n1 = 0;    // floor(2 n1k / 3), truncation limit
  int bar_n2 = 0;
  double upsilon1 = 0.0;  // sqrt(12 snr / (q^2-1))
  double upsilon2 = 0.0;  // sqrt(12 snr / (n^2-1))
  double kappa = 0.0;     // sqrt((q^2-1)/(n^2-1)) = upsilon2/upsilon1
};

DerivedGrid derive_grid(const SystemConfig& cfg);

/// Per-level-count coefficient table, memoized by N because the root solvers
/// evaluate the same sums thousands of times.
///   theta(m)  = (2m-1)^2/4
///   alpha(m)  = 2m-1 + (3m(1-m)-1)/N
///   gamma(m)  = (2m-1) * alpha(m)
/// Valid m range is 1..N-1; accessors are 1-based.
class CoefficientTable {
 public:
  static const CoefficientTable& get(int N);

  int size() const { return static_cast<int>(alpha_.size()); }  // N-1 entries
  double alpha(int m) const { return alpha_[m - 1]; }
  double gamma(int m) const { return gamma_[m - 1]; }
  double theta(int m) const { return theta_[m - 1]; }

 private:
  explicit CoefficientTable(int N);
  std::vector<double> alpha_, gamma_, theta_;
};

inline double theta_coeff(int m) {
  const double b = 2.0 * m - 1.0;
  return 0.25 * b * b;
}

}  // namespace oac
