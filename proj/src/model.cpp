#include "oacgrid/model.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace oac {

NoiseModel NoiseModel::gaussian(double sigma2) {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
    throw InvalidConfig("gaussian noise variance must be finite and >= 0");
  NoiseModel m;
  m.kind = NoiseKind::Gaussian;
  m.sigma2 = sigma2;
  m.gamma = 0.0;
  return m;
}

NoiseModel NoiseModel::cauchy(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidConfig("cauchy scale must be finite and > 0");
  NoiseModel m;
  m.kind = NoiseKind::Cauchy;
  m.sigma2 = 0.0;
  m.gamma = gamma;
  return m;
}

double NoiseModel::scale() const {
  return kind == NoiseKind::Gaussian ? std::sqrt(sigma2) : gamma;
}

SystemConfig SystemConfig::from_snr(int q, int n, int K, double snr, double power) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw InvalidConfig("snr must be finite and > 0");
  SystemConfig cfg;
  cfg.q = q;
  cfg.n = n;
  cfg.K = K;
  cfg.power = power;
  cfg.noise = NoiseModel::gaussian(power / snr);
  cfg.validate();
  return cfg;
}

SystemConfig SystemConfig::from_noise(int q, int n, int K, double power, NoiseModel noise) {
  SystemConfig cfg;
  cfg.q = q;
  cfg.n = n;
  cfg.K = K;
  cfg.power = power;
  cfg.noise = noise;
  cfg.validate();
  return cfg;
}

void SystemConfig::validate() const {
  if (q < 2) throw InvalidConfig("q must be >= 2");
  if (n < 2) throw InvalidConfig("n must be >= 2");
  if (K < 2) throw InvalidConfig("K must be >= 2");
  if (!(power > 0.0) || !std::isfinite(power)) throw InvalidConfig("power must be finite and > 0");
  if (noise.kind == NoiseKind::Cauchy && !(noise.gamma > 0.0))
    throw InvalidConfig("cauchy scale must be > 0");
  if (noise.kind == NoiseKind::Gaussian && !(noise.sigma2 >= 0.0))
    throw InvalidConfig("gaussian variance must be >= 0");
}

double snr_from_db(double db) { return std::pow(10.0, db / 10.0); }

double snr_to_db(double xi) {
  if (!(xi > 0.0)) throw InvalidConfig("snr must be > 0 to convert to dB");
  return 10.0 * std::log10(xi);
}

DerivedGrid derive_grid(const SystemConfig& cfg) {
  cfg.validate();
  const double xi = cfg.snr();
  if (!(xi > 0.0) || !std::isfinite(xi)) throw InvalidConfig("derived snr must be finite and > 0");
  DerivedGrid g;
  g.q = cfg.q;
  g.n = cfg.n;
  g.K = cfg.K;
  g.snr = xi;
  g.n1k = cfg.K * (cfg.q - 1) + 1;
  g.n2k = cfg.K * (cfg.n - 1) + 1;
  g.bar_n1 = 2 * g.n1k / 3;
  g.bar_n2 = 2 * g.n2k / 3;
  g.upsilon1 = std::sqrt(12.0 * xi / (double(cfg.q) * cfg.q - 1.0));
  g.upsilon2 = std::sqrt(12.0 * xi / (double(cfg.n) * cfg.n - 1.0));
  g.kappa = std::sqrt((double(cfg.q) * cfg.q - 1.0) / (double(cfg.n) * cfg.n - 1.0));
  return g;
}

CoefficientTable::CoefficientTable(int N) {
  alpha_.resize(N - 1);
  gamma_.resize(N - 1);
  theta_.resize(N - 1);
  for (int m = 1; m < N; ++m) {
    const double b = 2.0 * m - 1.0;
    const double a = b + (3.0 * m * (1.0 - m) - 1.0) / N;
    alpha_[m - 1] = a;
    gamma_[m - 1] = b * a;
    theta_[m - 1] = 0.25 * b * b;
  }
}

const CoefficientTable& CoefficientTable::get(int N) {
  if (N < 2) throw InvalidConfig("coefficient table requires N >= 2");
  static std::mutex mu;
  static std::unordered_map<int, std::unique_ptr<CoefficientTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it == cache.end())
    it = cache.emplace(N, std::unique_ptr<CoefficientTable>(new CoefficientTable(N))).first;
  return *it->second;
}

}  // namespace oac
