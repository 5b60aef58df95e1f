#include "oacgrid/encoder.hpp"

#include <cmath>
#include <string>

namespace oac {

GridSpacing GridSpacing::centered(double d1, double d2, const SystemConfig& cfg) {
  if (!(d1 > 0.0)) throw InvalidConfig("d1 must be > 0");
  if (!(d2 >= 0.0)) throw InvalidConfig("d2 must be >= 0");
  GridSpacing sp;
  sp.d1 = d1;
  sp.d2 = d2;
  sp.chi = cplx(-(cfg.q - 1) * d1 / 2.0, -(cfg.n - 1) * d2 / 2.0);
  return sp;
}

GridSpacing equal_distance_spacing(const SystemConfig& cfg) {
  const double d =
      std::sqrt(12.0 * cfg.power / (double(cfg.q) * cfg.q + double(cfg.n) * cfg.n - 2.0));
  return GridSpacing::centered(d, d, cfg);
}

std::pair<int, int> decompose(std::int64_t s, int q, int n) {
  if (s < 0 || s >= std::int64_t(q) * n)
    throw InvalidConfig("symbol " + std::to_string(s) + " outside 0.." + std::to_string(q * n - 1));
  return {static_cast<int>(s % q), static_cast<int>(s / q)};
}

cplx encode(std::int64_t s, const GridSpacing& sp, const SystemConfig& cfg) {
  auto [c1, c2] = decompose(s, cfg.q, cfg.n);
  return cplx(c1 * sp.d1, c2 * sp.d2) + sp.chi;
}

double avg_power(const GridSpacing& sp, const SystemConfig& cfg) {
  const double q2 = double(cfg.q) * cfg.q, n2 = double(cfg.n) * cfg.n;
  return (q2 - 1.0) / 12.0 * sp.d1 * sp.d1 + (n2 - 1.0) / 12.0 * sp.d2 * sp.d2;
}

cplx encode_hybrid(double s, const GridSpacing& sp, double q, int n) {
  if (!(s >= 0.0 && s <= q * n)) throw InvalidConfig("hybrid input outside [0, q*n]");
  double level = std::floor(s / q);
  double residual = s - q * level;
  if (level >= n) {  // s == q*n: closed top interval, residual q at level n-1
    level = n - 1;
    residual = q;
  }
  return cplx(residual * sp.d1, level * sp.d2) + sp.chi;
}

double hybrid_avg_power(const GridSpacing& sp, double q, int n) {
  return sp.d1 * sp.d1 * q * q / 3.0 +
         sp.d2 * sp.d2 * (n - 1.0) * (2.0 * n - 1.0) / 6.0;
}

std::vector<int> digits_base_q(std::int64_t s, int q, int N) {
  if (s < 0) throw InvalidConfig("symbol must be non-negative");
  std::vector<int> c(N);
  for (int i = 0; i < N; ++i) {
    c[i] = static_cast<int>(s % q);
    s /= q;
  }
  if (s != 0) throw InvalidConfig("symbol outside 0..q^N-1");
  return c;
}

std::vector<double> encode_ndim(std::int64_t s, const NDimSpacing& sp) {
  const int N = static_cast<int>(sp.d.size());
  auto c = digits_base_q(s, sp.q, N);
  std::vector<double> x(N);
  for (int i = 0; i < N; ++i) x[i] = sp.d[i] * c[i];
  return x;
}

}  // namespace oac
