#include "oacgrid/decoder.hpp"

#include <algorithm>
#include <cmath>

namespace oac {

DecisionGrid DecisionGrid::make(const GridSpacing& sp, const SystemConfig& cfg, double scale) {
  DecisionGrid g;
  g.scale = scale;
  const int n1 = cfg.K * (cfg.q - 1) + 1;
  const int n2 = cfg.K * (cfg.n - 1) + 1;
  g.real_levels.resize(n1);
  g.imag_levels.resize(n2);
  for (int i = 0; i < n1; ++i) g.real_levels[i] = i * sp.d1;
  for (int j = 0; j < n2; ++j) g.imag_levels[j] = j * sp.d2;
  return g;
}

int slice_axis(double value, double spacing, int count, double scale) {
  if (!(spacing > 0.0)) throw InvalidConfig("slice_axis needs spacing > 0");
  if (count < 2) throw InvalidConfig("slice_axis needs count >= 2");
  if (!(scale > 0.0)) throw InvalidConfig("slice_axis needs scale > 0");
  const double center = 0.5 * (count - 1);
  // Region widths scale about the grid center; ceil(x - 1/2) rounds with
  // exact half-way values resolving to the lower index.
  const double v = center + (value / spacing - center) / scale;
  double idx = std::ceil(v - 0.5);
  if (idx < 0.0) idx = 0.0;
  if (idx > count - 1) idx = count - 1;
  return static_cast<int>(idx);
}

double map_eta(const SystemConfig& cfg) {
  if (cfg.noise.kind != NoiseKind::Gaussian)
    throw InvalidConfig("MAP decoding requires Gaussian noise");
  return 1.0 + cfg.noise.sigma2 / cfg.K;
}

namespace {

std::int64_t decode_scaled(cplx r, const GridSpacing& sp, const SystemConfig& cfg, double scale) {
  const cplx y = r - double(cfg.K) * sp.chi;
  const int n1 = cfg.K * (cfg.q - 1) + 1;
  const int n2 = cfg.K * (cfg.n - 1) + 1;
  const int a = slice_axis(y.real(), sp.d1, n1, scale);
  const int b = slice_axis(y.imag(), sp.d2, n2, scale);
  return std::int64_t(a) + std::int64_t(cfg.q) * b;
}

}  // namespace

std::int64_t decode_ml(cplx r, const GridSpacing& sp, const SystemConfig& cfg) {
  return decode_scaled(r, sp, cfg, 1.0);
}

std::int64_t decode_map(cplx r, const GridSpacing& sp, const SystemConfig& cfg) {
  return decode_scaled(r, sp, cfg, map_eta(cfg));
}

double decode_hybrid(cplx r, const GridSpacing& sp, double q, int n, int K) {
  if (!(sp.d1 > 0.0)) throw InvalidConfig("hybrid decoding needs d1 > 0");
  const cplx y = r - double(K) * sp.chi;
  double f_re = y.real() / sp.d1;
  f_re = std::clamp(f_re, 0.0, K * q);
  const int n2 = K * (n - 1) + 1;
  const int f_im = slice_axis(y.imag(), sp.d2, n2, 1.0);
  return f_re + q * f_im;
}

std::int64_t decode_ndim(std::span<const double> r, const NDimSpacing& sp,
                         const SystemConfig& cfg) {
  if (r.size() != sp.d.size()) throw InvalidConfig("received vector and spacing dimensions differ");
  const int count = cfg.K * (sp.q - 1) + 1;
  std::int64_t f = 0;
  std::int64_t weight = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    f += weight * slice_axis(r[i], sp.d[i], count, 1.0);
    weight *= sp.q;
  }
  return f;
}

}  // namespace oac
