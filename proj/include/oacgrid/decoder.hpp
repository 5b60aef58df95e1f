#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oacgrid/encoder.hpp"

namespace oac {

/// Post offset-removal detection grid: count uniformly spaced levels starting
/// at 0 per axis. scale = 1 gives the ML midpoint regions; scale = eta > 1
/// widens the regions about the grid center, which is where the aggregate
/// prior concentrates.
struct DecisionGrid {
  std::vector<double> real_levels;
  std::vector<double> imag_levels;
  double scale = 1.0;

  static DecisionGrid make(const GridSpacing& sp, const SystemConfig& cfg, double scale);
};

/// Nearest-level index on a uniform grid {0, d, ..., (count-1) d} with region
/// widths scaled about the grid center and end regions extended to half-lines.
/// Boundary ties resolve to the lower index. scale = 1 reduces to
/// clamp(round(value/spacing), 0, count-1).
int slice_axis(double value, double spacing, int count, double scale = 1.0);

/// eta = 1 + sigma^2/K, the MAP region scale under the Gaussian prior
/// approximation of the aggregated symbols.
double map_eta(const SystemConfig& cfg);

/// ML estimate of the sum: remove K*chi, slice both axes, return a + q*b.
std::int64_t decode_ml(cplx r, const GridSpacing& sp, const SystemConfig& cfg);

/// MAP estimate: identical slicing with region scale eta. Gaussian noise only.
std::int64_t decode_map(cplx r, const GridSpacing& sp, const SystemConfig& cfg);

/// Hybrid decoder: clipped-linear on the in-phase axis, PAM slicing with
/// K(n-1)+1 levels on the quadrature axis; returns f_re + q * f_im.
double decode_hybrid(cplx r, const GridSpacing& sp, double q, int n, int K);

/// Per-dimension slicing with K(q-1)+1 levels, recombined as sum_i a_i q^(i-1).
std::int64_t decode_ndim(std::span<const double> r, const NDimSpacing& sp,
                         const SystemConfig& cfg);

}  // namespace oac
