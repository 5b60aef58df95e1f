#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "oacgrid/model.hpp"

namespace oac {

using cplx = std::complex<double>;

/// Constellation spacings along the in-phase (d1) and quadrature (d2) axes,
/// plus the centering offset chi added by every node. The default offset
/// -( (q-1)d1 + (n-1)d2 i )/2 makes the per-node constellation zero-mean; the
/// receiver subtracts K*chi before decoding.
struct GridSpacing {
  double d1 = 1.0;
  double d2 = 1.0;
  cplx chi{0.0, 0.0};

  static GridSpacing centered(double d1, double d2, const SystemConfig& cfg);
  static GridSpacing uncentered(double d1, double d2) { return GridSpacing{d1, d2, {0.0, 0.0}}; }
};

/// Baseline QAM-style grid d1 = d2 = sqrt(12 P / (q^2 + n^2 - 2)), centered.
GridSpacing equal_distance_spacing(const SystemConfig& cfg);

/// Spacings of an N-dimensional base-q grid, one entry per channel use.
struct NDimSpacing {
  std::vector<double> d;
  int q = 2;
};

/// Base-q quotient-remainder split s = c1 + c2*q with 0 <= c1 < q, 0 <= c2 < n.
std::pair<int, int> decompose(std::int64_t s, int q, int n);

/// Maps s in 0..qn-1 to c1*d1 + c2*d2*i + chi.
cplx encode(std::int64_t s, const GridSpacing& sp, const SystemConfig& cfg);

/// Average power (q^2-1)/12 d1^2 + (n^2-1)/12 d2^2 of the centered grid.
double avg_power(const GridSpacing& sp, const SystemConfig& cfg);

/// Hybrid digital-analog encoder for real s in [0, q*n]: the analog residual
/// s - q*floor(s/q) rides the in-phase axis, the digital level floor(s/q) the
/// quadrature axis. The top endpoint s = q*n maps to level n-1 with residual q.
cplx encode_hybrid(double s, const GridSpacing& sp, double q, int n);

/// Average power d1^2 q^2/3 + d2^2 (n-1)(2n-1)/6 under s ~ uniform[0, qn]
/// for the origin-anchored (chi = 0) hybrid constellation.
double hybrid_avg_power(const GridSpacing& sp, double q, int n);

/// Base-q digit vector of s, least significant digit first, N digits.
std::vector<int> digits_base_q(std::int64_t s, int q, int N);

/// Maps s in 0..q^N-1 to the elementwise product d ⊙ digits(s).
std::vector<double> encode_ndim(std::int64_t s, const NDimSpacing& sp);

}  // namespace oac
