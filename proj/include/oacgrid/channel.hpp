#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "oacgrid/encoder.hpp"

namespace oac {

/// Deterministic random stream addressed by (seed, stream_id). Identical
/// addresses replay identical sequences; distinct stream ids are independent,
/// so Monte Carlo shards can run on any thread layout and still reduce to the
/// same totals.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  double uniform01();                                    // open (0,1)
  double normal(double stddev);                          // N(0, stddev^2)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::mt19937_64 engine_;
};

/// Exact complex sum of the simultaneously transmitted points.
cplx superimpose(std::span<const cplx> points);

/// One complex noise draw. Gaussian: independent N(0, sigma2/2) components.
/// Cauchy: independent per-component gamma * tan(pi (u - 1/2)).
cplx sample_noise(const NoiseModel& model, RngStream& rng);

/// r = sum_k encode(s_k) + z for one synchronous channel use.
cplx transmit(std::span<const std::int64_t> symbols, const GridSpacing& sp,
              const SystemConfig& cfg, RngStream& rng);

}  // namespace oac
