#include "oacgrid/channel.hpp"

#include <cmath>
#include <numbers>

namespace oac {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream_id))) {}

double RngStream::uniform01() {
  // 53-bit mantissa draw in (0,1); never returns an exact endpoint.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::normal(double stddev) {
  if (stddev == 0.0) return 0.0;
  std::normal_distribution<double> dist(0.0, stddev);
  return dist(engine_);
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  return dist(engine_);
}

cplx superimpose(std::span<const cplx> points) {
  if (points.empty()) throw InvalidConfig("superimpose needs at least one point");
  cplx sum{0.0, 0.0};
  for (const auto& p : points) sum += p;
  return sum;
}

cplx sample_noise(const NoiseModel& model, RngStream& rng) {
  if (model.kind == NoiseKind::Gaussian) {
    const double sd = std::sqrt(model.sigma2 / 2.0);
    const double re = rng.normal(sd);
    const double im = rng.normal(sd);
    return {re, im};
  }
  const double re = model.gamma * std::tan(std::numbers::pi * (rng.uniform01() - 0.5));
  const double im = model.gamma * std::tan(std::numbers::pi * (rng.uniform01() - 0.5));
  return {re, im};
}

cplx transmit(std::span<const std::int64_t> symbols, const GridSpacing& sp,
              const SystemConfig& cfg, RngStream& rng) {
  if (static_cast<int>(symbols.size()) != cfg.K)
    throw InvalidConfig("transmit expects exactly K symbols");
  cplx sum{0.0, 0.0};
  for (auto s : symbols) sum += encode(s, sp, cfg);
  return sum + sample_noise(cfg.noise, rng);
}

}  // namespace oac
