#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oacgrid/decoder.hpp"
#include "oacgrid/optimizer.hpp"

namespace oac {

enum class DecoderKind { ML, MAP };
const char* to_string(DecoderKind d);

enum class DesignKind { Optimal, EqualDistance, Lambert };
const char* to_string(DesignKind d);

/// Monte Carlo MSE with its standard error. Reproducible from (seed, config).
struct MseEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// i.i.d. uniform symbols per node, transmit, decode, accumulate squared
/// error. Trials are split into fixed shards addressed by stream id
/// base_stream..base_stream+SHARDS-1, so results are independent of the
/// thread layout. Kahan-compensated reduction keeps the sum order-stable.
MseEstimate estimate_mse(const SystemConfig& cfg, const GridSpacing& sp,
                         DecoderKind decoder, std::uint64_t trials,
                         std::uint64_t seed, std::uint64_t base_stream = 0);

/// One sweep cell: (snr, design, decoder) with the spacings used, the
/// closed-form MSE and the Monte Carlo estimate. Failed cells carry the error
/// text in status and keep the sweep going.
struct SweepRecord {
  double xi_db = 0.0;
  int q = 0, n = 0, K = 0;
  DesignKind design = DesignKind::Optimal;
  DecoderKind decoder = DecoderKind::ML;
  double d1 = 0.0, d2 = 0.0;
  double mse_analytic = 0.0;
  MseEstimate mse_mc;
  std::string status = "ok";
};

struct SweepSpec {
  int q = 4, n = 4, K = 2;
  double power = 1.0;
  double xi_db_from = 10.0, xi_db_to = 27.0, xi_db_step = 1.0;
  std::vector<DesignKind> designs{DesignKind::Optimal, DesignKind::EqualDistance};
  std::vector<DecoderKind> decoders{DecoderKind::ML};
  std::uint64_t trials = 50000;
  std::uint64_t seed = 1;
};

std::vector<SweepRecord> sweep(const SweepSpec& spec);

/// Fixed CSV header plus a trailing status column for per-cell failures.
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRecord& rec);

}  // namespace oac
