#include "oacgrid/experiments.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "oacgrid/analytic_mse.hpp"
#include "oacgrid/channel.hpp"

namespace oac {

namespace {

constexpr int kShards = 32;

struct Accumulator {
  double sum = 0.0, c = 0.0;       // Kahan-compensated
  double sum_sq = 0.0, c_sq = 0.0;

  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
    double y2 = v * v - c_sq;
    double t2 = sum_sq + y2;
    c_sq = (t2 - sum_sq) - y2;
    sum_sq = t2;
  }
  void merge(const Accumulator& o) {
    add_pair(o.sum, o.sum_sq);
  }
  void add_pair(double s, double s2) {
    double y = s - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
    double y2 = s2 - c_sq;
    double t2 = sum_sq + y2;
    c_sq = (t2 - sum_sq) - y2;
    sum_sq = t2;
  }
};

}  // namespace

const char* to_string(DecoderKind d) { return d == DecoderKind::ML ? "ml" : "map"; }

const char* to_string(DesignKind d) {
  switch (d) {
    case DesignKind::Optimal: return "optimal";
    case DesignKind::EqualDistance: return "equal";
    case DesignKind::Lambert: return "lambert";
  }
  return "?";
}

MseEstimate estimate_mse(const SystemConfig& cfg, const GridSpacing& sp, DecoderKind decoder,
                         std::uint64_t trials, std::uint64_t seed, std::uint64_t base_stream) {
  cfg.validate();
  if (trials < 1) throw InvalidConfig("estimate_mse needs trials >= 1");
  if (decoder == DecoderKind::MAP && cfg.noise.kind != NoiseKind::Gaussian)
    throw InvalidConfig("MAP decoding requires Gaussian noise");

  const std::int64_t qn = std::int64_t(cfg.q) * cfg.n;
  std::vector<Accumulator> shard_acc(kShards);
  std::atomic<int> next{0};

  auto worker = [&]() {
    std::vector<std::int64_t> symbols(cfg.K);
    for (;;) {
      const int shard = next.fetch_add(1);
      if (shard >= kShards) break;
      const std::uint64_t lo = trials * shard / kShards;
      const std::uint64_t hi = trials * (shard + 1) / kShards;
      RngStream rng(seed, base_stream + shard);
      Accumulator acc;
      for (std::uint64_t i = lo; i < hi; ++i) {
        std::int64_t f = 0;
        for (int k = 0; k < cfg.K; ++k) {
          symbols[k] = rng.uniform_int(0, qn - 1);
          f += symbols[k];
        }
        const cplx r = transmit(symbols, sp, cfg, rng);
        const std::int64_t fh =
            decoder == DecoderKind::ML ? decode_ml(r, sp, cfg) : decode_map(r, sp, cfg);
        const double e = static_cast<double>(fh - f);
        acc.add(e * e);
      }
      shard_acc[shard] = acc;
    }
  };

  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), kShards);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Accumulator total;
  for (const auto& a : shard_acc) total.merge(a);  // fixed shard order

  MseEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.mean = total.sum / trials;
  if (trials > 1) {
    const double var = std::max(0.0, (total.sum_sq - total.sum * total.sum / trials) / (trials - 1));
    est.stderr_ = std::sqrt(var / trials);
  }
  return est;
}

std::vector<SweepRecord> sweep(const SweepSpec& spec) {
  if (!(spec.xi_db_step > 0.0) || spec.xi_db_to < spec.xi_db_from)
    throw InvalidConfig("sweep needs a non-empty dB range with positive step");
  if (spec.designs.empty() || spec.decoders.empty())
    throw InvalidConfig("sweep needs at least one design and one decoder");

  std::vector<double> dbs;
  for (double db = spec.xi_db_from; db <= spec.xi_db_to + 1e-9; db += spec.xi_db_step)
    dbs.push_back(db);

  std::vector<SweepRecord> records;
  std::uint64_t cell = 0;
  for (double db : dbs) {
    for (auto design : spec.designs) {
      for (auto decoder : spec.decoders) {
        SweepRecord rec;
        rec.xi_db = db;
        rec.q = spec.q;
        rec.n = spec.n;
        rec.K = spec.K;
        rec.design = design;
        rec.decoder = decoder;
        const std::uint64_t base_stream = cell * kShards;
        ++cell;
        try {
          const auto cfg =
              SystemConfig::from_snr(spec.q, spec.n, spec.K, snr_from_db(db), spec.power);
          GridSpacing sp;
          switch (design) {
            case DesignKind::EqualDistance:
              sp = equal_distance_spacing(cfg);
              break;
            case DesignKind::Lambert: {
              const auto sol = solve_lambert(cfg);
              sp = GridSpacing::centered(sol.d1, sol.d2, cfg);
              break;
            }
            case DesignKind::Optimal: {
              const auto sol = decoder == DecoderKind::MAP ? solve_map(cfg) : solve_ml(cfg);
              sp = GridSpacing::centered(sol.d1, sol.d2, cfg);
              break;
            }
          }
          rec.d1 = sp.d1;
          rec.d2 = sp.d2;
          rec.mse_analytic =
              decoder == DecoderKind::MAP ? mse_map(sp, cfg).total : mse_ml(sp, cfg).total;
          rec.mse_mc = estimate_mse(cfg, sp, decoder, spec.trials, spec.seed, base_stream);
        } catch (const std::exception& e) {
          rec.status = std::string("failed: ") + e.what();
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string sweep_csv_header() {
  return "xi_db,q,n,K,design,decoder,d1,d2,mse_analytic,mse_mc,mse_stderr,trials,seed,status";
}

std::string sweep_csv_row(const SweepRecord& r) {
  std::string row;
  row += fmt(r.xi_db);
  row += ',';
  row += std::to_string(r.q) + ',' + std::to_string(r.n) + ',' + std::to_string(r.K) + ',';
  row += to_string(r.design);
  row += ',';
  row += to_string(r.decoder);
  row += ',';
  row += fmt(r.d1);
  row += ',';
  row += fmt(r.d2);
  row += ',';
  row += fmt(r.mse_analytic);
  row += ',';
  row += fmt(r.mse_mc.mean);
  row += ',';
  row += fmt(r.mse_mc.stderr_);
  row += ',';
  row += std::to_string(r.mse_mc.trials) + ',' + std::to_string(r.mse_mc.seed) + ',';
  row += r.status;
  return row;
}

}  // namespace oac
