#include <doctest.h>

#include <cmath>
#include <vector>

#include "oacgrid/channel.hpp"
#include "oacgrid/decoder.hpp"
#include "oacgrid/experiments.hpp"

using namespace oac;

TEST_CASE("slice_axis basics") {
  CHECK(slice_axis(0.49, 1.0, 7, 1.0) == 0);
  CHECK(slice_axis(1e9, 1.0, 7, 1.0) == 6);
  CHECK(slice_axis(-1e9, 1.0, 7, 1.0) == 0);
  // exact midpoints go to the lower index
  CHECK(slice_axis(0.5, 1.0, 7, 1.0) == 0);
  CHECK(slice_axis(2.5, 1.0, 7, 1.0) == 2);
  CHECK_THROWS_AS(slice_axis(0.0, 0.0, 7, 1.0), InvalidConfig);
  CHECK_THROWS_AS(slice_axis(0.0, 1.0, 1, 1.0), InvalidConfig);
}

// Unit-scale slicing must agree with the brute-force likelihood argmax over
// the grid (ties broken toward the lower index).
TEST_CASE("slice_axis equals likelihood argmax") {
  RngStream rng(17, 0);
  const int count = 13;
  const double d = 0.37;
  for (int i = 0; i < 10000; ++i) {
    const double v = (rng.uniform01() - 0.2) * d * count;
    int best = 0;
    double best_dist = std::abs(v);
    for (int j = 1; j < count; ++j) {
      const double dist = std::abs(v - j * d);
      if (dist < best_dist) {  // strict: lower index wins ties
        best = j;
        best_dist = dist;
      }
    }
    CHECK(slice_axis(v, d, count, 1.0) == best);
  }
}

TEST_CASE("decode_ml examples") {
  const auto cfg = SystemConfig::from_snr(4, 4, 2, 1.0);
  const auto sp = GridSpacing::centered(0.9, 0.7, cfg);
  CHECK(decode_ml(encode(5, sp, cfg) + encode(10, sp, cfg), sp, cfg) == 15);

  // midway between adjacent real levels: lower index
  const auto spu = GridSpacing::uncentered(1.0, 1.0);
  CHECK(decode_ml(cplx{1.5, 0.0}, spu, cfg) == 1);

  const auto cfg33 = SystemConfig::from_snr(3, 3, 2, 1.0);
  const auto sp33 = GridSpacing::centered(1.1, 0.6, cfg33);
  for (int s1 = 0; s1 < 9; ++s1)
    for (int s2 = 0; s2 < 9; ++s2)
      CHECK(decode_ml(encode(s1, sp33, cfg33) + encode(s2, sp33, cfg33), sp33, cfg33) == s1 + s2);
}

TEST_CASE("decode_ml scales with the spacings") {
  const auto cfg = SystemConfig::from_snr(5, 3, 4, 1.0);
  RngStream rng(23, 0);
  for (int i = 0; i < 1000; ++i) {
    const cplx r{(rng.uniform01() - 0.3) * 20.0, (rng.uniform01() - 0.3) * 10.0};
    const auto sp = GridSpacing::uncentered(0.8, 1.7);
    for (double c : {0.25, 3.0}) {
      const auto spc = GridSpacing::uncentered(c * sp.d1, c * sp.d2);
      CHECK(decode_ml(cplx{c * r.real(), c * r.imag()}, spc, cfg) == decode_ml(r, sp, cfg));
    }
  }
}

TEST_CASE("ml decisions ignore the noise model") {
  const auto cg = SystemConfig::from_noise(4, 4, 3, 1.0, NoiseModel::gaussian(0.5));
  const auto cc = SystemConfig::from_noise(4, 4, 3, 1.0, NoiseModel::cauchy(0.5));
  const auto sp = GridSpacing::centered(0.6, 0.8, cg);
  RngStream rng(3, 0);
  for (int i = 0; i < 100000; ++i) {
    const cplx r{(rng.uniform01() - 0.4) * 12.0, (rng.uniform01() - 0.4) * 12.0};
    CHECK(decode_ml(r, sp, cg) == decode_ml(r, sp, cc));
  }
}

TEST_CASE("decode_map reduces to decode_ml when eta -> 1") {
  auto cfg = SystemConfig::from_noise(4, 4, 10, 1.0, NoiseModel::gaussian(1e-12));
  const auto sp = GridSpacing::centered(0.5, 0.5, cfg);
  RngStream rng(11, 0);
  for (int i = 0; i < 10000; ++i) {
    const cplx r{(rng.uniform01() - 0.2) * 18.0, (rng.uniform01() - 0.2) * 18.0};
    CHECK(decode_map(r, sp, cfg) == decode_ml(r, sp, cfg));
  }
  // large K with fixed sigma^2: eta -> 1, so disagreements on realistic
  // received points (which concentrate near the grid center) become rare
  auto cfg_k = SystemConfig::from_noise(4, 4, 10000, 1.0, NoiseModel::gaussian(0.5));
  const auto sp_k = GridSpacing::centered(0.5, 0.5, cfg_k);
  RngStream rng_k(13, 0);
  std::vector<std::int64_t> sym(cfg_k.K);
  int mismatches = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    for (auto& s : sym) s = rng_k.uniform_int(0, 15);
    const cplx r = transmit(sym, sp_k, cfg_k, rng_k);
    if (decode_map(r, sp_k, cfg_k) != decode_ml(r, sp_k, cfg_k)) ++mismatches;
  }
  CHECK(mismatches <= trials / 20);
  CHECK_THROWS_AS(decode_map({0, 0}, sp, SystemConfig::from_noise(4, 4, 10, 1.0, NoiseModel::cauchy(1.0))),
                  InvalidConfig);
}

namespace {

// Exact per-axis MAP oracle: argmax_j p_j g(r|y_j) with the Gaussian prior of
// the aggregated symbols. Test-only reference for the eta-scaled regions.
int exact_map_axis(double v_over_d, int count, double mu, double var, double noise_var_idx) {
  int best = 0;
  double best_score = -1e300;
  for (int j = 0; j < count; ++j) {
    const double dn = v_over_d - j;
    const double dp = j - mu;
    const double score = -dn * dn / (2.0 * noise_var_idx) - dp * dp / (2.0 * var);
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("eta regions sit between ML and the exact MAP oracle") {
  const double xi = snr_from_db(-10.0);
  const auto cfg = SystemConfig::from_snr(4, 4, 10, xi);
  const auto sol = solve_ml(cfg);
  const auto sp = GridSpacing::centered(sol.d1, sol.d2, cfg);
  const double sigma = std::sqrt(cfg.noise.sigma2);

  const int n1 = cfg.K * (cfg.q - 1) + 1, n2 = cfg.K * (cfg.n - 1) + 1;
  const double mu1 = (cfg.q - 1) * cfg.K / 2.0, var1 = (cfg.q * cfg.q - 1) * cfg.K / 12.0;
  const double mu2 = (cfg.n - 1) * cfg.K / 2.0, var2 = (cfg.n * cfg.n - 1) * cfg.K / 12.0;

  const int trials = 50000;
  RngStream rng(4242, 0);
  double se_ml = 0.0, se_map = 0.0, se_exact = 0.0, ss_ml = 0.0, ss_map = 0.0;
  std::vector<std::int64_t> s(cfg.K);
  for (int i = 0; i < trials; ++i) {
    std::int64_t f = 0;
    for (int k = 0; k < cfg.K; ++k) {
      s[k] = rng.uniform_int(0, 15);
      f += s[k];
    }
    const cplx r = transmit(s, sp, cfg, rng);
    const cplx y = r - double(cfg.K) * sp.chi;
    const double e_ml = double(decode_ml(r, sp, cfg) - f);
    const double e_map = double(decode_map(r, sp, cfg) - f);
    const int a = exact_map_axis(y.real() / sp.d1, n1, mu1, var1,
                                 sigma * sigma / (2.0 * sp.d1 * sp.d1));
    const int b = exact_map_axis(y.imag() / sp.d2, n2, mu2, var2,
                                 sigma * sigma / (2.0 * sp.d2 * sp.d2));
    const double e_exact = double(a + cfg.q * b - f);
    se_ml += e_ml * e_ml;
    se_map += e_map * e_map;
    se_exact += e_exact * e_exact;
    ss_ml += e_ml * e_ml * e_ml * e_ml;
    ss_map += e_map * e_map * e_map * e_map;
  }
  const double mse_ml_v = se_ml / trials, mse_map_v = se_map / trials,
               mse_exact_v = se_exact / trials;
  const double sd = std::sqrt((ss_ml / trials - mse_ml_v * mse_ml_v) / trials +
                              (ss_map / trials - mse_map_v * mse_map_v) / trials);
  CHECK(mse_map_v <= mse_ml_v + 3.0 * sd);   // prior helps at low SNR
  CHECK(mse_exact_v <= mse_map_v + 3.0 * sd);  // and the exact rule is at least as good
}

TEST_CASE("decision grid levels") {
  const auto cfg = SystemConfig::from_snr(3, 4, 2, 1.0);
  const auto grid = DecisionGrid::make(GridSpacing::uncentered(0.5, 1.5), cfg, 1.0);
  CHECK(grid.real_levels.size() == 5);   // K(q-1)+1
  CHECK(grid.imag_levels.size() == 7);   // K(n-1)+1
  CHECK(grid.real_levels[4] == doctest::Approx(2.0));
  CHECK(grid.imag_levels[1] == doctest::Approx(1.5));
  CHECK(grid.scale == 1.0);
}

TEST_CASE("decode_hybrid") {
  const auto sp = GridSpacing::uncentered(1.0, 1.0);
  CHECK(decode_hybrid(encode_hybrid(4.25, sp, 3.0, 3), sp, 3.0, 3, 1) == doctest::Approx(4.25));
  CHECK(decode_hybrid(cplx{-5.0, 0.0}, sp, 3.0, 3, 1) == doctest::Approx(0.0));

  const cplx r = encode_hybrid(1.5, sp, 3.0, 3) + encode_hybrid(7.25, sp, 3.0, 3);
  CHECK(decode_hybrid(r, sp, 3.0, 3, 2) == doctest::Approx(8.75));
}

TEST_CASE("decode_ndim") {
  const auto cfg = SystemConfig::from_snr(3, 3, 2, 1.0);

  NDimSpacing nd2;
  nd2.q = 3;
  nd2.d = {0.9, 1.4};
  const auto sp2 = GridSpacing::uncentered(0.9, 1.4);
  for (int s1 = 0; s1 < 9; ++s1) {
    for (int s2 = 0; s2 < 9; ++s2) {
      const cplx r = encode(s1, sp2, cfg) + encode(s2, sp2, cfg);
      const std::vector<double> rv{r.real(), r.imag()};
      CHECK(decode_ndim(rv, nd2, cfg) == decode_ml(r, sp2, cfg));
    }
  }

  NDimSpacing nd3;
  nd3.q = 3;
  nd3.d = {1.0, 0.8, 1.3};
  for (int s1 = 0; s1 < 27; ++s1) {
    for (int s2 = 0; s2 < 27; ++s2) {
      const auto x1 = encode_ndim(s1, nd3), x2 = encode_ndim(s2, nd3);
      std::vector<double> r(3);
      for (int i = 0; i < 3; ++i) r[i] = x1[i] + x2[i];
      CHECK(decode_ndim(r, nd3, cfg) == s1 + s2);
    }
  }

  CHECK(decode_ndim(std::vector<double>{0.0, 0.0, 0.0}, nd3, cfg) == 0);
  CHECK_THROWS_AS(decode_ndim(std::vector<double>{0.0}, nd3, cfg), InvalidConfig);
}
