#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oacgrid/decoder.hpp"
#include "oacgrid/encoder.hpp"

using namespace oac;

TEST_CASE("decompose") {
  CHECK(decompose(7, 3, 3) == std::pair<int, int>{1, 2});
  CHECK(decompose(0, 5, 2) == std::pair<int, int>{0, 0});
  CHECK(decompose(15, 4, 4) == std::pair<int, int>{3, 3});
  CHECK_THROWS_AS(decompose(-1, 4, 4), InvalidConfig);
  CHECK_THROWS_AS(decompose(16, 4, 4), InvalidConfig);
}

TEST_CASE("encode basics") {
  const auto cfg32 = SystemConfig::from_snr(3, 2, 2, 1.0);
  CHECK(encode(0, GridSpacing::uncentered(1.0, 1.0), cfg32) == cplx{0.0, 0.0});
  CHECK(encode(5, GridSpacing::uncentered(2.0, 3.0), cfg32) == cplx{4.0, 3.0});
  CHECK_THROWS_AS(encode(6, GridSpacing::uncentered(1.0, 1.0), cfg32), InvalidConfig);
}

TEST_CASE("default offset centers the constellation") {
  const auto cfg = SystemConfig::from_snr(4, 6, 2, 1.0);
  const auto sp = GridSpacing::centered(0.7, 1.1, cfg);
  cplx mean{0.0, 0.0};
  for (int s = 0; s < cfg.q * cfg.n; ++s) mean += encode(s, sp, cfg);
  mean /= double(cfg.q * cfg.n);
  CHECK(std::abs(mean) < 1e-14);
}

TEST_CASE("avg_power closed form") {
  const auto cfg44 = SystemConfig::from_snr(4, 4, 2, 1.0);
  const double d = std::sqrt(12.0 / 30.0);
  CHECK(avg_power(GridSpacing::centered(d, d, cfg44), cfg44) == doctest::Approx(1.0));

  const auto cfg22 = SystemConfig::from_snr(2, 2, 2, 1.0);
  CHECK(avg_power(GridSpacing{2.0, 0.0, {0, 0}}, cfg22) == doctest::Approx(1.0));

  // exhaustive second moment of the centered constellation
  const auto cfg35 = SystemConfig::from_snr(3, 5, 2, 1.0);
  const auto sp = GridSpacing::centered(0.7, 1.3, cfg35);
  double emp = 0.0;
  for (int s = 0; s < 15; ++s) emp += std::norm(encode(s, sp, cfg35));
  emp /= 15.0;
  CHECK(emp == doctest::Approx(avg_power(sp, cfg35)).epsilon(1e-12));
}

TEST_CASE("equal-distance baseline") {
  const auto cfg = SystemConfig::from_snr(4, 4, 2, 1.0);
  const auto sp = equal_distance_spacing(cfg);
  CHECK(sp.d1 == doctest::Approx(std::sqrt(12.0 / 30.0)));
  CHECK(avg_power(sp, cfg) == doctest::Approx(1.0));
}

TEST_CASE("hybrid encoder") {
  const auto sp11 = GridSpacing::uncentered(1.0, 1.0);
  CHECK(encode_hybrid(5.0, sp11, 3.0, 3) == cplx{2.0, 1.0});
  CHECK(encode_hybrid(0.0, GridSpacing{1.0, 1.0, {0.3, -0.2}}, 3.0, 3) == cplx{0.3, -0.2});
  CHECK(encode_hybrid(3.5, GridSpacing::uncentered(2.0, 4.0), 3.0, 3) == cplx{1.0, 4.0});
  // closed top interval: residual q at level n-1
  CHECK(encode_hybrid(9.0, sp11, 3.0, 3) == cplx{3.0, 2.0});
  CHECK_THROWS_AS(encode_hybrid(9.1, sp11, 3.0, 3), InvalidConfig);
  CHECK_THROWS_AS(encode_hybrid(-0.1, sp11, 3.0, 3), InvalidConfig);
}

TEST_CASE("hybrid average power") {
  CHECK(hybrid_avg_power(GridSpacing::uncentered(1.0, 5.0), 1.0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(hybrid_avg_power(GridSpacing::uncentered(1.0, 1.0), 2.0, 3) == doctest::Approx(3.0));
}

TEST_CASE("ndim encoder") {
  NDimSpacing sp;
  sp.q = 4;
  sp.d = {1.0, 2.0};
  CHECK(encode_ndim(0, sp) == std::vector<double>{0.0, 0.0});
  CHECK(encode_ndim(11, sp) == std::vector<double>{3.0, 4.0});
  NDimSpacing ones;
  ones.q = 3;
  ones.d = {1.0, 1.0, 1.0};
  CHECK(encode_ndim(26, ones) == std::vector<double>{2.0, 2.0, 2.0});
  CHECK_THROWS_AS(encode_ndim(27, ones), InvalidConfig);
}

TEST_CASE("digit inner product reconstructs the symbol") {
  for (int q = 2; q <= 5; ++q) {
    for (int N = 1; N <= 4; ++N) {
      std::int64_t qn = 1;
      for (int i = 0; i < N; ++i) qn *= q;
      for (std::int64_t s = 0; s < qn; ++s) {
        const auto c = digits_base_q(s, q, N);
        std::int64_t acc = 0, w = 1;
        for (int i = 0; i < N; ++i) {
          acc += w * c[i];
          w *= q;
        }
        CHECK(acc == s);
      }
    }
  }
}

TEST_CASE("zero-noise round trip through the ML decoder") {
  for (int q = 2; q <= 6; ++q) {
    for (int n = 2; n <= 6; ++n) {
      const auto cfg = SystemConfig::from_snr(q, n, 2, 1.0);
      const auto sp = GridSpacing::centered(0.8, 1.2, cfg);
      for (int s = 0; s < q * n; ++s) {
        const cplx r = encode(s, sp, cfg) + encode(0, sp, cfg);
        CHECK(decode_ml(r, sp, cfg) == s);
      }
    }
  }
}

TEST_CASE("superimposed grid is additive") {
  for (int q = 2; q <= 4; ++q) {
    for (int n = 2; n <= 4; ++n) {
      for (int K = 2; K <= 3; ++K) {
        const auto cfg = SystemConfig::from_snr(q, n, K, 1.0);
        const auto sp = GridSpacing::centered(1.0, 1.0, cfg);
        const int qn = q * n;
        std::vector<int> idx(K, 0);
        for (;;) {
          cplx r{0.0, 0.0};
          std::int64_t f = 0;
          for (int k = 0; k < K; ++k) {
            r += encode(idx[k], sp, cfg);
            f += idx[k];
          }
          CHECK(decode_ml(r, sp, cfg) == f);
          int k = 0;
          while (k < K && ++idx[k] == qn) idx[k++] = 0;
          if (k == K) break;
        }
      }
    }
  }
}
