#include "oacgrid/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace oac {

namespace {

constexpr double kExpFloor = 745.0;  // exp(-745) underflows; later terms are smaller
constexpr double kTEdge = 1e-12;

double sum_exp_over_x(const CoefficientTable& tab, int hi, double x) {
  // sum_{m=1}^{hi} gamma_m e^(-theta_m x^2) / x
  const double x2 = x * x;
  double s = 0.0;
  for (int m = 1; m <= hi; ++m) {
    const double e = tab.theta(m) * x2;
    if (e > kExpFloor) break;
    s += tab.gamma(m) * std::exp(-e);
  }
  return s / x;
}

double side_sum(const CoefficientTable& tab, int hi, double ups2, double half_pm_t) {
  // sum_{m=1}^{hi} gamma_m e^(-theta_m ups2 (0.5 -+ t)) / sqrt(0.5 -+ t)
  double s = 0.0;
  const double a = ups2 * half_pm_t;
  for (int m = 1; m <= hi; ++m) {
    const double e = tab.theta(m) * a;
    if (e > kExpFloor) break;
    s += tab.gamma(m) * std::exp(-e);
  }
  return s / std::sqrt(half_pm_t);
}

void check_t_domain(double t) {
  if (!(t > -0.5 && t < 0.5)) throw std::domain_error("t must lie in (-0.5, 0.5)");
}

struct TSolve {
  double t = 0.0;
  double target_abs = 0.0;
};

// Locates the unique sign change of f on (-0.5, 0.5) and bisects it to
// machine precision. Probes the bracket densely first; underflow plateaus
// (exact zeros) are tolerated, but more than one sign change aborts the
// solve rather than silently picking a branch.
TSolve solve_unique_t(const std::function<double(double)>& f, const char* name) {
  constexpr int kProbes = 257;
  const double lo = -0.5 + kTEdge, hi = 0.5 - kTEdge;
  double prev_x = lo, prev_v = f(lo);
  int sign_prev = prev_v > 0 ? 1 : (prev_v < 0 ? -1 : 0);
  int changes = 0;
  double bra = lo, brb = hi;
  double last_nonzero_x = lo;
  int last_nonzero_sign = sign_prev;
  for (int i = 1; i < kProbes; ++i) {
    const double x = lo + (hi - lo) * i / (kProbes - 1);
    const double v = f(x);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s != 0) {
      if (last_nonzero_sign != 0 && s != last_nonzero_sign) {
        ++changes;
        bra = last_nonzero_x;
        brb = x;
      }
      last_nonzero_sign = s;
      last_nonzero_x = x;
    }
    prev_x = x;
    prev_v = v;
  }
  (void)prev_x;
  (void)prev_v;
  (void)sign_prev;
  if (changes != 1)
    throw SolverError(std::string("root-bracket-failure: ") + name + " has " +
                      std::to_string(changes) + " sign changes on (-0.5, 0.5)");
  double a = bra, b = brb;
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) {
      a = b = m;
      break;
    }
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    if (b - a <= std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)))
      break;
  }
  TSolve out;
  out.t = 0.5 * (a + b);
  out.target_abs = std::abs(f(out.t));
  return out;
}

// All solutions of S(z) = c on (0, z_max] by log-grid scan; S is any
// continuous positive-decaying sum. Returns the largest, if any.
std::optional<double> largest_level_crossing(const std::function<double(double)>& S, double c,
                                             double z_max) {
  constexpr int kProbes = 4096;
  const double lmin = std::log(1e-8), lmax = std::log(z_max);
  auto g = [&](double z) { return S(z) - c; };
  double best = -1.0;
  double xp = std::exp(lmin), vp = g(xp);
  for (int i = 1; i < kProbes; ++i) {
    const double x = std::exp(lmin + (lmax - lmin) * i / (kProbes - 1));
    const double v = g(x);
    if (vp == 0.0) best = std::max(best, xp);
    if (vp * v < 0.0) {
      double a = xp, b = x, fa = vp;
      for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, b); ++it) {
        const double m = 0.5 * (a + b), fm = g(m);
        if ((fa < 0) == (fm < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      best = std::max(best, 0.5 * (a + b));
    }
    xp = x;
    vp = v;
  }
  if (best < 0.0) return std::nullopt;
  return best;
}

double ellipse_xi(const DerivedGrid& g, double x, double y) {
  const double q2 = double(g.q) * g.q - 1.0, n2 = double(g.n) * g.n - 1.0;
  return q2 * x * x / 12.0 + n2 * y * y / 12.0;
}

OptimizerSolution finish_interior(const DerivedGrid& g, double scale, double t, Region region,
                                  double target_abs) {
  OptimizerSolution sol;
  const double del1 = g.upsilon1 * std::sqrt(0.5 - t);
  const double del2 = g.upsilon2 * std::sqrt(0.5 + t);
  sol.d1 = scale * del1;
  sol.d2 = scale * del2;
  sol.t_star = t;
  sol.region = region;
  sol.kkt_residual = g.upsilon1 * target_abs;  // |g_q(Delta1, Delta2)| of the solved branch
  const double u1 = del1 / g.upsilon1, u2 = del2 / g.upsilon2;
  sol.power_residual = std::abs(u1 * u1 + u2 * u2 - 1.0);
  return sol;
}

OptimizerSolution axis_y_solution(const DerivedGrid& g, double scale) {
  // Low-SNR edge: keep d1 a hair above zero so downstream decoders stay
  // well-defined; the region label discloses the degeneracy.
  constexpr double kEps = 1e-9;
  OptimizerSolution sol;
  const double del1 = kEps * g.upsilon1;
  const double del2 = g.upsilon2 * std::sqrt(1.0 - kEps * kEps);
  sol.d1 = scale * del1;
  sol.d2 = scale * del2;
  sol.region = Region::AxisY;
  sol.kkt_residual = std::abs(g_tilde(del1, del2, g));
  sol.power_residual = 0.0;
  return sol;
}

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::MainFullG: return "main-full-G";
    case Region::MainTruncated: return "main-truncated";
    case Region::AxisY: return "axis-y";
    case Region::AxisX: return "axis-x";
  }
  return "?";
}

double poly_p1(int N, double x) {
  const auto& tab = CoefficientTable::get(N);
  const double x2 = x * x;
  double s = 0.0;
  for (int m = 1; m < N; ++m) {
    const double e = tab.theta(m) * x2;
    if (e > kExpFloor) break;
    s += tab.gamma(m) * std::exp(-e) * (1.0 + 2.0 * e);
  }
  return s;
}

double poly_p2(int N, double x) {
  return sum_exp_over_x(CoefficientTable::get(N), N - 1, x);
}

double poly_p3(int N, double x) {
  const auto& tab = CoefficientTable::get(N);
  const double x2 = x * x;
  double s = 0.0;
  for (int m = 1; m < N; ++m) {
    const double u = 1.0 + tab.theta(m) * x2;
    s += tab.gamma(m) * (1.0 + 3.0 * tab.theta(m) * x2) / (u * u);
  }
  return s;
}

double poly_p4(int N, double x) {
  const auto& tab = CoefficientTable::get(N);
  const double x2 = x * x;
  double s = 0.0;
  for (int m = 1; m < N; ++m) {
    const double u = 1.0 + tab.theta(m) * x2;
    s += tab.gamma(m) / (u * u);
  }
  return s;
}

RootReport find_positive_roots(const std::function<double(double)>& f, double x_max, int probes) {
  RootReport rep;
  if (!(x_max > 1e-8)) return rep;
  probes = std::max(probes, 2048);
  const double lmin = std::log(1e-8), lmax = std::log(x_max);
  double xp = std::exp(lmin), vp = f(xp);
  for (int i = 1; i < probes; ++i) {
    const double x = std::exp(lmin + (lmax - lmin) * i / (probes - 1));
    const double v = f(x);
    if (vp * v < 0.0) {
      double a = xp, b = x, fa = vp;
      for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b), fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fa < 0) == (fm < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      rep.roots.push_back(0.5 * (a + b));
    } else if (vp == 0.0) {
      rep.roots.push_back(xp);
    }
    xp = x;
    vp = v;
  }
  std::sort(rep.roots.begin(), rep.roots.end());
  return rep;
}

double p1_search_limit(int N) { return 4.0 * std::sqrt(3.96 / (2.0 * N - 3.0)); }

RootReport p1_roots(int N) {
  auto rep = find_positive_roots([N](double x) { return poly_p1(N, x); }, p1_search_limit(N));
  rep.N = N;
  return rep;
}

RootReport p3_roots(int N) {
  auto rep = find_positive_roots([N](double x) { return poly_p3(N, x); }, p1_search_limit(N));
  rep.N = N;
  return rep;
}

double g_q(double x, double y, const DerivedGrid& g) {
  if (!(x > 0.0 && y > 0.0)) throw std::domain_error("g_q requires x, y > 0");
  const auto& t1 = CoefficientTable::get(g.n1k);
  const auto& t2 = CoefficientTable::get(g.n2k);
  const double u1 = g.upsilon1 * g.upsilon1, u2 = g.upsilon2 * g.upsilon2;
  return u1 * sum_exp_over_x(t1, g.n1k - 1, x) -
         double(g.q) * g.q * u2 * sum_exp_over_x(t2, g.n2k - 1, y);
}

double g_tilde(double x, double y, const DerivedGrid& g) {
  if (!(x > 0.0 && y > 0.0)) throw std::domain_error("g_tilde requires x, y > 0");
  const auto& t1 = CoefficientTable::get(g.n1k);
  const auto& t2 = CoefficientTable::get(g.n2k);
  const double u1 = g.upsilon1 * g.upsilon1, u2 = g.upsilon2 * g.upsilon2;
  return u1 * sum_exp_over_x(t1, g.bar_n1, x) -
         double(g.q) * g.q * u2 * sum_exp_over_x(t2, g.bar_n2, y);
}

double cal_g(double t, const DerivedGrid& g) {
  check_t_domain(t);
  const auto& t1 = CoefficientTable::get(g.n1k);
  const auto& t2 = CoefficientTable::get(g.n2k);
  return side_sum(t1, g.n1k - 1, g.upsilon1 * g.upsilon1, 0.5 - t) -
         g.kappa * g.q * g.q * side_sum(t2, g.n2k - 1, g.upsilon2 * g.upsilon2, 0.5 + t);
}

double cal_g_bar(double t, const DerivedGrid& g) {
  check_t_domain(t);
  const auto& t1 = CoefficientTable::get(g.n1k);
  const auto& t2 = CoefficientTable::get(g.n2k);
  return side_sum(t1, g.bar_n1, g.upsilon1 * g.upsilon1, 0.5 - t) -
         g.kappa * g.q * g.q * side_sum(t2, g.bar_n2, g.upsilon2 * g.upsilon2, 0.5 + t);
}

double cal_h(double t, const DerivedGrid& g) {
  check_t_domain(t);
  const double a1 = g.upsilon1 * g.upsilon1 * (0.5 - t);
  const double a2 = g.upsilon2 * g.upsilon2 * (0.5 + t);
  double s1 = 0.0, s2 = 0.0;
  for (int m = 1; m <= 2 * g.q; ++m) {
    const double th = theta_coeff(m), e = th * a1;
    if (e > kExpFloor) break;
    s1 += th * std::exp(-e);
  }
  for (int m = 1; m <= 2 * g.n; ++m) {
    const double th = theta_coeff(m), e = th * a2;
    if (e > kExpFloor) break;
    s2 += th * std::exp(-e);
  }
  return s1 / std::sqrt(0.5 - t) - g.kappa * g.q * g.q * s2 / std::sqrt(0.5 + t);
}

double cal_f(double t, const DerivedGrid& g) {
  check_t_domain(t);
  const auto& t1 = CoefficientTable::get(g.n1k);
  const auto& t2 = CoefficientTable::get(g.n2k);
  const double e1 = 0.25 * g.upsilon1 * g.upsilon1 * (0.5 - t);
  const double e2 = 0.25 * g.upsilon2 * g.upsilon2 * (0.5 + t);
  const double s1 = e1 > kExpFloor ? 0.0 : t1.gamma(1) * std::exp(-e1);
  const double s2 = e2 > kExpFloor ? 0.0 : t2.gamma(1) * std::exp(-e2);
  return s1 / std::sqrt(0.5 - t) - g.kappa * g.q * g.q * s2 / std::sqrt(0.5 + t);
}

namespace {

double cauchy_side(const CoefficientTable& tab, int hi, double ups2, double half_pm_t) {
  double s = 0.0;
  for (int m = 1; m <= hi; ++m) s += tab.gamma(m) / (1.0 + tab.theta(m) * ups2 * half_pm_t);
  return s / std::sqrt(half_pm_t);
}

double cal_g_cauchy_impl(double t, const DerivedGrid& g, int hi1, int hi2) {
  check_t_domain(t);
  const auto& t1 = CoefficientTable::get(g.n1k);
  const auto& t2 = CoefficientTable::get(g.n2k);
  return cauchy_side(t1, hi1, g.upsilon1 * g.upsilon1, 0.5 - t) -
         g.kappa * g.q * g.q * cauchy_side(t2, hi2, g.upsilon2 * g.upsilon2, 0.5 + t);
}

}  // namespace

double cal_g_cauchy(double t, const DerivedGrid& g) {
  return cal_g_cauchy_impl(t, g, g.n1k - 1, g.n2k - 1);
}

double cal_g_cauchy_bar(double t, const DerivedGrid& g) {
  return cal_g_cauchy_impl(t, g, g.bar_n1, g.bar_n2);
}

double threshold_xi1(const DerivedGrid& g) {
  if (g.n1k <= 8 && g.n2k <= 9)
    throw SolverError("branch-not-applicable: threshold needs N1K >= 9 or N2K >= 10");
  const double qk2 = double(g.q) * g.q * g.kappa * g.kappa;
  auto S1 = [&](double z) { return sum_exp_over_x(CoefficientTable::get(g.n1k), g.n1k - 1, z); };
  auto S2 = [&](double z) { return sum_exp_over_x(CoefficientTable::get(g.n2k), g.n2k - 1, z); };
  auto branch1 = [&]() -> std::optional<double> {
    auto roots = p1_roots(g.n1k);
    if (roots.roots.empty()) return std::nullopt;
    const double xb = roots.roots.back();
    auto yb = largest_level_crossing(S2, S1(xb) / qk2, 50.0);
    if (!yb) return std::nullopt;
    return ellipse_xi(g, xb, *yb);
  };
  auto branch2 = [&]() -> std::optional<double> {
    auto roots = p1_roots(g.n2k);
    if (roots.roots.empty()) return std::nullopt;
    const double yb = roots.roots.back();
    auto xb = largest_level_crossing(S1, qk2 * S2(yb), 50.0);
    if (!xb) return std::nullopt;
    return ellipse_xi(g, *xb, yb);
  };
  std::optional<double> xi1;
  if (g.n1k >= 9) {
    xi1 = branch1();
    if (!xi1 && g.n2k >= 10) xi1 = branch2();
  } else {
    xi1 = branch2();
  }
  return xi1.value_or(0.0);  // no side-branch intersection: interior solution everywhere
}

double threshold_xi1_cauchy(const DerivedGrid& g) {
  if (g.n1k <= 8 && g.n2k <= 9)
    throw SolverError("branch-not-applicable: threshold needs N1K >= 9 or N2K >= 10");
  const double q2 = double(g.q) * g.q;
  auto P4_1 = [&](double z) { return poly_p4(g.n1k, z); };
  auto P4_2 = [&](double z) { return poly_p4(g.n2k, z); };
  auto branch1 = [&]() -> std::optional<double> {
    auto roots = p3_roots(g.n1k);
    if (roots.roots.empty()) return std::nullopt;
    const double xb = roots.roots.back();
    auto yb = largest_level_crossing(P4_2, P4_1(xb) / q2, 50.0);
    if (!yb) return std::nullopt;
    return ellipse_xi(g, xb, *yb);
  };
  auto branch2 = [&]() -> std::optional<double> {
    auto roots = p3_roots(g.n2k);
    if (roots.roots.empty()) return std::nullopt;
    const double yb = roots.roots.back();
    auto xb = largest_level_crossing(P4_1, q2 * P4_2(yb), 50.0);
    if (!xb) return std::nullopt;
    return ellipse_xi(g, *xb, yb);
  };
  std::optional<double> xi1;
  if (g.n1k >= 9) {
    xi1 = branch1();
    if (!xi1 && g.n2k >= 10) xi1 = branch2();
  } else {
    xi1 = branch2();
  }
  return xi1.value_or(0.0);
}

namespace {

// The truncated root is the unique, globally bracketable starting point; the
// exact stationary point of the MSE is the adjacent minimizer crossing of the
// full function (always oriented - to +). Polishing onto it removes the
// O(dropped-tail) offset. Underflow plateaus or a missing local sign change
// keep the truncated root.
TSolve polish_on_full(const std::function<double(double)>& full, TSolve bar) {
  for (double step = 1e-7; step <= 0.03; step *= 4.0) {
    const double a = std::max(bar.t - step, -0.5 + kTEdge);
    const double b = std::min(bar.t + step, 0.5 - kTEdge);
    double fa = full(a), fb = full(b);
    if (fa < 0.0 && fb > 0.0) {
      double lo = a, hi = b;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = full(m);
        if (fm == 0.0) {
          lo = hi = m;
          break;
        }
        if (fm < 0.0) lo = m;
        else hi = m;
        if (hi - lo <= std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
          break;
      }
      TSolve out;
      out.t = 0.5 * (lo + hi);
      out.target_abs = std::abs(full(out.t));
      return out;
    }
  }
  return bar;
}

}  // namespace

OptimizerSolution solve_ml(const SystemConfig& cfg) {
  if (cfg.noise.kind != NoiseKind::Gaussian)
    throw InvalidConfig("solve_ml requires Gaussian noise");
  const DerivedGrid g = derive_grid(cfg);
  const double sigma = cfg.noise.scale();
  if (g.n1k <= 8 && g.n2k <= 9) {
    const auto r = solve_unique_t([&](double t) { return cal_g(t, g); }, "cal_g");
    return finish_interior(g, sigma, r.t, Region::MainFullG, r.target_abs);
  }
  const double xi1 = threshold_xi1(g);
  if (g.snr >= xi1) {
    auto r = solve_unique_t([&](double t) { return cal_g_bar(t, g); }, "cal_g_bar");
    r = polish_on_full([&](double t) { return cal_g(t, g); }, r);
    return finish_interior(g, sigma, r.t, Region::MainTruncated, r.target_abs);
  }
  return axis_y_solution(g, sigma);
}

OptimizerSolution solve_map(const SystemConfig& cfg) {
  if (cfg.noise.kind != NoiseKind::Gaussian)
    throw InvalidConfig("solve_map requires Gaussian noise");
  const DerivedGrid g = derive_grid(cfg);
  const double sigma = cfg.noise.scale();
  const double eta = 1.0 + cfg.noise.sigma2 / cfg.K;
  const auto r = solve_unique_t([&](double t) { return cal_h(t, g); }, "cal_h");
  return finish_interior(g, sigma / eta, r.t, Region::MainFullG, r.target_abs);
}

OptimizerSolution solve_lambert(const SystemConfig& cfg) {
  if (cfg.noise.kind != NoiseKind::Gaussian)
    throw InvalidConfig("solve_lambert requires Gaussian noise");
  const DerivedGrid g = derive_grid(cfg);
  const double sigma = cfg.noise.scale();
  const double u1 = g.upsilon1 * g.upsilon1, u2 = g.upsilon2 * g.upsilon2;
  const double n1 = g.n1k, n2 = g.n2k;
  // ln ktilde; the e^((U1^2-U2^2)/8) factor overflows long before the root
  // does, so the whole solve stays in log space.
  const double ln_kt = (u1 - u2) / 8.0 +
                       std::log(g.kappa * g.q * g.q * (n1 * n2 - n1) / (n1 * n2 - n2));
  auto f = [&](double t) {
    return std::log(0.5 + t) - std::log(0.5 - t) + 0.5 * (u1 + u2) * t - 2.0 * ln_kt;
  };
  const auto r = solve_unique_t(f, "lambert");
  auto sol = finish_interior(g, sigma, r.t, Region::MainFullG, std::abs(cal_f(r.t, g)));
  sol.kkt_residual = g.upsilon1 * std::abs(cal_f(r.t, g));
  const double q2 = double(g.q) * g.q, nn2 = double(g.n) * g.n;
  sol.validity_ok = g.snr >= 0.1 * std::max(q2 / (0.5 - r.t), nn2 / (0.5 + r.t));
  return sol;
}

OptimizerSolution solve_cauchy(const SystemConfig& cfg) {
  if (cfg.noise.kind != NoiseKind::Cauchy)
    throw InvalidConfig("solve_cauchy requires Cauchy noise");
  const DerivedGrid g = derive_grid(cfg);
  const double scale = cfg.noise.gamma;
  if (g.n1k <= 8 && g.n2k <= 9) {
    const auto r = solve_unique_t([&](double t) { return cal_g_cauchy(t, g); }, "cal_g_cauchy");
    return finish_interior(g, scale, r.t, Region::MainFullG, r.target_abs);
  }
  const double xi1 = threshold_xi1_cauchy(g);
  if (g.snr >= xi1) {
    const auto r =
        solve_unique_t([&](double t) { return cal_g_cauchy_bar(t, g); }, "cal_g_cauchy_bar");
    return finish_interior(g, scale, r.t, Region::MainTruncated, r.target_abs);
  }
  return axis_y_solution(g, scale);
}

NDimSpacing solve_ndim(int N, int q, int K, double power, std::span<const double> sigmas) {
  if (N < 2) throw InvalidConfig("solve_ndim needs N >= 2");
  if (q < 2 || K < 2) throw InvalidConfig("solve_ndim needs q >= 2 and K >= 2");
  if (!(power > 0.0)) throw InvalidConfig("solve_ndim needs power > 0");
  if (static_cast<int>(sigmas.size()) != N)
    throw InvalidConfig("solve_ndim needs one noise deviation per dimension");
  for (double s : sigmas)
    if (!(s > 0.0)) throw InvalidConfig("noise deviations must be > 0");

  const int nk = K * (q - 1) + 1;
  const int bar = 2 * nk / 3;
  const auto& tab = CoefficientTable::get(nk);
  auto B = [&](double z) { return sum_exp_over_x(tab, bar, z); };
  const double r2 = 12.0 * power / (double(q) * q - 1.0);
  const double q2 = double(q) * q;

  // Chain the links in normalized units x_i = d_i / sigma_i; B is strictly
  // decreasing so each link is a bracketed bisection with x_{i+1} > x_i.
  auto chain = [&](double d1, std::vector<double>* out) {
    double x = d1 / sigmas[0];
    double sum2 = d1 * d1;
    if (out) (*out)[0] = d1;
    for (int i = 1; i < N; ++i) {
      const double target = B(x) / q2;
      double lo = x, hi = 2.0 * x;
      while (B(hi) > target) {
        hi *= 2.0;
        if (hi > 1e12)
          throw SolverError("chain-propagation-failure at link " + std::to_string(i));
      }
      double fa = B(lo) - target;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double m = 0.5 * (lo + hi), fm = B(m) - target;
        if ((fa < 0) == (fm < 0)) {
          lo = m;
          fa = fm;
        } else {
          hi = m;
        }
      }
      x = 0.5 * (lo + hi);
      const double d = x * sigmas[i];
      sum2 += d * d;
      if (out) (*out)[i] = d;
    }
    return sum2;
  };

  double lo = 1e-12 * std::sqrt(r2), hi = std::sqrt(r2);
  double fa = chain(lo, nullptr) - r2;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double m = 0.5 * (lo + hi);
    const double fm = chain(m, nullptr) - r2;
    if ((fa < 0) == (fm < 0)) {
      lo = m;
      fa = fm;
    } else {
      hi = m;
    }
  }
  NDimSpacing sp;
  sp.q = q;
  sp.d.resize(N);
  chain(0.5 * (lo + hi), &sp.d);
  return sp;
}

}  // namespace oac
