#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oacgrid/encoder.hpp"
#include "oacgrid/model.hpp"

namespace oac {

/// Which regime produced a solution.
enum class Region { MainFullG, MainTruncated, AxisY, AxisX };
const char* to_string(Region r);

/// Optimal (or candidate) spacings with solver diagnostics. t_star is the
/// root of the parametric stationarity function (absent for axis solutions);
/// kkt_residual is |g(Delta1, Delta2)| of the branch that was solved;
/// power_residual is |Delta1^2/U1^2 + Delta2^2/U2^2 - 1|.
struct OptimizerSolution {
  double d1 = 0.0;
  double d2 = 0.0;
  std::optional<double> t_star;
  Region region = Region::MainFullG;
  double kkt_residual = 0.0;
  double power_residual = 0.0;
  /// Lambert solutions only: false when the post-hoc high-SNR validity
  /// condition xi >= max(q^2/(0.5-t), n^2/(0.5+t))/10 fails.
  std::optional<bool> validity_ok;
};

/// Positive roots of a scalar function located by a dense log-grid sign scan
/// plus bisection refinement.
struct RootReport {
  int N = 0;
  std::vector<double> roots;
  int root_count() const { return static_cast<int>(roots.size()); }
};

/// P^(1)_N(x) = sum_m gamma_m e^(-theta_m x^2) (1 + 2 theta_m x^2).
double poly_p1(int N, double x);
/// P^(2)_N(x) = (1/x) sum_m gamma_m e^(-theta_m x^2).
double poly_p2(int N, double x);
/// Cauchy analogues: P^(3) with the (1 + 3 theta x^2) numerator, P^(4) plain.
double poly_p3(int N, double x);
double poly_p4(int N, double x);

/// Sign-scan root finder on (0, x_max], >= 2048 log-spaced probes, bisection
/// refined to 1e-12 absolute. Never throws; an empty report is valid.
RootReport find_positive_roots(const std::function<double(double)>& f, double x_max,
                               int probes = 4096);
/// Search bound 4*sqrt(3.96/(2N-3)) from the root-location estimate.
double p1_search_limit(int N);
/// Convenience: roots of P^(1)_N / P^(3)_N inside the search bound.
RootReport p1_roots(int N);
RootReport p3_roots(int N);

/// Stationarity function of the constrained MSE in normalized spacings
/// (x, y) = (d1, d2)/sigma, with the per-axis Upsilon^2 weights that the
/// Lagrangian elimination produces:
///   g_q(x,y) = U1^2 sum gamma_{1,m} e^(-theta_m x^2)/x
///            - q^2 U2^2 sum gamma_{2,m} e^(-theta_m y^2)/y.
/// Parametric identity: g_q(U1 sqrt(0.5-t), U2 sqrt(0.5+t)) = U1 * cal_g(t).
double g_q(double x, double y, const DerivedGrid& grid);
/// Same sums truncated to bar_n1 / bar_n2 terms (all-positive coefficients).
double g_tilde(double x, double y, const DerivedGrid& grid);

/// Parametric stationarity functions on t in (-0.5, 0.5); each maps the
/// power ellipse through t -> (U1 sqrt(0.5-t), U2 sqrt(0.5+t)).
double cal_g(double t, const DerivedGrid& grid);        // full sums
double cal_g_bar(double t, const DerivedGrid& grid);    // truncated sums
double cal_h(double t, const DerivedGrid& grid);        // MAP, 2q/2n theta terms
double cal_f(double t, const DerivedGrid& grid);        // first-term high-SNR proxy
double cal_g_cauchy(double t, const DerivedGrid& grid);      // full rational sums
double cal_g_cauchy_bar(double t, const DerivedGrid& grid);  // truncated variant

/// SNR threshold below which the interior stationary point stops being the
/// minimizer: ellipse through the largest side-branch intersection, per-branch
/// by N1K >= 9 (vertical) else N2K >= 10 (horizontal). Returns 0 when the
/// designated branch has no intersection with the stationarity curve (no
/// saddle restricts the interior solution). Throws SolverError when neither
/// branch applies (N1K <= 8 and N2K <= 9).
double threshold_xi1(const DerivedGrid& grid);
/// Cauchy-noise threshold from the P^(3)/P^(4) system, same branch logic.
double threshold_xi1_cauchy(const DerivedGrid& grid);

/// Optimal ML spacings (Gaussian noise): full-sum root for small grids,
/// truncated root above the threshold, axis-y fallback below it.
OptimizerSolution solve_ml(const SystemConfig& cfg);
/// Optimal MAP spacings: root of cal_h mapped through (sigma/eta).
OptimizerSolution solve_map(const SystemConfig& cfg);
/// High-SNR closed form: solves ktilde^2 = (0.5+t)/(0.5-t) e^((U1^2+U2^2)t/2)
/// (the generalized-Lambert equation in logarithmic form) by bisection.
OptimizerSolution solve_lambert(const SystemConfig& cfg);
/// Optimal spacings under Cauchy noise; axis solution below the Cauchy
/// threshold, otherwise the cal_g_cauchy (truncated for large grids) root with
/// the noise scale gamma in place of sigma.
OptimizerSolution solve_cauchy(const SystemConfig& cfg);

/// N-dimensional spacings: chain of truncated stationarity links
/// g~(d_i/sigma_i, d_(i+1)/sigma_(i+1)) = 0 plus ||d||^2 = 12P/(q^2-1),
/// solved by nested monotone bisections.
NDimSpacing solve_ndim(int N, int q, int K, double power, std::span<const double> sigmas);

}  // namespace oac
