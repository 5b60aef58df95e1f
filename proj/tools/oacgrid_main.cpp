// oacgrid command line: constellation optimization, root reports, analytic
// MSE evaluation and Monte Carlo sweeps with CSV/JSON output.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oacgrid/analytic_mse.hpp"
#include "oacgrid/channel.hpp"
#include "oacgrid/experiments.hpp"
#include "oacgrid/optimizer.hpp"

using json = nlohmann::json;

namespace {

int g_verbosity = 1;  // 0 quiet, 1 normal, 2 verbose

void info(const std::string& msg) {
  if (g_verbosity >= 2) std::cerr << "[oacgrid] " << msg << "\n";
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

// Values from a JSON config file become option defaults, so anything passed
// on the command line still wins.
void apply_config_defaults(CLI::App* app, const json& cfg) {
  for (auto& [key, value] : cfg.items()) {
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr) continue;
    if (opt->count() > 0) continue;
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    opt->default_val(text);
    opt->required(false);  // the config satisfies the requirement
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

struct CommonFlags {
  int q = 0, n = 0, K = 0;
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  double power = 1.0;
  double sigma2 = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  std::string noise = "gaussian";
};

void add_common(CLI::App* sub, CommonFlags* f) {
  sub->add_option("--q", f->q, "in-phase levels per node")->required();
  sub->add_option("--n", f->n, "quadrature levels per node")->required();
  sub->add_option("--K", f->K, "number of transmitting nodes")->required();
  sub->add_option("--snr-db", f->snr_db, "SNR in dB (with unit power budget unless --power)");
  sub->add_option("--power", f->power, "average per-symbol power budget");
  sub->add_option("--sigma2", f->sigma2, "Gaussian noise variance");
  sub->add_option("--gamma", f->gamma, "Cauchy noise scale");
  sub->add_option("--noise", f->noise, "noise model: gaussian | cauchy")
      ->check(CLI::IsMember({"gaussian", "cauchy"}));
}

oac::SystemConfig build_config(const CommonFlags& f) {
  if (f.noise == "cauchy") {
    double gamma = f.gamma;
    if (!std::isfinite(gamma)) {
      if (!std::isfinite(f.snr_db)) throw oac::InvalidConfig("cauchy noise needs --gamma or --snr-db");
      gamma = std::sqrt(f.power / oac::snr_from_db(f.snr_db));
    }
    return oac::SystemConfig::from_noise(f.q, f.n, f.K, f.power, oac::NoiseModel::cauchy(gamma));
  }
  if (std::isfinite(f.sigma2))
    return oac::SystemConfig::from_noise(f.q, f.n, f.K, f.power,
                                         oac::NoiseModel::gaussian(f.sigma2));
  if (!std::isfinite(f.snr_db)) throw oac::InvalidConfig("need --snr-db or --sigma2");
  return oac::SystemConfig::from_snr(f.q, f.n, f.K, oac::snr_from_db(f.snr_db), f.power);
}

json solution_json(const oac::OptimizerSolution& sol) {
  json j;
  j["d1"] = sol.d1;
  j["d2"] = sol.d2;
  j["region"] = oac::to_string(sol.region);
  j["kkt_residual"] = sol.kkt_residual;
  j["power_residual"] = sol.power_residual;
  if (sol.t_star) j["t_star"] = *sol.t_star;
  if (sol.validity_ok) j["validity_ok"] = *sol.validity_ok;
  return j;
}

int cmd_optimize(const CommonFlags& f, const std::string& method, const std::string& format,
                 const std::string& out_path) {
  const auto cfg = build_config(f);
  oac::OptimizerSolution sol;
  if (method == "ml") sol = oac::solve_ml(cfg);
  else if (method == "map") sol = oac::solve_map(cfg);
  else if (method == "lambert") sol = oac::solve_lambert(cfg);
  else sol = oac::solve_cauchy(cfg);
  info("solved " + method + " region=" + oac::to_string(sol.region));

  std::string text;
  if (format == "json") {
    json j = solution_json(sol);
    j["method"] = method;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "method=" << method << " region=" << oac::to_string(sol.region)
       << " d1=" << fmt(sol.d1) << " d2=" << fmt(sol.d2);
    if (sol.t_star) os << " t_star=" << fmt(*sol.t_star);
    os << " kkt_residual=" << fmt(sol.kkt_residual)
       << " power_residual=" << fmt(sol.power_residual);
    if (sol.validity_ok) os << " validity_ok=" << (*sol.validity_ok ? "true" : "false");
    os << "\n";
    text = os.str();
  }
  write_output(text, out_path);
  return 0;
}

int cmd_roots(int N, const CommonFlags& f, const std::string& out_path) {
  std::ostringstream os;
  auto report = [&](int levels) {
    const auto rep = oac::p1_roots(levels);
    os << "P1 N=" << levels << " roots=" << rep.root_count() << " [";
    for (std::size_t i = 0; i < rep.roots.size(); ++i)
      os << (i ? ", " : "") << fmt(rep.roots[i]);
    os << "]\n";
    const auto rep2 = oac::find_positive_roots(
        [levels](double x) { return oac::poly_p2(levels, x); }, oac::p1_search_limit(levels));
    os << "P2 N=" << levels << " roots=" << rep2.root_count() << " [";
    for (std::size_t i = 0; i < rep2.roots.size(); ++i)
      os << (i ? ", " : "") << fmt(rep2.roots[i]);
    os << "]\n";
  };
  if (N > 0) {
    report(N);
  } else {
    const auto cfg = oac::SystemConfig::from_snr(f.q, f.n, f.K, 1.0, f.power);
    const auto grid = oac::derive_grid(cfg);
    report(grid.n1k);
    if (grid.n2k != grid.n1k) report(grid.n2k);
    if (grid.n1k >= 9 || grid.n2k >= 10) {
      const double xi1 = oac::threshold_xi1(grid);
      os << "xi1=" << fmt(xi1);
      if (xi1 > 0) os << " (" << fmt(oac::snr_to_db(xi1)) << " dB)";
      os << " approx_1.5n_over_K2=" << fmt(1.5 * f.n / (double(f.K) * f.K)) << "\n";
    } else {
      os << "xi1: no positive threshold for this grid size\n";
    }
  }
  write_output(os.str(), out_path);
  return 0;
}

int cmd_evaluate(const CommonFlags& f, double d1, double d2, const std::string& decoder,
                 std::uint64_t mc_trials, std::uint64_t seed, const std::string& format,
                 const std::string& out_path) {
  const auto cfg = build_config(f);
  const auto sp = oac::GridSpacing::centered(d1, d2, cfg);
  const bool map = decoder == "map";
  const auto mse = map ? oac::mse_map(sp, cfg) : oac::mse_ml(sp, cfg);

  json j;
  j["decoder"] = decoder;
  j["d1"] = d1;
  j["d2"] = d2;
  j["real_term"] = mse.real_term;
  j["imag_term"] = mse.imag_term;
  j["total"] = mse.total;
  if (mse.error_bound) j["error_bound"] = *mse.error_bound;
  if (mc_trials > 0) {
    const auto est = oac::estimate_mse(
        cfg, sp, map ? oac::DecoderKind::MAP : oac::DecoderKind::ML, mc_trials, seed);
    j["mc_mean"] = est.mean;
    j["mc_stderr"] = est.stderr_;
    j["mc_trials"] = est.trials;
    j["seed"] = est.seed;
  }
  std::string text;
  if (format == "json") {
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "decoder=" << decoder << " d1=" << fmt(d1) << " d2=" << fmt(d2)
       << " real_term=" << fmt(mse.real_term) << " imag_term=" << fmt(mse.imag_term)
       << " total=" << fmt(mse.total);
    if (mse.error_bound) os << " error_bound=" << fmt(*mse.error_bound);
    if (mc_trials > 0)
      os << " mc_mean=" << fmt(j["mc_mean"].get<double>())
         << " mc_stderr=" << fmt(j["mc_stderr"].get<double>()) << " mc_trials=" << mc_trials
         << " seed=" << seed;
    os << "\n";
    text = os.str();
  }
  write_output(text, out_path);
  return 0;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

int cmd_sweep(const CommonFlags& f, double from, double to, double step,
              const std::string& designs, const std::string& decoders, std::uint64_t trials,
              std::uint64_t seed, const std::string& format, const std::string& out_path) {
  oac::SweepSpec spec;
  spec.q = f.q;
  spec.n = f.n;
  spec.K = f.K;
  spec.power = f.power;
  spec.xi_db_from = from;
  spec.xi_db_to = to;
  spec.xi_db_step = step;
  spec.trials = trials;
  spec.seed = seed;
  spec.designs.clear();
  for (const auto& d : split_list(designs)) {
    if (d == "optimal") spec.designs.push_back(oac::DesignKind::Optimal);
    else if (d == "equal") spec.designs.push_back(oac::DesignKind::EqualDistance);
    else if (d == "lambert") spec.designs.push_back(oac::DesignKind::Lambert);
    else throw oac::InvalidConfig("unknown design: " + d);
  }
  spec.decoders.clear();
  for (const auto& d : split_list(decoders)) {
    if (d == "ml") spec.decoders.push_back(oac::DecoderKind::ML);
    else if (d == "map") spec.decoders.push_back(oac::DecoderKind::MAP);
    else throw oac::InvalidConfig("unknown decoder: " + d);
  }
  const auto records = oac::sweep(spec);
  info("sweep produced " + std::to_string(records.size()) + " cells");

  std::string text;
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : records) {
      json j;
      j["xi_db"] = r.xi_db;
      j["q"] = r.q;
      j["n"] = r.n;
      j["K"] = r.K;
      j["design"] = oac::to_string(r.design);
      j["decoder"] = oac::to_string(r.decoder);
      j["d1"] = r.d1;
      j["d2"] = r.d2;
      j["mse_analytic"] = r.mse_analytic;
      j["mse_mc"] = r.mse_mc.mean;
      j["mse_stderr"] = r.mse_mc.stderr_;
      j["trials"] = r.mse_mc.trials;
      j["seed"] = r.mse_mc.seed;
      j["status"] = r.status;
      arr.push_back(j);
    }
    text = arr.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << oac::sweep_csv_header() << "\n";
    for (const auto& r : records) os << oac::sweep_csv_row(r) << "\n";
    text = os.str();
  }
  write_output(text, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constellation design toolkit for digital over-the-air computation"};
  app.require_subcommand(1);

  std::string config_path, format = "text", out_path;
  bool quiet = false, verbose = false;
  app.add_option("--config", config_path, "JSON config file; flags win on conflict")
      ->expected(1);
  app.add_flag("--quiet", quiet, "suppress progress output");
  app.add_flag("--verbose", verbose, "extra progress output");

  CommonFlags fo, fr, fe, fs;

  auto* optimize = app.add_subcommand("optimize", "solve for optimal spacings");
  add_common(optimize, &fo);
  std::string method = "ml";
  optimize->add_option("--method", method, "ml | map | lambert | cauchy")
      ->check(CLI::IsMember({"ml", "map", "lambert", "cauchy"}));
  optimize->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  optimize->add_option("--out", out_path, "write output to file");

  auto* roots = app.add_subcommand("roots", "report P1/P2 roots and the SNR threshold");
  int root_n = 0;
  roots->add_option("--N", root_n, "level count N (overrides --q/--n/--K)");
  roots->add_option("--q", fr.q, "in-phase levels");
  roots->add_option("--n", fr.n, "quadrature levels");
  roots->add_option("--K", fr.K, "node count");
  roots->add_option("--out", out_path, "write output to file");

  auto* evaluate = app.add_subcommand("evaluate", "closed-form MSE at given spacings");
  add_common(evaluate, &fe);
  double d1 = 0.0, d2 = 0.0;
  std::string eval_decoder = "ml";
  std::uint64_t mc_trials = 0, seed = 1;
  evaluate->add_option("--d1", d1, "in-phase spacing")->required();
  evaluate->add_option("--d2", d2, "quadrature spacing")->required();
  evaluate->add_option("--decoder", eval_decoder, "ml | map")
      ->check(CLI::IsMember({"ml", "map"}));
  evaluate->add_option("--mc-trials", mc_trials, "also run a Monte Carlo estimate");
  evaluate->add_option("--seed", seed, "random seed")->envname("OACGRID_SEED");
  evaluate->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  evaluate->add_option("--out", out_path, "write output to file");

  auto* sweep_cmd = app.add_subcommand("sweep", "SNR sweep with Monte Carlo estimates");
  add_common(sweep_cmd, &fs);
  double from = 10.0, to = 27.0, step = 1.0;
  std::string designs = "optimal,equal", decoders = "ml";
  std::uint64_t sweep_trials = 50000, sweep_seed = 1;
  sweep_cmd->add_option("--snr-db-from", from, "sweep start (dB)")->required();
  sweep_cmd->add_option("--snr-db-to", to, "sweep end (dB)")->required();
  sweep_cmd->add_option("--snr-db-step", step, "sweep step (dB)");
  sweep_cmd->add_option("--designs", designs, "comma list: optimal,equal,lambert");
  sweep_cmd->add_option("--decoders", decoders, "comma list: ml,map");
  sweep_cmd->add_option("--trials", sweep_trials, "Monte Carlo trials per cell");
  sweep_cmd->add_option("--seed", sweep_seed, "random seed")->envname("OACGRID_SEED");
  sweep_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json", "text"}));
  sweep_cmd->add_option("--out", out_path, "write output to file");

  // Config-file defaults must be in place before the real parse.
  try {
    if (argc > 1) {
      for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
      if (!config_path.empty()) {
        const json cfg = load_config(config_path);
        for (auto* sub : {optimize, roots, evaluate, sweep_cmd}) apply_config_defaults(sub, cfg);
      }
    }
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  g_verbosity = quiet ? 0 : (verbose ? 2 : 1);

  try {
    if (optimize->parsed()) return cmd_optimize(fo, method, format, out_path);
    if (roots->parsed()) {
      if (root_n == 0 && (fr.q == 0 || fr.n == 0 || fr.K == 0))
        throw oac::InvalidConfig("roots needs --N or all of --q/--n/--K");
      return cmd_roots(root_n, fr, out_path);
    }
    if (evaluate->parsed())
      return cmd_evaluate(fe, d1, d2, eval_decoder, mc_trials, seed, format, out_path);
    if (sweep_cmd->parsed())
      return cmd_sweep(fs, from, to, step, designs, decoders, sweep_trials, sweep_seed,
                       format == "text" ? "csv" : format, out_path);
  } catch (const oac::InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
