#include "dln/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "dln/asymptotics.hpp"
#include "dln/meijer_g.hpp"
#include "dln/model_select.hpp"
#include "dln/oracle.hpp"
#include "dln/parallel.hpp"
#include "dln/posterior.hpp"
#include "dln/saddle.hpp"

namespace dln::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Grid specification {min, max, count, scale: linear|log}.
std::vector<double> expand_grid(const json& g) {
  const double lo = g.at("min").get<double>();
  const double hi = g.at("max").get<double>();
  const int count = g.at("count").get<int>();
  const std::string scale = g.value("scale", "linear");
  if (count < 1) throw std::invalid_argument("grid: count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (scale == "linear") {
    for (int i = 0; i < count; ++i)
      out.push_back(lo + (hi - lo) * i / (count - 1));
  } else if (scale == "log") {
    if (!(lo > 0.0)) throw std::invalid_argument("grid: log scale needs min > 0");
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
      out.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
  } else {
    throw std::invalid_argument("grid: scale must be linear or log");
  }
  return out;
}

std::vector<double> grid_or_list(const json& cfg, const std::string& key) {
  const json& g = cfg.at(key);
  if (g.is_array()) return g.get<std::vector<double>>();
  return expand_grid(g);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  for (const auto& l : lines) f << l << "\n";
  if (!f) throw std::runtime_error("write failed for " + path);
}

void write_manifest(const RunOptions& opt, const std::string& subcommand,
                    const json& cfg, const std::vector<std::string>& outputs,
                    double wall_s) {
  json m;
  m["subcommand"] = subcommand;
  m["config"] = cfg;
  m["seed"] = opt.seed;
  m["threads"] = opt.threads;
  m["code_version"] = "dln 1.0.0";
  m["wall_time_s"] = wall_s;
  m["outputs"] = outputs;
  std::ofstream f(std::filesystem::path(opt.out_dir) / "manifest.json",
                  std::ios::binary);
  f << m.dump(2) << "\n";
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

NetworkSpec make_spec(long n0, long n, long depth, double sigma2) {
  NetworkSpec s;
  s.n0 = n0;
  s.widths.assign(static_cast<std::size_t>(depth), n);
  s.sigma2 = sigma2;
  return s;
}

struct SweepRow {
  double x = 0.0;
  double exact = 0.0;
  double asym = 0.0;
  double marker = 0.0;
  std::string status = "ok";
};

int finish_sweep(const RunOptions& opt, const std::string& name,
                 const json& cfg, const std::vector<std::string>& lines,
                 const Timer& timer, bool any_numeric_failure) {
  std::filesystem::create_directories(opt.out_dir);
  const std::string csv = (std::filesystem::path(opt.out_dir) / (name + ".csv")).string();
  write_lines(csv, lines);
  write_manifest(opt, name, cfg, {csv}, timer.elapsed());
  return any_numeric_failure ? kExitNumeric : kExitOk;
}

}  // namespace

int cmd_evidence_sweep(const json& cfg, const RunOptions& opt) {
  Timer timer;
  const std::string sweep = cfg.at("sweep").get<std::string>();
  const std::vector<double> grid = grid_or_list(cfg, "grid");
  const long n = cfg.at("n").get<long>();
  const long p = cfg.at("p").get<long>();
  const long n0 = cfg.value("n0", 2 * p);
  const double nu = cfg.at("nu").get<double>();
  const double tol = cfg.value("tol", 1e-10);
  const double theta2 = nu * static_cast<double>(p) / static_cast<double>(n0);
  const DataSummary data = DataSummary::from(p, n0, theta2);

  std::vector<SweepRow> rows(grid.size());
  parallel::for_each_index(
      static_cast<long>(grid.size()), opt.threads, [&](long i) {
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        row.x = grid[static_cast<std::size_t>(i)];
        try {
          asymptotics::RegimeParams rp;
          rp.nu = nu;
          long depth = 0;
          double sigma2 = 1.0;
          if (sweep == "sigma2") {
            depth = cfg.at("depth").get<long>();
            sigma2 = row.x;
            rp.regime = asymptotics::Regime::finite_l;
            rp.alpha = static_cast<double>(p) / static_cast<double>(n);
            rp.sigma2 = sigma2;
            rp.depth_l = depth;
            row.marker = model_select::sigma_star(nu, depth);
          } else if (sweep == "lambda_prior") {
            depth = std::lround(row.x * static_cast<double>(n));
            rp.regime = asymptotics::Regime::fixed_lambda_prior;
            rp.lambda_prior = row.x;
            row.marker = model_select::lambda_prior_star(nu);
          } else if (sweep == "lambda_post") {
            depth = std::lround(row.x * static_cast<double>(n) /
                                static_cast<double>(p));
            rp.regime = asymptotics::Regime::fixed_lambda_post;
            rp.lambda_post = row.x;
            row.marker = std::numeric_limits<double>::infinity();
          } else {
            throw std::invalid_argument("evidence-sweep: unknown sweep " + sweep);
          }
          const NetworkSpec spec = make_spec(n0, n, depth, sigma2);
          row.exact = posterior::log_evidence_exact(spec, data, tol);
          row.asym = posterior::log_evidence_asymptotic(rp, p, n, theta2);
        } catch (const meijer_g::QuadratureError& e) {
          row.status = std::string("numeric-failure: ") + e.what();
          row.exact = row.asym = std::nan("");
        }
      });

  std::vector<std::string> lines{
      "sweep_var,log_evidence_exact,log_evidence_asymptotic,maximizer_marker,status"};
  bool failed = false;
  for (const auto& r : rows) {
    failed = failed || r.status != "ok";
    lines.push_back(fmt17(r.x) + "," + fmt17(r.exact) + "," + fmt17(r.asym) +
                    "," + fmt17(r.marker) + "," + r.status);
  }
  return finish_sweep(opt, "evidence_sweep", cfg, lines, timer, failed);
}

int cmd_posterior_variance(const json& cfg, const RunOptions& opt) {
  Timer timer;
  const std::string regime = cfg.value("regime", "fixed_lambda_prior");
  const std::vector<double> ngrid = grid_or_list(cfg, "n_grid");
  const double nu = cfg.at("nu").get<double>();
  const double tol = cfg.value("tol", 1e-10);

  struct Row {
    long n;
    double var_exact, var_limit, gap_n;
    std::string status = "ok";
  };
  std::vector<Row> rows(ngrid.size());
  parallel::for_each_index(
      static_cast<long>(ngrid.size()), opt.threads, [&](long i) {
        Row& row = rows[static_cast<std::size_t>(i)];
        row.n = std::lround(ngrid[static_cast<std::size_t>(i)]);
        try {
          long p = 0, depth = 0;
          double sigma2 = 1.0, climit = 1.0;
          if (regime == "fixed_lambda_prior") {
            const double lam = cfg.at("lambda_prior").get<double>();
            const double alpha = cfg.value("alpha", 1.0);
            p = std::lround(alpha * static_cast<double>(row.n));
            depth = std::lround(lam * static_cast<double>(row.n));
            climit = 1.0;
          } else if (regime == "finite_l") {
            depth = cfg.at("depth").get<long>();
            const double alpha = cfg.value("alpha", 1.0);
            sigma2 = cfg.value("sigma2", 1.0);
            p = std::lround(alpha * static_cast<double>(row.n));
            const double zs = saddle::solve_z_star(nu, sigma2, alpha, depth).root;
            climit = 1.0 / (1.0 + zs / alpha);
          } else if (regime == "fixed_lambda_post") {
            const double lpost = cfg.at("lambda_post").get<double>();
            p = cfg.at("p").get<long>();
            depth = std::lround(lpost * static_cast<double>(row.n) /
                                static_cast<double>(p));
            const double ts = saddle::solve_t_star(nu, lpost).root;
            climit = 1.0 / (1.0 + ts);
          } else {
            throw std::invalid_argument("posterior-variance: unknown regime " + regime);
          }
          const long n0 = 2 * p;
          const NetworkSpec spec = make_spec(n0, row.n, depth, sigma2);
          const DataSummary data = DataSummary::from(
              p, n0, nu * static_cast<double>(p) / static_cast<double>(n0));
          // Variance in units of nu ||x_perp||^2 / N0 (the regime factor c_N).
          row.var_exact = posterior::variance_factor_exact(spec, data, tol);
          row.var_limit = climit;
          row.gap_n = static_cast<double>(row.n) * (row.var_exact - climit);
        } catch (const meijer_g::QuadratureError& e) {
          row.status = std::string("numeric-failure: ") + e.what();
          row.var_exact = row.var_limit = row.gap_n = std::nan("");
        }
      });

  std::vector<std::string> lines{"N,var_exact,var_limit,N_times_gap,status"};
  bool failed = false;
  for (const auto& r : rows) {
    failed = failed || r.status != "ok";
    lines.push_back(std::to_string(r.n) + "," + fmt17(r.var_exact) + "," +
                    fmt17(r.var_limit) + "," + fmt17(r.gap_n) + "," + r.status);
  }
  return finish_sweep(opt, "posterior_variance", cfg, lines, timer, failed);
}

int cmd_double_descent(const json& cfg, const RunOptions& opt) {
  Timer timer;
  const long n0 = cfg.at("n0").get<long>();
  const double se2 = cfg.at("sigma_eps2").get<double>();
  const long trials = cfg.at("trials").get<long>();
  const long fresh_x = cfg.value("fresh_x", 8);
  const std::vector<double> grid = grid_or_list(cfg, "alpha0_grid");

  const auto ests = oracle::mc_double_descent_error(n0, grid, se2, trials,
                                                    opt.seed, fresh_x,
                                                    opt.threads);
  std::vector<std::string> lines{"alpha0,mc_error,mc_se,closed_form"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long p = std::lround(grid[i] * static_cast<double>(n0));
    const double a0 = static_cast<double>(p) / static_cast<double>(n0);
    lines.push_back(fmt17(grid[i]) + "," + fmt17(ests[i].value) + "," +
                    fmt17(ests[i].std_error) + "," +
                    fmt17(oracle::dd_closed_form(a0, se2)));
  }
  return finish_sweep(opt, "double_descent", cfg, lines, timer, false);
}

int cmd_oracle_density(const json& cfg, const RunOptions& opt) {
  Timer timer;
  NetworkSpec spec;
  spec.n0 = cfg.value("n0", 2 * cfg.at("p").get<long>());
  spec.widths = cfg.at("widths").get<std::vector<long>>();
  spec.sigma2 = cfg.value("sigma2", 1.0);
  const long p = cfg.at("p").get<long>();
  const double nu = cfg.at("nu").get<double>();
  const long n = cfg.value("n", 1000000L);
  const DataSummary data = DataSummary::from(
      p, spec.n0, nu * static_cast<double>(p) / static_cast<double>(spec.n0));
  const meijer_g::GArgs args = meijer_g::GArgs::make(
      spec, data, cfg.value("k_widths", 0L), cfg.value("k_data", 0L));

  const auto est = oracle::rb_density_product_gammas(args, n, opt.seed);
  const meijer_g::GammaProduct gp = meijer_g::gamma_product(args);
  const double exact =
      std::exp(meijer_g::log_density_at(gp, 1.0).log_value);
  const double z = (est.value - exact) / est.std_error;

  std::vector<std::string> lines{"estimate,std_error,exact_density,z_score"};
  lines.push_back(fmt17(est.value) + "," + fmt17(est.std_error) + "," +
                  fmt17(exact) + "," + fmt17(z));
  return finish_sweep(opt, "oracle_density", cfg, lines, timer, false);
}

int cmd_validate(const json& cfg, const RunOptions& opt) {
  Timer timer;
  json checks = json::array();
  bool all_pass = true;
  const auto add = [&](const std::string& name, bool pass, double measured,
                       double tolerance) {
    checks.push_back({{"name", name},
                      {"pass", pass},
                      {"measured", measured},
                      {"tolerance", tolerance}});
    all_pass = all_pass && pass;
  };

  // Gamma-density reduction at L = 0.
  {
    double worst = 0.0;
    for (double b : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
      for (double z : {1e-3, 1e-1, 1.0, 10.0, 1e3}) {
        const long p = std::lround(2.0 * b);
        NetworkSpec spec = make_spec(p, 1, 0, 1.0);
        const double nu = 2.0 * z / static_cast<double>(p);
        const DataSummary data = DataSummary::from(p, p, nu);
        const meijer_g::GArgs args = meijer_g::GArgs::make(spec, data, 0, 0);
        const double got = meijer_g::log_meijer_g(args, 1e-12).log_value;
        const double want = b * std::log(z) - z;
        worst = std::max(worst,
                         std::abs(got - want) / std::max(1.0, std::abs(want)));
      }
    }
    add("l0_gamma_density_identity", worst <= 1e-12, worst, 1e-12);
  }

  // Oracle vs exact density.
  {
    NetworkSpec spec = make_spec(12, 8, 2, 1.0);
    spec.widths = {8, 12};
    const DataSummary data = DataSummary::from(6, 12, 1.0);
    const meijer_g::GArgs args = meijer_g::GArgs::make(spec, data, 0, 0);
    const long n = cfg.value("oracle_samples", 200000L);
    const auto est = oracle::rb_density_product_gammas(args, n, opt.seed);
    const double exact = std::exp(
        meijer_g::log_density_at(meijer_g::gamma_product(args), 1.0).log_value);
    const double z = std::abs(est.value - exact) / est.std_error;
    add("oracle_vs_exact_density_z", z <= 3.0, z, 3.0);
  }

  // Evidence stationarity at the optimal prior variance.
  {
    NetworkSpec spec = make_spec(400, 64, 1, std::sqrt(2.0));
    const DataSummary data = DataSummary::from(200, 400, 1.0);
    const meijer_g::GArgs args = meijer_g::GArgs::make(spec, data, 0, 0);
    const double ratio =
        std::exp(meijer_g::delta_log_g_data(args, 1)) / (200.0 / 2.0);
    add("stationarity_ratio", std::abs(ratio - 1.0) <= 0.02, ratio, 0.02);
  }

  // KS test of prior norm samples against the product-of-Gammas density.
  {
    const long n = cfg.value("ks_samples", 20000L);
    auto samples = oracle::prior_q_samples({6, 6}, n, opt.seed + 1);
    const double pval = oracle::q_density_ks_test(samples, {6, 6});
    add("prior_q_ks_pvalue", pval > 0.01, pval, 0.01);
  }

  json report;
  report["checks"] = checks;
  report["all_pass"] = all_pass;
  std::filesystem::create_directories(opt.out_dir);
  const std::string path =
      (std::filesystem::path(opt.out_dir) / "validate.json").string();
  std::ofstream f(path, std::ios::binary);
  f << report.dump(2) << "\n";
  write_manifest(opt, "validate", cfg, {path}, timer.elapsed());
  return all_pass ? kExitOk : kExitValidation;
}

int run_subcommand(const std::string& name, const std::string& config_path,
                   const RunOptions& opt) {
  json cfg = json::object();
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      std::fprintf(stderr, "config file not found: %s\n", config_path.c_str());
      return kExitConfig;
    }
    try {
      f >> cfg;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "config parse error: %s\n", e.what());
      return kExitConfig;
    }
  }
  try {
    if (name == "evidence-sweep") return cmd_evidence_sweep(cfg, opt);
    if (name == "posterior-variance") return cmd_posterior_variance(cfg, opt);
    if (name == "double-descent") return cmd_double_descent(cfg, opt);
    if (name == "oracle-density") return cmd_oracle_density(cfg, opt);
    if (name == "validate") return cmd_validate(cfg, opt);
    std::fprintf(stderr, "unknown subcommand: %s\n", name.c_str());
    return kExitConfig;
  } catch (const meijer_g::QuadratureError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }
}

}  // namespace dln::cli
