#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxstable/errors.hpp"
#include "maxstable/forecast.hpp"
#include "maxstable/frechet.hpp"
#include "maxstable/io.hpp"
#include "maxstable/metrics.hpp"
#include "maxstable/parallel.hpp"
#include "maxstable/rainfall.hpp"
#include "maxstable/simulate.hpp"
#include "maxstable/taildep.hpp"
#include "maxstable/tune.hpp"

using namespace maxstable;
using nlohmann::json;

namespace {

// Unknown enum names are usage errors, not runtime failures.
template <class F>
auto parse_flag(F&& parse) {
  try {
    return parse();
  } catch (const DomainError& e) {
    throw CLI::ValidationError(e.what());
  }
}

struct OptimizerOptions {
  std::string method = "adam";
  double step = 0.1;
  std::size_t patience = 200;
  std::size_t max_iters = 20000;
  bool no_log = false;

  void add(CLI::App& app) {
    app.add_option("--method", method, "adam or sgd")->capture_default_str();
    app.add_option("--step", step, "learning rate eta")->capture_default_str();
    app.add_option("--patience", patience, "stop after this many non-improving iterations")->capture_default_str();
    app.add_option("--max-iters", max_iters)->capture_default_str();
    app.add_flag("--no-log", no_log, "optimize lambda directly instead of log(lambda)");
  }

  OptimizerConfig config(std::uint64_t seed) const {
    OptimizerConfig c;
    c.method = parse_flag([&] { return parse_method(method); });
    c.step = step;
    c.patience = patience;
    c.max_iters = max_iters;
    c.reparametrize_log = !no_log;
    c.seed = seed;
    parse_flag([&] {
      c.validate();
      return 0;
    });
    return c;
  }

  json to_json() const {
    return {{"method", method}, {"step", step}, {"patience", patience}, {"max_iters", max_iters}, {"log", !no_log}};
  }
};

struct ModelOptions {
  std::string model;
  std::optional<double> theta;
  std::optional<double> sigma;

  void add(CLI::App& app, bool required = true) {
    auto* m = app.add_option("--model", model, "br, smith or eg");
    if (required) m->required();
    auto* t = app.add_option("--theta", theta, "extremal coefficient at lag 1 (sigma is calibrated)");
    auto* s = app.add_option("--sigma", sigma, "covariance parameter");
    t->excludes(s);
  }

  ModelSpec spec(int dimension) const {
    const ModelKind kind = parse_flag([&] { return parse_model_kind(model); });
    if (!theta && !sigma) throw CLI::ValidationError("--theta or --sigma is required");
    return ModelSpec{kind, dimension, sigma ? *sigma : calibrate_sigma(kind, *theta)};
  }

  json to_json(const ModelSpec& spec) const {
    json j{{"model", std::string(to_string(spec.kind))}, {"sigma", spec.sigma}, {"dimension", spec.dimension}};
    if (theta) j["theta"] = *theta;
    return j;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Path read_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_path_csv(in);
}

// Writes to `path` (stdout when empty) and, for files, a manifest next to it.
void emit(const std::string& path, const std::string& command, std::uint64_t seed, const json& config,
          const std::function<void(std::ostream&)>& write, std::vector<std::string> extra_outputs = {}) {
  if (path.empty()) {
    write(std::cout);
  } else {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
    extra_outputs.insert(extra_outputs.begin(), path);
  }
  if (extra_outputs.empty()) return;
  const std::string manifest_path = extra_outputs.front() + ".manifest.json";
  std::ofstream m(manifest_path);
  if (!m) throw std::runtime_error("cannot write " + manifest_path);
  m << manifest_json({command, seed, config.dump(), extra_outputs});
}

// `--config file.json` expands to `--key=value` arguments placed before the
// explicit ones, so flags on the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    const json cfg = json::parse(read_file(args[i + 1]));
    if (!cfg.is_object()) throw CLI::ValidationError("config file must hold a JSON object");
    std::vector<std::string> expanded;
    for (const auto& [key, value] : cfg.items()) {
      if (value.is_boolean()) {
        if (value.get<bool>()) expanded.push_back("--" + key);
      } else if (value.is_array()) {
        for (const auto& v : value) expanded.push_back("--" + key + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
      } else {
        expanded.push_back("--" + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()));
      }
    }
    args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    // Insert after the subcommand name, which is the first non-option argument.
    std::size_t at = 0;
    while (at < args.size() && args[at].rfind("--", 0) == 0) at += args[at].find('=') == std::string::npos ? 2 : 1;
    at = std::min(at + 1, args.size());
    args.insert(args.begin() + static_cast<long>(at), expanded.begin(), expanded.end());
    break;
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-stable process simulation and extreme value forecasting"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0: MAXSTABLE_THREADS or all cores)");
  std::string config_file;
  app.add_option("--config", config_file, "JSON file with option values");
  std::function<void()> run;

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a max-stable path or field");
  ModelOptions sim_model;
  sim_model.add(*sim);
  int sim_dim = 1;
  std::size_t sim_length = 2141, sim_size = 50;
  std::uint64_t sim_seed = 0;
  std::string sim_out, sim_json;
  sim->add_option("--dim", sim_dim, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  sim->add_option("--length", sim_length, "sites of a 1D path")->capture_default_str();
  sim->add_option("--size", sim_size, "side of a 2D square grid")->capture_default_str();
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--out", sim_out, "path CSV (stdout if omitted)");
  sim->add_option("--json", sim_json, "also write a 2D field as a JSON matrix");
  sim->callback([&] {
    run = [&] {
      const ModelSpec spec = sim_model.spec(sim_dim);
      const GridSpec grid = sim_dim == 1 ? GridSpec::line(sim_length) : GridSpec::square(sim_size);
      Rng rng = make_rng(sim_seed);
      const Path path = simulate_max_stable(spec, grid, rng);
      json cfg = sim_model.to_json(spec);
      cfg["sites"] = grid.size();
      cfg["seed"] = sim_seed;
      std::vector<std::string> extra;
      if (!sim_json.empty()) {
        std::ofstream j(sim_json);
        write_field_json(j, path);
        extra.push_back(sim_json);
      }
      emit(sim_out, "simulate", sim_seed, cfg, [&](std::ostream& o) { write_path_csv(o, path); }, extra);
    };
  });

  // forecast
  auto* fc = app.add_subcommand("forecast", "forecast a 1D path L steps ahead");
  std::string fc_in, fc_out, fc_gamma = "0", fc_variant = "nonbootstrap";
  std::size_t fc_n = 21, fc_N = 100, fc_horizon = 20, fc_holdout = 0, fc_K = 1000;
  double fc_alpha = 1.0;
  std::uint64_t fc_seed = 0;
  OptimizerOptions fc_opt;
  ModelOptions fc_model;
  fc->add_option("--input", fc_in, "path CSV")->required();
  fc->add_option("--n", fc_n, "forecast sample size")->capture_default_str();
  fc->add_option("--N", fc_N, "learning samples")->capture_default_str();
  fc->add_option("--horizon", fc_horizon)->capture_default_str();
  fc->add_option("--holdout", fc_holdout, "trailing sites excluded from the observations")->capture_default_str();
  fc->add_option("--gamma", fc_gamma, "penalty weight or 'auto' (needs --model and --theta/--sigma)")
      ->capture_default_str();
  fc->add_option("--K", fc_K, "replications for --gamma auto")->capture_default_str();
  fc->add_option("--alpha", fc_alpha, "Frechet shape of the margins")->capture_default_str();
  fc->add_option("--variant", fc_variant, "bootstrap or nonbootstrap")->capture_default_str();
  fc->add_option("--seed", fc_seed)->capture_default_str();
  fc->add_option("--out", fc_out, "prediction CSV (stdout if omitted)");
  fc_opt.add(*fc);
  fc_model.add(*fc, false);
  fc->callback([&] {
    run = [&] {
      const Path series = read_path(fc_in);
      if (series.grid.dimension() != 1) throw CLI::ValidationError("forecast needs a 1D path; use forecast2d");
      ForecastSettings s;
      s.sample_size = fc_n;
      s.learning_samples = fc_N;
      s.horizon = fc_horizon;
      s.holdout = fc_holdout;
      s.alpha = fc_alpha;
      s.variant = parse_flag([&] { return parse_variant(fc_variant); });
      s.optimizer = fc_opt.config(fc_seed);
      s.threads = threads;
      json cfg{{"input", fc_in},   {"n", fc_n},        {"N", fc_N},         {"horizon", fc_horizon},
               {"holdout", fc_holdout}, {"alpha", fc_alpha}, {"variant", fc_variant}, {"seed", fc_seed},
               {"optimizer", fc_opt.to_json()}};
      if (fc_gamma == "auto") {
        if (fc_model.model.empty()) throw CLI::ValidationError("--gamma auto needs --model");
        const ModelSpec spec = fc_model.spec(1);
        TuneSettings t;
        t.replications = fc_K;
        t.optimizer = fc_opt.config(fc_seed);
        t.seed = fc_seed;
        t.threads = threads;
        s.gamma = tune_gamma(spec, t).gamma_opt;
        cfg["tune"] = fc_model.to_json(spec);
        cfg["tune"]["K"] = fc_K;
        std::cerr << "gamma_opt=" << s.gamma << '\n';
      } else {
        try {
          s.gamma = std::stod(fc_gamma);
        } catch (const std::exception&) {
          throw CLI::ValidationError("--gamma must be a number or 'auto'");
        }
      }
      cfg["gamma"] = s.gamma;
      const auto steps = forecast_path(series, s);
      emit(fc_out, "forecast", fc_seed, cfg, [&](std::ostream& o) { write_predictions_csv(o, prediction_rows(steps)); });
    };
  });

  // forecast2d
  auto* f2 = app.add_subcommand("forecast2d", "extend an n x n field to (n+m) x (n+m)");
  std::string f2_in, f2_out, f2_json;
  std::size_t f2_m = 10, f2_N = 50;
  double f2_alpha = 1.0, f2_gamma = 0.0;
  std::uint64_t f2_seed = 0;
  OptimizerOptions f2_opt;
  f2->add_option("--input", f2_in, "2D path CSV")->required();
  f2->add_option("--m", f2_m, "extension width")->capture_default_str();
  f2->add_option("--N", f2_N, "learning configurations per target")->capture_default_str();
  f2->add_option("--gamma", f2_gamma)->capture_default_str();
  f2->add_option("--alpha", f2_alpha)->capture_default_str();
  f2->add_option("--seed", f2_seed)->capture_default_str();
  f2->add_option("--out", f2_out, "extended field CSV (stdout if omitted)");
  f2->add_option("--json", f2_json, "also write the extended field as a JSON matrix");
  f2_opt.add(*f2);
  f2->callback([&] {
    run = [&] {
      const Path field = read_path(f2_in);
      FieldForecastSettings s;
      s.horizon = f2_m;
      s.learning_samples = f2_N;
      s.alpha = f2_alpha;
      s.gamma = f2_gamma;
      s.optimizer = f2_opt.config(f2_seed);
      s.threads = threads;
      const Path out = forecast_field_2d(field, s);
      json cfg{{"input", f2_in}, {"m", f2_m},         {"N", f2_N},
               {"gamma", f2_gamma}, {"alpha", f2_alpha}, {"seed", f2_seed}, {"optimizer", f2_opt.to_json()}};
      std::vector<std::string> extra;
      if (!f2_json.empty()) {
        std::ofstream j(f2_json);
        write_field_json(j, out);
        extra.push_back(f2_json);
      }
      emit(f2_out, "forecast2d", f2_seed, cfg, [&](std::ostream& o) { write_path_csv(o, out); }, extra);
    };
  });

  // tune-gamma
  auto* tg = app.add_subcommand("tune-gamma", "choose the penalty weight by simulation");
  ModelOptions tg_model;
  tg_model.add(*tg);
  std::size_t tg_K = 1000, tg_n = 2, tg_N = 100, tg_M = 100;
  std::vector<double> tg_grid;
  std::uint64_t tg_seed = 0;
  std::string tg_out;
  OptimizerOptions tg_opt;
  tg->add_option("--K", tg_K, "replications")->capture_default_str();
  tg->add_option("--n", tg_n)->capture_default_str();
  tg->add_option("--N", tg_N)->capture_default_str();
  tg->add_option("--M", tg_M, "MSE grid size")->capture_default_str();
  tg->add_option("--grid", tg_grid, "gamma values (default 0..20)")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  tg->add_option("--seed", tg_seed)->capture_default_str();
  tg->add_option("--out", tg_out, "sweep CSV (stdout if omitted)");
  tg_opt.add(*tg);
  tg->callback([&] {
    run = [&] {
      const ModelSpec spec = tg_model.spec(1);
      TuneSettings t;
      if (!tg_grid.empty()) t.gamma_grid = tg_grid;
      t.replications = tg_K;
      t.sample_size = tg_n;
      t.learning_samples = tg_N;
      t.mse_grid = tg_M;
      t.optimizer = tg_opt.config(tg_seed);
      t.seed = tg_seed;
      t.threads = threads;
      const GammaSweep sweep = tune_gamma(spec, t);
      json cfg = tg_model.to_json(spec);
      cfg.update(json{{"K", tg_K}, {"n", tg_n}, {"N", tg_N}, {"M", tg_M}, {"grid", t.gamma_grid},
                      {"seed", tg_seed}, {"optimizer", tg_opt.to_json()}});
      emit(tg_out, "tune-gamma", tg_seed, cfg, [&](std::ostream& o) { write_sweep_csv(o, sweep); });
      std::cerr << "gamma_opt=" << sweep.gamma_opt << '\n';
    };
  });

  // fit-frechet
  auto* ff = app.add_subcommand("fit-frechet", "quasi-ML fit of a shifted Frechet law to path values");
  std::string ff_in, ff_out;
  ff->add_option("--input", ff_in, "path CSV")->required();
  ff->add_option("--out", ff_out, "JSON (stdout if omitted)");
  ff->callback([&] {
    run = [&] {
      const Path data = read_path(ff_in);
      const FrechetParams p = fit_quasi_ml(data.values);
      const json result{{"alpha", p.alpha}, {"mu", p.mu}, {"sigma", p.sigma},
                        {"loglik", frechet_quasi_loglik(data.values, p)}, {"count", data.values.size()}};
      emit(ff_out, "fit-frechet", 0, json{{"input", ff_in}}, [&](std::ostream& o) { o << result.dump(2) << '\n'; });
    };
  });

  // metrics
  auto* mt = app.add_subcommand("metrics", "benchmark excursion curve or empirical excursion of predictions");
  ModelOptions mt_model;
  mt_model.add(*mt, false);
  std::size_t mt_steps = 20;
  std::string mt_truth, mt_pred, mt_out;
  double mt_alpha = 1.0;
  mt->add_option("--steps", mt_steps, "lags of the benchmark curve")->capture_default_str();
  mt->add_option("--truth", mt_truth, "CSV of realized values (path format)");
  mt->add_option("--pred", mt_pred, "CSV of predictions (path format)");
  mt->add_option("--alpha", mt_alpha, "Frechet shape for the empirical metric")->capture_default_str();
  mt->add_option("--out", mt_out, "output (stdout if omitted)");
  mt->callback([&] {
    run = [&] {
      if (!mt_truth.empty() || !mt_pred.empty()) {
        if (mt_truth.empty() || mt_pred.empty()) throw CLI::ValidationError("--truth and --pred go together");
        const Path truth = read_path(mt_truth);
        const Path pred = read_path(mt_pred);
        if (truth.values.size() != pred.values.size()) throw CLI::ValidationError("--truth and --pred differ in length");
        const MetricValue e = excursion_empirical(truth.values, pred.values, FrechetParams::standard(mt_alpha));
        const json result{{"excursion", e.value},
                          {"standard_error", e.standard_error.value_or(0.0)},
                          {"davis_resnick", davis_resnick_from_excursion(std::max(e.value, 0.0))},
                          {"count", truth.values.size()}};
        emit(mt_out, "metrics", 0, json{{"truth", mt_truth}, {"pred", mt_pred}, {"alpha", mt_alpha}},
             [&](std::ostream& o) { o << result.dump(2) << '\n'; });
        return;
      }
      if (mt_model.model.empty()) throw CLI::ValidationError("metrics needs --model or --truth/--pred");
      const ModelSpec spec = mt_model.spec(1);
      json cfg = mt_model.to_json(spec);
      cfg["steps"] = mt_steps;
      emit(mt_out, "metrics", 0, cfg, [&](std::ostream& o) {
        o << "lag,theta,excursion,davis_resnick\n" << std::setprecision(17);
        for (std::size_t h = 1; h <= mt_steps; ++h) {
          const double e = benchmark_excursion(spec, static_cast<double>(h));
          o << h << ',' << extremal_coefficient(spec, static_cast<double>(h)) << ',' << e << ','
            << davis_resnick_from_excursion(e) << '\n';
        }
      });
    };
  });

  // ingest
  auto* ig = app.add_subcommand("ingest", "assemble an annual rainfall-maxima series and optionally forecast it");
  std::vector<std::string> ig_in;
  std::string ig_primary, ig_out, ig_pred;
  bool ig_forecast = false;
  RainfallConfig rc;
  OptimizerOptions ig_opt;
  std::uint64_t ig_seed = 0;
  ig->add_option("--input", ig_in, "CSV files with year,station,value")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ig->add_option("--primary", ig_primary, "station whose values are preferred")->required();
  ig->add_option("--out", ig_out, "series CSV year,value,imputed (stdout if omitted)");
  ig->add_flag("--forecast", ig_forecast, "fit the Frechet margin and forecast the series");
  ig->add_option("--predictions", ig_pred, "prediction CSV with bootstrap envelope");
  ig->add_option("--n", rc.sample_size)->capture_default_str();
  ig->add_option("--N", rc.learning_samples)->capture_default_str();
  ig->add_option("--horizon", rc.horizon)->capture_default_str();
  ig->add_option("--holdout", rc.holdout, "trailing years compared against the forecast")->capture_default_str();
  ig->add_option("--gamma", rc.gamma)->capture_default_str();
  ig->add_option("--runs", rc.bootstrap_runs, "bootstrap forecasts in the envelope")->capture_default_str();
  ig->add_option("--seed", ig_seed)->capture_default_str();
  ig_opt.add(*ig);
  ig->callback([&] {
    run = [&] {
      std::vector<RainfallRecord> records;
      for (const auto& file : ig_in) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open " + file);
        auto part = read_rainfall_csv(in);
        records.insert(records.end(), part.begin(), part.end());
      }
      const RainfallSeries series = ingest_rainfall(records, ig_primary);
      json cfg{{"input", ig_in}, {"primary", ig_primary}};
      emit(ig_out, "ingest", 0, cfg, [&](std::ostream& o) {
        o << "year,value,imputed\n" << std::setprecision(17);
        for (std::size_t i = 0; i < series.years.size(); ++i) {
          o << series.years[i] << ',' << series.values[i] << ',' << (series.imputed[i] ? 1 : 0) << '\n';
        }
      });
      if (!ig_forecast) return;
      rc.optimizer = ig_opt.config(ig_seed);
      rc.threads = threads;
      const RainfallForecast f = rainfall_forecast(series, rc);
      std::cerr << "alpha=" << f.marginal.alpha << " mu=" << f.marginal.mu << " sigma=" << f.marginal.sigma << '\n';
      std::vector<PredictionRow> rows;
      for (std::size_t s = 0; s < f.prediction.size(); ++s) {
        rows.push_back({s + 1, f.prediction[s], f.envelope_min[s], f.envelope_max[s]});
      }
      json fcfg{{"input", ig_in},         {"primary", ig_primary}, {"n", rc.sample_size},
                {"N", rc.learning_samples}, {"horizon", rc.horizon},  {"holdout", rc.holdout},
                {"gamma", rc.gamma},       {"runs", rc.bootstrap_runs}, {"seed", ig_seed},
                {"optimizer", ig_opt.to_json()}};
      emit(ig_pred, "ingest --forecast", ig_seed, fcfg, [&](std::ostream& o) { write_predictions_csv(o, rows); });
    };
  });

  try {
    auto args = expand_config(argc, argv);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (threads == 0) threads = default_thread_count();
  try {
    run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
