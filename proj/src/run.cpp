#include "acid/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "acid/csv.hpp"
#include "acid/diagnostics.hpp"
#include "acid/errors.hpp"
#include "acid/kernel_predictive.hpp"
#include "acid/numerics.hpp"
#include "acid/pipelines.hpp"
#include "acid/resampling.hpp"
#include "acid/scheme.hpp"

namespace acid {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

struct ArtifactWriter {
  fs::path dir;
  std::vector<std::pair<std::string, std::string>> files;  // name, content

  void add(const std::string& name, std::string content) {
    files.emplace_back(name, std::move(content));
  }

  //! Everything lands on disk only after all commands succeeded: temp file
  //! per artifact, then renames, manifest last.
  void commit(const RunConfig& config, std::uint64_t seed) {
    fs::create_directories(dir);
    std::ostringstream manifest;
    char buf[32];
    manifest << "{\n  \"version\": \"" << kVersion << "\",\n";
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64(config.canonical_text())));
    manifest << "  \"config_hash\": \"" << buf << "\",\n";
    manifest << "  \"seed\": " << seed << ",\n  \"artifacts\": [";
    for (std::size_t i = 0; i < files.size(); ++i) {
      const auto& [name, content] = files[i];
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(fnv1a64(content)));
      manifest << (i ? "," : "") << "\n    {\"file\": \"" << name
               << "\", \"hash\": \"" << buf
               << "\", \"bytes\": " << content.size() << '}';
    }
    manifest << "\n  ]\n}\n";
    add("manifest.json", manifest.str());

    for (const auto& [name, content] : files) {
      fs::path tmp = dir / (".tmp." + name);
      {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw data_error("cannot write artifact: " + tmp.string());
        out << content;
      }
      fs::rename(tmp, dir / name);
    }
  }
};

std::vector<std::vector<double>> data_rows(const CsvTable& table) {
  if (table.rows.empty()) throw data_error("data file has no rows");
  return table.rows;
}

StepSchedule step_schedule_from(const RunConfig& config) {
  std::string family = config.get_string("eta.family", "harmonic");
  std::vector<double> params = config.get_list("eta.params", {});
  if (family == "harmonic") return StepSchedule::harmonic();
  if (family == "power") {
    if (params.size() != 2)
      throw config_error("eta.params: power family needs 'a,b'");
    return StepSchedule::power(params[0], params[1]);
  }
  if (family == "constant") {
    if (params.size() != 1)
      throw config_error("eta.params: constant family needs one value");
    return StepSchedule::constant(params[0]);
  }
  if (family == "explicit-list") {
    if (params.empty())
      throw config_error("eta.params: explicit-list needs values");
    return StepSchedule::explicit_list(params);
  }
  throw config_error("unknown eta.family: " + family);
}

ParametricModel model_from(const RunConfig& config) {
  std::string name = config.get_string("model.name", "gaussian-location");
  if (name == "gaussian-location")
    return ParametricModel::gaussian_location(
        config.get_double("model.sigma2", 1.0));
  if (name == "student-t-location")
    return ParametricModel::student_t_location(
        config.get_double("model.tau", 1.0),
        config.get_double("model.nu", 3.0));
  throw config_error("unknown model.name: " + name);
}

struct BuiltScheme {
  std::unique_ptr<PredictiveScheme> scheme;
  std::vector<std::vector<double>> data;
};

BuiltScheme build_scheme(const RunConfig& config, const RunPaths& paths,
                         std::size_t forward_horizon) {
  std::string kind = config.get_string("scheme", "kernel");
  BuiltScheme out;

  if (kind == "kernel" || kind == "dirac") {
    if (paths.data_in.empty())
      throw config_error("scheme '" + kind + "' requires --data");
    out.data = data_rows(read_csv(paths.data_in));
    int p = static_cast<int>(out.data.front().size());
    int config_p = static_cast<int>(config.get_int("kernel.dimension", p));
    if (config_p != p)
      throw data_error("kernel.dimension does not match data columns");
    if (kind == "dirac") {
      KernelMixtureState state(KernelSpec::product(KernelShape::dirac, p),
                               out.data, 0.0);
      out.scheme = std::make_unique<KernelScheme>(std::move(state),
                                                  std::nullopt);
      return out;
    }
    KernelShape shape = kernel_shape_from_name(
        config.get_string("kernel.shape", "gaussian"));
    BandwidthMethod method = bandwidth_method_from_name(
        config.get_string("bandwidth.method", "silverman"));
    double scale_c = config.get_double("bandwidth.scale_c", 1.0);
    std::size_t reps = static_cast<std::size_t>(
        config.get_int("bandwidth.endpoint_reps", 10));
    std::uint64_t seed = config.get_u64("seed", 0);
    double h_n = select_bandwidth(out.data, method);
    double h_term = estimate_terminal_bandwidth(
        out.data, forward_horizon, method, reps,
        derive_stream(mix_seed(seed, 0xBADAULL), 1));
    BandwidthSchedule schedule = build_schedule(
        out.data.size(), h_n, h_term, std::max<std::size_t>(forward_horizon, 1),
        scale_c);
    double laplace_c = config.get_double("kernel.laplace_c", 1.0);
    KernelMixtureState state(KernelSpec::product(shape, p), out.data,
                             schedule.at(1));
    out.scheme = std::make_unique<KernelScheme>(std::move(state), schedule,
                                                laplace_c);
    return out;
  }

  if (kind == "parametric") {
    ParametricState state;
    state.model = model_from(config);
    state.step = step_schedule_from(config);
    state.theta_hat = config.get_double("theta0", 0.0);
    if (config.has("constraints.low") || config.has("constraints.high"))
      state.constraints = std::make_pair(
          config.require_double("constraints.low"),
          config.require_double("constraints.high"));
    if (!paths.data_in.empty()) {
      out.data = data_rows(read_csv(paths.data_in));
      for (const auto& row : out.data) {
        state.theta_hat =
            natural_gradient_step(
                ParametricState{state.model, state.theta_hat, state.step,
                                state.n, state.constraints},
                row[0])
                .theta_hat;
        ++state.n;
      }
    }
    out.scheme = std::make_unique<ParametricScheme>(std::move(state));
    return out;
  }

  if (kind == "gaussian-mean") {
    GaussianMeanState state;
    state.theta_hat = config.get_list("gauss.theta0", {0.0});
    state.sigma_diag =
        config.get_list("gauss.sigma2",
                        std::vector<double>(state.theta_hat.size(), 1.0));
    if (state.sigma_diag.size() != state.theta_hat.size())
      throw config_error("gauss.sigma2 length must match gauss.theta0");
    state.step = step_schedule_from(config);
    if (!paths.data_in.empty()) {
      out.data = data_rows(read_csv(paths.data_in));
      for (const auto& row : out.data) state = gaussian_mean_step(state, row);
    }
    out.scheme = std::make_unique<GaussianMeanScheme>(std::move(state));
    return out;
  }

  throw config_error("unknown scheme: " + kind);
}

Functional functional_from(const RunConfig& config) {
  std::string kind = config.get_string("resample.functional", "mean");
  if (kind == "mean") return Functional::mean();
  if (kind == "quantile")
    return Functional::quantile(config.get_double("resample.q", 0.5));
  if (kind == "cdf-point")
    return Functional::cdf_point(config.require_double("resample.t"));

  std::vector<double> grid;
  if (config.get_string("grid.construction", "explicit") == "explicit" &&
      config.has("grid.explicit")) {
    grid = config.require_list("grid.explicit");
  } else {
    double lo = config.get_double("grid.min", -4.0);
    double hi = config.get_double("grid.max", 4.0);
    std::size_t n = static_cast<std::size_t>(config.get_int("grid.points", 100));
    grid = linspace(lo, hi, n);
  }
  if (kind == "density-grid") return Functional::density_grid(grid);
  if (kind == "regression-grid") return Functional::regression_grid(grid);
  if (kind == "conditional-density")
    return Functional::conditional_density(config.require_list("resample.x"),
                                           grid);
  throw config_error("unknown resample.functional: " + kind);
}

int run_resample(const RunConfig& config, const RunPaths& paths) {
  ResampleConfig cfg;
  cfg.forward_horizon =
      static_cast<std::size_t>(config.get_int("resample.m", 100));
  cfg.replicates = static_cast<std::size_t>(config.get_int("resample.b", 100));
  cfg.seed = config.get_u64("seed", 0);
  cfg.functional = functional_from(config);
  cfg.threads = static_cast<int>(config.get_int("threads", 1));

  BuiltScheme built = build_scheme(config, paths, cfg.forward_horizon);
  PosteriorDraws draws = predictive_resample(*built.scheme, built.data, cfg);
  PosteriorSummary summary = posterior_summary(draws);

  ArtifactWriter writer{paths.out_dir, {}};
  {
    std::ostringstream out;
    draws.to_csv(out);
    writer.add("draws.csv", out.str());
  }
  {
    std::ostringstream out;
    summary.to_csv(out);
    writer.add("summary.csv", out.str());
  }
  writer.commit(config, cfg.seed);
  return 0;
}

int run_diagnose(const RunConfig& config, const RunPaths& paths) {
  std::string check = config.get_string("diagnose.check", "discrepancy");
  std::uint64_t seed = config.get_u64("seed", 0);
  DiagnosticsReport report;

  if (check == "discrepancy") {
    std::size_t k =
        static_cast<std::size_t>(config.get_int("diagnose.k", 10000));
    int threads = static_cast<int>(config.get_int("threads", 1));
    std::size_t horizon =
        static_cast<std::size_t>(config.get_int("resample.m", 100));
    BuiltScheme built = build_scheme(config, paths, horizon);
    std::size_t n_sets =
        static_cast<std::size_t>(config.get_int("diagnose.sets", 20));
    auto sets = default_set_family(*built.scheme, n_sets, n_sets / 2);
    auto result = acid_discrepancy_mc(*built.scheme, sets, k,
                                      derive_stream(seed, 0), threads);
    report.add_discrepancy("discrepancy", result, built.scheme->count());
  } else if (check == "mstep") {
    std::size_t horizon =
        static_cast<std::size_t>(config.get_int("resample.m", 1000));
    BuiltScheme built = build_scheme(config, paths, horizon);
    std::vector<double> raw = config.get_list("diagnose.checkpoints",
                                              {500.0, 1000.0});
    std::vector<std::size_t> checkpoints;
    for (double c : raw)
      checkpoints.push_back(static_cast<std::size_t>(c));
    auto result = mstep_convergence_diag(
        *built.scheme, checkpoints, derive_stream(seed, 0),
        config.get_double("diagnose.threshold", 0.05));
    report.add_mstep("mstep", result);
  } else if (check == "bandwidth-condition") {
    std::size_t horizon =
        static_cast<std::size_t>(config.get_int("diagnose.horizon", 10000));
    double eps = config.get_double("diagnose.epsilon", 1.0);
    // Classify the schedule the resample command would use on this data.
    BuiltScheme built = build_scheme(config, paths, horizon);
    auto* kernel = dynamic_cast<KernelScheme*>(built.scheme.get());
    if (kernel == nullptr || kernel->is_dirac())
      throw config_error(
          "bandwidth-condition diagnostics need a non-dirac kernel scheme");
    double h1 = kernel->state().atoms().front().bandwidth;
    double b2 = std::log(h1 / kernel->next_bandwidth());
    BandwidthSchedule schedule = BandwidthSchedule::exponential(
        0, h1, b2 > 0.0 ? b2 : 1e-6, horizon + 1);
    auto result = bandwidth_condition_check(schedule, eps, horizon);
    report.add_bandwidth_condition("bandwidth-condition", result);
  } else {
    throw config_error("unknown diagnose.check: " + check);
  }

  ArtifactWriter writer{paths.out_dir, {}};
  writer.add("diagnostics.jsonl", report.to_jsonl());
  writer.commit(config, seed);
  return 0;
}

int run_simulate(const RunConfig& config, const RunPaths& paths) {
  std::string kind = config.get_string("simulate.kind", "mixture");
  std::size_t datasets =
      static_cast<std::size_t>(config.get_int("simulate.datasets", 1));
  std::size_t n = static_cast<std::size_t>(config.get_int("simulate.n", 200));
  std::uint64_t seed = config.get_u64("seed", 0);
  ArtifactWriter writer{paths.out_dir, {}};

  for (std::size_t d = 0; d < datasets; ++d) {
    Rng rng(mix_seed(seed, d), 1ULL << 33);
    std::string tag = "dataset_" + std::to_string(d);
    if (kind == "mixture") {
      MixtureDgm dgm = dgm_mixture(rng);
      std::vector<std::vector<double>> rows(n);
      for (auto& row : rows) row = {dgm.sample(rng)};
      writer.add(tag + ".csv", format_csv({"x1"}, rows));
      writer.add(tag + ".json", dgm.to_json() + "\n");
    } else if (kind == "gp-regression") {
      GpVariant variant = gp_variant_from_name(
          config.get_string("simulate.variant", "dgm1"));
      std::size_t n_test = static_cast<std::size_t>(
          config.get_int("simulate.test_points", 100));
      std::vector<double> design(n + n_test);
      for (std::size_t i = 0; i < n; ++i) design[i] = rng.uniform(0.0, 5.0);
      std::vector<double> grid = linspace(0.0, 4.95, n_test);
      for (std::size_t i = 0; i < n_test; ++i) design[n + i] = grid[i];
      GpRegressionDraw gp = dgm_gp_regression(rng, variant, design);
      std::vector<std::vector<double>> train(n), test(n_test);
      for (std::size_t i = 0; i < n; ++i)
        train[i] = {gp.f[i] + gp.sample_noise(rng), design[i]};
      for (std::size_t i = 0; i < n_test; ++i)
        test[i] = {gp.f[n + i] + gp.sample_noise(rng), grid[i], gp.f[n + i]};
      writer.add(tag + "_train.csv", format_csv({"y", "x1"}, train));
      writer.add(tag + "_test.csv", format_csv({"y", "x1", "f"}, test));
      writer.add(tag + ".json", gp.to_json() + "\n");
    } else {
      throw config_error("unknown simulate.kind: " + kind);
    }
  }
  writer.commit(config, seed);
  return 0;
}

int run_benchmark(const RunConfig& config, const RunPaths& paths) {
  std::string table = config.get_string("benchmark.table", "density");
  ArtifactWriter writer{paths.out_dir, {}};
  std::uint64_t seed = config.get_u64("seed", 1);
  int threads = static_cast<int>(config.get_int("threads", 1));

  std::vector<std::vector<double>> rows;
  if (table == "density") {
    DensityBenchmarkParams params;
    params.datasets = static_cast<std::size_t>(
        config.get_int("benchmark.datasets", 20));
    params.n = static_cast<std::size_t>(config.get_int("benchmark.n", 200));
    params.shape = kernel_shape_from_name(
        config.get_string("kernel.shape", "gaussian"));
    params.method = bandwidth_method_from_name(
        config.get_string("bandwidth.method", "scott"));
    params.forward_horizon =
        static_cast<std::size_t>(config.get_int("resample.m", 1000));
    params.replicates =
        static_cast<std::size_t>(config.get_int("resample.b", 200));
    params.scale_c = config.get_double("bandwidth.scale_c", 1.0);
    params.seed = seed;
    params.threads = threads;
    BenchmarkResult result = density_benchmark(params);
    for (std::size_t d = 0; d < result.per_dataset.size(); ++d) {
      const auto& m = result.per_dataset[d];
      rows.push_back({static_cast<double>(d), m.env, m.dev, m.awd});
    }
    rows.push_back({-1.0, result.median.env, result.median.dev,
                    result.median.awd});
    writer.add("metrics.csv",
               format_csv({"dataset", "env", "dev", "awd"}, rows));
  } else if (table == "regression") {
    RegressionBenchmarkParams params;
    params.datasets = static_cast<std::size_t>(
        config.get_int("benchmark.datasets", 10));
    params.n_train =
        static_cast<std::size_t>(config.get_int("benchmark.n", 200));
    params.n_test =
        static_cast<std::size_t>(config.get_int("benchmark.n_test", 100));
    params.shape = kernel_shape_from_name(
        config.get_string("kernel.shape", "laplace"));
    params.method = bandwidth_method_from_name(
        config.get_string("bandwidth.method", "lscv"));
    params.forward_horizon =
        static_cast<std::size_t>(config.get_int("resample.m", 500));
    params.replicates =
        static_cast<std::size_t>(config.get_int("resample.b", 100));
    params.seed = seed;
    params.threads = threads;
    BenchmarkResult result = regression_benchmark(params);
    for (std::size_t d = 0; d < result.per_dataset.size(); ++d) {
      const auto& m = result.per_dataset[d];
      rows.push_back({static_cast<double>(d), m.env, m.dev, m.awd,
                      result.per_dataset_mse[d]});
    }
    rows.push_back({-1.0, result.median.env, result.median.dev,
                    result.median.awd, result.median_mse});
    writer.add("metrics.csv",
               format_csv({"dataset", "env", "dev", "awd", "mse"}, rows));
  } else {
    throw config_error("unknown benchmark.table: " + table);
  }
  writer.commit(config, seed);
  return 0;
}

int run_bandwidth(const RunConfig& config, const RunPaths& paths) {
  if (paths.data_in.empty())
    throw config_error("bandwidth command requires --data");
  auto data = data_rows(read_csv(paths.data_in));
  BandwidthMethod method = bandwidth_method_from_name(
      config.get_string("bandwidth.method", "silverman"));
  double scale_c = config.get_double("bandwidth.scale_c", 1.0);
  std::size_t m =
      static_cast<std::size_t>(config.get_int("resample.m", 0));
  std::uint64_t seed = config.get_u64("seed", 0);

  double h_n = select_bandwidth(data, method);
  std::vector<std::vector<double>> rows;
  if (m == 0) {
    rows.push_back({static_cast<double>(data.size()), scale_c * h_n});
  } else {
    std::size_t reps = static_cast<std::size_t>(
        config.get_int("bandwidth.endpoint_reps", 10));
    double h_term = estimate_terminal_bandwidth(
        data, m, method, reps, derive_stream(mix_seed(seed, 0xBADAULL), 1));
    BandwidthSchedule schedule =
        build_schedule(data.size(), h_n, h_term, m, scale_c);
    for (std::size_t i = 1; i <= schedule.total_count(); ++i)
      rows.push_back({static_cast<double>(i), schedule.at(i)});
  }
  ArtifactWriter writer{paths.out_dir, {}};
  writer.add("bandwidth.csv", format_csv({"index", "h"}, rows));
  writer.commit(config, seed);
  return 0;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config,
                const RunPaths& paths, std::ostream& err) {
  try {
    config.validate_keys(command);
    if (paths.out_dir.empty()) throw config_error("missing --out directory");
    if (command == "resample") return run_resample(config, paths);
    if (command == "diagnose") return run_diagnose(config, paths);
    if (command == "simulate") return run_simulate(config, paths);
    if (command == "benchmark") return run_benchmark(config, paths);
    if (command == "bandwidth") return run_bandwidth(config, paths);
    throw config_error("unknown command: " + command);
  } catch (const config_error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const data_error& e) {
    err << "data error: " << e.what() << '\n';
    return 3;
  } catch (const numeric_error& e) {
    err << "numeric error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace acid
