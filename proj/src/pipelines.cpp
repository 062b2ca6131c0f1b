#include "acid/pipelines.hpp"

#include <algorithm>
#include <cmath>

#include "acid/kernel_predictive.hpp"
#include "acid/numerics.hpp"
#include "acid/scheme.hpp"

namespace acid {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Stream ids reserved within a dataset's master seed: replicates occupy
// [0, 2^32); the endpoint estimator starts at 1 and offsets by multiples
// of 2^32; dataset generation sits at 2^33.
constexpr std::uint64_t kDgmStreamId = 1ULL << 33;
constexpr std::uint64_t kEndpointStreamId = 1;

double median_of(std::vector<double> values) {
  return quantile_type7(std::move(values), 0.5);
}

MetricsReport median_report(const std::vector<MetricsReport>& reports) {
  MetricsReport m;
  std::vector<double> env, dev, awd;
  for (const auto& r : reports) {
    env.push_back(r.env);
    dev.push_back(r.dev);
    awd.push_back(r.awd);
  }
  m.env = median_of(env);
  m.dev = median_of(dev);
  m.awd = median_of(awd);
  return m;
}

}  // namespace

DensityRunResult density_pipeline_run(const DensityBenchmarkParams& params,
                                      std::size_t dataset_index) {
  const std::uint64_t dataset_seed = mix_seed(params.seed, dataset_index);
  Rng dgm_rng(dataset_seed, kDgmStreamId);
  MixtureDgm target = dgm_mixture(dgm_rng);

  std::vector<std::vector<double>> data(params.n);
  std::vector<double> flat(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    double x = target.sample(dgm_rng);
    data[i] = {x};
    flat[i] = x;
  }

  EvaluationGrid grid =
      EvaluationGrid::affine(mean(flat), sample_sd(flat), params.grid_points);

  double h_n = select_bandwidth(flat, params.method);
  double h_term = estimate_terminal_bandwidth(
      data, params.forward_horizon, params.method, params.endpoint_reps,
      derive_stream(dataset_seed, kEndpointStreamId));
  BandwidthSchedule schedule = build_schedule(
      params.n, h_n, h_term, params.forward_horizon, params.scale_c);

  KernelMixtureState state(KernelSpec::univariate(params.shape), data,
                           schedule.at(1));
  KernelScheme scheme(std::move(state), schedule);

  ResampleConfig cfg;
  cfg.forward_horizon = params.forward_horizon;
  cfg.replicates = params.replicates;
  cfg.seed = dataset_seed;
  cfg.functional = Functional::density_grid(grid.points);
  cfg.scale_c = params.scale_c;
  cfg.bandwidth_method = params.method;
  cfg.endpoint_reps = params.endpoint_reps;
  cfg.threads = params.threads;

  DensityRunResult out;
  out.grid = grid.points;
  out.truth.resize(grid.points.size());
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    out.truth[i] = target.density(grid.points[i]);
  out.draws = predictive_resample(scheme, data, cfg);
  out.summary = posterior_summary(out.draws);
  return out;
}

BenchmarkResult density_benchmark(const DensityBenchmarkParams& params) {
  BenchmarkResult result;
  for (std::size_t d = 0; d < params.datasets; ++d) {
    DensityRunResult run = density_pipeline_run(params, d);
    result.per_dataset.push_back(compute_metrics(run.truth, run.summary));
  }
  result.median = median_report(result.per_dataset);
  return result;
}

BenchmarkResult regression_benchmark(const RegressionBenchmarkParams& params) {
  BenchmarkResult result;
  for (std::size_t d = 0; d < params.datasets; ++d) {
    const std::uint64_t dataset_seed = mix_seed(params.seed, d);
    Rng dgm_rng(dataset_seed, kDgmStreamId);

    // Training covariates uniform on (0, 5); test covariates on the
    // regular grid [0, 4.95]. The GP is drawn jointly over both designs.
    std::vector<double> design(params.n_train + params.n_test);
    for (std::size_t i = 0; i < params.n_train; ++i)
      design[i] = dgm_rng.uniform(0.0, 5.0);
    std::vector<double> test_grid = linspace(
        0.0, 4.95, params.n_test);
    for (std::size_t i = 0; i < params.n_test; ++i)
      design[params.n_train + i] = test_grid[i];

    GpRegressionDraw gp = dgm_gp_regression(dgm_rng, params.variant, design);

    std::vector<std::vector<double>> train(params.n_train);
    for (std::size_t i = 0; i < params.n_train; ++i) {
      double y = gp.f[i] + gp.sample_noise(dgm_rng);
      train[i] = {y, design[i]};
    }
    std::vector<double> truth(params.n_test);
    std::vector<std::pair<double, std::vector<double>>> test_pairs;
    for (std::size_t i = 0; i < params.n_test; ++i) {
      truth[i] = gp.f[params.n_train + i];
      test_pairs.emplace_back(truth[i] + gp.sample_noise(dgm_rng),
                              std::vector<double>{test_grid[i]});
    }

    double h_n = select_bandwidth(train, params.method);
    double h_term = estimate_terminal_bandwidth(
        train, params.forward_horizon, params.method, params.endpoint_reps,
        derive_stream(dataset_seed, kEndpointStreamId));
    BandwidthSchedule schedule = build_schedule(
        params.n_train, h_n, h_term, params.forward_horizon, params.scale_c);

    KernelMixtureState state(KernelSpec::product(params.shape, 2), train,
                             schedule.at(1));
    KernelScheme scheme(std::move(state), schedule);

    ResampleConfig cfg;
    cfg.forward_horizon = params.forward_horizon;
    cfg.replicates = params.replicates;
    cfg.seed = dataset_seed;
    cfg.functional = Functional::regression_grid(test_grid);
    cfg.scale_c = params.scale_c;
    cfg.bandwidth_method = params.method;
    cfg.endpoint_reps = params.endpoint_reps;
    cfg.threads = params.threads;

    PosteriorDraws draws = predictive_resample(scheme, train, cfg);
    PosteriorSummary summary = posterior_summary(draws);
    result.per_dataset.push_back(compute_metrics(truth, summary));

    // Posterior-mean regression function evaluated on the test grid.
    double err = 0.0;
    for (std::size_t i = 0; i < params.n_test; ++i) {
      double e = test_pairs[i].first - summary.mean[i];
      err += e * e;
    }
    result.per_dataset_mse.push_back(err /
                                     static_cast<double>(params.n_test));
  }
  result.median = median_report(result.per_dataset);
  result.median_mse = median_of(result.per_dataset_mse);
  return result;
}

}  // namespace acid
