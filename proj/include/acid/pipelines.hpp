#pragma once

#include <cstdint>
#include <vector>

#include "acid/dgm.hpp"
#include "acid/kernels.hpp"
#include "acid/metrics.hpp"
#include "acid/resampling.hpp"

namespace acid {

//! Deterministic per-task master seed (splitmix-style mixing), so pipeline
//! stages and datasets never share generator keys.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

//! Density-estimation study: random mixture targets, kernel predictive
//! resampling, env/dev/awd against the true density on the affine grid.
struct DensityBenchmarkParams {
  std::size_t datasets = 20;
  std::size_t n = 200;
  KernelShape shape = KernelShape::gaussian;
  BandwidthMethod method = BandwidthMethod::scott;
  std::size_t forward_horizon = 1000;  // M
  std::size_t replicates = 200;        // B
  std::uint64_t seed = 1;
  double scale_c = 1.0;
  std::size_t endpoint_reps = 10;
  std::size_t grid_points = 100;
  int threads = 1;
};

struct BenchmarkResult {
  std::vector<MetricsReport> per_dataset;
  std::vector<double> per_dataset_mse;  // regression study only
  MetricsReport median;
  double median_mse = 0.0;
};

BenchmarkResult density_benchmark(const DensityBenchmarkParams& params);

//! Regression study: GP targets, joint (y, x) kernel predictive, metrics on
//! the test grid plus test MSE of the posterior-mean regression function.
struct RegressionBenchmarkParams {
  std::size_t datasets = 10;
  std::size_t n_train = 200;
  std::size_t n_test = 100;
  GpVariant variant = GpVariant::dgm1;
  KernelShape shape = KernelShape::laplace;
  BandwidthMethod method = BandwidthMethod::lscv;
  std::size_t forward_horizon = 500;  // M
  std::size_t replicates = 100;       // B
  std::uint64_t seed = 1;
  double scale_c = 1.0;
  std::size_t endpoint_reps = 10;
  int threads = 1;
};

BenchmarkResult regression_benchmark(const RegressionBenchmarkParams& params);

//! One dataset of the density study resampled end to end; exposed so the
//! CLI and tests share the exact pipeline.
struct DensityRunResult {
  std::vector<double> grid;
  std::vector<double> truth;
  PosteriorDraws draws;
  PosteriorSummary summary;
};

DensityRunResult density_pipeline_run(const DensityBenchmarkParams& params,
                                      std::size_t dataset_index);

}  // namespace acid
