#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "acid/resampling.hpp"

namespace acid {

//! Evaluation abscissae. The affine construction follows the simulation
//! convention: 100 points spanning [-4, 3.95] scaled by the sample standard
//! deviation and shifted by the sample mean.
struct EvaluationGrid {
  std::vector<double> points;

  static EvaluationGrid affine(double sample_mean, double sample_sd,
                               std::size_t n = 100);
  static EvaluationGrid explicit_points(std::vector<double> points);
};

struct MetricsReport {
  double env = 0.0;  // fraction of the grid covered by [q025, q975]
  double dev = 0.0;  // mean absolute deviation of the posterior mean
  double awd = 0.0;  // mean credible-band width
  std::optional<double> rdev;
  std::optional<double> rwd;
};

MetricsReport compute_metrics(const std::vector<double>& truth,
                              const PosteriorSummary& summary);

//! Mean squared prediction error over held-out (y, x) pairs.
double mse(const std::vector<std::pair<double, std::vector<double>>>& test,
           const std::function<double(const std::vector<double>&)>& fhat);

}  // namespace acid
