#include "acid/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "acid/numerics.hpp"

namespace acid {

EvaluationGrid EvaluationGrid::affine(double sample_mean, double sample_sd,
                                      std::size_t n) {
  EvaluationGrid g;
  g.points = linspace(-4.0, 3.95, n);
  for (double& x : g.points) x = x * sample_sd + sample_mean;
  return g;
}

EvaluationGrid EvaluationGrid::explicit_points(std::vector<double> points) {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] <= points[i - 1])
      throw std::invalid_argument(
          "EvaluationGrid: explicit points must be strictly increasing");
  return EvaluationGrid{std::move(points)};
}

MetricsReport compute_metrics(const std::vector<double>& truth,
                              const PosteriorSummary& summary) {
  const std::size_t n = truth.size();
  if (n == 0 || summary.mean.size() != n || summary.q025.size() != n ||
      summary.q975.size() != n)
    throw std::invalid_argument("compute_metrics: length mismatch");
  MetricsReport r;
  double rdev = 0.0, rwd = 0.0;
  bool relative_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    bool covered = summary.q025[i] <= truth[i] && truth[i] <= summary.q975[i];
    r.env += covered ? 1.0 : 0.0;
    double abs_dev = std::fabs(summary.mean[i] - truth[i]);
    double width = summary.q975[i] - summary.q025[i];
    r.dev += abs_dev;
    r.awd += width;
    if (truth[i] == 0.0) {
      relative_ok = false;
    } else {
      rdev += abs_dev / std::fabs(truth[i]);
      rwd += width / std::fabs(truth[i]);
    }
  }
  double nd = static_cast<double>(n);
  r.env /= nd;
  r.dev /= nd;
  r.awd /= nd;
  if (relative_ok) {
    r.rdev = rdev / nd;
    r.rwd = rwd / nd;
  }
  return r;
}

double mse(const std::vector<std::pair<double, std::vector<double>>>& test,
           const std::function<double(const std::vector<double>&)>& fhat) {
  if (test.empty()) throw std::invalid_argument("mse: empty test set");
  double sum = 0.0;
  for (const auto& [y, x] : test) {
    double e = y - fhat(x);
    sum += e * e;
  }
  return sum / static_cast<double>(test.size());
}

}  // namespace acid
