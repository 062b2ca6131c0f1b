#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "acid/scheme.hpp"
#include "acid/schedules.hpp"

namespace acid {

enum class BandwidthMethod { silverman, scott, lscv };
const char* bandwidth_method_name(BandwidthMethod m);
BandwidthMethod bandwidth_method_from_name(const std::string& name);

//! Bandwidth selection map g(x_{1:n}): Silverman and Scott reference rules
//! plus least-squares cross-validation on a 50-point log-spaced grid.
double select_bandwidth(const std::vector<double>& data, BandwidthMethod method);

//! Multivariate variant: per-coordinate univariate selection, combined into
//! the shared scalar bandwidth as the geometric mean.
double select_bandwidth(const std::vector<std::vector<double>>& data,
                        BandwidthMethod method);

//! Bandwidth the selection map would produce at sample size n + M, averaged
//! over Bayesian-bootstrap extensions of the sample.
double estimate_terminal_bandwidth(const std::vector<std::vector<double>>& data,
                                   std::size_t forward_horizon,
                                   BandwidthMethod method, std::size_t reps,
                                   RandomStream stream);

//! Exponential bandwidth schedule interpolating h_n down to h_terminal over
//! M forward steps, everything scaled by scale_c.
BandwidthSchedule build_schedule(std::size_t n_obs, double h_n,
                                 double h_terminal, std::size_t forward_horizon,
                                 double scale_c);

struct Functional {
  enum class Kind {
    mean,
    quantile,
    density_grid,
    cdf_point,
    regression_grid,
    conditional_density
  };
  Kind kind = Kind::mean;
  double q = 0.5;               // quantile level
  double t = 0.0;               // cdf evaluation point
  std::vector<double> grid;     // evaluation grid (univariate)
  std::vector<double> x_query;  // conditional-density query point

  static Functional mean();
  static Functional quantile(double q);
  static Functional density_grid(std::vector<double> grid);
  static Functional cdf_point(double t);
  static Functional regression_grid(std::vector<double> grid);
  static Functional conditional_density(std::vector<double> x_query,
                                        std::vector<double> y_grid);
  std::size_t output_length() const;
};

struct ResampleConfig {
  std::size_t forward_horizon = 100;  // M
  std::size_t replicates = 100;       // B
  std::uint64_t seed = 0;
  Functional functional;
  double scale_c = 1.0;
  BandwidthMethod bandwidth_method = BandwidthMethod::silverman;
  std::size_t endpoint_reps = 10;
  int threads = 1;
};

//! B rows of estimator outputs theta_hat^(b)_{n+M}; grid functionals have
//! one column per grid point.
struct PosteriorDraws {
  std::size_t replicates = 0;
  std::size_t row_length = 0;
  std::vector<double> values;  // row-major, replicates x row_length

  double at(std::size_t replicate, std::size_t index) const {
    return values[replicate * row_length + index];
  }
  std::vector<double> column(std::size_t index) const;
  void to_csv(std::ostream& out) const;
};

//! Predictive resampling: per replicate b, clone the scheme, draw the
//! forward path X_{n+1:n+M} from stream (seed, b) with sample-then-update,
//! and evaluate the functional. Scalar functionals (mean, quantile) read
//! the pooled sample x_{1:n+M}; the rest read the terminal predictive
//! state. Output is identical for any thread count.
PosteriorDraws predictive_resample(const PredictiveScheme& initial,
                                   const std::vector<std::vector<double>>& data,
                                   const ResampleConfig& config);

struct PosteriorSummary {
  std::vector<double> mean;
  std::vector<double> q025;
  std::vector<double> q975;

  void to_csv(std::ostream& out) const;
};

//! Pointwise mean and empirical 2.5% / 97.5% quantiles (type-7) across
//! replicates.
PosteriorSummary posterior_summary(const PosteriorDraws& draws);

}  // namespace acid
