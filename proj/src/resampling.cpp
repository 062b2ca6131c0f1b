#include "acid/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "acid/errors.hpp"
#include "acid/numerics.hpp"

namespace acid {

const char* bandwidth_method_name(BandwidthMethod m) {
  switch (m) {
    case BandwidthMethod::silverman: return "silverman";
    case BandwidthMethod::scott: return "scott";
    case BandwidthMethod::lscv: return "lscv";
  }
  return "?";
}

BandwidthMethod bandwidth_method_from_name(const std::string& name) {
  if (name == "silverman") return BandwidthMethod::silverman;
  if (name == "scott") return BandwidthMethod::scott;
  if (name == "lscv") return BandwidthMethod::lscv;
  throw std::invalid_argument("unknown bandwidth method: " + name);
}

namespace {

// Least-squares CV score for a Gaussian reference kernel:
// int fhat^2 - 2/n sum_i fhat_{-i}(x_i), both terms in closed form.
double lscv_score(const std::vector<double>& data, double h) {
  const std::size_t n = data.size();
  const double nd = static_cast<double>(n);
  double sum_conv = 0.0;  // sum_{i != j} phi(d; 0, 2h^2)
  double sum_kern = 0.0;  // sum_{i != j} phi(d; 0, h^2)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = data[i] - data[j];
      sum_conv += normal_pdf(d / (h * std::sqrt(2.0))) / (h * std::sqrt(2.0));
      sum_kern += normal_pdf(d / h) / h;
    }
  }
  sum_conv *= 2.0;
  sum_kern *= 2.0;
  double diag = nd * normal_pdf(0.0) / (h * std::sqrt(2.0));
  double roughness = (sum_conv + diag) / (nd * nd);
  double loo = sum_kern / (nd * (nd - 1.0));
  return roughness - 2.0 * loo;
}

double spread_or_throw(const std::vector<double>& data) {
  double sd = sample_sd(data);
  double iqr = interquartile_range(data);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = sd;
  if (spread <= 0.0)
    throw data_error("select_bandwidth: degenerate data (zero spread)");
  return spread;
}

}  // namespace

double select_bandwidth(const std::vector<double>& data,
                        BandwidthMethod method) {
  if (data.size() < 3)
    throw data_error("select_bandwidth: need at least 3 points");
  const double n = static_cast<double>(data.size());
  switch (method) {
    case BandwidthMethod::silverman:
      return 0.9 * spread_or_throw(data) * std::pow(n, -0.2);
    case BandwidthMethod::scott: {
      double sd = sample_sd(data);
      if (sd <= 0.0)
        throw data_error("select_bandwidth: degenerate data (zero spread)");
      return 1.06 * sd * std::pow(n, -0.2);
    }
    case BandwidthMethod::lscv: {
      double ref = 1.06 * spread_or_throw(data) * std::pow(n, -0.2);
      double best_h = ref, best_score = lscv_score(data, ref);
      double lo = std::log(ref / 15.0), hi = std::log(ref * 4.0);
      for (int k = 0; k < 50; ++k) {
        double h = std::exp(lo + (hi - lo) * static_cast<double>(k) / 49.0);
        double score = lscv_score(data, h);
        if (score < best_score) {
          best_score = score;
          best_h = h;
        }
      }
      return best_h;
    }
  }
  throw std::invalid_argument("select_bandwidth: unknown method");
}

double select_bandwidth(const std::vector<std::vector<double>>& data,
                        BandwidthMethod method) {
  if (data.empty())
    throw data_error("select_bandwidth: empty data");
  const std::size_t p = data.front().size();
  if (p == 0) throw data_error("select_bandwidth: zero-dimensional data");
  double log_sum = 0.0;
  std::vector<double> coord(data.size());
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < data.size(); ++i) coord[i] = data[i][j];
    log_sum += std::log(select_bandwidth(coord, method));
  }
  return std::exp(log_sum / static_cast<double>(p));
}

double estimate_terminal_bandwidth(const std::vector<std::vector<double>>& data,
                                   std::size_t forward_horizon,
                                   BandwidthMethod method, std::size_t reps,
                                   RandomStream stream) {
  if (reps < 1)
    throw std::invalid_argument("estimate_terminal_bandwidth: reps >= 1");
  if (forward_horizon == 0) return select_bandwidth(data, method);
  double sum = 0.0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    // Sub-stream per repetition, disjoint from replicate streams.
    Rng rng(stream.master_seed,
            stream.stream_id + ((rep + 1) << 32));
    std::vector<std::vector<double>> pool = data;
    pool.reserve(data.size() + forward_horizon);
    for (std::size_t i = 0; i < forward_horizon; ++i)
      pool.push_back(pool[rng.uniform_below(pool.size())]);
    sum += select_bandwidth(pool, method);
  }
  return sum / static_cast<double>(reps);
}

BandwidthSchedule build_schedule(std::size_t n_obs, double h_n,
                                 double h_terminal,
                                 std::size_t forward_horizon, double scale_c) {
  if (!(h_n > 0.0 && h_terminal > 0.0))
    throw std::invalid_argument("build_schedule: bandwidths must be > 0");
  if (forward_horizon == 0)
    throw std::invalid_argument("build_schedule: forward horizon must be >= 1");
  double b2 = std::log(h_n / h_terminal) / static_cast<double>(forward_horizon);
  return BandwidthSchedule::exponential(n_obs, h_n, b2, forward_horizon,
                                        scale_c);
}

Functional Functional::mean() { return Functional{}; }

Functional Functional::quantile(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("Functional: quantile level in (0, 1)");
  Functional f;
  f.kind = Kind::quantile;
  f.q = q;
  return f;
}

Functional Functional::density_grid(std::vector<double> grid) {
  if (grid.empty()) throw std::invalid_argument("Functional: empty grid");
  Functional f;
  f.kind = Kind::density_grid;
  f.grid = std::move(grid);
  return f;
}

Functional Functional::cdf_point(double t) {
  Functional f;
  f.kind = Kind::cdf_point;
  f.t = t;
  return f;
}

Functional Functional::regression_grid(std::vector<double> grid) {
  if (grid.empty()) throw std::invalid_argument("Functional: empty grid");
  Functional f;
  f.kind = Kind::regression_grid;
  f.grid = std::move(grid);
  return f;
}

Functional Functional::conditional_density(std::vector<double> x_query,
                                           std::vector<double> y_grid) {
  if (y_grid.empty()) throw std::invalid_argument("Functional: empty grid");
  Functional f;
  f.kind = Kind::conditional_density;
  f.x_query = std::move(x_query);
  f.grid = std::move(y_grid);
  return f;
}

std::size_t Functional::output_length() const {
  switch (kind) {
    case Kind::mean:
    case Kind::quantile:
    case Kind::cdf_point:
      return 1;
    case Kind::density_grid:
    case Kind::regression_grid:
    case Kind::conditional_density:
      return grid.size();
  }
  return 1;
}

std::vector<double> PosteriorDraws::column(std::size_t index) const {
  std::vector<double> out(replicates);
  for (std::size_t b = 0; b < replicates; ++b) out[b] = at(b, index);
  return out;
}

void PosteriorDraws::to_csv(std::ostream& out) const {
  out << "replicate,point_index,value\n";
  char buf[64];
  for (std::size_t b = 0; b < replicates; ++b) {
    for (std::size_t i = 0; i < row_length; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", at(b, i));
      out << b << ',' << i << ',' << buf << '\n';
    }
  }
}

namespace {

std::vector<double> evaluate_functional(
    const PredictiveScheme& terminal, const Functional& f,
    const std::vector<std::vector<double>>& data,
    const std::vector<double>& synthetic_first_coord) {
  switch (f.kind) {
    case Functional::Kind::mean:
    case Functional::Kind::quantile: {
      if (terminal.dimension() != 1)
        throw std::invalid_argument(
            "mean/quantile functionals require a univariate scheme");
      std::vector<double> pooled;
      pooled.reserve(data.size() + synthetic_first_coord.size());
      for (const auto& row : data) pooled.push_back(row[0]);
      pooled.insert(pooled.end(), synthetic_first_coord.begin(),
                    synthetic_first_coord.end());
      if (f.kind == Functional::Kind::mean) return {mean(pooled)};
      return {quantile_type7(std::move(pooled), f.q)};
    }
    case Functional::Kind::cdf_point:
      return {terminal.cdf(f.t)};
    case Functional::Kind::density_grid: {
      std::vector<double> out(f.grid.size());
      for (std::size_t i = 0; i < f.grid.size(); ++i)
        out[i] = terminal.density_at({f.grid[i]});
      return out;
    }
    case Functional::Kind::regression_grid: {
      std::vector<double> out(f.grid.size());
      for (std::size_t i = 0; i < f.grid.size(); ++i)
        out[i] = terminal.regression_mean({f.grid[i]});
      return out;
    }
    case Functional::Kind::conditional_density: {
      std::vector<double> out(f.grid.size());
      for (std::size_t i = 0; i < f.grid.size(); ++i)
        out[i] = terminal.conditional_density(f.grid[i], f.x_query);
      return out;
    }
  }
  throw std::invalid_argument("unknown functional");
}

}  // namespace

PosteriorDraws predictive_resample(const PredictiveScheme& initial,
                                   const std::vector<std::vector<double>>& data,
                                   const ResampleConfig& config) {
  if (config.replicates == 0 || config.forward_horizon == 0)
    throw std::invalid_argument("predictive_resample: M >= 1 and B >= 1");
  PosteriorDraws draws;
  draws.replicates = config.replicates;
  draws.row_length = config.functional.output_length();
  draws.values.assign(draws.replicates * draws.row_length, 0.0);

  std::vector<std::string> failures(config.replicates);
  auto run_replicate = [&](std::size_t b) {
    try {
      auto scheme = initial.clone();
      Rng rng(config.seed, b);
      std::vector<double> synthetic;
      synthetic.reserve(config.forward_horizon);
      for (std::size_t i = 0; i < config.forward_horizon; ++i) {
        std::vector<double> x = scheme->sample(rng);
        scheme->advance(x);
        synthetic.push_back(x[0]);
      }
      std::vector<double> row = evaluate_functional(
          *scheme, config.functional, data, synthetic);
      std::copy(row.begin(), row.end(),
                draws.values.begin() + b * draws.row_length);
    } catch (const std::exception& e) {
      failures[b] = e.what();
    }
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (std::size_t b = 0; b < config.replicates; ++b) run_replicate(b);
  } else {
    std::size_t t =
        std::min<std::size_t>(threads, config.replicates);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t k = 0; k < t; ++k)
      pool.emplace_back([&, k] {
        for (std::size_t b = k; b < config.replicates; b += t)
          run_replicate(b);
      });
    for (auto& th : pool) th.join();
  }

  for (std::size_t b = 0; b < config.replicates; ++b) {
    if (!failures[b].empty())
      throw numeric_error("replicate " + std::to_string(b) +
                          " failed: " + failures[b]);
  }
  return draws;
}

PosteriorSummary posterior_summary(const PosteriorDraws& draws) {
  if (draws.replicates < 2)
    throw std::invalid_argument("posterior_summary: need B >= 2");
  PosteriorSummary s;
  s.mean.resize(draws.row_length);
  s.q025.resize(draws.row_length);
  s.q975.resize(draws.row_length);
  for (std::size_t i = 0; i < draws.row_length; ++i) {
    std::vector<double> col = draws.column(i);
    s.mean[i] = mean(col);
    std::sort(col.begin(), col.end());
    s.q025[i] = quantile_type7_sorted(col, 0.025);
    s.q975[i] = quantile_type7_sorted(col, 0.975);
  }
  return s;
}

void PosteriorSummary::to_csv(std::ostream& out) const {
  out << "point_index,mean,q025,q975\n";
  char buf[3][64];
  for (std::size_t i = 0; i < mean.size(); ++i) {
    std::snprintf(buf[0], sizeof(buf[0]), "%.17g", mean[i]);
    std::snprintf(buf[1], sizeof(buf[1]), "%.17g", q025[i]);
    std::snprintf(buf[2], sizeof(buf[2]), "%.17g", q975[i]);
    out << i << ',' << buf[0] << ',' << buf[1] << ',' << buf[2] << '\n';
  }
}

}  // namespace acid
