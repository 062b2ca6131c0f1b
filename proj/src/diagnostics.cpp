#include "acid/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "acid/errors.hpp"
#include "acid/numerics.hpp"

namespace acid {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

double xi_kernel(const BandwidthSchedule& schedule, std::size_t n,
                 const AcidConstants& constants) {
  if (n == 0) return 0.0;
  if (n + 1 > schedule.total_count())
    throw std::out_of_range("xi_kernel: schedule does not cover index n+1");
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i)
    sum += std::pow(schedule.ratio(n + 1, i), constants.epsilon);
  return constants.c * sum /
         (static_cast<double>(n) * static_cast<double>(n + 1));
}

XiSequence XiSequence::from_values(std::vector<double> values, Source source,
                                   Analytic analytic) {
  XiSequence xi;
  for (double v : values)
    if (v < 0.0)
      throw std::invalid_argument("XiSequence: values must be >= 0");
  xi.values = std::move(values);
  xi.partial_sums.resize(xi.values.size());
  double run = 0.0;
  for (std::size_t i = 0; i < xi.values.size(); ++i) {
    run += xi.values[i];
    xi.partial_sums[i] = run;
  }
  xi.source = source;
  xi.analytic = analytic;
  return xi;
}

XiSequence XiSequence::for_kernel(const BandwidthSchedule& schedule,
                                  const AcidConstants& constants,
                                  std::size_t n_max) {
  std::vector<double> values;
  values.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
    values.push_back(xi_kernel(schedule, n, constants));
  Analytic analytic = Analytic::unknown;
  switch (schedule.family()) {
    case BandwidthFamily::exponential:
      // xi_n <= C r/((1-r) n (n+1)) for r = e^{-eps b2} < 1.
      analytic = schedule.decay_b2() > 0.0 ? Analytic::summable
                                           : Analytic::divergent;
      break;
    case BandwidthFamily::polynomial:
      // xi_n ~ C/((eps b + 1)(n+1)): harmonic tail.
      analytic = Analytic::divergent;
      break;
    case BandwidthFamily::explicit_list:
      analytic = Analytic::unknown;
      break;
  }
  return from_values(std::move(values), Source::kernel, analytic);
}

XiSequence XiSequence::for_parametric(const ParametricModel& model,
                                      const StepSchedule& step,
                                      std::size_t n_max, bool constrained,
                                      double constraint_lo,
                                      double constraint_hi) {
  ParametricState state;
  state.model = model;
  state.step = step;
  if (constrained)
    state.constraints = std::make_pair(constraint_lo, constraint_hi);
  std::vector<double> values;
  values.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    state.n = n;
    // Fisher information is constant in theta for the implemented models,
    // so the sequence is deterministic.
    values.push_back(xi_parametric(state));
  }
  Analytic analytic;
  switch (step.family()) {
    case StepFamily::harmonic: analytic = Analytic::summable; break;
    case StepFamily::power:
      analytic = step.square_summable() ? Analytic::summable
                                        : Analytic::divergent;
      break;
    case StepFamily::constant:
      analytic = model.curvature_constant() == 0.0 ? Analytic::summable
                                                   : Analytic::divergent;
      break;
    default: analytic = Analytic::unknown; break;
  }
  return from_values(std::move(values),
                     constrained ? Source::parametric_constrained
                                 : Source::parametric_unconstrained,
                     analytic);
}

XiSequence XiSequence::for_gaussian_mean(const StepSchedule& step,
                                         int dimension, std::size_t n_max) {
  std::vector<double> values;
  values.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    double eta = step.at(n + 1);
    values.push_back(1.5 * static_cast<double>(dimension) * eta * eta);
  }
  Analytic analytic;
  switch (step.family()) {
    case StepFamily::harmonic: analytic = Analytic::summable; break;
    case StepFamily::power:
      analytic = step.square_summable() ? Analytic::summable
                                        : Analytic::divergent;
      break;
    case StepFamily::constant: analytic = Analytic::divergent; break;
    default: analytic = Analytic::unknown; break;
  }
  return from_values(std::move(values), Source::gaussian_mean, analytic);
}

SummabilityResult summability_check(const XiSequence& xi,
                                    std::size_t horizon) {
  if (horizon < 100)
    throw std::invalid_argument("summability_check: horizon must be >= 100");
  if (xi.values.size() < horizon)
    throw std::invalid_argument("summability_check: sequence shorter than horizon");
  SummabilityResult out;
  out.partial_sum = xi.partial_sums[horizon - 1];

  // Tail-ratio evidence: least squares of log xi_n on log n over the last
  // decade of indices, skipping exact zeros.
  std::size_t lo = horizon / 10;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t n = lo; n < horizon; ++n) {
    if (xi.values[n] <= 0.0) continue;
    double x = std::log(static_cast<double>(n));
    double y = std::log(xi.values[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0.0)
    out.tail_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  switch (xi.analytic) {
    case XiSequence::Analytic::summable: out.verdict = Verdict::PASS; break;
    case XiSequence::Analytic::divergent: out.verdict = Verdict::FAIL; break;
    case XiSequence::Analytic::unknown:
      out.verdict = Verdict::INCONCLUSIVE;
      break;
  }
  return out;
}

BandwidthConditionResult bandwidth_condition_check(
    const BandwidthSchedule& schedule, double epsilon, std::size_t horizon) {
  if (horizon < 1000)
    throw std::invalid_argument(
        "bandwidth_condition_check: horizon must be >= 1e3");
  if (horizon + 1 > schedule.total_count())
    throw std::out_of_range(
        "bandwidth_condition_check: schedule shorter than horizon + 1");
  BandwidthConditionResult out;

  // Log-spaced evaluation grid up to the horizon.
  std::vector<std::size_t> grid;
  double x = 10.0;
  while (x < static_cast<double>(horizon)) {
    grid.push_back(static_cast<std::size_t>(x));
    x *= 1.25;
  }
  grid.push_back(horizon);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (std::size_t n : grid) {
    double sum = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      sum += std::pow(schedule.ratio(n + 1, i), epsilon);
    out.n_grid.push_back(n);
    out.c_values.push_back(sum / static_cast<double>(n + 1));
  }

  switch (schedule.family()) {
    case BandwidthFamily::exponential:
      out.verdict =
          schedule.decay_b2() > 0.0 ? Verdict::PASS : Verdict::FAIL;
      break;
    case BandwidthFamily::polynomial:
      out.verdict = Verdict::FAIL;
      break;
    case BandwidthFamily::explicit_list: {
      bool decreasing = true;
      for (std::size_t k = 1; k < out.c_values.size(); ++k) {
        double prev = out.c_values[k - 1] *
                      std::log(static_cast<double>(out.n_grid[k - 1]));
        double cur =
            out.c_values[k] * std::log(static_cast<double>(out.n_grid[k]));
        if (cur > prev) decreasing = false;
      }
      double final_cl = out.c_values.back() *
                        std::log(static_cast<double>(out.n_grid.back()));
      out.verdict = (decreasing && final_cl < 0.01) ? Verdict::PASS
                                                    : Verdict::FAIL;
      break;
    }
  }
  return out;
}

namespace {

template <typename Work>
void parallel_for(std::size_t count, int threads, Work&& work) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::size_t t = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t k = 0; k < t; ++k) {
    pool.emplace_back([&, k] {
      for (std::size_t i = k; i < count; i += t) work(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

DiscrepancyResult acid_discrepancy_mc(const PredictiveScheme& scheme,
                                      const std::vector<Box>& sets,
                                      std::size_t inner_draws,
                                      RandomStream stream, int threads) {
  if (inner_draws < 1000)
    throw std::invalid_argument("acid_discrepancy_mc: need K >= 1e3");
  DiscrepancyResult out;
  out.xi_n = scheme.xi();
  out.rows.resize(sets.size());

  if (scheme.is_dirac()) {
    // Empirical measure: E(alpha_{n+1}(A)|G_n) - alpha_n(A) telescopes to
    // (alpha_n(A) - alpha_n(A))/(n+1), which is exactly zero.
    for (std::size_t s = 0; s < sets.size(); ++s)
      out.rows[s] = {s, 0.0, 0.0};
    out.verdict = Verdict::PASS;
    return out;
  }

  // Draws are generated once, sequentially, so results do not depend on
  // the thread count.
  Rng rng(stream);
  std::vector<std::vector<double>> draws(inner_draws);
  for (auto& d : draws) d = scheme.sample(rng);

  const double n_plus_1 = static_cast<double>(scheme.count() + 1);
  const bool linear = scheme.linear_update();

  std::vector<std::unique_ptr<PredictiveScheme>> updated;
  if (!linear) {
    updated.resize(inner_draws);
    parallel_for(inner_draws, threads, [&](std::size_t k) {
      auto next = scheme.clone();
      next->advance(draws[k]);
      updated[k] = std::move(next);
    });
  }

  parallel_for(sets.size(), threads, [&](std::size_t s) {
    double base = scheme.measure(sets[s]);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < inner_draws; ++k) {
      double v = linear ? scheme.next_atom_measure(sets[s], draws[k])
                        : updated[k]->measure(sets[s]);
      s1 += v;
      s2 += v * v;
    }
    double kd = static_cast<double>(inner_draws);
    double m = s1 / kd;
    double var = std::max(0.0, s2 / kd - m * m);
    double est, se;
    if (linear) {
      est = (m - base) / n_plus_1;
      se = std::sqrt(var / kd) / n_plus_1;
    } else {
      est = m - base;
      se = std::sqrt(var / kd);
    }
    out.rows[s] = {s, est, se};
  });

  bool violated = false;
  double max_se = 0.0;
  for (const auto& row : out.rows) {
    max_se = std::max(max_se, row.se);
    if (std::fabs(row.estimate) > out.xi_n + 3.0 * row.se) violated = true;
  }
  if (!violated)
    out.verdict = Verdict::PASS;
  else
    out.verdict =
        out.xi_n <= 3.0 * max_se ? Verdict::INCONCLUSIVE : Verdict::FAIL;
  return out;
}

MstepResult mstep_convergence_diag(const PredictiveScheme& scheme,
                                   const std::vector<std::size_t>& checkpoints,
                                   RandomStream stream, double threshold,
                                   std::size_t grid_points) {
  if (scheme.dimension() != 1)
    throw std::invalid_argument(
        "mstep_convergence_diag: univariate schemes only");
  if (checkpoints.size() < 2)
    throw std::invalid_argument(
        "mstep_convergence_diag: need at least two checkpoints");
  for (std::size_t k = 1; k < checkpoints.size(); ++k)
    if (checkpoints[k] <= checkpoints[k - 1])
      throw std::invalid_argument(
          "mstep_convergence_diag: checkpoints must increase");

  MstepResult out;
  out.checkpoints = checkpoints;
  out.threshold = threshold;

  // Fixed grid spanning the initial predictive, widened for forward drift.
  auto quantile_of = [&](double p) {
    double lo = -1.0, hi = 1.0;
    while (scheme.cdf(lo) > p) lo *= 2.0;
    while (scheme.cdf(hi) < p) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (scheme.cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double q_lo = quantile_of(0.001), q_hi = quantile_of(0.999);
  double pad = 0.5 * (q_hi - q_lo) + 1.0;
  std::vector<double> grid = linspace(q_lo - pad, q_hi + pad, grid_points);

  auto path = scheme.clone();
  Rng rng(stream);
  std::size_t step = 0;
  std::vector<double> prev;
  for (std::size_t checkpoint : checkpoints) {
    while (step < checkpoint) {
      path->advance(path->sample(rng));
      ++step;
    }
    std::vector<double> cur(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) cur[g] = path->cdf(grid[g]);
    if (!prev.empty()) {
      double d = 0.0;
      for (std::size_t g = 0; g < grid.size(); ++g)
        d = std::max(d, std::fabs(cur[g] - prev[g]));
      out.distances.push_back(d);
    }
    prev = std::move(cur);
  }

  bool below = out.distances.back() < threshold;
  bool shrinking = out.distances.size() < 2 ||
                   out.distances.back() <= out.distances.front();
  out.verdict = below && shrinking ? Verdict::PASS : Verdict::FAIL;
  return out;
}

std::vector<Box> default_set_family(const PredictiveScheme& scheme,
                                    std::size_t half_lines,
                                    std::size_t intervals) {
  std::vector<Box> sets;
  const int p = scheme.dimension();
  auto quantile_of = [&](double prob, int coord) {
    // Bisection on the marginal CDF (projection box for p > 1).
    auto marginal_cdf = [&](double t) {
      if (p == 1) return scheme.cdf(t);
      Box b;
      b.lo.assign(p, -std::numeric_limits<double>::infinity());
      b.hi.assign(p, std::numeric_limits<double>::infinity());
      b.hi[coord] = t;
      return scheme.measure(b);
    };
    double lo = -1.0, hi = 1.0;
    while (marginal_cdf(lo) > prob) lo *= 2.0;
    while (marginal_cdf(hi) < prob) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (marginal_cdf(mid) < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  if (p == 1) {
    for (std::size_t k = 1; k <= half_lines; ++k) {
      double prob = static_cast<double>(k) /
                    static_cast<double>(half_lines + 1);
      sets.push_back(Box::half_line(quantile_of(prob, 0)));
    }
    for (std::size_t k = 1; k <= intervals; ++k) {
      double w = 0.45 * static_cast<double>(k) /
                 static_cast<double>(intervals);
      sets.push_back(Box::interval(quantile_of(0.5 - w, 0),
                                   quantile_of(0.5 + w, 0)));
    }
    return sets;
  }

  // p > 1: axis-aligned boxes from per-coordinate quantile pairs.
  std::size_t boxes = half_lines;
  for (std::size_t k = 1; k <= boxes; ++k) {
    double w = 0.48 * static_cast<double>(k) / static_cast<double>(boxes);
    Box b;
    b.lo.resize(p);
    b.hi.resize(p);
    for (int j = 0; j < p; ++j) {
      b.lo[j] = quantile_of(0.5 - w, j);
      b.hi[j] = quantile_of(0.5 + w, j);
    }
    sets.push_back(std::move(b));
  }
  return sets;
}

void DiagnosticsReport::add_discrepancy(const std::string& check,
                                        const DiscrepancyResult& r,
                                        std::size_t n) {
  verdicts[check] = r.verdict;
  for (const auto& row : r.rows) {
    Row out;
    out.check = check;
    out.verdict = r.verdict;
    out.numbers["n"] = static_cast<double>(n);
    out.numbers["set_id"] = static_cast<double>(row.set_id);
    out.numbers["estimate"] = row.estimate;
    out.numbers["se"] = row.se;
    out.numbers["xi_n"] = r.xi_n;
    rows.push_back(std::move(out));
  }
}

void DiagnosticsReport::add_summability(const std::string& check,
                                        const SummabilityResult& r) {
  verdicts[check] = r.verdict;
  Row out;
  out.check = check;
  out.verdict = r.verdict;
  out.numbers["tail_slope"] = r.tail_slope;
  out.numbers["partial_sum"] = r.partial_sum;
  rows.push_back(std::move(out));
}

void DiagnosticsReport::add_bandwidth_condition(
    const std::string& check, const BandwidthConditionResult& r) {
  verdicts[check] = r.verdict;
  for (std::size_t k = 0; k < r.n_grid.size(); ++k) {
    Row out;
    out.check = check;
    out.verdict = r.verdict;
    out.numbers["n"] = static_cast<double>(r.n_grid[k]);
    out.numbers["c_n"] = r.c_values[k];
    out.numbers["c_n_log_n"] =
        r.c_values[k] * std::log(static_cast<double>(r.n_grid[k]));
    rows.push_back(std::move(out));
  }
}

void DiagnosticsReport::add_mstep(const std::string& check,
                                  const MstepResult& r) {
  verdicts[check] = r.verdict;
  for (std::size_t k = 0; k < r.distances.size(); ++k) {
    Row out;
    out.check = check;
    out.verdict = r.verdict;
    out.numbers["checkpoint"] = static_cast<double>(r.checkpoints[k + 1]);
    out.numbers["sup_distance"] = r.distances[k];
    out.numbers["threshold"] = r.threshold;
    rows.push_back(std::move(out));
  }
}

std::string DiagnosticsReport::to_jsonl() const {
  std::ostringstream out;
  char buf[64];
  for (const auto& row : rows) {
    out << "{\"check\":\"" << row.check << "\",\"verdict\":\""
        << verdict_name(row.verdict) << '"';
    for (const auto& [key, value] : row.numbers) {
      std::snprintf(buf, sizeof(buf), "%.17g", value);
      out << ",\"" << key << "\":" << buf;
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace acid
