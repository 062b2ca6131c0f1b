#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "acid/kernels.hpp"
#include "acid/scheme.hpp"
#include "acid/schedules.hpp"

namespace acid {

enum class Verdict { PASS, FAIL, INCONCLUSIVE };
const char* verdict_name(Verdict v);

//! Slack sequence xi_0..xi_N with partial sums and, when the generating
//! family admits one, an analytic summability classification.
struct XiSequence {
  enum class Source {
    kernel,
    parametric_unconstrained,
    parametric_constrained,
    gaussian_mean,
    external
  };
  enum class Analytic { summable, divergent, unknown };

  std::vector<double> values;
  std::vector<double> partial_sums;
  Source source = Source::external;
  Analytic analytic = Analytic::unknown;

  static XiSequence from_values(std::vector<double> values,
                                Source source = Source::external,
                                Analytic analytic = Analytic::unknown);
  static XiSequence for_kernel(const BandwidthSchedule& schedule,
                               const AcidConstants& constants, std::size_t n_max);
  static XiSequence for_parametric(const ParametricModel& model,
                                   const StepSchedule& step, std::size_t n_max,
                                   bool constrained = false,
                                   double constraint_lo = 0.0,
                                   double constraint_hi = 0.0);
  static XiSequence for_gaussian_mean(const StepSchedule& step, int dimension,
                                      std::size_t n_max);
};

//! Exact evaluation of the kernel slack
//! xi_n = (1/(n+1)) sum_{i<=n} (1/n) C (h_{n+1}/h_i)^epsilon.
double xi_kernel(const BandwidthSchedule& schedule, std::size_t n,
                 const AcidConstants& constants);

struct SummabilityResult {
  Verdict verdict = Verdict::INCONCLUSIVE;
  double tail_slope = 0.0;  // fitted slope of log xi_n vs log n (last decade)
  double partial_sum = 0.0;
};

//! Theorem-hypothesis check: analytic classification when available,
//! otherwise a tail-slope fit reported as INCONCLUSIVE evidence.
SummabilityResult summability_check(const XiSequence& xi, std::size_t horizon);

struct BandwidthConditionResult {
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::vector<std::size_t> n_grid;
  std::vector<double> c_values;  // c_n = (h_{n+1}^eps/(n+1)) sum h_i^-eps
};

//! Checks c_n = o(1/log n): exponential schedules pass analytically,
//! polynomial and constant ones fail, explicit lists are judged empirically.
BandwidthConditionResult bandwidth_condition_check(
    const BandwidthSchedule& schedule, double epsilon, std::size_t horizon);

struct DiscrepancyRow {
  std::size_t set_id = 0;
  double estimate = 0.0;
  double se = 0.0;
};

struct DiscrepancyResult {
  Verdict verdict = Verdict::INCONCLUSIVE;
  double xi_n = 0.0;
  std::vector<DiscrepancyRow> rows;
};

//! Nested-MC estimate of E(alpha_{n+1}(A) | G_n) - alpha_n(A) per set.
//! PASS when every |estimate| <= xi_n + 3 SE; a violation with xi_n below
//! the MC resolution is INCONCLUSIVE rather than FAIL. Kernel schemes use
//! the affine update to reduce the inner expectation to a single integral;
//! dirac states are evaluated in closed form (exact zero).
DiscrepancyResult acid_discrepancy_mc(const PredictiveScheme& scheme,
                                      const std::vector<Box>& sets,
                                      std::size_t inner_draws,
                                      RandomStream stream, int threads = 1);

struct MstepResult {
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::vector<std::size_t> checkpoints;
  std::vector<double> distances;  // successive sup-CDF distances
  double threshold = 0.05;
};

//! Corollary-style convergence diagnostic: one forward path, predictive CDF
//! recorded at each checkpoint, successive sup-distances must shrink below
//! the threshold.
MstepResult mstep_convergence_diag(const PredictiveScheme& scheme,
                                   const std::vector<std::size_t>& checkpoints,
                                   RandomStream stream, double threshold = 0.05,
                                   std::size_t grid_points = 201);

//! Default testable surrogate for "all Borel sets": quantile-spaced
//! half-lines plus central intervals for univariate schemes, axis-aligned
//! boxes otherwise.
std::vector<Box> default_set_family(const PredictiveScheme& scheme,
                                    std::size_t half_lines = 20,
                                    std::size_t intervals = 10);

//! Pass/fail ledger rendered as JSON lines, one row per piece of evidence.
struct DiagnosticsReport {
  struct Row {
    std::string check;
    Verdict verdict = Verdict::INCONCLUSIVE;
    std::map<std::string, double> numbers;
  };
  std::map<std::string, Verdict> verdicts;
  std::vector<Row> rows;

  void add_discrepancy(const std::string& check, const DiscrepancyResult& r,
                       std::size_t n);
  void add_summability(const std::string& check, const SummabilityResult& r);
  void add_bandwidth_condition(const std::string& check,
                               const BandwidthConditionResult& r);
  void add_mstep(const std::string& check, const MstepResult& r);
  std::string to_jsonl() const;
};

}  // namespace acid
