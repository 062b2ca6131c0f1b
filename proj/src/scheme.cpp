#include "acid/scheme.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "acid/errors.hpp"
#include "acid/numerics.hpp"

namespace acid {

Box Box::half_line(double b) {
  return Box{{-std::numeric_limits<double>::infinity()}, {b}};
}

double PredictiveScheme::cdf(double t) const {
  (void)t;
  throw unsupported_operation("cdf not available for this scheme");
}

double PredictiveScheme::density_at(const std::vector<double>& x) const {
  (void)x;
  throw unsupported_operation("density not available for this scheme");
}

double PredictiveScheme::regression_mean(
    const std::vector<double>& x_query) const {
  (void)x_query;
  throw unsupported_operation("regression mean requires a joint kernel state");
}

double PredictiveScheme::conditional_density(
    double y, const std::vector<double>& x_query) const {
  (void)y;
  (void)x_query;
  throw unsupported_operation(
      "conditional density requires a joint kernel state");
}

double PredictiveScheme::next_atom_measure(const Box& set,
                                           const std::vector<double>& x) const {
  (void)set;
  (void)x;
  throw unsupported_operation("scheme update is not atom-linear");
}

KernelScheme::KernelScheme(KernelMixtureState state,
                           std::optional<BandwidthSchedule> schedule,
                           double laplace_c)
    : state_(std::move(state)),
      schedule_(std::move(schedule)),
      laplace_c_(laplace_c) {
  if (!is_dirac() && !schedule_)
    throw std::invalid_argument(
        "KernelScheme: non-dirac kernels need a bandwidth schedule");
}

std::unique_ptr<PredictiveScheme> KernelScheme::clone() const {
  return std::make_unique<KernelScheme>(*this);
}

int KernelScheme::dimension() const { return state_.dimension(); }

bool KernelScheme::is_dirac() const {
  return state_.kernel().shape == KernelShape::dirac;
}

double KernelScheme::next_bandwidth() const {
  if (is_dirac()) return 0.0;
  return schedule_->at(state_.size() + 1);
}

std::vector<double> KernelScheme::sample(Rng& rng) const {
  return state_.sample(rng);
}

void KernelScheme::advance(const std::vector<double>& x) {
  state_.update(x, next_bandwidth());
}

double KernelScheme::measure(const Box& set) const {
  return state_.box_measure(set.lo, set.hi);
}

double KernelScheme::xi() const {
  if (is_dirac()) return 0.0;
  const auto constants =
      AcidConstants::for_kernel(state_.kernel(), laplace_c_);
  const double h_next = next_bandwidth();
  const std::size_t n = state_.size();
  double sum = 0.0;
  for (const auto& atom : state_.atoms())
    sum += std::pow(h_next / atom.bandwidth, constants.epsilon);
  return constants.c * sum /
         (static_cast<double>(n) * static_cast<double>(n + 1));
}

double KernelScheme::cdf(double t) const { return state_.cdf(t); }

double KernelScheme::density_at(const std::vector<double>& x) const {
  return state_.density(x);
}

double KernelScheme::regression_mean(const std::vector<double>& x_query) const {
  return state_.regression_mean(x_query);
}

double KernelScheme::conditional_density(
    double y, const std::vector<double>& x_query) const {
  return state_.conditional_density(y, x_query);
}

double KernelScheme::next_atom_measure(const Box& set,
                                       const std::vector<double>& x) const {
  const double h = next_bandwidth();
  const auto shape = state_.kernel().shape;
  double m = 1.0;
  for (int j = 0; j < dimension(); ++j) {
    double upper = kernel_cdf_1d(shape, x[j], h, set.hi[j]);
    double lower = std::isinf(set.lo[j]) && set.lo[j] < 0.0
                       ? 0.0
                       : kernel_cdf_1d(shape, x[j], h, set.lo[j]);
    m *= std::max(0.0, upper - lower);
    if (m == 0.0) break;
  }
  return m;
}

std::unique_ptr<PredictiveScheme> ParametricScheme::clone() const {
  return std::make_unique<ParametricScheme>(*this);
}

std::vector<double> ParametricScheme::sample(Rng& rng) const {
  return {param_sample(state_, rng)};
}

void ParametricScheme::advance(const std::vector<double>& x) {
  if (x.size() != 1)
    throw std::invalid_argument("ParametricScheme: univariate scheme");
  state_ = natural_gradient_step(state_, x[0]);
}

double ParametricScheme::measure(const Box& set) const {
  double upper = state_.model.cdf(set.hi[0], state_.theta_hat);
  double lower = std::isinf(set.lo[0]) && set.lo[0] < 0.0
                     ? 0.0
                     : state_.model.cdf(set.lo[0], state_.theta_hat);
  return std::max(0.0, upper - lower);
}

double ParametricScheme::cdf(double t) const {
  return state_.model.cdf(t, state_.theta_hat);
}

double ParametricScheme::density_at(const std::vector<double>& x) const {
  return state_.model.density(x[0], state_.theta_hat);
}

std::unique_ptr<PredictiveScheme> GaussianMeanScheme::clone() const {
  return std::make_unique<GaussianMeanScheme>(*this);
}

std::vector<double> GaussianMeanScheme::sample(Rng& rng) const {
  return gaussian_mean_sample(state_, rng);
}

void GaussianMeanScheme::advance(const std::vector<double>& x) {
  state_ = gaussian_mean_step(state_, x);
}

double GaussianMeanScheme::measure(const Box& set) const {
  double m = 1.0;
  for (std::size_t j = 0; j < state_.theta_hat.size(); ++j) {
    double sd = std::sqrt(state_.sigma_diag[j]);
    double upper = normal_cdf((set.hi[j] - state_.theta_hat[j]) / sd);
    double lower = std::isinf(set.lo[j]) && set.lo[j] < 0.0
                       ? 0.0
                       : normal_cdf((set.lo[j] - state_.theta_hat[j]) / sd);
    m *= std::max(0.0, upper - lower);
  }
  return m;
}

double GaussianMeanScheme::cdf(double t) const {
  if (state_.theta_hat.size() != 1)
    throw unsupported_operation("cdf is defined for univariate schemes only");
  return normal_cdf((t - state_.theta_hat[0]) /
                    std::sqrt(state_.sigma_diag[0]));
}

double GaussianMeanScheme::density_at(const std::vector<double>& x) const {
  if (x.size() != state_.theta_hat.size())
    throw std::invalid_argument("GaussianMeanScheme: dimension mismatch");
  double out = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double sd = std::sqrt(state_.sigma_diag[j]);
    out *= normal_pdf((x[j] - state_.theta_hat[j]) / sd) / sd;
  }
  return out;
}

}  // namespace acid
