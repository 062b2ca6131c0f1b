#include "acid/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acid/errors.hpp"
#include "acid/numerics.hpp"
#include "acid/quadrature.hpp"

namespace acid {

namespace {

// Largest total mass the second theta-derivative of the Student-t density
// can move into a Borel set: the integral of the positive part of p''.
// The density normalizes for every theta, so the signed integral is zero;
// the positive part is what bounds sup_A \int_A p''.
double student_t_curvature(double tau, double nu) {
  auto ppos = [tau, nu](double u) {
    double denom = nu * tau * tau + u * u;
    double val = student_t_pdf(u, 0.0, tau, nu) * (nu + 1.0) *
                 ((nu + 2.0) * u * u - nu * tau * tau) / (denom * denom);
    return std::max(0.0, val);
  };
  double ustar = tau * std::sqrt(nu / (nu + 2.0));  // sign change of p''
  double limit = 1e4 * tau * std::max(1.0, nu);
  std::vector<double> knots{ustar, 2.0 * tau, 10.0 * tau, 100.0 * tau,
                            1000.0 * tau};
  double half = integrate(ppos, ustar, limit, 1e-11, knots);
  return 2.0 * half;
}

}  // namespace

ParametricModel ParametricModel::gaussian_location(double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("gaussian_location: sigma2 must be > 0");
  ParametricModel m;
  m.name_ = Name::gaussian_location;
  m.sigma2_ = sigma2;
  m.curvature_ = std::fabs(sigma2 - 1.0) / sigma2;
  return m;
}

ParametricModel ParametricModel::student_t_location(double tau, double nu) {
  if (!(tau > 0.0))
    throw std::invalid_argument("student_t_location: tau must be > 0");
  if (!(nu > 0.0))
    throw std::invalid_argument("student_t_location: nu must be > 0");
  ParametricModel m;
  m.name_ = Name::student_t_location;
  m.tau_ = tau;
  m.nu_ = nu;
  m.curvature_ = student_t_curvature(tau, nu);
  return m;
}

double ParametricModel::density(double x, double theta) const {
  if (name_ == Name::gaussian_location) {
    double sd = std::sqrt(sigma2_);
    return normal_pdf((x - theta) / sd) / sd;
  }
  return student_t_pdf(x, theta, tau_, nu_);
}

double ParametricModel::cdf(double x, double theta) const {
  if (name_ == Name::gaussian_location)
    return normal_cdf((x - theta) / std::sqrt(sigma2_));
  return student_t_cdf((x - theta) / tau_, nu_);
}

double ParametricModel::sample(double theta, Rng& rng) const {
  if (name_ == Name::gaussian_location)
    return theta + std::sqrt(sigma2_) * rng.normal();
  return theta + tau_ * rng.student_t(nu_);
}

double ParametricModel::score(double x, double theta) const {
  double u = x - theta;
  if (name_ == Name::gaussian_location) return u / sigma2_;
  return (nu_ + 1.0) * u / (nu_ * tau_ * tau_ + u * u);
}

double ParametricModel::fisher(double theta) const {
  (void)theta;  // constant in theta for both location models
  if (name_ == Name::gaussian_location) return 1.0 / sigma2_;
  return (nu_ + 1.0) / ((nu_ + 3.0) * tau_ * tau_);
}

double ParametricModel::natural_gradient(double x, double theta) const {
  return score(x, theta) / fisher(theta);
}

ParametricState natural_gradient_step(const ParametricState& state, double x) {
  double z = state.model.natural_gradient(x, state.theta_hat);
  if (!std::isfinite(z))
    throw numeric_error("natural_gradient_step: non-finite update");
  ParametricState next = state;
  double eta = state.step.at(state.n + 1);
  next.theta_hat = state.theta_hat + eta * z;
  if (state.constraints) {
    next.theta_hat = std::clamp(next.theta_hat, state.constraints->first,
                                state.constraints->second);
  }
  next.n = state.n + 1;
  return next;
}

double param_sample(const ParametricState& state, Rng& rng) {
  return state.model.sample(state.theta_hat, rng);
}

double xi_parametric(const ParametricState& state) {
  double eta = state.step.at(state.n + 1);
  double c = state.model.curvature_constant();
  if (state.constraints) {
    double lo = state.constraints->first, hi = state.constraints->second;
    double eps = state.model.fisher(lo);
    for (int k = 1; k <= 1000; ++k) {
      double theta = lo + (hi - lo) * static_cast<double>(k) / 1000.0;
      eps = std::min(eps, state.model.fisher(theta));
    }
    return c * eta * eta / (2.0 * eps);
  }
  return c * eta * eta / (2.0 * state.model.fisher(state.theta_hat));
}

GaussianMeanState gaussian_mean_step(const GaussianMeanState& state,
                                     const std::vector<double>& x) {
  if (x.size() != state.theta_hat.size())
    throw std::invalid_argument("gaussian_mean_step: dimension mismatch");
  GaussianMeanState next = state;
  double eta = state.step.at(state.n + 1);
  for (std::size_t j = 0; j < x.size(); ++j)
    next.theta_hat[j] = (1.0 - eta) * state.theta_hat[j] + eta * x[j];
  next.n = state.n + 1;
  return next;
}

std::vector<double> gaussian_mean_sample(const GaussianMeanState& state,
                                         Rng& rng) {
  std::vector<double> x(state.theta_hat.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = state.theta_hat[j] + std::sqrt(state.sigma_diag[j]) * rng.normal();
  return x;
}

double xi_gaussian_mean(const GaussianMeanState& state) {
  double eta = state.step.at(state.n + 1);
  return 1.5 * static_cast<double>(state.theta_hat.size()) * eta * eta;
}

MomentConditionReport moment_condition_check(const ParametricModel& model,
                                             const std::vector<double>& thetas,
                                             std::size_t draws,
                                             RandomStream stream) {
  if (thetas.empty())
    throw std::invalid_argument("moment_condition_check: empty theta grid");
  if (draws < 10000)
    throw std::invalid_argument("moment_condition_check: need >= 1e4 draws");
  MomentConditionReport report;
  Rng rng(stream);
  for (double theta : thetas) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
      double x = model.sample(theta, rng);
      double z = model.natural_gradient(x, theta);
      double z4 = z * z * z * z;
      s1 += z4;
      s2 += z4 * z4;
    }
    double m = s1 / static_cast<double>(draws);
    double var =
        std::max(0.0, s2 / static_cast<double>(draws) - m * m);
    report.rows.push_back(
        {theta, m, std::sqrt(var / static_cast<double>(draws))});
  }

  // Weighted least squares of mean_z4 on (1, theta^4).
  if (report.rows.size() == 1) {
    report.b = report.rows[0].mean_z4;
    report.c = 0.0;
    report.holds = true;
    return report;
  }
  double sw = 0.0, swx = 0.0, swxx = 0.0, swy = 0.0, swxy = 0.0;
  for (const auto& row : report.rows) {
    double w = row.se > 0.0 ? 1.0 / (row.se * row.se) : 1.0;
    double t4 = row.theta * row.theta * row.theta * row.theta;
    sw += w;
    swx += w * t4;
    swxx += w * t4 * t4;
    swy += w * row.mean_z4;
    swxy += w * t4 * row.mean_z4;
  }
  double det = sw * swxx - swx * swx;
  if (std::fabs(det) < 1e-12 * sw * swxx || swxx == 0.0) {
    report.b = swy / sw;
    report.c = 0.0;
  } else {
    report.b = (swxx * swy - swx * swxy) / det;
    report.c = (sw * swxy - swx * swy) / det;
  }
  double se_b = det > 0.0 ? std::sqrt(std::max(0.0, swxx / det)) : 0.0;
  double se_c = det > 0.0 ? std::sqrt(std::max(0.0, sw / det)) : 0.0;
  bool coeff_ok = report.b >= -4.0 * se_b && report.c >= -4.0 * se_c;
  bool points_ok = true;
  double b_pos = std::max(0.0, report.b);
  double c_pos = std::max(0.0, report.c);
  for (const auto& row : report.rows) {
    double t4 = row.theta * row.theta * row.theta * row.theta;
    if (row.mean_z4 > b_pos + c_pos * t4 + 4.0 * row.se) {
      points_ok = false;
      break;
    }
  }
  report.holds = coeff_ok && points_ok;
  return report;
}

}  // namespace acid
