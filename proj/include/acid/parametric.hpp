#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acid/random.hpp"
#include "acid/schedules.hpp"

namespace acid {

//! Location models for the parametric bootstrap: Gaussian with known
//! variance and location-scale Student-t. Exposes density, sampler, score,
//! Fisher information, the natural-gradient update Z = I(theta)^-1 s(x,
//! theta), and the curvature constant bounding the mass the second
//! theta-derivative of the density can move into any set.
class ParametricModel {
 public:
  enum class Name { gaussian_location, student_t_location };

  static ParametricModel gaussian_location(double sigma2);
  static ParametricModel student_t_location(double tau, double nu);

  Name name() const { return name_; }
  double sigma2() const { return sigma2_; }
  double tau() const { return tau_; }
  double nu() const { return nu_; }

  double density(double x, double theta) const;
  double cdf(double x, double theta) const;
  double sample(double theta, Rng& rng) const;
  double score(double x, double theta) const;
  double fisher(double theta) const;
  double natural_gradient(double x, double theta) const;
  double curvature_constant() const { return curvature_; }

 private:
  ParametricModel() = default;
  Name name_ = Name::gaussian_location;
  double sigma2_ = 1.0;
  double tau_ = 1.0;
  double nu_ = 3.0;
  double curvature_ = 0.0;
};

//! Parametric one-step-ahead predictive P_{theta_hat} with its step
//! schedule and optional box constraints on theta.
struct ParametricState {
  ParametricModel model;
  double theta_hat = 0.0;
  StepSchedule step;
  std::size_t n = 0;
  std::optional<std::pair<double, double>> constraints;
};

//! theta <- theta + eta_{n+1} Z(x, theta), clamped to the constraint box
//! when one is set.
ParametricState natural_gradient_step(const ParametricState& state, double x);

double param_sample(const ParametricState& state, Rng& rng);

//! Almost-supermartingale slack: C eta_{n+1}^2 / (2 I(theta_hat)), or
//! C eta_{n+1}^2 / (2 epsilon) with epsilon = min I over the constraint box
//! (grid-minimized).
double xi_parametric(const ParametricState& state);

//! Gaussian mean-driven sequence X_{n+1} | G_n ~ N(theta_hat, Sigma) with
//! theta_hat = (1 - eta_n) theta_hat + eta_n X_n and diagonal Sigma.
struct GaussianMeanState {
  std::vector<double> theta_hat;
  std::vector<double> sigma_diag;  // variances
  StepSchedule step;
  std::size_t n = 0;
};

GaussianMeanState gaussian_mean_step(const GaussianMeanState& state,
                                     const std::vector<double>& x);
std::vector<double> gaussian_mean_sample(const GaussianMeanState& state,
                                         Rng& rng);
//! (3/2) p eta_{n+1}^2.
double xi_gaussian_mean(const GaussianMeanState& state);

struct MomentConditionRow {
  double theta = 0.0;
  double mean_z4 = 0.0;
  double se = 0.0;
};

//! Monte Carlo check of the sufficient moment condition
//! E[Z(X, theta)^4] <= B + C theta^4 on a grid of theta values.
struct MomentConditionReport {
  std::vector<MomentConditionRow> rows;
  double b = 0.0;
  double c = 0.0;
  bool holds = false;
};

MomentConditionReport moment_condition_check(const ParametricModel& model,
                                             const std::vector<double>& thetas,
                                             std::size_t draws,
                                             RandomStream stream);

}  // namespace acid
