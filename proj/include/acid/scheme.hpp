#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "acid/kernel_predictive.hpp"
#include "acid/parametric.hpp"
#include "acid/random.hpp"
#include "acid/schedules.hpp"

namespace acid {

//! Axis-aligned measurable set; entries may be +-infinity.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box interval(double a, double b) { return Box{{a}, {b}}; }
  static Box half_line(double b);  // (-inf, b]
};

//! One-step-ahead predictive scheme: sample X ~ alpha_n, advance to
//! alpha_{n+1}, and evaluate the current measure. The per-step slack xi_n
//! comes with the scheme. Value-semantic via clone(); replicates never
//! share mutable state.
class PredictiveScheme {
 public:
  virtual ~PredictiveScheme() = default;
  virtual std::unique_ptr<PredictiveScheme> clone() const = 0;

  virtual int dimension() const = 0;
  virtual std::size_t count() const = 0;  // n: observations absorbed so far
  virtual std::vector<double> sample(Rng& rng) const = 0;
  virtual void advance(const std::vector<double>& x) = 0;
  virtual double measure(const Box& set) const = 0;
  virtual double xi() const = 0;

  virtual double cdf(double t) const;
  virtual double density_at(const std::vector<double>& x) const;
  virtual double regression_mean(const std::vector<double>& x_query) const;
  virtual double conditional_density(double y,
                                     const std::vector<double>& x_query) const;

  //! True when alpha_{n+1}(A) is affine in the new atom's measure, so the
  //! one-step conditional expectation reduces to a single inner integral.
  virtual bool linear_update() const { return false; }
  //! Measure the next atom would assign to the set if centered at x.
  virtual double next_atom_measure(const Box& set,
                                   const std::vector<double>& x) const;
  virtual bool is_dirac() const { return false; }
};

//! Kernel mixture predictive driven by a bandwidth schedule. The dirac
//! configuration (Bayesian bootstrap) needs no schedule.
class KernelScheme : public PredictiveScheme {
 public:
  KernelScheme(KernelMixtureState state, std::optional<BandwidthSchedule> schedule,
               double laplace_c = 1.0);

  std::unique_ptr<PredictiveScheme> clone() const override;
  int dimension() const override;
  std::size_t count() const override { return state_.size(); }
  std::vector<double> sample(Rng& rng) const override;
  void advance(const std::vector<double>& x) override;
  double measure(const Box& set) const override;
  double xi() const override;
  double cdf(double t) const override;
  double density_at(const std::vector<double>& x) const override;
  double regression_mean(const std::vector<double>& x_query) const override;
  double conditional_density(double y,
                             const std::vector<double>& x_query) const override;
  bool linear_update() const override { return true; }
  double next_atom_measure(const Box& set,
                           const std::vector<double>& x) const override;
  bool is_dirac() const override;

  const KernelMixtureState& state() const { return state_; }
  double next_bandwidth() const;

 private:
  KernelMixtureState state_;
  std::optional<BandwidthSchedule> schedule_;
  double laplace_c_;
};

class ParametricScheme : public PredictiveScheme {
 public:
  explicit ParametricScheme(ParametricState state) : state_(std::move(state)) {}

  std::unique_ptr<PredictiveScheme> clone() const override;
  int dimension() const override { return 1; }
  std::size_t count() const override { return state_.n; }
  std::vector<double> sample(Rng& rng) const override;
  void advance(const std::vector<double>& x) override;
  double measure(const Box& set) const override;
  double xi() const override { return xi_parametric(state_); }
  double cdf(double t) const override;
  double density_at(const std::vector<double>& x) const override;

  const ParametricState& state() const { return state_; }

 private:
  ParametricState state_;
};

class GaussianMeanScheme : public PredictiveScheme {
 public:
  explicit GaussianMeanScheme(GaussianMeanState state)
      : state_(std::move(state)) {}

  std::unique_ptr<PredictiveScheme> clone() const override;
  int dimension() const override {
    return static_cast<int>(state_.theta_hat.size());
  }
  std::size_t count() const override { return state_.n; }
  std::vector<double> sample(Rng& rng) const override;
  void advance(const std::vector<double>& x) override;
  double measure(const Box& set) const override;
  double xi() const override { return xi_gaussian_mean(state_); }
  double cdf(double t) const override;
  double density_at(const std::vector<double>& x) const override;

  const GaussianMeanState& state() const { return state_; }

 private:
  GaussianMeanState state_;
};

}  // namespace acid
