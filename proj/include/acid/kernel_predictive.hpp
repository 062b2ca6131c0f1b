#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "acid/kernels.hpp"
#include "acid/random.hpp"

namespace acid {

struct KernelAtom {
  std::vector<double> center;
  double bandwidth = 0.0;  // 0 only for dirac states
};

//! The recursive kernel predictive measure: a uniform mixture of kernel
//! atoms, each carrying its own center and bandwidth. Observed data come
//! first; synthetic points are appended by update(). Value-semantic, so
//! forward-simulation replicates clone freely.
class KernelMixtureState {
 public:
  KernelMixtureState(KernelSpec kernel,
                     const std::vector<std::vector<double>>& data,
                     double h_obs);

  //! Appends the atom (x, h); all weights become 1/(n+1).
  void update(std::span<const double> x, double h);

  std::size_t size() const { return atoms_.size(); }
  int dimension() const { return kernel_.dimension; }
  const KernelSpec& kernel() const { return kernel_; }
  const std::vector<KernelAtom>& atoms() const { return atoms_; }

  //! Mixture density (non-dirac only).
  double density(std::span<const double> x) const;
  //! Mixture CDF; univariate states only (dirac allowed: step function).
  double cdf(double t) const;
  //! Probability of the axis-aligned box [lo, hi].
  double box_measure(std::span<const double> lo,
                     std::span<const double> hi) const;
  //! Exact mixture draw: pick an atom uniformly, then sample its kernel.
  std::vector<double> sample(Rng& rng) const;

  //! Nadaraya-Watson style mean for joint states storing (y, x) with y
  //! first: sum_i Y_i K_x((x - X_i)/h_i) / sum_i K_x((x - X_i)/h_i).
  double regression_mean(std::span<const double> x_query) const;
  //! Conditional density of y given x: joint density over the marginal
  //! obtained by dropping the y-kernel factors.
  double conditional_density(double y, std::span<const double> x_query) const;

  void to_csv(std::ostream& out) const;
  static KernelMixtureState from_csv(std::istream& in, KernelSpec kernel);

 private:
  KernelMixtureState(KernelSpec kernel, std::vector<KernelAtom> atoms);
  void check_point(std::span<const double> x) const;

  KernelSpec kernel_;
  std::vector<KernelAtom> atoms_;
};

//! lambda = log(leaves) / dimension in the kernel view of random forests.
double rf_lambda(int leaves, int dimension);

struct RfKernelConfig {
  int leaves = 2;
  int dimension = 1;
  double lambda = 0.0;
};

RfKernelConfig rf_config(int leaves, int dimension);

//! Joint (y, x) state with a Laplace product kernel at bandwidth 1/lambda,
//! whose regression mean reproduces the kernel-based random-forest weights
//! exp(-lambda ||x - X_i||_1).
KernelMixtureState rf_joint_state(const std::vector<std::vector<double>>& yx,
                                  int leaves);

}  // namespace acid
