#pragma once

#include <functional>
#include <span>
#include <vector>

#include "acid/random.hpp"

namespace acid {

enum class KernelShape { gaussian, uniform, laplace, dirac };

enum class KernelStructure { univariate, isotropic_product };

const char* kernel_shape_name(KernelShape shape);
KernelShape kernel_shape_from_name(const std::string& name);

//! A kernel family: shape, dimension, and per-dimension structure.
//! Multivariate kernels are isotropic products (one scalar bandwidth
//! scaling every coordinate).
struct KernelSpec {
  KernelShape shape = KernelShape::gaussian;
  int dimension = 1;
  KernelStructure structure = KernelStructure::univariate;

  static KernelSpec univariate(KernelShape shape);
  static KernelSpec product(KernelShape shape, int dimension);
};

struct TvResult {
  enum class Kind { exact, upper_bound };
  double value = 0.0;
  Kind kind = Kind::upper_bound;
};

//! Per-kernel constants (C, epsilon) in the convolution total-variation
//! decay TV <= C (h_new / h_old)^epsilon. Values scale linearly with the
//! dimension for product kernels. The Laplace prefactor defaults to 1 and
//! can be overridden.
struct AcidConstants {
  double c = 0.0;
  double epsilon = 1.0;

  static AcidConstants for_kernel(const KernelSpec& spec,
                                  double laplace_c = 1.0);
};

//! Standard (bandwidth-1, center-0) kernel density in one dimension.
double standard_kernel_density(KernelShape shape, double u);
//! One-dimensional kernel CDF with the given center and bandwidth.
//! The dirac shape yields the step function 1{center <= t}.
double kernel_cdf_1d(KernelShape shape, double center, double h, double t);

//! Normalized kernel density at x: product over dimensions of
//! (1/h) K((x_j - center_j)/h).
double kernel_density(const KernelSpec& spec, std::span<const double> center,
                      double h, std::span<const double> x);

//! Exact draw from the kernel measure centered at center with bandwidth h.
std::vector<double> kernel_sample(const KernelSpec& spec,
                                  std::span<const double> center, double h,
                                  Rng& rng);

//! Univariate law of one forward draw smoothed through an existing atom:
//! gaussian stays gaussian with variance h_old^2 + h_new^2, laplace keeps
//! the Laplace form with scale h_old + h_new, uniform becomes a trapezoid.
//! For product kernels the same law applies per coordinate.
struct ConvolutionDensity {
  KernelShape base = KernelShape::gaussian;
  double center = 0.0;
  double scale = 1.0;    // gaussian: std dev; laplace: scale
  double inner = 0.0;    // trapezoid: half-width of the flat part
  double outer = 0.0;    // trapezoid: half-width of the support
  double height = 0.0;   // trapezoid: flat density level

  double density(double x) const;
  double cdf(double x) const;
  //! Kink locations (useful as quadrature breakpoints).
  std::vector<double> breakpoints() const;
};

ConvolutionDensity convolution_params(const KernelSpec& spec, double h_new,
                                      double h_old, double center = 0.0);

//! Total variation between the convolved and the original kernel measure.
//! Exact for uniform and laplace with h_new <= h_old, a bound otherwise;
//! product kernels take p times the per-dimension value.
TvResult convolution_tv(const KernelSpec& spec, double h_new, double h_old,
                        double laplace_c = 1.0);

//! Devroye-style bound for equal-mean Gaussians with diagonal covariances:
//! (3/2) min{1, sqrt(sum lambda_i^2)}, lambda_i = sigma2[i]/sigma1[i] - 1.
//! Inputs are variances.
TvResult tv_gaussian_bound(std::span<const double> sigma1_diag,
                           std::span<const double> sigma2_diag);

//! (1/2) integral |f - g| by adaptive quadrature over the hinted support.
//! Throws numeric_error (reporting the achieved tolerance) if the requested
//! absolute tolerance cannot be met.
double tv_numeric(const std::function<double(double)>& density1,
                  const std::function<double(double)>& density2,
                  double support_lo, double support_hi, double abs_tol,
                  const std::vector<double>& breakpoints = {});

}  // namespace acid
