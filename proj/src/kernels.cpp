#include "acid/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "acid/errors.hpp"
#include "acid/numerics.hpp"
#include "acid/quadrature.hpp"

namespace acid {

const char* kernel_shape_name(KernelShape shape) {
  switch (shape) {
    case KernelShape::gaussian: return "gaussian";
    case KernelShape::uniform: return "uniform";
    case KernelShape::laplace: return "laplace";
    case KernelShape::dirac: return "dirac";
  }
  return "?";
}

KernelShape kernel_shape_from_name(const std::string& name) {
  if (name == "gaussian") return KernelShape::gaussian;
  if (name == "uniform") return KernelShape::uniform;
  if (name == "laplace") return KernelShape::laplace;
  if (name == "dirac") return KernelShape::dirac;
  throw std::invalid_argument("unknown kernel shape: " + name);
}

KernelSpec KernelSpec::univariate(KernelShape shape) {
  return KernelSpec{shape, 1, KernelStructure::univariate};
}

KernelSpec KernelSpec::product(KernelShape shape, int dimension) {
  if (dimension < 1)
    throw std::invalid_argument("KernelSpec: dimension must be >= 1");
  return KernelSpec{shape, dimension,
                    dimension == 1 ? KernelStructure::univariate
                                   : KernelStructure::isotropic_product};
}

AcidConstants AcidConstants::for_kernel(const KernelSpec& spec,
                                        double laplace_c) {
  double p = static_cast<double>(spec.dimension);
  switch (spec.shape) {
    case KernelShape::gaussian: return {1.5 * p, 2.0};
    case KernelShape::uniform: return {0.25 * p, 1.0};
    case KernelShape::laplace: return {laplace_c * p, 1.0};
    case KernelShape::dirac: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

double standard_kernel_density(KernelShape shape, double u) {
  switch (shape) {
    case KernelShape::gaussian:
      return normal_pdf(u);
    case KernelShape::uniform:
      return std::fabs(u) <= 1.0 ? 0.5 : 0.0;
    case KernelShape::laplace:
      return 0.5 * std::exp(-std::fabs(u));
    case KernelShape::dirac:
      throw unsupported_operation("dirac kernel admits no density");
  }
  return 0.0;
}

double kernel_cdf_1d(KernelShape shape, double center, double h, double t) {
  if (shape == KernelShape::dirac) return center <= t ? 1.0 : 0.0;
  if (!(h > 0.0))
    throw std::invalid_argument("kernel_cdf_1d: bandwidth must be > 0");
  double u = (t - center) / h;
  switch (shape) {
    case KernelShape::gaussian:
      return normal_cdf(u);
    case KernelShape::uniform:
      return std::clamp(0.5 * (u + 1.0), 0.0, 1.0);
    case KernelShape::laplace:
      return u < 0.0 ? 0.5 * std::exp(u) : 1.0 - 0.5 * std::exp(-u);
    case KernelShape::dirac:
      break;
  }
  return 0.0;
}

double kernel_density(const KernelSpec& spec, std::span<const double> center,
                      double h, std::span<const double> x) {
  if (spec.shape == KernelShape::dirac)
    throw unsupported_operation("dirac kernel admits no density");
  if (!(h > 0.0))
    throw std::invalid_argument("kernel_density: bandwidth must be > 0");
  if (center.size() != static_cast<std::size_t>(spec.dimension) ||
      x.size() != static_cast<std::size_t>(spec.dimension))
    throw std::invalid_argument("kernel_density: dimension mismatch");
  double out = 1.0;
  for (int j = 0; j < spec.dimension; ++j)
    out *= standard_kernel_density(spec.shape, (x[j] - center[j]) / h) / h;
  return out;
}

std::vector<double> kernel_sample(const KernelSpec& spec,
                                  std::span<const double> center, double h,
                                  Rng& rng) {
  if (center.size() != static_cast<std::size_t>(spec.dimension))
    throw std::invalid_argument("kernel_sample: dimension mismatch");
  if (spec.shape == KernelShape::dirac)
    return std::vector<double>(center.begin(), center.end());
  if (!(h > 0.0))
    throw std::invalid_argument(
        "kernel_sample: bandwidth must be > 0 for non-dirac kernels");
  std::vector<double> out(center.begin(), center.end());
  for (double& c : out) {
    switch (spec.shape) {
      case KernelShape::gaussian: c += h * rng.normal(); break;
      case KernelShape::uniform: c += h * (2.0 * rng.uniform() - 1.0); break;
      case KernelShape::laplace: c += h * rng.laplace(); break;
      case KernelShape::dirac: break;
    }
  }
  return out;
}

double ConvolutionDensity::density(double x) const {
  double u = x - center;
  switch (base) {
    case KernelShape::gaussian:
      return normal_pdf(u / scale) / scale;
    case KernelShape::laplace:
      return 0.5 / scale * std::exp(-std::fabs(u) / scale);
    case KernelShape::uniform: {
      double a = std::fabs(u);
      if (a >= outer) return 0.0;
      if (a <= inner) return height;
      return height * (outer - a) / (outer - inner);
    }
    case KernelShape::dirac:
      break;
  }
  return 0.0;
}

double ConvolutionDensity::cdf(double x) const {
  double u = x - center;
  switch (base) {
    case KernelShape::gaussian:
      return normal_cdf(u / scale);
    case KernelShape::laplace:
      return u < 0.0 ? 0.5 * std::exp(u / scale)
                     : 1.0 - 0.5 * std::exp(-u / scale);
    case KernelShape::uniform: {
      // Integrate the trapezoid from the left edge; exploit symmetry.
      if (u <= -outer) return 0.0;
      if (u >= outer) return 1.0;
      double a = std::fabs(u);
      double mass;  // mass between |u| and outer
      if (a >= inner) {
        double w = outer - a;
        mass = 0.5 * height * w * w / (outer - inner);
      } else {
        double ramp = 0.5 * height * (outer - inner);
        mass = ramp + height * (inner - a);
      }
      return u >= 0.0 ? 1.0 - mass : mass;
    }
    case KernelShape::dirac:
      break;
  }
  return 0.0;
}

std::vector<double> ConvolutionDensity::breakpoints() const {
  if (base != KernelShape::uniform) return {center};
  return {center - outer, center - inner, center, center + inner,
          center + outer};
}

ConvolutionDensity convolution_params(const KernelSpec& spec, double h_new,
                                      double h_old, double center) {
  if (spec.shape == KernelShape::dirac)
    throw unsupported_operation("dirac kernel has no convolution law");
  if (!(h_new > 0.0 && h_old > 0.0))
    throw std::invalid_argument("convolution_params: bandwidths must be > 0");
  ConvolutionDensity d;
  d.base = spec.shape;
  d.center = center;
  switch (spec.shape) {
    case KernelShape::gaussian:
      d.scale = std::sqrt(h_old * h_old + h_new * h_new);
      break;
    case KernelShape::laplace:
      d.scale = h_old + h_new;
      break;
    case KernelShape::uniform: {
      double hmax = std::max(h_old, h_new);
      d.inner = std::fabs(h_old - h_new);
      d.outer = h_old + h_new;
      d.height = 0.5 / hmax;
      break;
    }
    case KernelShape::dirac:
      break;
  }
  return d;
}

namespace {

double laplace_tv_exact(double h_new, double h_old) {
  double c = h_old, a = h_new;
  double r = c / (c + a);
  return std::pow(r, c / a) - std::pow(r, (c + a) / a);
}

}  // namespace

TvResult convolution_tv(const KernelSpec& spec, double h_new, double h_old,
                        double laplace_c) {
  if (spec.shape == KernelShape::dirac)
    throw unsupported_operation("dirac kernel has no convolution law");
  if (!(h_new > 0.0 && h_old > 0.0))
    throw std::invalid_argument("convolution_tv: bandwidths must be > 0");
  (void)laplace_c;

  double per_dim = 0.0;
  bool exact = false;
  switch (spec.shape) {
    case KernelShape::uniform:
      per_dim = 0.25 * h_new / h_old;
      exact = h_new <= h_old;
      break;
    case KernelShape::laplace:
      per_dim = laplace_tv_exact(h_new, h_old);
      exact = h_new <= h_old;
      break;
    case KernelShape::gaussian:
      per_dim = 1.5 * h_new * h_new / (h_old * h_old);
      exact = false;
      break;
    case KernelShape::dirac:
      break;
  }

  TvResult out;
  if (spec.dimension > 1) {
    // Product kernels: triangle inequality gives p times the 1-d value.
    out.value = std::min(1.0, static_cast<double>(spec.dimension) * per_dim);
    out.kind = TvResult::Kind::upper_bound;
  } else if (exact) {
    out.value = per_dim;
    out.kind = TvResult::Kind::exact;
  } else {
    out.value = std::min(1.0, per_dim);
    out.kind = TvResult::Kind::upper_bound;
  }
  return out;
}

TvResult tv_gaussian_bound(std::span<const double> sigma1_diag,
                           std::span<const double> sigma2_diag) {
  if (sigma1_diag.size() != sigma2_diag.size())
    throw std::invalid_argument("tv_gaussian_bound: dimension mismatch");
  if (sigma1_diag.empty())
    throw std::invalid_argument("tv_gaussian_bound: empty covariance");
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < sigma1_diag.size(); ++i) {
    if (!(sigma1_diag[i] > 0.0 && sigma2_diag[i] > 0.0))
      throw std::invalid_argument(
          "tv_gaussian_bound: variances must be > 0");
    double lambda = sigma2_diag[i] / sigma1_diag[i] - 1.0;
    sum_sq += lambda * lambda;
  }
  return {1.5 * std::min(1.0, std::sqrt(sum_sq)), TvResult::Kind::upper_bound};
}

double tv_numeric(const std::function<double(double)>& density1,
                  const std::function<double(double)>& density2,
                  double support_lo, double support_hi, double abs_tol,
                  const std::vector<double>& breakpoints) {
  auto diff = [&](double x) { return std::fabs(density1(x) - density2(x)); };
  return 0.5 * integrate(diff, support_lo, support_hi, 2.0 * abs_tol,
                         breakpoints);
}

}  // namespace acid
