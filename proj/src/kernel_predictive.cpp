#include "acid/kernel_predictive.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "acid/errors.hpp"

namespace acid {

KernelMixtureState::KernelMixtureState(
    KernelSpec kernel, const std::vector<std::vector<double>>& data,
    double h_obs)
    : kernel_(kernel) {
  if (data.empty())
    throw std::invalid_argument("KernelMixtureState: data must be non-empty");
  const bool dirac = kernel_.shape == KernelShape::dirac;
  if (!dirac && !(h_obs > 0.0))
    throw std::invalid_argument("KernelMixtureState: h_obs must be > 0");
  atoms_.reserve(data.size());
  for (const auto& x : data) {
    check_point(x);
    atoms_.push_back(KernelAtom{x, dirac ? 0.0 : h_obs});
  }
}

KernelMixtureState::KernelMixtureState(KernelSpec kernel,
                                       std::vector<KernelAtom> atoms)
    : kernel_(kernel), atoms_(std::move(atoms)) {}

void KernelMixtureState::check_point(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(kernel_.dimension))
    throw std::invalid_argument("KernelMixtureState: dimension mismatch");
}

void KernelMixtureState::update(std::span<const double> x, double h) {
  check_point(x);
  const bool dirac = kernel_.shape == KernelShape::dirac;
  if (!dirac && !(h > 0.0))
    throw std::invalid_argument(
        "KernelMixtureState: bandwidth must be > 0 for non-dirac kernels");
  atoms_.push_back(KernelAtom{std::vector<double>(x.begin(), x.end()),
                              dirac ? 0.0 : h});
}

double KernelMixtureState::density(std::span<const double> x) const {
  if (kernel_.shape == KernelShape::dirac)
    throw unsupported_operation("dirac state admits no density");
  check_point(x);
  double sum = 0.0;
  for (const auto& atom : atoms_)
    sum += kernel_density(kernel_, atom.center, atom.bandwidth, x);
  return sum / static_cast<double>(atoms_.size());
}

double KernelMixtureState::cdf(double t) const {
  if (kernel_.dimension != 1)
    throw unsupported_operation("cdf is defined for univariate states only");
  double sum = 0.0;
  for (const auto& atom : atoms_)
    sum += kernel_cdf_1d(kernel_.shape, atom.center[0], atom.bandwidth, t);
  return sum / static_cast<double>(atoms_.size());
}

double KernelMixtureState::box_measure(std::span<const double> lo,
                                       std::span<const double> hi) const {
  check_point(lo);
  check_point(hi);
  double sum = 0.0;
  for (const auto& atom : atoms_) {
    double m = 1.0;
    for (int j = 0; j < kernel_.dimension; ++j) {
      double upper =
          kernel_cdf_1d(kernel_.shape, atom.center[j], atom.bandwidth, hi[j]);
      double lower = std::isinf(lo[j]) && lo[j] < 0.0
                         ? 0.0
                         : kernel_cdf_1d(kernel_.shape, atom.center[j],
                                         atom.bandwidth, lo[j]);
      m *= std::max(0.0, upper - lower);
      if (m == 0.0) break;
    }
    sum += m;
  }
  return sum / static_cast<double>(atoms_.size());
}

std::vector<double> KernelMixtureState::sample(Rng& rng) const {
  std::size_t idx = rng.uniform_below(atoms_.size());
  const auto& atom = atoms_[idx];
  return kernel_sample(kernel_, atom.center, atom.bandwidth, rng);
}

double KernelMixtureState::regression_mean(
    std::span<const double> x_query) const {
  if (kernel_.dimension < 2)
    throw unsupported_operation(
        "regression_mean requires a joint (y, x) state");
  if (x_query.size() != static_cast<std::size_t>(kernel_.dimension - 1))
    throw std::invalid_argument("regression_mean: query dimension mismatch");
  double num = 0.0, den = 0.0;
  for (const auto& atom : atoms_) {
    double w = 1.0;
    for (std::size_t j = 0; j < x_query.size(); ++j)
      w *= standard_kernel_density(
          kernel_.shape, (x_query[j] - atom.center[j + 1]) / atom.bandwidth);
    num += atom.center[0] * w;
    den += w;
  }
  if (den <= 0.0)
    throw no_support_error(
        "regression_mean: query has zero kernel weight at every atom");
  return num / den;
}

double KernelMixtureState::conditional_density(
    double y, std::span<const double> x_query) const {
  if (kernel_.shape == KernelShape::dirac)
    throw unsupported_operation("dirac state admits no density");
  if (kernel_.dimension < 2)
    throw unsupported_operation(
        "conditional_density requires a joint (y, x) state");
  if (x_query.size() != static_cast<std::size_t>(kernel_.dimension - 1))
    throw std::invalid_argument(
        "conditional_density: query dimension mismatch");
  double joint = 0.0, marginal = 0.0;
  for (const auto& atom : atoms_) {
    double h = atom.bandwidth;
    double wx = 1.0;
    for (std::size_t j = 0; j < x_query.size(); ++j)
      wx *= standard_kernel_density(kernel_.shape,
                                    (x_query[j] - atom.center[j + 1]) / h) /
            h;
    marginal += wx;
    joint += wx * standard_kernel_density(kernel_.shape,
                                          (y - atom.center[0]) / h) /
             h;
  }
  if (marginal <= 0.0)
    throw no_support_error("conditional_density: zero marginal at query");
  return joint / marginal;
}

void KernelMixtureState::to_csv(std::ostream& out) const {
  out << "atom_index";
  for (int j = 1; j <= kernel_.dimension; ++j) out << ",center_" << j;
  out << ",bandwidth\n";
  char buf[64];
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    out << i;
    for (double c : atoms_[i].center) {
      std::snprintf(buf, sizeof(buf), "%.17g", c);
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", atoms_[i].bandwidth);
    out << ',' << buf << '\n';
  }
}

KernelMixtureState KernelMixtureState::from_csv(std::istream& in,
                                                KernelSpec kernel) {
  std::string line;
  if (!std::getline(in, line))
    throw data_error("state CSV: missing header");
  std::vector<KernelAtom> atoms;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> fields;
    while (std::getline(row, cell, ',')) fields.push_back(std::stod(cell));
    if (fields.size() != static_cast<std::size_t>(kernel.dimension) + 2)
      throw data_error("state CSV: wrong column count");
    KernelAtom atom;
    atom.center.assign(fields.begin() + 1, fields.end() - 1);
    atom.bandwidth = fields.back();
    atoms.push_back(std::move(atom));
  }
  if (atoms.empty()) throw data_error("state CSV: no atoms");
  return KernelMixtureState(kernel, std::move(atoms));
}

double rf_lambda(int leaves, int dimension) {
  if (leaves < 2) throw std::invalid_argument("rf_lambda: need leaves >= 2");
  if (dimension < 1)
    throw std::invalid_argument("rf_lambda: need dimension >= 1");
  return std::log(static_cast<double>(leaves)) /
         static_cast<double>(dimension);
}

RfKernelConfig rf_config(int leaves, int dimension) {
  return RfKernelConfig{leaves, dimension, rf_lambda(leaves, dimension)};
}

KernelMixtureState rf_joint_state(const std::vector<std::vector<double>>& yx,
                                  int leaves) {
  if (yx.empty())
    throw std::invalid_argument("rf_joint_state: data must be non-empty");
  int joint_dim = static_cast<int>(yx.front().size());
  if (joint_dim < 2)
    throw std::invalid_argument("rf_joint_state: need (y, x) rows");
  double lambda = rf_lambda(leaves, joint_dim - 1);
  return KernelMixtureState(KernelSpec::product(KernelShape::laplace,
                                                joint_dim),
                            yx, 1.0 / lambda);
}

}  // namespace acid
