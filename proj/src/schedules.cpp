#include "acid/schedules.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace acid {

StepSchedule StepSchedule::harmonic() {
  StepSchedule s;
  s.family_ = StepFamily::harmonic;
  s.square_summable_ = true;
  return s;
}

StepSchedule StepSchedule::power(double a, double b) {
  if (!(a > 0.0)) throw std::invalid_argument("StepSchedule: a must be > 0");
  StepSchedule s;
  s.family_ = StepFamily::power;
  s.a_ = a;
  s.b_ = b;
  s.square_summable_ = b > 0.5;
  return s;
}

StepSchedule StepSchedule::constant(double value) {
  if (!(value > 0.0))
    throw std::invalid_argument("StepSchedule: constant step must be > 0");
  StepSchedule s;
  s.family_ = StepFamily::constant;
  s.a_ = value;
  s.square_summable_ = false;
  return s;
}

StepSchedule StepSchedule::explicit_list(std::vector<double> values,
                                         bool square_summable) {
  for (double v : values)
    if (!(v > 0.0))
      throw std::invalid_argument("StepSchedule: all steps must be > 0");
  StepSchedule s;
  s.family_ = StepFamily::explicit_list;
  s.values_ = std::move(values);
  s.square_summable_ = square_summable;
  return s;
}

double StepSchedule::at(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("StepSchedule: index must be >= 1");
  switch (family_) {
    case StepFamily::harmonic:
      return 1.0 / static_cast<double>(n);
    case StepFamily::power:
      return a_ * std::pow(static_cast<double>(n), -b_);
    case StepFamily::constant:
      return a_;
    case StepFamily::explicit_list:
      if (n > values_.size())
        throw std::out_of_range("StepSchedule: index " + std::to_string(n) +
                                " beyond explicit list of size " +
                                std::to_string(values_.size()));
      return values_[n - 1];
  }
  return 0.0;
}

namespace {

void check_schedule_args(double h_obs, double scale_c) {
  if (!(h_obs > 0.0))
    throw std::invalid_argument("BandwidthSchedule: h_obs must be > 0");
  if (!(scale_c > 0.0))
    throw std::invalid_argument("BandwidthSchedule: scale_c must be > 0");
}

}  // namespace

BandwidthSchedule BandwidthSchedule::exponential(std::size_t n_obs,
                                                 double h_obs, double b2,
                                                 std::size_t horizon,
                                                 double scale_c) {
  check_schedule_args(h_obs, scale_c);
  BandwidthSchedule s;
  s.family_ = BandwidthFamily::exponential;
  s.n_obs_ = n_obs;
  s.horizon_ = horizon;
  s.h_obs_ = h_obs;
  s.b2_ = b2;
  s.scale_c_ = scale_c;
  return s;
}

BandwidthSchedule BandwidthSchedule::polynomial(std::size_t n_obs,
                                                double h_obs, double a,
                                                double b, std::size_t horizon,
                                                double scale_c) {
  check_schedule_args(h_obs, scale_c);
  if (!(a > 0.0))
    throw std::invalid_argument("BandwidthSchedule: polynomial a must be > 0");
  BandwidthSchedule s;
  s.family_ = BandwidthFamily::polynomial;
  s.n_obs_ = n_obs;
  s.horizon_ = horizon;
  s.h_obs_ = h_obs;
  s.poly_a_ = a;
  s.poly_b_ = b;
  s.scale_c_ = scale_c;
  return s;
}

BandwidthSchedule BandwidthSchedule::explicit_list(std::size_t n_obs,
                                                   double h_obs,
                                                   std::vector<double> forward,
                                                   double scale_c) {
  check_schedule_args(h_obs, scale_c);
  for (double v : forward)
    if (!(v > 0.0))
      throw std::invalid_argument(
          "BandwidthSchedule: all forward entries must be > 0");
  BandwidthSchedule s;
  s.family_ = BandwidthFamily::explicit_list;
  s.n_obs_ = n_obs;
  s.horizon_ = forward.size();
  s.h_obs_ = h_obs;
  s.forward_values_ = std::move(forward);
  s.scale_c_ = scale_c;
  return s;
}

double BandwidthSchedule::log_at(std::size_t i) const {
  if (i == 0 || i > total_count())
    throw std::out_of_range("BandwidthSchedule: index " + std::to_string(i) +
                            " outside [1, " + std::to_string(total_count()) +
                            "]");
  double base = std::log(scale_c_);
  if (i <= n_obs_) return base + std::log(h_obs_);
  double k = static_cast<double>(i - n_obs_);
  switch (family_) {
    case BandwidthFamily::exponential:
      return base + std::log(h_obs_) - b2_ * k;
    case BandwidthFamily::polynomial:
      return base + std::log(poly_a_) - poly_b_ * std::log(k);
    case BandwidthFamily::explicit_list:
      return base + std::log(forward_values_[i - n_obs_ - 1]);
  }
  return 0.0;
}

double BandwidthSchedule::at(std::size_t i) const {
  return std::exp(log_at(i));
}

double BandwidthSchedule::ratio(std::size_t i, std::size_t j) const {
  return std::exp(log_at(i) - log_at(j));
}

bool BandwidthSchedule::decaying() const {
  switch (family_) {
    case BandwidthFamily::exponential:
      return b2_ > 0.0;
    case BandwidthFamily::polynomial:
      return poly_b_ > 0.0;
    case BandwidthFamily::explicit_list:
      for (std::size_t k = 1; k < forward_values_.size(); ++k)
        if (forward_values_[k] >= forward_values_[k - 1]) return false;
      return true;
  }
  return false;
}

std::vector<double> BandwidthSchedule::observed_part() const {
  return std::vector<double>(n_obs_, scale_c_ * h_obs_);
}

std::vector<double> BandwidthSchedule::forward_part() const {
  std::vector<double> out(horizon_);
  for (std::size_t k = 1; k <= horizon_; ++k) out[k - 1] = at(n_obs_ + k);
  return out;
}

}  // namespace acid
