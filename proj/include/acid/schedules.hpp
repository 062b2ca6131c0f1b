#pragma once

#include <cstddef>
#include <vector>

namespace acid {

enum class StepFamily { harmonic, power, constant, explicit_list };

//! Step-size sequence eta_n used by the recursive parameter updates.
//! Closed-form families carry their square-summability classification.
class StepSchedule {
 public:
  static StepSchedule harmonic();                       // eta_n = 1/n
  static StepSchedule power(double a, double b);        // eta_n = a * n^-b
  static StepSchedule constant(double value);
  static StepSchedule explicit_list(std::vector<double> values,
                                    bool square_summable = false);

  //! eta_n for n >= 1.
  double at(std::size_t n) const;
  bool square_summable() const { return square_summable_; }
  StepFamily family() const { return family_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }

 private:
  StepSchedule() = default;
  StepFamily family_ = StepFamily::harmonic;
  double a_ = 1.0;
  double b_ = 1.0;
  std::vector<double> values_;
  bool square_summable_ = true;
};

enum class BandwidthFamily { exponential, polynomial, explicit_list };

//! Bandwidth sequence h_1..h_{n_obs + horizon}: a flat observed prefix
//! (all entries equal to the selected h_n) followed by a decaying forward
//! part. Entries and ratios are evaluated from the family formula, so
//! fast-decaying theoretical sequences (h_i = e^-i over thousands of steps)
//! stay usable where raw values would underflow.
class BandwidthSchedule {
 public:
  //! Forward part h_{n_obs + i} = scale_c * h_obs * exp(-b2 * i).
  static BandwidthSchedule exponential(std::size_t n_obs, double h_obs,
                                       double b2, std::size_t horizon,
                                       double scale_c = 1.0);
  //! Forward part h_{n_obs + i} = scale_c * a * i^-b.
  static BandwidthSchedule polynomial(std::size_t n_obs, double h_obs,
                                      double a, double b, std::size_t horizon,
                                      double scale_c = 1.0);
  static BandwidthSchedule explicit_list(std::size_t n_obs, double h_obs,
                                         std::vector<double> forward,
                                         double scale_c = 1.0);

  //! h_i for the 1-based global index i in [1, total_count()].
  double at(std::size_t i) const;
  //! h_i / h_j, computed in log space for the closed-form families.
  double ratio(std::size_t i, std::size_t j) const;

  std::size_t observed_count() const { return n_obs_; }
  std::size_t total_count() const { return n_obs_ + horizon_; }
  double scale() const { return scale_c_; }
  BandwidthFamily family() const { return family_; }
  double decay_b2() const { return b2_; }
  double poly_exponent() const { return poly_b_; }
  //! False when the forward part is not strictly decreasing (b2 <= 0).
  bool decaying() const;

  std::vector<double> observed_part() const;
  std::vector<double> forward_part() const;

 private:
  BandwidthSchedule() = default;
  double log_at(std::size_t i) const;

  BandwidthFamily family_ = BandwidthFamily::exponential;
  std::size_t n_obs_ = 0;
  std::size_t horizon_ = 0;
  double h_obs_ = 1.0;
  double b2_ = 0.0;      // exponential decay rate
  double poly_a_ = 1.0;  // polynomial scale
  double poly_b_ = 0.0;  // polynomial exponent
  double scale_c_ = 1.0;
  std::vector<double> forward_values_;
};

}  // namespace acid
