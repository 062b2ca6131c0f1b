#pragma once

#include <cstddef>
#include <vector>

namespace acid {

double normal_pdf(double x);
double normal_cdf(double x);
//! Inverse standard normal CDF (rational approximation plus one Halley step).
double normal_quantile(double p);

//! Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

//! CDF of the standard Student-t with df degrees of freedom.
double student_t_cdf(double t, double df);

double student_t_pdf(double x, double df);

//! Location-scale Student-t density.
double student_t_pdf(double x, double location, double scale, double df);

//! Type-7 quantile (linear interpolation) of an unsorted sample.
double quantile_type7(std::vector<double> values, double q);
//! Same, for data already sorted ascending.
double quantile_type7_sorted(const std::vector<double>& sorted, double q);

double mean(const std::vector<double>& values);
//! Sample standard deviation (n - 1 denominator).
double sample_sd(const std::vector<double>& values);
double interquartile_range(const std::vector<double>& values);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace acid
