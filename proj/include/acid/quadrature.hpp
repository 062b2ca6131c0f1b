#pragma once

#include <functional>
#include <vector>

namespace acid {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
};

//! Adaptive Simpson integration of f over [lo, hi]. The interval is first
//! split at the supplied breakpoints (density kinks defeat a single global
//! rule), then each piece is refined until its error estimate fits within
//! its share of abs_tol or the depth cap is hit.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    const std::vector<double>& breakpoints = {});

//! Same as integrate_adaptive, but throws numeric_error (reporting the
//! achieved tolerance) when the requested tolerance is not met.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, const std::vector<double>& breakpoints = {});

}  // namespace acid
