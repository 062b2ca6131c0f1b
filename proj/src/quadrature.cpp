#include "acid/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "acid/errors.hpp"

namespace acid {

namespace {

struct SimpsonState {
  const std::function<double(double)>* f;
  double achieved = 0.0;
  bool converged = true;
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(SimpsonState& st, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = (*st.f)(lm), frm = (*st.f)(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    if (depth <= 0 && std::fabs(delta) > 15.0 * tol) st.converged = false;
    st.achieved += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    const std::vector<double>& breakpoints) {
  if (!(hi > lo)) return {0.0, 0.0, true};
  std::vector<double> knots{lo, hi};
  for (double b : breakpoints)
    if (b > lo && b < hi) knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  SimpsonState st;
  st.f = &f;
  double total = 0.0;
  double piece_tol = abs_tol / static_cast<double>(knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double a = knots[i], b = knots[i + 1];
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(fa, fm, fb, b - a);
    total += adapt(st, a, b, fa, fm, fb, whole, piece_tol, 48);
  }
  return {total, st.achieved, st.converged && st.achieved <= abs_tol};
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, const std::vector<double>& breakpoints) {
  QuadratureResult r = integrate_adaptive(f, lo, hi, abs_tol, breakpoints);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "quadrature did not reach tolerance " << abs_tol
        << " (achieved " << r.abs_error << ")";
    throw numeric_error(msg.str());
  }
  return r.value;
}

}  // namespace acid
