#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace kobest {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 48;
};

struct QuadResult {
  double value = 0.0;
  bool converged = true;
};

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, const QuadOptions& opt,
                    int depth, bool& ok) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double err = left + right - whole;
  if (std::abs(err) <= 15.0 * (opt.abs_tol + opt.rel_tol * std::abs(left + right)))
    return left + right + err / 15.0;
  if (depth >= opt.max_depth) {
    ok = false;
    return left + right;
  }
  return adapt(f, a, fa, m, fm, lm, flm, left, opt, depth + 1, ok) +
         adapt(f, m, fm, b, fb, rm, frm, right, opt, depth + 1, ok);
}

}  // namespace detail

// Adaptive Simpson quadrature. The result flags non-convergence instead of
// silently accepting a bad panel.
inline QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                            const QuadOptions& opt = {}) {
  if (!(a <= b)) throw std::invalid_argument("integrate: empty interval");
  if (a == b) return {0.0, true};
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = detail::simpson(a, fa, b, fb, fm);
  bool ok = true;
  double v = detail::adapt(f, a, fa, b, fb, m, fm, whole, opt, 0, ok);
  return {v, ok};
}

}  // namespace kobest
