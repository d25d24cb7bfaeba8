#pragma once

#include <functional>
#include <vector>

#include "kobest/complex_linalg.hpp"
#include "kobest/domain.hpp"

namespace kobest {

// Parametrized path with an interval, point evaluator and derivative
// evaluator. Curves with an analytic derivative carry it; otherwise
// derivative_at falls back to central finite differences with step
// h = 1e-6 (1 + |u|).
struct Curve {
  double a = 0.0;
  double b = 0.0;
  bool truncated_infinite = false;  // b truncates a [a, inf) parameter range
  std::function<CVec(double)> point;
  std::function<CVec(double)> deriv;  // may be empty
  std::vector<double> breakpoints;   // interior derivative discontinuities

  CVec point_at(double u) const { return point(u); }
  CVec derivative_at(double u) const;
  double length_param() const { return b - a; }
};

// Default truncation for infinite parameter ranges (boundary distance decays
// like e^{-2u}, so e^{-12} of the initial scale).
constexpr double kDefaultUMax = 6.0;

// u -> zeta + e^{-2u} (p - zeta); point_at(0) = p, limit zeta.
Curve tent_curve(const CVec& zeta, const CVec& p, double u_max = kDefaultUMax,
                 const Domain* check_inside = nullptr);

// u -> e^{1 - e^{2u}} p; point_at(0) = p.
Curve log_radial_curve(const CVec& p, double u_max = kDefaultUMax,
                       const Domain* check_inside = nullptr);

// u -> e^{-e^{2u}} in the punctured unit disc.
Curve radial_geodesic_punctured(double u_max = 3.0);

// Affine segment p + t (q - p) on [0, 1].
Curve segment_curve(const CVec& p, const CVec& q, const Domain* check_inside = nullptr);

// Unit-speed geodesic of the unit disc from z to w (parametrized on
// [0, k_D(z, w)]).
Curve disc_geodesic(Cx z, Cx w);

Curve reversed(const Curve& c);
Curve restrict_curve(const Curve& c, double a, double b);

// Joins pieces end-to-start on a single interval starting at `start`.
// Endpoints must match within 1e-12 of the ambient scale.
Curve concat_curves(const std::vector<Curve>& pieces, double start = 0.0);

// Samples the curve and verifies containment in the domain.
void check_curve_inside(const Domain& domain, const Curve& c, int samples = 64);

std::vector<double> uniform_grid(double a, double b, int n);

// Grid on [a, b] with tanh clustering toward both endpoints (for bounds whose
// variation is logarithmic near the ends).
std::vector<double> clustered_grid(double a, double b, int n);

}  // namespace kobest
