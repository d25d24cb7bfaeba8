#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "kobest/complex_linalg.hpp"

namespace kobest {

// Exact Kobayashi formulas on the one-dimensional model domains.
// Normalization: distance on the unit disc is arctanh of the Moebius
// quotient (curvature -4), so the infinitesimal form at 0 is |v|.

// Kobayashi metric of the disc D(r): r|v| / (r^2 - |z|^2).
inline double metric_disc(Cx z, Cx v, double r) {
  if (!(r > 0)) throw std::invalid_argument("metric_disc: radius must be positive");
  double az = std::abs(z);
  if (!(az < r)) throw std::domain_error("metric_disc: point outside disc");
  return r * std::abs(v) / (r * r - az * az);
}

// Kobayashi distance of the disc D(r).
inline double distance_disc(Cx z, Cx w, double r) {
  if (!(r > 0)) throw std::invalid_argument("distance_disc: radius must be positive");
  if (!(std::abs(z) < r) || !(std::abs(w) < r))
    throw std::domain_error("distance_disc: argument outside disc");
  Cx zs = z / r, ws = w / r;
  double m = std::abs(zs - ws) / std::abs(1.0 - std::conj(ws) * zs);
  if (m >= 1.0) m = std::nextafter(1.0, 0.0);
  return std::atanh(m);
}

// Kobayashi distance of the upper half-plane { Im > 0 }.
inline double distance_halfplane(Cx u, Cx v) {
  if (!(u.imag() > 0) || !(v.imag() > 0))
    throw std::domain_error("distance_halfplane: nonpositive imaginary part");
  double m = std::abs(u - v) / std::abs(u - std::conj(v));
  if (m >= 1.0) m = std::nextafter(1.0, 0.0);
  return std::atanh(m);
}

// Kobayashi metric of the punctured disc D(r)_*: |v| / (2 |z| log(r/|z|)).
inline double metric_punctured_disc(Cx z, Cx v, double r) {
  if (!(r > 0)) throw std::invalid_argument("metric_punctured_disc: radius must be positive");
  double az = std::abs(z);
  if (!(az > 0) || !(az < r))
    throw std::domain_error("metric_punctured_disc: point outside punctured disc");
  return std::abs(v) / (2.0 * az * std::log(r / az));
}

// Half-plane distance between i*a and phi + i*b for a,b > 0, expressed so it
// stays accurate when a, b are huge (deep cusp points given by log-modulus).
inline double halfplane_dist_heights(double a, double b, double phi) {
  // arctanh(sqrt((phi^2 + (a-b)^2) / (phi^2 + (a+b)^2)))
  // = 0.5 * log1p(2x / (1-x)) with x the quotient; rewrite for stability.
  double num = phi * phi + (a - b) * (a - b);
  double den = phi * phi + (a + b) * (a + b);
  double x = std::sqrt(num / den);
  if (x >= 1.0) x = std::nextafter(1.0, 0.0);
  return std::atanh(x);
}

// Exact punctured-disc distance from log-moduli: la = log(|z|/r) < 0,
// lb = log(|w|/r) < 0, phi = arg(w/z) normalized to [-pi, pi).
inline double distance_punctured_disc_logmod(double la, double lb, double phi) {
  if (!(la < 0) || !(lb < 0))
    throw std::domain_error("distance_punctured_disc_logmod: log-moduli must be negative");
  constexpr double pi = 3.14159265358979323846;
  // Deck candidates phi + 2k pi; with phi in [-pi, pi) the infimum sits at k=0
  // because the half-plane distance grows in |Re| offset. Checked at runtime.
  double v0 = halfplane_dist_heights(-la, -lb, phi);
  double vm = halfplane_dist_heights(-la, -lb, phi - 2 * pi);
  double vp = halfplane_dist_heights(-la, -lb, phi + 2 * pi);
  if (v0 > vm + 1e-12 || v0 > vp + 1e-12)
    throw std::logic_error("punctured-disc deck transform: k=0 not minimal");
  return v0;
}

// Kobayashi distance of the punctured disc D(r)_* (exact, via the covering
// H+ -> D_* of Lemma 3.1's proof).
inline double distance_punctured_disc(Cx z, Cx w, double r) {
  if (!(r > 0)) throw std::invalid_argument("distance_punctured_disc: radius must be positive");
  double az = std::abs(z), aw = std::abs(w);
  if (!(az > 0) || !(az < r) || !(aw > 0) || !(aw < r))
    throw std::domain_error("distance_punctured_disc: argument outside punctured disc");
  constexpr double pi = 3.14159265358979323846;
  double phi = std::arg(w * std::conj(z));  // arg(w/z)
  if (phi >= pi) phi -= 2 * pi;
  return distance_punctured_disc_logmod(std::log(az / r), std::log(aw / r), phi);
}

// Modulus-only lower bound 0.5 |log(log|w| / log|z|)| on k_{D_*} from
// log-moduli (both negative). Exact iff w/z is a positive real.
inline double lower_bound_punctured_log_logmod(double la, double lb) {
  if (!(la < 0) || !(lb < 0))
    throw std::domain_error("lower_bound_punctured_log_logmod: log-moduli must be negative");
  return 0.5 * std::abs(std::log(lb / la));
}

inline double lower_bound_punctured_log(Cx z, Cx w) {
  double az = std::abs(z), aw = std::abs(w);
  if (!(az > 0) || !(az < 1) || !(aw > 0) || !(aw < 1))
    throw std::domain_error("lower_bound_punctured_log: argument outside punctured unit disc");
  return lower_bound_punctured_log_logmod(std::log(az), std::log(aw));
}

// Exact Kobayashi distance of the unit-ball model scaled to B(center, R) is
// not exposed as "exact" by the distance dispatcher (the ball is handled by
// certified bounds); the slice chord through two points is computed in
// domain.cpp instead.

// Conservative absolute rounding allowance for hyperbolic distance values
// whose arguments sit within relative gap g of the boundary circle: the
// log-heights carry eps/g relative noise, so certified bounds are padded by
// this amount (lower bounds down, upper bounds up). Vacuous gaps make the
// padded bound vacuous, which is the honest outcome at the precision limit.
inline double boundary_rounding_allowance(double gap_rel_a, double gap_rel_b) {
  constexpr double keps = 256 * 2.220446049250313e-16;
  double ga = std::max(gap_rel_a, 1e-300), gb = std::max(gap_rel_b, 1e-300);
  return keps * (1.0 / ga + 1.0 / gb);
}

// coth(k): the localization multiplier of Prop 5.2-type estimates.
inline double localization_multiplier(double k) {
  if (!(k > 0)) throw std::domain_error("localization_multiplier: argument must be positive");
  return 1.0 / std::tanh(k);
}

}  // namespace kobest
