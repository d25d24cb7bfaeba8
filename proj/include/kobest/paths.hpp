#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kobest/bounds.hpp"
#include "kobest/curve.hpp"
#include "kobest/distance.hpp"
#include "kobest/quadrature.hpp"

namespace kobest {

// Integral of the Lemma 4.1 metric upper bound along the curve; a valid upper
// bound for k between the curve endpoints. Throws on quadrature
// non-convergence or when the curve exits the domain.
double length_upper(const Domain& domain, const Curve& curve, double a, double b,
                    const QuadOptions& opt = {});
inline double length_upper(const Domain& domain, const Curve& curve, const QuadOptions& opt = {}) {
  return length_upper(domain, curve, curve.a, curve.b, opt);
}

// Certified distance bounds between curve points addressed by parameter.
using PairOracle = std::function<BoundValue(double s, double t)>;

// Wraps the distance dispatcher; when grid is supplied, cumulative
// length_upper values along the curve refine the upper bound for grid pairs.
PairOracle make_curve_pair_oracle(const Domain& domain, const Curve& curve,
                                  const DistanceStrategy& strategy,
                                  const std::vector<double>& grid = {},
                                  bool add_curve_length = true);

// Certified (A,B)-quasi-geodesic check over grid pairs:
//   upper side   dist_upper(s,t) <= A|s-t| + B
//   lower side   A^{-1}|s-t| - B <= dist_lower(s,t)
// A pass certifies the true distances satisfy both inequalities on the grid.
struct QGReport {
  double A = 1.0;
  double B = 0.0;
  bool pass = false;
  int inconclusive_pairs = 0;            // oracle returned an unbounded interval
  double worst_upper_margin = kInf;      // min of A|s-t| + B - upper
  double worst_lower_margin = kInf;      // min of lower - (|s-t|/A - B)
  std::pair<double, double> upper_witness{0, 0};
  std::pair<double, double> lower_witness{0, 0};
  std::string grid_description;
};

QGReport verify_quasi_geodesic(const std::vector<double>& grid, double A, double B,
                               const PairOracle& oracle);

struct QGScanOptions {
  double A_max = 16.0;
  double B_max = 1.0;
  double step = 0.01;
};

struct QGScanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest A >= 1, then smallest B >= 0 (lexicographic on a 0.01 grid subject
// to the caps) such that verification passes; the result is re-verified.
struct QGEstimate {
  double A = 1.0;
  double B = 0.0;
  QGReport report;
};
QGEstimate estimate_qg_constants(const std::vector<double>& grid, const PairOracle& oracle,
                                 const QGScanOptions& opt = {});

}  // namespace kobest
