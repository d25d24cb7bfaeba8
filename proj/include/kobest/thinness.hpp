#pragma once

#include <array>
#include <functional>
#include <vector>

#include "kobest/bounds.hpp"
#include "kobest/curve.hpp"
#include "kobest/paths.hpp"

namespace kobest {

using PointOracle = std::function<BoundValue(const CVec&, const CVec&)>;

// Certified lower bound on the distance from x to a sampled side. The raw
// grid minimum is reduced by a sampling margin (local Lipschitz estimate of
// the bound along the side times the grid half-step); a bound that is
// monotone on the grid removes the margin.
struct SideLowerResult {
  double raw_min = kInf;
  double margin = 0.0;
  double certified = 0.0;
  double witness_param = 0.0;
  bool monotone = false;
  int samples = 0;
};

SideLowerResult point_to_side_lower(const CVec& x, const Curve& side,
                                    const std::vector<double>& grid, const PointOracle& oracle);

// Three quasi-geodesic sides with cyclically matched endpoints.
struct QGTriangle {
  std::array<Curve, 3> sides;
  std::array<QGReport, 3> reports;

  // endpoint matching within tol and all side reports passing
  void validate(double tol = 1e-9) const;
};

struct ThinnessReport {
  CVec test_point;
  std::array<SideLowerResult, 2> opposite;  // lower bounds to the two opposite sides
  double certified_not_thin_for_M = 0.0;    // min of the two certified levels
  int side_resolution = 0;
};

// Thinness evaluation: test points sampled on side `on_side`, distance lower
// bounds against the other two sides.
std::vector<ThinnessReport> thinness(const QGTriangle& triangle, int on_side,
                                     const std::vector<double>& test_params,
                                     const PointOracle& oracle, int side_samples = 64);

// Gromov four-point defect: max over 4-subsets of (sum1 - sum2)/2 where
// sum1 >= sum2 >= sum3 are the three pairings of pairwise distance sums.
// Distances are exact or BoundValue midpoints (the caller's dist function).
double delta_fourpoint(const std::vector<CVec>& points,
                       const std::function<double(const CVec&, const CVec&)>& dist_fn);

}  // namespace kobest
