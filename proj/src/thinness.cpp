#include "kobest/thinness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kobest {

SideLowerResult point_to_side_lower(const CVec& x, const Curve& side,
                                    const std::vector<double>& grid, const PointOracle& oracle) {
  if (grid.size() < 2) throw std::invalid_argument("point_to_side_lower: grid too small");
  for (double u : grid)
    if (u < side.a - 1e-9 || u > side.b + 1e-9)
      throw std::invalid_argument("point_to_side_lower: grid leaves the side's interval");
  SideLowerResult res;
  res.samples = static_cast<int>(grid.size());

  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = oracle(x, side.point_at(grid[i])).lower;
    if (vals[i] < res.raw_min) {
      res.raw_min = vals[i];
      res.witness_param = grid[i];
    }
  }

  // Per-segment margins: between adjacent samples the bound may dip below
  // their minimum by the local Lipschitz estimate times the half-step.
  bool nondec = true, noninc = true;
  double cert = res.raw_min;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double dv = vals[i + 1] - vals[i];
    nondec = nondec && dv >= -1e-12;
    noninc = noninc && dv <= 1e-12;
    cert = std::min(cert, std::min(vals[i], vals[i + 1]) - std::abs(dv) / 2.0);
  }
  res.monotone = nondec || noninc;
  if (res.monotone) cert = res.raw_min;  // min sits at a sampled endpoint
  res.certified = std::max(0.0, cert);
  res.margin = res.raw_min - res.certified;
  return res;
}

void QGTriangle::validate(double tol) const {
  double scale_len = 1.0;
  for (const Curve& s : sides) scale_len = std::max(scale_len, norm(s.point_at(s.a)));
  for (int i = 0; i < 3; ++i) {
    const Curve& cur = sides[i];
    const Curve& nxt = sides[(i + 1) % 3];
    if (dist(cur.point_at(cur.b), nxt.point_at(nxt.a)) > tol * scale_len)
      throw std::invalid_argument("QGTriangle: side endpoints do not match cyclically");
    if (!reports[i].pass)
      throw std::invalid_argument("QGTriangle: side " + std::to_string(i) +
                                  " lacks a passing quasi-geodesic report");
  }
}

std::vector<ThinnessReport> thinness(const QGTriangle& triangle, int on_side,
                                     const std::vector<double>& test_params,
                                     const PointOracle& oracle, int side_samples) {
  if (on_side < 0 || on_side > 2) throw std::invalid_argument("thinness: side index out of range");
  triangle.validate();

  std::vector<ThinnessReport> out;
  const Curve& host = triangle.sides[on_side];
  std::array<int, 2> opp = {(on_side + 1) % 3, (on_side + 2) % 3};

  for (double tp : test_params) {
    ThinnessReport rep;
    rep.test_point = host.point_at(tp);
    rep.side_resolution = side_samples;
    for (int k = 0; k < 2; ++k) {
      const Curve& side = triangle.sides[opp[k]];
      rep.opposite[k] = point_to_side_lower(rep.test_point, side,
                                            uniform_grid(side.a, side.b, side_samples), oracle);
    }
    rep.certified_not_thin_for_M =
        std::min(rep.opposite[0].certified, rep.opposite[1].certified);
    out.push_back(std::move(rep));
  }
  return out;
}

double delta_fourpoint(const std::vector<CVec>& points,
                       const std::function<double(const CVec&, const CVec&)>& dist_fn) {
  const std::size_t n = points.size();
  if (n < 4) throw std::invalid_argument("delta_fourpoint: need at least 4 points");

  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = dist_fn(points[i], points[j]);

  double best = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t e = c + 1; e < n; ++e) {
          double s1 = d[a * n + b] + d[c * n + e];
          double s2 = d[a * n + c] + d[b * n + e];
          double s3 = d[a * n + e] + d[b * n + c];
          double hi = std::max({s1, s2, s3});
          double mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
          best = std::max(best, (hi - mid) / 2.0);
        }
  return best;
}

}  // namespace kobest
