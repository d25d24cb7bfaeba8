#include "kobest/paths.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kobest/estimates.hpp"

namespace kobest {

double length_upper(const Domain& domain, const Curve& curve, double a, double b,
                    const QuadOptions& opt) {
  if (!(a <= b)) throw std::invalid_argument("length_upper: empty interval");
  if (a == b) return 0.0;
  // split at derivative discontinuities so each panel sees a smooth integrand
  std::vector<double> cuts{a};
  for (double bp : curve.breakpoints)
    if (bp > a + 1e-15 && bp < b - 1e-15) cuts.push_back(bp);
  cuts.push_back(b);
  auto f = [&](double u) {
    CVec v = curve.derivative_at(u);
    if (norm2(v) == 0.0) return 0.0;  // stationary parameter stretch
    return metric_upper_bound(domain, curve.point_at(u), v);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (cuts.size() > 2) {
      // inset the evaluation window so junction samples stay one-sided, and
      // cover the slivers with one-sided rectangle terms
      double eps = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
      if (hi - lo > 4 * eps) {
        total += eps * (f(lo + eps) + f(hi - eps)) * 2.0;
        lo += eps;
        hi -= eps;
      }
    }
    QuadResult r = integrate(f, lo, hi, opt);
    if (!r.converged) throw std::runtime_error("length_upper: quadrature did not converge");
    total += r.value;
  }
  return total;
}

PairOracle make_curve_pair_oracle(const Domain& domain, const Curve& curve,
                                  const DistanceStrategy& strategy,
                                  const std::vector<double>& grid, bool add_curve_length) {
  // Cumulative curve length at the grid params gives an additive upper bound
  // between any two grid params.
  std::vector<double> params = grid;
  std::sort(params.begin(), params.end());
  std::vector<double> cum(params.size(), 0.0);
  if (add_curve_length && params.size() >= 2) {
    for (std::size_t i = 1; i < params.size(); ++i)
      cum[i] = cum[i - 1] + length_upper(domain, curve, params[i - 1], params[i]);
  }
  auto lookup = [params, cum](double u) -> std::optional<double> {
    auto it = std::lower_bound(params.begin(), params.end(), u - 1e-12);
    if (it == params.end() || std::abs(*it - u) > 1e-9) return std::nullopt;
    return cum[static_cast<std::size_t>(it - params.begin())];
  };
  const Domain* dom = &domain;
  Curve c = curve;
  bool use_len = add_curve_length && params.size() >= 2;
  return [dom, c, strategy, lookup, use_len](double s, double t) {
    BoundValue bv = kobayashi_distance(*dom, c.point_at(s), c.point_at(t), strategy);
    if (use_len) {
      auto cs = lookup(s), ct = lookup(t);
      if (cs && ct) bv.refine_upper(std::abs(*ct - *cs), "length-curve");
    }
    return bv;
  };
}

namespace {

std::string describe_grid(const std::vector<double>& grid) {
  std::ostringstream os;
  os << grid.size() << " params on [" << grid.front() << ", " << grid.back() << "]";
  return os.str();
}

}  // namespace

QGReport verify_quasi_geodesic(const std::vector<double>& grid, double A, double B,
                               const PairOracle& oracle) {
  if (!(A >= 1.0) || !(B >= 0.0))
    throw std::invalid_argument("verify_quasi_geodesic: need A >= 1 and B >= 0");
  if (grid.size() < 2) throw std::invalid_argument("verify_quasi_geodesic: grid too small");

  QGReport rep;
  rep.A = A;
  rep.B = B;
  rep.grid_description = describe_grid(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      double s = grid[i], t = grid[j];
      double d = std::abs(t - s);
      BoundValue bv = oracle(s, t);
      if (!bv.upper_finite()) {
        ++rep.inconclusive_pairs;
        continue;
      }
      double um = A * d + B - bv.upper;
      if (um < rep.worst_upper_margin) {
        rep.worst_upper_margin = um;
        rep.upper_witness = {s, t};
      }
      double lm = bv.lower - (d / A - B);
      if (lm < rep.worst_lower_margin) {
        rep.worst_lower_margin = lm;
        rep.lower_witness = {s, t};
      }
    }
  }
  // tiny slack absorbs double rounding in exact-model oracles (a true
  // geodesic would otherwise fail (1,0) by ~1e-13)
  constexpr double kFloatSlack = 1e-9;
  rep.pass = rep.inconclusive_pairs == 0 && rep.worst_upper_margin >= -kFloatSlack &&
             rep.worst_lower_margin >= -kFloatSlack;
  return rep;
}

QGEstimate estimate_qg_constants(const std::vector<double>& grid, const PairOracle& oracle,
                                 const QGScanOptions& opt) {
  if (grid.size() < 2) throw std::invalid_argument("estimate_qg_constants: grid too small");

  struct Pair {
    double d, lower, upper;
  };
  std::vector<Pair> pairs;
  double worst_d = 0, worst_gap = -kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      BoundValue bv = oracle(grid[i], grid[j]);
      double d = std::abs(grid[j] - grid[i]);
      if (!bv.upper_finite())
        throw QGScanError("estimate_qg_constants: unbounded distance interval at pair (" +
                          std::to_string(grid[i]) + ", " + std::to_string(grid[j]) + ")");
      pairs.push_back({d, bv.lower, bv.upper});
    }
  }

  for (double A = 1.0; A <= opt.A_max + 1e-12; A += opt.step) {
    double breq = 0.0;
    for (const Pair& pr : pairs) {
      breq = std::max(breq, pr.upper - A * pr.d);
      breq = std::max(breq, pr.d / A - pr.lower);
    }
    if (breq <= opt.B_max + 1e-12) {
      double B = std::ceil(std::max(0.0, breq) / opt.step) * opt.step;
      while (B < breq) B += opt.step;
      QGEstimate est;
      est.A = A;
      est.B = B;
      est.report = verify_quasi_geodesic(grid, A, B, oracle);
      if (!est.report.pass)
        throw QGScanError("estimate_qg_constants: re-verification failed at scanned constants");
      return est;
    }
    if (breq < worst_gap || !std::isfinite(worst_gap)) worst_gap = breq, worst_d = A;
  }
  throw QGScanError("estimate_qg_constants: no feasible (A,B) within scan range (smallest B gap " +
                    std::to_string(worst_gap) + " at A " + std::to_string(worst_d) + ")");
}

}  // namespace kobest
