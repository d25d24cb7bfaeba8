#include "kobest/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kobest {

double metric_upper_bound(const Domain& domain, const CVec& z, const CVec& v) {
  domain.require_inside(z, "metric_upper_bound");
  validate_direction(v);
  double d = domain.dir_boundary_dist_cert_lower(z, v);
  if (!(d > 0)) throw std::domain_error("metric_upper_bound: zero boundary distance");
  return norm(v) / d;
}

double metric_lower_bound_cconvex(const Domain& domain, const CVec& z, const CVec& v) {
  if (!domain.is_c_convex())
    throw std::domain_error("metric_lower_bound_cconvex: domain is not flagged C-convex");
  domain.require_inside(z, "metric_lower_bound_cconvex");
  validate_direction(v);
  double d = domain.dir_boundary_dist(z, v);
  if (!std::isfinite(d)) return 0.0;
  return norm(v) / (4.0 * d);
}

double distance_lower_bound_cconvex(const Domain& domain, const CVec& p, const CVec& q) {
  if (!domain.is_c_convex())
    throw std::domain_error("distance_lower_bound_cconvex: domain is not flagged C-convex");
  domain.require_inside(p, "distance_lower_bound_cconvex");
  domain.require_inside(q, "distance_lower_bound_cconvex");
  CVec d = sub(q, p);
  double nd = norm(d);
  if (nd == 0.0) return 0.0;
  double dp = domain.dir_boundary_dist(p, d);
  double dq = domain.dir_boundary_dist(q, scale(Cx(-1, 0), d));
  double m = std::min(dp, dq);
  if (!std::isfinite(m)) return 0.0;
  return 0.25 * std::log1p(nd / m);
}

double distance_lower_bound_wlc(const Domain& domain, const CVec& p, const CVec& q,
                                const CVec& zeta) {
  if (!domain.is_weakly_linearly_convex())
    throw std::domain_error("distance_lower_bound_wlc: domain not flagged weakly linearly convex");
  domain.require_inside(p, "distance_lower_bound_wlc");
  domain.require_inside(q, "distance_lower_bound_wlc");
  domain.require_dim(zeta);

  double np = dist(p, zeta), nq = dist(q, zeta);
  if (np == 0.0 || nq == 0.0)
    throw std::domain_error("distance_lower_bound_wlc: endpoint coincides with zeta");
  if (dist(p, q) == 0.0) return 0.0;

  // zeta must lie on the complex line through p and q ...
  CVec d = sub(q, p);
  CVec w = sub(zeta, p);
  Cx mu = herm_dot(w, d) / norm2(d);
  double off_line = norm(axpy(w, -mu, d));
  double scale_len = std::max({1.0, np, nq});
  if (off_line > 1e-9 * scale_len)
    throw std::domain_error("distance_lower_bound_wlc: zeta is not on the line through p and q");
  // ... and on the boundary.
  if (domain.boundary_gap(zeta) > 1e-9 * scale_len)
    throw std::domain_error("distance_lower_bound_wlc: zeta is not a boundary point");

  double dd = domain.diameter();
  double lp = std::log(np / dd), lq = std::log(nq / dd);
  if (!(lp < 0) || !(lq < 0))
    throw std::domain_error("distance_lower_bound_wlc: point at diameter distance from zeta");
  return 0.5 * std::abs(std::log(lq / lp));
}

double distance_lower_bound_halfspace(const RealHalfSpace& hs, const CVec& p, const CVec& q) {
  double dp = hs.dist(p), dq = hs.dist(q);
  if (!(dp > 0) || !(dq > 0))
    throw std::domain_error("distance_lower_bound_halfspace: point outside half-space");
  return 0.5 * std::abs(std::log(dp / dq));
}

double distance_lower_bound_halfspace(const CVec& support_point, const CVec& inward_normal,
                                      const CVec& p, const CVec& q) {
  return distance_lower_bound_halfspace(RealHalfSpace(support_point, inward_normal), p, q);
}

BoundValue distance_product(const std::vector<BoundValue>& values) {
  if (values.empty()) throw std::invalid_argument("distance_product: empty list");
  BoundValue out = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    const BoundValue& v = values[i];
    if (v.lower > out.lower) {
      out.lower = v.lower;
      out.lower_source = v.lower_source;
    }
    if (v.upper > out.upper) {
      out.upper = v.upper;
      out.upper_source = v.upper_source;
    }
  }
  out.lower_source = "product-max(" + out.lower_source + ")";
  out.upper_source = "product-max(" + out.upper_source + ")";
  return out;
}

}  // namespace kobest
