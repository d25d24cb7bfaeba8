#pragma once

#include <vector>

#include "kobest/bounds.hpp"
#include "kobest/domain.hpp"
#include "kobest/model_metrics.hpp"

namespace kobest {

// kappa(z; v) <= ||v|| / dist(z; v).
double metric_upper_bound(const Domain& domain, const CVec& z, const CVec& v);

// C-convex lower bound kappa(z; v) >= ||v|| / (4 dist(z; v)). The directional
// distance is a certified upper bound, so the quotient stays a valid lower bound.
double metric_lower_bound_cconvex(const Domain& domain, const CVec& z, const CVec& v);

// k(p, q) >= 1/4 log(1 + ||p-q|| / min(dist(p; q-p), dist(q; p-q))) on
// C-convex domains; returns 0 when p == q.
double distance_lower_bound_cconvex(const Domain& domain, const CVec& p, const CVec& q);

// Projection bound through a boundary point zeta on the line through p and q:
// k(p, q) >= 1/2 |log(log(||p-zeta||/d) / log(||q-zeta||/d))|, d = diam.
// zeta is caller-supplied and validated (collinearity and boundary membership
// within 1e-9).
double distance_lower_bound_wlc(const Domain& domain, const CVec& p, const CVec& q,
                                const CVec& zeta);

// Half-space log-ratio bound: k(p, q) >= 1/2 |log(dist_H(p) / dist_H(q))| for
// any half-space containing the domain.
double distance_lower_bound_halfspace(const RealHalfSpace& hs, const CVec& p, const CVec& q);
double distance_lower_bound_halfspace(const CVec& support_point, const CVec& inward_normal,
                                      const CVec& p, const CVec& q);

// Product distance: componentwise max of the factor bounds.
BoundValue distance_product(const std::vector<BoundValue>& values);

}  // namespace kobest
