#include "kobest/distance.hpp"

#include <algorithm>
#include <cmath>

#include "kobest/model_metrics.hpp"
#include "kobest/quadrature.hpp"

namespace kobest {

namespace {

double chord_length_upper(const Domain& d, const CVec& p, const CVec& q) {
  CVec dir = sub(q, p);
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  opt.max_depth = 24;
  QuadResult r = integrate(
      [&](double t) {
        CVec z = axpy(p, Cx(t, 0), dir);
        if (auto m = d.exact_metric(z, dir)) return *m;
        return norm(dir) / d.dir_boundary_dist_cert_lower(z, dir);
      },
      0.0, 1.0, opt);
  return r.value;
}

}  // namespace

BoundValue kobayashi_distance(const Domain& domain, const CVec& p, const CVec& q,
                              const DistanceStrategy& strategy) {
  domain.require_inside(p, "kobayashi_distance");
  domain.require_inside(q, "kobayashi_distance");

  if (dist(p, q) == 0.0) return BoundValue::exact(0.0, "coincident-points");

  if (strategy.use_exact) {
    if (auto v = domain.exact_distance(p, q)) return BoundValue::exact(*v);
  }

  // Hartogs domains are bracketed by their product envelopes:
  // base x D(r)_*  subset  Omega_phi  subset  base x D(R)_*.
  if (auto parts = hartogs_parts(domain)) {
    BoundValue out;
    BoundValue lo = kobayashi_distance(*parts->lower_envelope, p, q, strategy);
    out.refine_lower(lo.lower, "sandwich-outer(" + lo.lower_source + ")");
    if (parts->upper_envelope->contains(p) && parts->upper_envelope->contains(q)) {
      BoundValue up = kobayashi_distance(*parts->upper_envelope, p, q, strategy);
      out.refine_upper(up.upper, "sandwich-inner(" + up.upper_source + ")");
    }
    return out;
  }

  // Products combine factor bounds with max.
  auto factors = domain.product_factors();
  if (factors.size() > 1) {
    std::vector<BoundValue> vals;
    for (const auto& f : factors) {
      CVec pf(p.begin() + f.offset, p.begin() + f.offset + f.domain->dimension());
      CVec qf(q.begin() + f.offset, q.begin() + f.offset + f.domain->dimension());
      vals.push_back(kobayashi_distance(*f.domain, pf, qf, strategy));
    }
    return distance_product(vals);
  }

  BoundValue out;

  // ---- lower bounds ----
  if (strategy.use_core) {
    if (domain.is_c_convex()) {
      out.refine_lower(distance_lower_bound_cconvex(domain, p, q), "Prop4.3");
    } else if (const Domain* core = domain.cconvex_core()) {
      out.refine_lower(distance_lower_bound_cconvex(*core, p, q), "Prop4.3-core");
    }
  }
  if (strategy.use_functionals) {
    for (const PuncturedFunctional& pf : domain.punctured_functionals()) {
      Cx a = pf.plane.eval(p), b = pf.plane.eval(q);
      double rho = pf.sup_radius;
      if (!(std::abs(a) > 0) || !(std::abs(a) < rho)) continue;
      if (!(std::abs(b) > 0) || !(std::abs(b) < rho)) continue;
      double pad = boundary_rounding_allowance(1.0 - std::abs(a) / rho,
                                               1.0 - std::abs(b) / rho) +
                   boundary_rounding_allowance(std::abs(a) / rho, std::abs(b) / rho);
      double v = distance_punctured_disc(a, b, rho) - pad;
      if (v > 0) out.refine_lower(v, "punctured-functional");
    }
  }
  for (const RealHalfSpace& hs : strategy.halfspaces) {
    if (hs.dist(p) > 0 && hs.dist(q) > 0)
      out.refine_lower(distance_lower_bound_halfspace(hs, p, q), "halfspace");
  }
  if (strategy.lemma33_zeta && domain.is_weakly_linearly_convex())
    out.refine_lower(distance_lower_bound_wlc(domain, p, q, *strategy.lemma33_zeta), "Lemma3.3");

  // ---- upper bounds ----
  if (strategy.use_slice) {
    if (auto s = domain.slice_distance_upper(p, q)) out.refine_upper(*s, "slice");
  }
  if (strategy.use_chord && domain.bounded() && domain.segment_inside(p, q))
    out.refine_upper(chord_length_upper(domain, p, q), "chord");
  if (strategy.use_mesh && domain.bounded()) {
    try {
      out.refine_upper(distance_upper_mesh(domain, p, q, strategy.mesh), "mesh");
    } catch (const MeshError&) {
      // resolution too coarse for this pair; other upper bounds stand
    }
  }

  return out;
}

}  // namespace kobest
