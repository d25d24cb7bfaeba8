#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kobest/complex_linalg.hpp"

namespace kobest {

enum class ConvexityClass {
  none,
  weakly_linear,  // every boundary point lies on a complex hyperplane missing the domain
  c_convex,       // nonempty line slices simply connected; implies weakly_linear
};

// Affine functional that maps the domain into a punctured disc D(rho)_*;
// produced by hyperplane removals and Hartogs fibers.
struct PuncturedFunctional {
  Hyperplane plane;
  double sup_radius = 0.0;  // sup |eval| over the base domain
};

// Bounded real-coordinate box [lo_k, hi_k] over the 2n real coordinates.
struct RealBox {
  std::vector<double> lo, hi;
};

// Bounded real function on the base of a Hartogs domain.
struct PhiSpec {
  enum class Kind { constant, cone, step };
  Kind kind = Kind::cone;
  double a = 1.0;  // constant: value; cone: phi = max(0, a - b*||z||); step: inner value
  double b = 2.0;  // cone slope; step: radius of the inner region
  double c = 0.0;  // step: outer value

  double eval(const CVec& z) const;
  double inf_value() const;
  double sup_value() const;
};

class Domain;
using DomainPtr = std::shared_ptr<const Domain>;

// A domain presented through membership, boundary distances and diameter.
// All oracles are immutable after construction and safe to share across
// threads.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::string kind_name() const = 0;
  virtual bool bounded() const = 0;
  virtual ConvexityClass convexity() const = 0;

  bool is_c_convex() const { return convexity() == ConvexityClass::c_convex; }
  bool is_weakly_linearly_convex() const { return convexity() != ConvexityClass::none; }

  virtual bool contains(const CVec& z) const = 0;

  // Euclidean distance to the boundary; a certified under-estimate where an
  // exact value is unavailable (CoordinateDiscHull, composites).
  virtual double boundary_dist(const CVec& z) const = 0;

  // Distance to the boundary within the complex line z + C v. Exact for the
  // analytic models; for CoordinateDiscHull an angular grid with bisection
  // produces a certified upper bound on the infimum (resolution recorded in
  // dir_grid_resolution()).
  virtual double dir_boundary_dist(const CVec& z, const CVec& v) const = 0;

  // Certified lower bound on dir_boundary_dist, safe as the denominator of
  // the Lemma 4.1 metric upper bound. Defaults to dir_boundary_dist for
  // exact-model kinds.
  virtual double dir_boundary_dist_cert_lower(const CVec& z, const CVec& v) const {
    return dir_boundary_dist(z, v);
  }

  virtual double diameter() const = 0;  // throws std::domain_error when unbounded

  // |boundary-gap| used to validate caller-supplied boundary points.
  virtual double boundary_gap(const CVec& z) const = 0;

  // Exact Kobayashi distance / metric when the model has one.
  virtual std::optional<double> exact_distance(const CVec& p, const CVec& q) const {
    (void)p, (void)q;
    return std::nullopt;
  }
  virtual std::optional<double> exact_metric(const CVec& z, const CVec& v) const {
    (void)z, (void)v;
    return std::nullopt;
  }

  // Upper bound on k from the slice of the domain by the complex line through
  // p and q, when that slice is a disc with at most one puncture.
  virtual std::optional<double> slice_distance_upper(const CVec& p, const CVec& q) const {
    (void)p, (void)q;
    return std::nullopt;
  }

  // Functionals pushing the domain into punctured discs (distance lower bounds).
  virtual std::vector<PuncturedFunctional> punctured_functionals() const { return {}; }

  // Largest C-convex domain containing this one that the oracle knows
  // analytically (itself when C-convex, the base for hyperplane removals).
  virtual const Domain* cconvex_core() const { return is_c_convex() ? this : nullptr; }

  // Product structure (max-of-factor distances); polydiscs expose disc factors.
  struct Factor {
    DomainPtr domain;
    std::size_t offset;  // first coordinate index of the factor
  };
  virtual std::vector<Factor> product_factors() const { return {}; }

  // True when the straight segment [a,b] is guaranteed to stay inside.
  virtual bool segment_inside(const CVec& a, const CVec& b) const = 0;

  virtual RealBox bounding_box() const = 0;

  virtual int dir_grid_resolution() const { return 0; }

  // sup_{z in domain} |plane.eval(z)| (finite for bounded kinds).
  virtual double functional_sup(const Hyperplane& plane) const;

  // reference interior point (the center for the models)
  virtual CVec center_point() const;

  void require_dim(const CVec& z) const;
  void require_inside(const CVec& z, const char* who) const;
};

// ---- factories ----
DomainPtr make_disc(double r);
DomainPtr make_punctured_disc(double r);
DomainPtr make_halfplane();
DomainPtr make_ball(CVec center, double r);
DomainPtr make_polydisc(std::vector<double> radii);
DomainPtr make_coordinate_disc_hull(std::vector<double> radii, int angular_grid = 256,
                                    double bisect_tol = 1e-12);
DomainPtr make_product(std::vector<DomainPtr> factors);
DomainPtr make_minus_hyperplanes(DomainPtr base, std::vector<Hyperplane> removed);
// Removes line ∩ window (closed window ball) from the base; with
// remove_inside_window = false the removed set is line ∩ complement(window).
DomainPtr make_localized_removal(DomainPtr base, Hyperplane line, CVec window_center,
                                 double window_radius, bool remove_inside_window = true);
DomainPtr make_hartogs(DomainPtr base, PhiSpec phi);

// Accessors for composite kinds (nullptr/empty when not of that kind).
const Domain* minus_hyperplanes_base(const Domain& d);
std::vector<Hyperplane> minus_hyperplanes_removed(const Domain& d);
struct HartogsParts {
  DomainPtr base;
  PhiSpec phi;
  double r = 0, R = 0;       // e^{-sup phi}, e^{-inf phi}
  DomainPtr lower_envelope;  // base x D(R)_*  (contains the Hartogs domain)
  DomainPtr upper_envelope;  // base x D(r)_*  (contained in the Hartogs domain)
};
std::optional<HartogsParts> hartogs_parts(const Domain& d);

}  // namespace kobest
