#include "kobest/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kobest/model_metrics.hpp"

namespace kobest {

namespace {

constexpr double kHyperplaneBand = 1e-14;  // degenerate-input rejection band

CVec subvec(const CVec& z, std::size_t offset, std::size_t len) {
  return CVec(z.begin() + offset, z.begin() + offset + len);
}

// min over t in [0,1] of |c0 + t*c1|.
double segment_min_abs(Cx c0, Cx c1) {
  double d2 = std::norm(c1);
  if (d2 == 0.0) return std::abs(c0);
  double t = std::clamp(-(c0 * std::conj(c1)).real() / d2, 0.0, 1.0);
  return std::abs(c0 + t * c1);
}

// min over t in [0,1] of ||a + t*(b-a) - c||.
double segment_point_dist(const CVec& a, const CVec& b, const CVec& c) {
  CVec d = sub(b, a), w = sub(a, c);
  double d2 = norm2(d);
  if (d2 == 0.0) return norm(w);
  double t = std::clamp(-herm_dot(w, d).real() / d2, 0.0, 1.0);
  return norm(axpy(w, Cx(t, 0), d));
}

struct SliceDisc {
  Cx mu_p, mu_q;
  double rho;
};

// Distance upper bound from a disc slice with at most one puncture, padded
// by the near-boundary rounding allowance so it stays a certified upper
// bound under double rounding.
double slice_bound(const SliceDisc& s, const std::vector<Cx>& punctures) {
  Cx zp = s.mu_p / s.rho, zq = s.mu_q / s.rho;
  if (punctures.empty()) {
    double pad = boundary_rounding_allowance(1.0 - std::abs(zp), 1.0 - std::abs(zq));
    return distance_disc(s.mu_p, s.mu_q, s.rho) + pad;
  }
  Cx a = punctures.front() / s.rho;
  auto moebius = [&](Cx w) { return (w - a) / (1.0 - std::conj(a) * w); };
  Cx ma = moebius(zp), mb = moebius(zq);
  double pad = boundary_rounding_allowance(1.0 - std::abs(ma), 1.0 - std::abs(mb)) +
               boundary_rounding_allowance(std::abs(ma), std::abs(mb));
  return distance_punctured_disc(ma, mb, 1.0) + pad;
}

}  // namespace

double PhiSpec::eval(const CVec& z) const {
  switch (kind) {
    case Kind::constant:
      return a;
    case Kind::cone:
      return std::max(0.0, a - b * norm(z));
    case Kind::step:
      return norm(z) <= b ? a : c;
  }
  return a;
}

double PhiSpec::inf_value() const {
  switch (kind) {
    case Kind::constant:
      return a;
    case Kind::cone:
      return std::min(0.0, a);
    case Kind::step:
      return std::min(a, c);
  }
  return a;
}

double PhiSpec::sup_value() const {
  switch (kind) {
    case Kind::constant:
      return a;
    case Kind::cone:
      return std::max(0.0, a);
    case Kind::step:
      return std::max(a, c);
  }
  return a;
}

void Domain::require_dim(const CVec& z) const {
  if (z.size() != dimension()) throw std::invalid_argument("dimension mismatch");
}

void Domain::require_inside(const CVec& z, const char* who) const {
  require_dim(z);
  if (!contains(z)) throw std::domain_error(std::string(who) + ": point outside domain");
}

CVec Domain::center_point() const {
  RealBox box = bounding_box();
  CVec c(dimension());
  for (std::size_t j = 0; j < dimension(); ++j)
    c[j] = Cx(0.5 * (box.lo[2 * j] + box.hi[2 * j]), 0.5 * (box.lo[2 * j + 1] + box.hi[2 * j + 1]));
  return c;
}

double Domain::functional_sup(const Hyperplane& plane) const {
  RealBox box = bounding_box();
  double s = std::abs(plane.offset);
  for (std::size_t j = 0; j < dimension(); ++j) {
    double mr = std::max(std::abs(box.lo[2 * j]), std::abs(box.hi[2 * j]));
    double mi = std::max(std::abs(box.lo[2 * j + 1]), std::abs(box.hi[2 * j + 1]));
    s += std::abs(plane.normal[j]) * std::hypot(mr, mi);
  }
  return s;
}

// ---------------------------------------------------------------------------
// One-dimensional models
// ---------------------------------------------------------------------------

namespace {

class DiscDomain final : public Domain {
 public:
  explicit DiscDomain(double r) : r_(r) {
    if (!(r > 0)) throw std::invalid_argument("disc radius must be positive");
  }

  std::size_t dimension() const override { return 1; }
  std::string kind_name() const override { return "disc"; }
  bool bounded() const override { return true; }
  ConvexityClass convexity() const override { return ConvexityClass::c_convex; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    return std::abs(z[0]) < r_;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    return r_ - std::abs(z[0]);
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    return r_ - std::abs(z[0]);
  }
  double diameter() const override { return 2 * r_; }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    return std::abs(r_ - std::abs(z[0]));
  }
  std::optional<double> exact_distance(const CVec& p, const CVec& q) const override {
    return distance_disc(p.at(0), q.at(0), r_);
  }
  std::optional<double> exact_metric(const CVec& z, const CVec& v) const override {
    return metric_disc(z.at(0), v.at(0), r_);
  }
  std::optional<double> slice_distance_upper(const CVec& p, const CVec& q) const override {
    return exact_distance(p, q);
  }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    return contains(a) && contains(b);
  }
  RealBox bounding_box() const override { return {{-r_, -r_}, {r_, r_}}; }
  double functional_sup(const Hyperplane& plane) const override {
    return std::abs(plane.offset) + std::abs(plane.normal[0]) * r_;
  }

  double radius() const { return r_; }

 private:
  double r_;
};

class PuncturedDiscDomain final : public Domain {
 public:
  explicit PuncturedDiscDomain(double r) : r_(r) {
    if (!(r > 0)) throw std::invalid_argument("punctured disc radius must be positive");
  }

  std::size_t dimension() const override { return 1; }
  std::string kind_name() const override { return "punctured-disc"; }
  bool bounded() const override { return true; }
  ConvexityClass convexity() const override { return ConvexityClass::weakly_linear; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    double az = std::abs(z[0]);
    // deep cusp points (denormal moduli) are legitimate members
    return az > 0.0 && az < r_;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    double az = std::abs(z[0]);
    return std::min(az, r_ - az);
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    return boundary_dist(z);
  }
  double diameter() const override { return 2 * r_; }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    double az = std::abs(z[0]);
    return std::min(az, std::abs(r_ - az));
  }
  std::optional<double> exact_distance(const CVec& p, const CVec& q) const override {
    return distance_punctured_disc(p.at(0), q.at(0), r_);
  }
  std::optional<double> exact_metric(const CVec& z, const CVec& v) const override {
    return metric_punctured_disc(z.at(0), v.at(0), r_);
  }
  std::optional<double> slice_distance_upper(const CVec& p, const CVec& q) const override {
    return exact_distance(p, q);
  }
  std::vector<PuncturedFunctional> punctured_functionals() const override {
    return {{Hyperplane({Cx(1, 0)}, Cx(0, 0)), r_}};
  }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    if (!contains(a) || !contains(b)) return false;
    return segment_min_abs(a[0], b[0] - a[0]) > kHyperplaneBand;
  }
  RealBox bounding_box() const override { return {{-r_, -r_}, {r_, r_}}; }
  double functional_sup(const Hyperplane& plane) const override {
    return std::abs(plane.offset) + std::abs(plane.normal[0]) * r_;
  }

 private:
  double r_;
};

class HalfPlaneDomain final : public Domain {
 public:
  std::size_t dimension() const override { return 1; }
  std::string kind_name() const override { return "halfplane"; }
  bool bounded() const override { return false; }
  ConvexityClass convexity() const override { return ConvexityClass::c_convex; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    return z[0].imag() > 0;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    return z[0].imag();
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    return z[0].imag();
  }
  double diameter() const override { throw std::domain_error("halfplane is unbounded"); }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    return std::abs(z[0].imag());
  }
  std::optional<double> exact_distance(const CVec& p, const CVec& q) const override {
    return distance_halfplane(p.at(0), q.at(0));
  }
  std::optional<double> exact_metric(const CVec& z, const CVec& v) const override {
    if (!(z.at(0).imag() > 0)) throw std::domain_error("metric: outside halfplane");
    return std::abs(v.at(0)) / (2.0 * z[0].imag());
  }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    return contains(a) && contains(b);
  }
  RealBox bounding_box() const override {
    throw std::domain_error("halfplane has no bounding box");
  }
};

// ---------------------------------------------------------------------------
// Euclidean ball
// ---------------------------------------------------------------------------

class BallDomain final : public Domain {
 public:
  BallDomain(CVec center, double r) : c_(std::move(center)), r_(r) {
    validate_point(c_);
    if (!(r > 0)) throw std::invalid_argument("ball radius must be positive");
  }

  std::size_t dimension() const override { return c_.size(); }
  std::string kind_name() const override { return "ball"; }
  bool bounded() const override { return true; }
  ConvexityClass convexity() const override { return ConvexityClass::c_convex; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    return dist(z, c_) < r_;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    return r_ - dist(z, c_);
  }
  SliceDisc slice(const CVec& z, const CVec& v) const {
    CVec vh = scale(1.0 / norm(v), v);
    CVec w = sub(z, c_);
    Cx mu = herm_dot(w, vh);
    double perp2 = std::max(0.0, norm2(w) - std::norm(mu));
    double rho2 = r_ * r_ - perp2;
    if (rho2 <= 0.0) throw std::domain_error("slice through exterior point");
    return {mu, mu + Cx(norm(v), 0), std::sqrt(rho2)};
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    SliceDisc s = slice(z, v);
    return s.rho - std::abs(s.mu_p);
  }
  double diameter() const override { return 2 * r_; }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    return std::abs(r_ - dist(z, c_));
  }
  std::optional<double> slice_distance_upper(const CVec& p, const CVec& q) const override {
    if (dist(p, q) == 0.0) return 0.0;
    return slice_bound(slice(p, sub(q, p)), {});
  }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    return contains(a) && contains(b);
  }
  RealBox bounding_box() const override {
    RealBox box;
    box.lo.resize(2 * dimension());
    box.hi.resize(2 * dimension());
    for (std::size_t j = 0; j < dimension(); ++j) {
      box.lo[2 * j] = c_[j].real() - r_;
      box.lo[2 * j + 1] = c_[j].imag() - r_;
      box.hi[2 * j] = c_[j].real() + r_;
      box.hi[2 * j + 1] = c_[j].imag() + r_;
    }
    return box;
  }
  double functional_sup(const Hyperplane& plane) const override {
    return std::abs(plane.eval(c_)) + r_ * norm(plane.normal);
  }

  const CVec& center() const { return c_; }
  double radius() const { return r_; }

 private:
  CVec c_;
  double r_;
};

// ---------------------------------------------------------------------------
// Polydisc (centered at 0)
// ---------------------------------------------------------------------------

class PolydiscDomain final : public Domain {
 public:
  explicit PolydiscDomain(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw std::invalid_argument("polydisc needs at least one radius");
    for (double r : radii_)
      if (!(r > 0)) throw std::invalid_argument("polydisc radii must be positive");
    for (std::size_t j = 0; j < radii_.size(); ++j) factors_.push_back({make_disc(radii_[j]), j});
  }

  std::size_t dimension() const override { return radii_.size(); }
  std::string kind_name() const override { return "polydisc"; }
  bool bounded() const override { return true; }
  ConvexityClass convexity() const override { return ConvexityClass::c_convex; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    for (std::size_t j = 0; j < radii_.size(); ++j)
      if (!(std::abs(z[j]) < radii_[j])) return false;
    return true;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    double d = kInf;
    for (std::size_t j = 0; j < radii_.size(); ++j)
      d = std::min(d, radii_[j] - std::abs(z[j]));
    return d;
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    double lam = kInf;
    for (std::size_t j = 0; j < radii_.size(); ++j)
      if (std::abs(v[j]) > 0) lam = std::min(lam, (radii_[j] - std::abs(z[j])) / std::abs(v[j]));
    return lam * norm(v);
  }
  double diameter() const override {
    double s = 0;
    for (double r : radii_) s += r * r;
    return 2 * std::sqrt(s);
  }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    if (contains(z)) return boundary_dist(z);
    double out2 = 0;
    for (std::size_t j = 0; j < radii_.size(); ++j) {
      double e = std::abs(z[j]) - radii_[j];
      if (e > 0) out2 += e * e;
    }
    return std::sqrt(out2);
  }
  std::optional<double> exact_distance(const CVec& p, const CVec& q) const override {
    double d = 0;
    for (std::size_t j = 0; j < radii_.size(); ++j)
      d = std::max(d, distance_disc(p.at(j), q.at(j), radii_[j]));
    return d;
  }
  std::optional<double> exact_metric(const CVec& z, const CVec& v) const override {
    double m = 0;
    for (std::size_t j = 0; j < radii_.size(); ++j)
      m = std::max(m, metric_disc(z.at(j), v.at(j), radii_[j]));
    return m;
  }
  std::vector<Factor> product_factors() const override { return factors_; }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    return contains(a) && contains(b);
  }
  RealBox bounding_box() const override {
    RealBox box;
    box.lo.resize(2 * dimension());
    box.hi.resize(2 * dimension());
    for (std::size_t j = 0; j < radii_.size(); ++j) {
      box.lo[2 * j] = -radii_[j];
      box.lo[2 * j + 1] = -radii_[j];
      box.hi[2 * j] = radii_[j];
      box.hi[2 * j + 1] = radii_[j];
    }
    return box;
  }
  double functional_sup(const Hyperplane& plane) const override {
    double s = std::abs(plane.offset);
    for (std::size_t j = 0; j < radii_.size(); ++j)
      s += std::abs(plane.normal[j]) * radii_[j];
    return s;
  }

 private:
  std::vector<double> radii_;
  std::vector<Factor> factors_;
};

// ---------------------------------------------------------------------------
// Coordinate disc hull { sum |z_j| / r_j < 1 }
// ---------------------------------------------------------------------------

class HullDomain final : public Domain {
 public:
  HullDomain(std::vector<double> radii, int grid, double tol)
      : radii_(std::move(radii)), grid_(grid), tol_(tol) {
    if (radii_.empty()) throw std::invalid_argument("hull needs at least one radius");
    double c2 = 0;
    for (double r : radii_) {
      if (!(r > 0)) throw std::invalid_argument("hull radii must be positive");
      c2 += 1.0 / (r * r);
    }
    lip_ = std::sqrt(c2);  // m(z + d) <= m(z) + lip * ||d||
  }

  double minkowski(const CVec& z) const {
    double m = 0;
    for (std::size_t j = 0; j < radii_.size(); ++j) m += std::abs(z[j]) / radii_[j];
    return m;
  }

  std::size_t dimension() const override { return radii_.size(); }
  std::string kind_name() const override { return "coordinate-disc-hull"; }
  bool bounded() const override { return true; }
  ConvexityClass convexity() const override { return ConvexityClass::c_convex; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    return minkowski(z) < 1.0;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    return (1.0 - minkowski(z)) / lip_;
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    CVec vh = scale(1.0 / norm(v), v);
    double best = kInf;
    for (int k = 0; k < grid_; ++k) {
      double th = 2 * 3.14159265358979323846 * k / grid_;
      Cx dir = std::polar(1.0, th);
      // g(t) = m(z + t*dir*vh) - 1 is convex in t with g(0) < 0.
      auto g = [&](double t) { return minkowski(axpy(z, t * dir, vh)) - 1.0; };
      double hi = 1.0;
      while (g(hi) < 0) hi *= 2;
      double lo = 0;
      while (hi - lo > tol_ * (1.0 + hi)) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < 0 ? lo : hi) = mid;
      }
      best = std::min(best, hi);
    }
    return best;
  }
  double dir_boundary_dist_cert_lower(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist_cert_lower");
    validate_direction(v);
    return (1.0 - minkowski(z)) / lip_;
  }
  double diameter() const override {
    return 2 * *std::max_element(radii_.begin(), radii_.end());
  }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    return std::abs(1.0 - minkowski(z)) / lip_;
  }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    return contains(a) && contains(b);
  }
  RealBox bounding_box() const override {
    RealBox box;
    box.lo.resize(2 * dimension());
    box.hi.resize(2 * dimension());
    for (std::size_t j = 0; j < radii_.size(); ++j) {
      box.lo[2 * j] = -radii_[j];
      box.lo[2 * j + 1] = -radii_[j];
      box.hi[2 * j] = radii_[j];
      box.hi[2 * j + 1] = radii_[j];
    }
    return box;
  }
  int dir_grid_resolution() const override { return grid_; }
  double functional_sup(const Hyperplane& plane) const override {
    double m = 0;
    for (std::size_t j = 0; j < radii_.size(); ++j)
      m = std::max(m, std::abs(plane.normal[j]) * radii_[j]);
    return std::abs(plane.offset) + m;
  }

 private:
  std::vector<double> radii_;
  int grid_;
  double tol_;
  double lip_;
};

// ---------------------------------------------------------------------------
// Product domain
// ---------------------------------------------------------------------------

class ProductDomain final : public Domain {
 public:
  explicit ProductDomain(std::vector<DomainPtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("product needs at least one factor");
    std::size_t off = 0;
    for (const DomainPtr& f : factors_) {
      if (!f) throw std::invalid_argument("null product factor");
      offsets_.push_back(off);
      off += f->dimension();
    }
    dim_ = off;
  }

  std::size_t dimension() const override { return dim_; }
  std::string kind_name() const override { return "product"; }
  bool bounded() const override {
    for (const auto& f : factors_)
      if (!f->bounded()) return false;
    return true;
  }
  ConvexityClass convexity() const override {
    // Lemma 2.2: products of weakly linearly convex domains are weakly
    // linearly convex. Products of convex domains are convex, hence C-convex.
    bool all_wlc = true;
    for (const auto& f : factors_) all_wlc = all_wlc && f->is_weakly_linearly_convex();
    bool all_cvx = true;
    for (const auto& f : factors_)
      all_cvx = all_cvx && (f->kind_name() == "disc" || f->kind_name() == "ball" ||
                            f->kind_name() == "polydisc" || f->kind_name() == "halfplane" ||
                            f->kind_name() == "coordinate-disc-hull");
    if (all_cvx) return ConvexityClass::c_convex;
    return all_wlc ? ConvexityClass::weakly_linear : ConvexityClass::none;
  }

  CVec part(const CVec& z, std::size_t i) const {
    return subvec(z, offsets_[i], factors_[i]->dimension());
  }

  bool contains(const CVec& z) const override {
    require_dim(z);
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (!factors_[i]->contains(part(z, i))) return false;
    return true;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    double d = kInf;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      d = std::min(d, factors_[i]->boundary_dist(part(z, i)));
    return d;
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    double lam = kInf;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      CVec vi = part(v, i);
      if (norm2(vi) == 0) continue;
      lam = std::min(lam, factors_[i]->dir_boundary_dist(part(z, i), vi) / norm(vi));
    }
    return lam * norm(v);
  }
  double dir_boundary_dist_cert_lower(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist_cert_lower");
    validate_direction(v);
    double lam = kInf;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      CVec vi = part(v, i);
      if (norm2(vi) == 0) continue;
      lam = std::min(lam, factors_[i]->dir_boundary_dist_cert_lower(part(z, i), vi) / norm(vi));
    }
    return lam * norm(v);
  }
  double diameter() const override {
    double s = 0;
    for (const auto& f : factors_) {
      double d = f->diameter();
      s += d * d;
    }
    return std::sqrt(s);
  }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    double g = kInf;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      g = std::min(g, factors_[i]->boundary_gap(part(z, i)));
    return g;
  }
  std::optional<double> exact_distance(const CVec& p, const CVec& q) const override {
    double d = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      auto di = factors_[i]->exact_distance(part(p, i), part(q, i));
      if (!di) return std::nullopt;
      d = std::max(d, *di);
    }
    return d;
  }
  std::optional<double> exact_metric(const CVec& z, const CVec& v) const override {
    double m = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      CVec vi = part(v, i);
      if (norm2(vi) == 0) continue;
      auto mi = factors_[i]->exact_metric(part(z, i), vi);
      if (!mi) return std::nullopt;
      m = std::max(m, *mi);
    }
    return m;
  }
  std::vector<PuncturedFunctional> punctured_functionals() const override {
    std::vector<PuncturedFunctional> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      for (const PuncturedFunctional& pf : factors_[i]->punctured_functionals()) {
        CVec normal(dim_, Cx(0, 0));
        for (std::size_t j = 0; j < factors_[i]->dimension(); ++j)
          normal[offsets_[i] + j] = pf.plane.normal[j];
        out.push_back({Hyperplane(normal, pf.plane.offset), pf.sup_radius});
      }
    }
    return out;
  }
  std::vector<Factor> product_factors() const override {
    std::vector<Factor> fs;
    for (std::size_t i = 0; i < factors_.size(); ++i) fs.push_back({factors_[i], offsets_[i]});
    return fs;
  }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (!factors_[i]->segment_inside(part(a, i), part(b, i))) return false;
    return true;
  }
  RealBox bounding_box() const override {
    RealBox box;
    for (const auto& f : factors_) {
      RealBox fb = f->bounding_box();
      box.lo.insert(box.lo.end(), fb.lo.begin(), fb.lo.end());
      box.hi.insert(box.hi.end(), fb.hi.begin(), fb.hi.end());
    }
    return box;
  }
  double functional_sup(const Hyperplane& plane) const override {
    double s = std::abs(plane.offset);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      CVec block = subvec(plane.normal, offsets_[i], factors_[i]->dimension());
      if (norm2(block) == 0) continue;
      s += factors_[i]->functional_sup(Hyperplane(block, Cx(0, 0)));
    }
    return s;
  }

 private:
  std::vector<DomainPtr> factors_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

// ---------------------------------------------------------------------------
// Base minus finitely many complex hyperplanes
// ---------------------------------------------------------------------------

class MinusHyperplanesDomain final : public Domain {
 public:
  MinusHyperplanesDomain(DomainPtr base, std::vector<Hyperplane> removed)
      : base_(std::move(base)), removed_(std::move(removed)) {
    if (!base_) throw std::invalid_argument("null base domain");
    if (removed_.empty()) throw std::invalid_argument("no hyperplanes to remove");
    for (const Hyperplane& h : removed_) {
      if (h.normal.size() != base_->dimension())
        throw std::invalid_argument("hyperplane dimension mismatch");
      if (base_->bounded()) {
        // the functional values over the base fill a disc around eval(center)
        CVec c = base_->center_point();
        double reach = base_->functional_sup(Hyperplane(h.normal, bilin_dot(h.normal, c)));
        if (!(std::abs(h.eval(c)) < reach))
          throw std::invalid_argument("removed hyperplane does not intersect the base domain");
      }
    }
  }

  std::size_t dimension() const override { return base_->dimension(); }
  std::string kind_name() const override { return "minus-hyperplanes"; }
  bool bounded() const override { return base_->bounded(); }
  ConvexityClass convexity() const override {
    return base_->is_weakly_linearly_convex() ? ConvexityClass::weakly_linear
                                              : ConvexityClass::none;
  }

  bool contains(const CVec& z) const override {
    require_dim(z);
    if (!base_->contains(z)) return false;
    for (const Hyperplane& h : removed_)
      if (h.euclid_dist(z) <= kHyperplaneBand) return false;
    return true;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    double d = base_->boundary_dist(z);
    for (const Hyperplane& h : removed_) d = std::min(d, h.euclid_dist(z));
    return d;
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    double d = base_->dir_boundary_dist(z, v);
    double nv = norm(v);
    for (const Hyperplane& h : removed_)
      if (auto lam = h.line_hit(z, v)) d = std::min(d, std::abs(*lam) * nv);
    return d;
  }
  double dir_boundary_dist_cert_lower(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist_cert_lower");
    validate_direction(v);
    double d = base_->dir_boundary_dist_cert_lower(z, v);
    double nv = norm(v);
    for (const Hyperplane& h : removed_)
      if (auto lam = h.line_hit(z, v)) d = std::min(d, std::abs(*lam) * nv);
    return d;
  }
  double diameter() const override { return base_->diameter(); }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    if (contains(z)) return boundary_dist(z);
    double g = base_->boundary_gap(z);
    // Points on a removed hyperplane are boundary points when they touch the
    // closed base.
    bool near_base = base_->contains(z) || g <= 1e-9;
    if (near_base)
      for (const Hyperplane& h : removed_) g = std::min(g, h.euclid_dist(z));
    return g;
  }
  std::optional<double> slice_distance_upper(const CVec& p, const CVec& q) const override {
    if (dist(p, q) == 0.0) return 0.0;
    SliceDisc s;
    if (const auto* ball = dynamic_cast<const BallDomain*>(base_.get())) {
      s = ball->slice(p, sub(q, p));
    } else if (const auto* disc = dynamic_cast<const DiscDomain*>(base_.get())) {
      s = {p.at(0), q.at(0), disc->radius()};
    } else {
      return std::nullopt;
    }
    std::vector<Cx> punctures;
    CVec d = sub(q, p);
    bool rim_ambiguous = false;
    for (const Hyperplane& h : removed_) {
      auto lam = h.line_hit(p, d);
      if (!lam) continue;  // line parallel to the hyperplane
      Cx mu = s.mu_p + *lam * (s.mu_q - s.mu_p);
      double am = std::abs(mu);
      if (am < s.rho * (1.0 - 1e-12)) {
        punctures.push_back(mu);
      } else if (am <= s.rho * (1.0 + 1e-12)) {
        // within float resolution of the rim: inside vs boundary cannot be
        // certified, so no slice bound is claimed
        rim_ambiguous = true;
      }
    }
    if (rim_ambiguous || punctures.size() > 1) return std::nullopt;
    return slice_bound(s, punctures);
  }
  std::vector<PuncturedFunctional> punctured_functionals() const override {
    std::vector<PuncturedFunctional> out = base_->punctured_functionals();
    for (const Hyperplane& h : removed_) out.push_back({h, base_->functional_sup(h)});
    return out;
  }
  const Domain* cconvex_core() const override { return base_->cconvex_core(); }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    if (!base_->segment_inside(a, b)) return false;
    CVec d = sub(b, a);
    for (const Hyperplane& h : removed_) {
      double m = segment_min_abs(h.eval(a), bilin_dot(h.normal, d));
      if (m / norm(h.normal) <= kHyperplaneBand * 10) return false;
    }
    return true;
  }
  RealBox bounding_box() const override { return base_->bounding_box(); }
  double functional_sup(const Hyperplane& plane) const override {
    return base_->functional_sup(plane);
  }

  const Domain* base() const { return base_.get(); }
  const std::vector<Hyperplane>& removed() const { return removed_; }

 private:
  DomainPtr base_;
  std::vector<Hyperplane> removed_;
};

// ---------------------------------------------------------------------------
// Localized removal: base minus (line ∩ window) or (line ∩ complement(window))
// ---------------------------------------------------------------------------

class LocalizedRemovalDomain final : public Domain {
 public:
  LocalizedRemovalDomain(DomainPtr base, Hyperplane line, CVec wc, double wr, bool inside)
      : base_(std::move(base)),
        line_(std::move(line)),
        wc_(std::move(wc)),
        wr_(wr),
        inside_(inside) {
    if (!base_) throw std::invalid_argument("null base domain");
    if (!(wr_ > 0)) throw std::invalid_argument("window radius must be positive");
    if (line_.normal.size() != base_->dimension() || wc_.size() != base_->dimension())
      throw std::invalid_argument("localized removal dimension mismatch");
  }

  bool in_window(const CVec& z, double slack = 0.0) const {
    double d = dist(z, wc_);
    return inside_ ? d <= wr_ + slack : d >= wr_ - slack;
  }

  std::size_t dimension() const override { return base_->dimension(); }
  std::string kind_name() const override { return "localized-removal"; }
  bool bounded() const override { return base_->bounded(); }
  ConvexityClass convexity() const override { return ConvexityClass::none; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    if (!base_->contains(z)) return false;
    if (line_.euclid_dist(z) <= kHyperplaneBand && in_window(z)) return false;
    return true;
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    double d = base_->boundary_dist(z);
    d = std::min(d, removed_set_dist_lower(z));
    return d;
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    double d = base_->dir_boundary_dist(z, v);
    double nv = norm(v);
    if (auto lam = line_.line_hit(z, v)) {
      CVec hit = axpy(z, *lam, v);
      if (in_window(hit, 1e-12)) d = std::min(d, std::abs(*lam) * nv);
    } else if (line_.euclid_dist(z) <= 1e-12) {
      // line contained in the removed hyperplane: window pieces along it
      d = std::min(d, std::max(0.0, window_dist_lower(z)));
    }
    return d;
  }
  double dir_boundary_dist_cert_lower(const CVec& z, const CVec& v) const override {
    return dir_boundary_dist(z, v);
  }
  double diameter() const override { return base_->diameter(); }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    if (contains(z)) return boundary_dist(z);
    double g = base_->boundary_gap(z);
    bool near_base = base_->contains(z) || g <= 1e-9;
    if (near_base && in_window(z, 1e-9)) g = std::min(g, line_.euclid_dist(z));
    return g;
  }
  const Domain* cconvex_core() const override { return base_->cconvex_core(); }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    if (!base_->segment_inside(a, b)) return false;
    CVec d = sub(b, a);
    double m = segment_min_abs(line_.eval(a), bilin_dot(line_.normal, d)) / norm(line_.normal);
    if (m > kHyperplaneBand * 10) return true;
    // Segment touches the line: require it to stay clear of the removed window.
    double wd = segment_point_dist(a, b, wc_);
    return inside_ ? wd > wr_ + 1e-12 : false;
  }
  RealBox bounding_box() const override { return base_->bounding_box(); }
  double functional_sup(const Hyperplane& plane) const override {
    return base_->functional_sup(plane);
  }

  const Domain* base() const { return base_.get(); }

 private:
  double window_dist_lower(const CVec& z) const {
    double d = dist(z, wc_);
    return inside_ ? std::max(0.0, d - wr_) : std::max(0.0, wr_ - d);
  }
  double removed_set_dist_lower(const CVec& z) const {
    return std::max(line_.euclid_dist(z), window_dist_lower(z));
  }

  DomainPtr base_;
  Hyperplane line_;
  CVec wc_;
  double wr_;
  bool inside_;
};

// ---------------------------------------------------------------------------
// Hartogs domain { (z, w) : z in base, 0 < |w| < e^{-phi(z)} }
// ---------------------------------------------------------------------------

class HartogsDomain final : public Domain {
 public:
  HartogsDomain(DomainPtr base, PhiSpec phi) : base_(std::move(base)), phi_(phi) {
    if (!base_) throw std::invalid_argument("null base domain");
    double lo = phi_.inf_value(), hi = phi_.sup_value();
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
      throw std::invalid_argument("phi must be bounded with inf <= sup");
    r_ = std::exp(-hi);
    R_ = std::exp(-lo);
  }

  std::size_t dimension() const override { return base_->dimension() + 1; }
  std::string kind_name() const override { return "hartogs"; }
  bool bounded() const override { return base_->bounded(); }
  ConvexityClass convexity() const override { return ConvexityClass::none; }

  CVec base_part(const CVec& z) const { return subvec(z, 0, base_->dimension()); }
  Cx fiber(const CVec& z) const { return z[base_->dimension()]; }

  bool contains(const CVec& z) const override {
    require_dim(z);
    CVec zb = base_part(z);
    if (!base_->contains(zb)) return false;
    double aw = std::abs(fiber(z));
    return aw > kHyperplaneBand && aw < std::exp(-phi_.eval(zb));
  }
  double boundary_dist(const CVec& z) const override {
    require_inside(z, "boundary_dist");
    double aw = std::abs(fiber(z));
    if (!(aw < r_))
      throw std::domain_error(
          "hartogs boundary_dist: only defined on the inner envelope |w| < e^{-sup phi}");
    return std::min({base_->boundary_dist(base_part(z)), aw, r_ - aw});
  }
  double dir_boundary_dist(const CVec& z, const CVec& v) const override {
    require_inside(z, "dir_boundary_dist");
    validate_direction(v);
    double aw = std::abs(fiber(z));
    if (!(aw < r_))
      throw std::domain_error(
          "hartogs dir_boundary_dist: only defined on the inner envelope |w| < e^{-sup phi}");
    CVec vb = base_part(v);
    Cx vw = fiber(v);
    double nv = norm(v);
    double d = kInf;
    if (norm2(vb) > 0) d = std::min(d, base_->dir_boundary_dist(base_part(z), vb) * nv / norm(vb));
    if (std::abs(vw) > 0) {
      d = std::min(d, aw * nv / std::abs(vw));
      d = std::min(d, (r_ - aw) * nv / std::abs(vw));
    }
    return d;
  }
  double diameter() const override {
    double db = base_->diameter();
    return std::sqrt(db * db + 4 * R_ * R_);
  }
  double boundary_gap(const CVec& z) const override {
    require_dim(z);
    if (contains(z)) return boundary_dist(z);
    CVec zb = base_part(z);
    double aw = std::abs(fiber(z));
    double g = base_->boundary_gap(zb);
    g = std::min(g, aw);
    if (base_->contains(zb)) g = std::min(g, std::abs(std::exp(-phi_.eval(zb)) - aw));
    return g;
  }
  std::vector<PuncturedFunctional> punctured_functionals() const override {
    CVec normal(dimension(), Cx(0, 0));
    normal[dimension() - 1] = Cx(1, 0);
    return {{Hyperplane(normal, Cx(0, 0)), R_}};
  }
  bool segment_inside(const CVec& a, const CVec& b) const override {
    (void)a, (void)b;
    return false;  // phi may be discontinuous; use the envelope domains instead
  }
  RealBox bounding_box() const override {
    RealBox box = base_->bounding_box();
    box.lo.push_back(-R_);
    box.lo.push_back(-R_);
    box.hi.push_back(R_);
    box.hi.push_back(R_);
    return box;
  }

  const DomainPtr& base() const { return base_; }
  const PhiSpec& phi() const { return phi_; }
  double inner_radius() const { return r_; }
  double outer_radius() const { return R_; }

 private:
  DomainPtr base_;
  PhiSpec phi_;
  double r_, R_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories and accessors
// ---------------------------------------------------------------------------

DomainPtr make_disc(double r) { return std::make_shared<DiscDomain>(r); }
DomainPtr make_punctured_disc(double r) { return std::make_shared<PuncturedDiscDomain>(r); }
DomainPtr make_halfplane() { return std::make_shared<HalfPlaneDomain>(); }
DomainPtr make_ball(CVec center, double r) {
  return std::make_shared<BallDomain>(std::move(center), r);
}
DomainPtr make_polydisc(std::vector<double> radii) {
  return std::make_shared<PolydiscDomain>(std::move(radii));
}
DomainPtr make_coordinate_disc_hull(std::vector<double> radii, int angular_grid,
                                    double bisect_tol) {
  return std::make_shared<HullDomain>(std::move(radii), angular_grid, bisect_tol);
}
DomainPtr make_product(std::vector<DomainPtr> factors) {
  return std::make_shared<ProductDomain>(std::move(factors));
}
DomainPtr make_minus_hyperplanes(DomainPtr base, std::vector<Hyperplane> removed) {
  return std::make_shared<MinusHyperplanesDomain>(std::move(base), std::move(removed));
}
DomainPtr make_localized_removal(DomainPtr base, Hyperplane line, CVec window_center,
                                 double window_radius, bool remove_inside_window) {
  return std::make_shared<LocalizedRemovalDomain>(std::move(base), std::move(line),
                                                  std::move(window_center), window_radius,
                                                  remove_inside_window);
}
DomainPtr make_hartogs(DomainPtr base, PhiSpec phi) {
  return std::make_shared<HartogsDomain>(std::move(base), phi);
}

const Domain* minus_hyperplanes_base(const Domain& d) {
  if (const auto* m = dynamic_cast<const MinusHyperplanesDomain*>(&d)) return m->base();
  return nullptr;
}

std::vector<Hyperplane> minus_hyperplanes_removed(const Domain& d) {
  if (const auto* m = dynamic_cast<const MinusHyperplanesDomain*>(&d)) return m->removed();
  return {};
}

std::optional<HartogsParts> hartogs_parts(const Domain& d) {
  const auto* h = dynamic_cast<const HartogsDomain*>(&d);
  if (!h) return std::nullopt;
  HartogsParts parts;
  parts.base = h->base();
  parts.phi = h->phi();
  parts.r = h->inner_radius();
  parts.R = h->outer_radius();
  parts.lower_envelope = make_product({h->base(), make_punctured_disc(parts.R)});
  parts.upper_envelope = make_product({h->base(), make_punctured_disc(parts.r)});
  return parts;
}

}  // namespace kobest
