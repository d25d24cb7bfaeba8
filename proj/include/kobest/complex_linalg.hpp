#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kobest {

using Cx = std::complex<double>;

// Points and tangent vectors in C^n are plain coordinate vectors; the
// geometric meaning (point vs direction) is carried by the call site.
using CVec = std::vector<Cx>;
using CPoint = CVec;
using CDirection = CVec;

constexpr double kInf = std::numeric_limits<double>::infinity();

inline CVec cvec(std::initializer_list<Cx> xs) { return CVec(xs); }

inline std::size_t dim(const CVec& a) { return a.size(); }

inline CVec add(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

inline CVec sub(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
  return r;
}

inline CVec scale(Cx s, const CVec& a) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = s * a[j];
  return r;
}

// a + s*b
inline CVec axpy(const CVec& a, Cx s, const CVec& b) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + s * b[j];
  return r;
}

inline double norm2(const CVec& a) {
  double s = 0;
  for (const Cx& x : a) s += std::norm(x);
  return s;
}

inline double norm(const CVec& a) { return std::sqrt(norm2(a)); }

inline double dist(const CVec& a, const CVec& b) { return norm(sub(a, b)); }

// Hermitian inner product sum_j a_j conj(b_j).
inline Cx herm_dot(const CVec& a, const CVec& b) {
  Cx s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::conj(b[j]);
  return s;
}

// Bilinear pairing sum_j a_j b_j (used by complex hyperplane functionals).
inline Cx bilin_dot(const CVec& a, const CVec& b) {
  Cx s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

inline bool all_finite(const CVec& a) {
  for (const Cx& x : a)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

inline void validate_point(const CVec& z) {
  if (z.empty()) throw std::invalid_argument("point must have dimension >= 1");
  if (!all_finite(z)) throw std::invalid_argument("point has non-finite coordinates");
}

inline void validate_direction(const CVec& v) {
  if (v.empty()) throw std::invalid_argument("direction must have dimension >= 1");
  if (!all_finite(v)) throw std::invalid_argument("direction has non-finite coordinates");
  if (norm2(v) == 0.0) throw std::invalid_argument("direction must be nonzero");
}

inline CVec unit_vector(std::size_t n, std::size_t k) {
  CVec e(n, Cx(0, 0));
  e.at(k) = Cx(1, 0);
  return e;
}

// Complex affine hyperplane { z : <normal, z> = offset } with the bilinear pairing.
struct Hyperplane {
  CVec normal;
  Cx offset{0, 0};

  Hyperplane() = default;
  Hyperplane(CVec a, Cx b) : normal(std::move(a)), offset(b) {
    validate_direction(normal);
  }

  Cx eval(const CVec& z) const { return bilin_dot(normal, z) - offset; }

  // Euclidean distance from z to the hyperplane.
  double euclid_dist(const CVec& z) const { return std::abs(eval(z)) / norm(normal); }

  // Parameter of the intersection of { z + lambda v } with the hyperplane,
  // or nullopt when the line is parallel to it.
  std::optional<Cx> line_hit(const CVec& z, const CVec& v) const {
    Cx av = bilin_dot(normal, v);
    if (std::abs(av) == 0.0) return std::nullopt;
    return -eval(z) / av;
  }
};

// Real half-space { z : Re <z - support, inward> > 0 } in C^n ~ R^{2n}.
struct RealHalfSpace {
  CVec support;
  CVec inward;  // not required to be unit; dist() normalizes

  RealHalfSpace() = default;
  RealHalfSpace(CVec support_point, CVec inward_normal)
      : support(std::move(support_point)), inward(std::move(inward_normal)) {
    validate_point(support);
    validate_direction(inward);
  }

  // Signed Euclidean distance to the bounding real hyperplane (positive inside).
  double dist(const CVec& z) const {
    return herm_dot(sub(z, support), inward).real() / norm(inward);
  }
};

}  // namespace kobest
