#include "kobest/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace kobest {

CVec Curve::derivative_at(double u) const {
  if (deriv) return deriv(u);
  double h = 1e-6 * (1.0 + std::abs(u));
  double lo = std::max(a, u - h), hi = std::min(b, u + h);
  CVec d = sub(point(hi), point(lo));
  return scale(Cx(1.0 / (hi - lo), 0), d);
}

Curve tent_curve(const CVec& zeta, const CVec& p, double u_max, const Domain* check_inside) {
  validate_point(zeta);
  validate_point(p);
  if (zeta.size() != p.size()) throw std::invalid_argument("tent_curve: dimension mismatch");
  if (dist(zeta, p) == 0.0) throw std::invalid_argument("tent_curve: zeta equals p");
  CVec d = sub(p, zeta);
  Curve c;
  c.a = 0.0;
  c.b = u_max;
  c.truncated_infinite = true;
  c.point = [zeta, d](double u) { return axpy(zeta, Cx(std::exp(-2.0 * u), 0), d); };
  c.deriv = [d](double u) { return scale(Cx(-2.0 * std::exp(-2.0 * u), 0), d); };
  if (check_inside) check_curve_inside(*check_inside, c);
  return c;
}

Curve log_radial_curve(const CVec& p, double u_max, const Domain* check_inside) {
  validate_point(p);
  if (norm2(p) == 0.0) throw std::invalid_argument("log_radial_curve: p must be nonzero");
  Curve c;
  c.a = 0.0;
  c.b = u_max;
  c.truncated_infinite = true;
  c.point = [p](double u) { return scale(Cx(std::exp(1.0 - std::exp(2.0 * u)), 0), p); };
  c.deriv = [p](double u) {
    double e2u = std::exp(2.0 * u);
    return scale(Cx(-2.0 * e2u * std::exp(1.0 - e2u), 0), p);
  };
  if (check_inside) check_curve_inside(*check_inside, c);
  return c;
}

Curve radial_geodesic_punctured(double u_max) {
  Curve c;
  c.a = 0.0;
  c.b = u_max;
  c.truncated_infinite = true;
  c.point = [](double u) { return CVec{Cx(std::exp(-std::exp(2.0 * u)), 0)}; };
  c.deriv = [](double u) {
    double e2u = std::exp(2.0 * u);
    return CVec{Cx(-2.0 * e2u * std::exp(-e2u), 0)};
  };
  return c;
}

Curve segment_curve(const CVec& p, const CVec& q, const Domain* check_inside) {
  validate_point(p);
  validate_point(q);
  CVec d = sub(q, p);
  Curve c;
  c.a = 0.0;
  c.b = 1.0;
  c.point = [p, d](double t) { return axpy(p, Cx(t, 0), d); };
  c.deriv = [d](double) { return d; };
  if (check_inside) check_curve_inside(*check_inside, c);
  return c;
}

Curve disc_geodesic(Cx z, Cx w) {
  if (!(std::abs(z) < 1) || !(std::abs(w) < 1))
    throw std::domain_error("disc_geodesic: arguments outside unit disc");
  Cx wz = (w - z) / (1.0 - std::conj(z) * w);
  double len = std::atanh(std::min(std::abs(wz), std::nextafter(1.0, 0.0)));
  Cx dir = std::abs(wz) > 0 ? wz / std::abs(wz) : Cx(1, 0);
  Curve c;
  c.a = 0.0;
  c.b = len;
  c.point = [z, dir](double t) {
    Cx u = std::tanh(t) * dir;
    return CVec{(u + z) / (1.0 + std::conj(z) * u)};
  };
  return c;
}

Curve reversed(const Curve& c) {
  Curve r;
  r.a = c.a;
  r.b = c.b;
  double s = c.a + c.b;
  for (double bp : c.breakpoints) r.breakpoints.push_back(s - bp);
  std::sort(r.breakpoints.begin(), r.breakpoints.end());
  auto point = c.point;
  r.point = [point, s](double u) { return point(s - u); };
  if (c.deriv) {
    auto deriv = c.deriv;
    r.deriv = [deriv, s](double u) { return scale(Cx(-1, 0), deriv(s - u)); };
  }
  return r;
}

Curve restrict_curve(const Curve& c, double a, double b) {
  if (!(a >= c.a - 1e-12) || !(b <= c.b + 1e-12) || !(a < b))
    throw std::invalid_argument("restrict_curve: invalid subinterval");
  Curve r = c;
  r.a = a;
  r.b = b;
  r.truncated_infinite = false;
  r.breakpoints.clear();
  for (double bp : c.breakpoints)
    if (bp > a && bp < b) r.breakpoints.push_back(bp);
  return r;
}

Curve concat_curves(const std::vector<Curve>& pieces, double start) {
  if (pieces.empty()) throw std::invalid_argument("concat_curves: no pieces");
  double scale_len = 1.0;
  for (const Curve& p : pieces) scale_len = std::max(scale_len, norm(p.point(p.a)));
  std::vector<double> offs;  // global start of each piece
  double t = start;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    offs.push_back(t);
    t += pieces[i].length_param();
    if (i + 1 < pieces.size()) {
      CVec end = pieces[i].point(pieces[i].b);
      CVec next = pieces[i + 1].point(pieces[i + 1].a);
      if (dist(end, next) > 1e-12 * scale_len)
        throw std::invalid_argument("concat_curves: endpoint mismatch between pieces");
    }
  }
  Curve out;
  out.a = start;
  out.b = t;
  for (std::size_t i = 1; i < pieces.size(); ++i) out.breakpoints.push_back(offs[i]);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (double bp : pieces[i].breakpoints)
      out.breakpoints.push_back(offs[i] + (bp - pieces[i].a));
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  auto locate = [pieces, offs](double u) {
    std::size_t i = 0;
    while (i + 1 < pieces.size() && u >= offs[i + 1]) ++i;
    return i;
  };
  out.point = [pieces, offs, locate](double u) {
    std::size_t i = locate(u);
    return pieces[i].point(std::min(pieces[i].b, pieces[i].a + (u - offs[i])));
  };
  out.deriv = [pieces, offs, locate](double u) {
    std::size_t i = locate(u);
    const Curve& p = pieces[i];
    return p.derivative_at(std::min(p.b, p.a + (u - offs[i])));
  };
  return out;
}

void check_curve_inside(const Domain& domain, const Curve& c, int samples) {
  for (int k = 0; k <= samples; ++k) {
    double u = c.a + (c.b - c.a) * k / samples;
    if (!domain.contains(c.point(u)))
      throw std::domain_error("curve exits the domain at u=" + std::to_string(u));
  }
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 2 || !(a < b)) throw std::invalid_argument("uniform_grid: need n >= 2 and a < b");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

std::vector<double> clustered_grid(double a, double b, int n) {
  if (n < 2 || !(a < b)) throw std::invalid_argument("clustered_grid: need n >= 2 and a < b");
  std::vector<double> g(n);
  double k = 5.0, t0 = std::tanh(-k / 2), t1 = std::tanh(k / 2);
  for (int i = 0; i < n; ++i) {
    double x = static_cast<double>(i) / (n - 1);
    double y = (std::tanh(k * (x - 0.5)) - t0) / (t1 - t0);
    g[i] = a + (b - a) * y;
  }
  g.front() = a;
  g.back() = b;
  return g;
}

}  // namespace kobest
