#pragma once

#include <random>

#include "kobest/complex_linalg.hpp"

namespace kobest::testing {

inline std::mt19937_64 rng(unsigned seed = 12345) { return std::mt19937_64(seed); }

inline double unit(std::mt19937_64& g) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

// uniform in the disc of the given radius
inline Cx sample_disc(std::mt19937_64& g, double radius = 1.0) {
  double r = radius * std::sqrt(unit(g));
  return std::polar(r, 2 * 3.14159265358979323846 * unit(g));
}

// uniform-ish in the punctured disc, moduli log-uniform in [lo, hi]
inline Cx sample_punctured(std::mt19937_64& g, double lo = 1e-6, double hi = 1.0 - 1e-6) {
  double m = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unit(g));
  return std::polar(m, 2 * 3.14159265358979323846 * unit(g));
}

inline CVec sample_ball(std::mt19937_64& g, std::size_t n, double radius = 1.0) {
  std::normal_distribution<double> gauss;
  CVec z(n);
  double s = 0;
  for (auto& c : z) {
    c = Cx(gauss(g), gauss(g));
    s += std::norm(c);
  }
  double r = radius * std::pow(unit(g), 1.0 / (2.0 * n)) / std::sqrt(s);
  return scale(Cx(r, 0), z);
}

}  // namespace kobest::testing
