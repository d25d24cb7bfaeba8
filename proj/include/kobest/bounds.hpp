#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kobest/complex_linalg.hpp"

namespace kobest {

// Certified interval [lower, upper] for a metric or distance quantity.
// Each endpoint carries the tag of the estimate that produced it.
//
// Endpoints inherit double rounding from the estimates; near a boundary the
// slice formulas lose ~1e-8 relative accuracy to cancellation in 1 - ||z||.
// Refinements that would cross by less than that fuzz are clamped; larger
// crossings indicate a broken estimate and throw.
struct BoundValue {
  double lower = 0.0;
  double upper = kInf;
  std::string lower_source = "trivial-zero";
  std::string upper_source = "none";

  BoundValue() = default;
  BoundValue(double lo, double up, std::string lo_src, std::string up_src)
      : lower(lo), upper(up), lower_source(std::move(lo_src)), upper_source(std::move(up_src)) {
    check();
    clamp();
  }

  static BoundValue exact(double v, const std::string& src = "exact-model") {
    return BoundValue(v, v, src, src);
  }

  bool upper_finite() const { return std::isfinite(upper); }
  bool is_exact() const { return upper_finite() && upper == lower; }

  double midpoint() const {
    if (!upper_finite()) throw std::domain_error("midpoint of unbounded interval");
    return 0.5 * (lower + upper);
  }

  void refine_lower(double lo, const std::string& src) {
    if (lo > lower) {
      lower = lo;
      lower_source = src;
      check();
      clamp();
    }
  }

  void refine_upper(double up, const std::string& src) {
    if (up < upper) {
      upper = up;
      upper_source = src;
      check();
      clamp();
    }
  }

 private:
  double fuzz() const { return 1e-7 * (1.0 + std::abs(upper)); }

  void check() const {
    if (std::isnan(lower) || std::isnan(upper))
      throw std::logic_error("BoundValue: NaN endpoint");
    if (upper_finite() && lower > upper + fuzz())
      throw std::logic_error("BoundValue: lower exceeds upper (" + lower_source + " vs " +
                             upper_source + ")");
  }

  void clamp() {
    if (upper_finite() && lower > upper) lower = upper;
  }
};

}  // namespace kobest
