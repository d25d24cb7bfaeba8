#pragma once

#include <stdexcept>

#include "kobest/domain.hpp"

namespace kobest {

struct MeshOptions {
  double points_per_unit = 64;   // lattice density per unit length per real dimension
  double refine_rel_change = 0.01;  // refine x2 until the bound changes by less than this
  int max_refines = 2;
  double connect_radius_mult = 2.5;  // endpoint connector radius in units of the spacing
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest-path upper bound for the Kobayashi distance over a lattice graph
// of in-domain points. Edge weights integrate the best certified metric upper
// bound (the exact model metric where available, else ||v||/dist) along
// straight edges, so any path value is a valid upper bound.
//
// Product domains are routed through their factors (max of factor bounds).
// Domains of complex dimension >= 2 are meshed inside the complex-line slice
// plane through p and q; paths in the plane are paths in the domain.
//
// Throws MeshError when an endpoint cannot be connected at the requested
// resolution.
double distance_upper_mesh(const Domain& domain, const CVec& p, const CVec& q,
                           const MeshOptions& opts = {});

}  // namespace kobest
