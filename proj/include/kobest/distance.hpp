#pragma once

#include <optional>
#include <vector>

#include "kobest/bounds.hpp"
#include "kobest/domain.hpp"
#include "kobest/estimates.hpp"
#include "kobest/mesh.hpp"

namespace kobest {

// Bound-selection configuration for the distance dispatcher.
struct DistanceStrategy {
  bool use_exact = true;        // closed forms on exact models
  bool use_slice = true;        // chord-slice upper bounds (disc with <= 1 puncture)
  bool use_chord = true;        // straight-chord length upper bound when the chord stays inside
  bool use_functionals = true;  // punctured-disc pushforward lower bounds
  bool use_core = true;         // Prop 4.3 on the enclosing C-convex core
  bool use_mesh = false;        // lattice-graph upper bound
  MeshOptions mesh;
  std::vector<RealHalfSpace> halfspaces;  // supplied analytically per model
  std::optional<CVec> lemma33_zeta;       // boundary point for the projection bound
};

// Certified interval for k_domain(p, q). Exact on Disc / PuncturedDisc /
// HalfPlane / Polydisc and products of exact models; otherwise the best lower
// bound among Prop 4.3 (domain or C-convex core), punctured functionals,
// half-spaces, and the projection bound, against the best upper bound among
// slice, chord and mesh. Sources are recorded on both endpoints.
BoundValue kobayashi_distance(const Domain& domain, const CVec& p, const CVec& q,
                              const DistanceStrategy& strategy = {});

}  // namespace kobest
