#pragma once

#include <vector>

#include "newtongraph/geo_graph.hpp"
#include "newtongraph/newton_map.hpp"

namespace newtongraph {

/// Local model f(z) - xi ~ a (z - xi)^k at a superattracting fixed point.
struct BottcherLocal {
  SpherePoint xi;
  int root = -1;
  int k = 0;
  Complex a;
  std::vector<double> fixed_directions;  ///< the k - 1 solutions of arg a + k t = t, sorted in [0, 2pi)
};

BottcherLocal bottcher_local(const NewtonMap& f, const SpherePoint& xi);

struct RayParams {
  double seed_radius = 0.0;  ///< 0 picks a radius from the local model
  double rel_spacing = 0.1;  ///< max sample gap relative to |z - xi|
  int max_steps = 200;       ///< pullbacks of the fundamental segment before NoEscape
  double guard_tol = 1e-9;   ///< relative to the map's scale
};

/// Invariant curve from xi to infinity in the given fixed direction.
///
/// A fundamental segment [f(z0), z0] near xi is pulled back repeatedly along
/// the branch of f^{-1} fixing xi, which pushes it out to infinity. Every
/// sample z past the first segment has f(z) on the polyline.
Polyline trace_fixed_ray(const NewtonMap& f, const BottcherLocal& b, double direction, const RayParams& params = {});

/// Roots, infinity and all fixed rays. Vertex i is root i; the last vertex
/// is infinity. Rays are traced in parallel.
GeoGraph channel_diagram(const NewtonMap& f, const RayParams& params = {});
GeoGraph channel_diagram_serial(const NewtonMap& f, const RayParams& params = {});

}  // namespace newtongraph
