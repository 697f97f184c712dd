#pragma once

#include <functional>
#include <vector>

#include "newtongraph/geo_graph.hpp"
#include "newtongraph/newton_map.hpp"

namespace newtongraph {

using Fiber = std::vector<RootWithMultiplicity>;

/// Solutions of f(z) = w with multiplicity; the multiplicities sum to d.
Fiber lift_point(const NewtonMap& f, const SpherePoint& w);

/// Follows the branch of f^{-1} through `start` (a preimage of path[0])
/// along the straight segments of `path`. Returns the lifted points,
/// including extra points from step refinement. Steps longer than
/// max_step(z) are refined. `lifted_index[i]` is the position of the lift
/// of path[i] in the result. Throws BranchJump.
std::vector<Complex> continue_branch(const NewtonMap& f, const std::vector<Complex>& path, Complex start,
                                     const std::function<double(Complex)>& max_step = {},
                                     std::vector<std::size_t>* lifted_index = nullptr);

/// One component of f^{-1}(edge).
struct EdgeLift {
  Polyline line;
  int tail = -1;  ///< index into the tail fiber
  int head = -1;  ///< index into the head fiber
};

/// All d lifts of an edge whose interior avoids critical values. The
/// fibers are those of the edge's endpoints, as returned by lift_point.
/// Throws BranchJump or EndpointUnmatched.
std::vector<EdgeLift> lift_edge_all(const NewtonMap& f, const Polyline& edge, const Fiber& tail_fiber,
                                    const Fiber& head_fiber);

/// The lift of `edge` starting at `start`, a preimage of its first point.
Polyline lift_edge(const NewtonMap& f, const Polyline& edge, const SpherePoint& start);

}  // namespace newtongraph
