#pragma once

#include <optional>
#include <vector>

#include "newtongraph/embedded_graph.hpp"

namespace newtongraph {

/// Orientation-preserving isomorphism of combinatorial maps that
/// conjugates the dynamics.
struct Isomorphism {
  int anchor = -1;                ///< image of dart 0
  std::vector<int> dart_map;      ///< dart of A -> dart of B
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

/// Witness with the least anchor dart, or nothing. Candidate anchors are
/// tried in parallel.
std::optional<Isomorphism> graphs_equivalent(const NewtonGraphData& a, const NewtonGraphData& b);
std::optional<Isomorphism> graphs_equivalent_serial(const NewtonGraphData& a, const NewtonGraphData& b);

/// Checks that `iso` commutes with sigma and alpha, keeps kinds, local
/// degrees and the channel diagram, and conjugates the dynamics.
bool is_witness(const NewtonGraphData& a, const NewtonGraphData& b, const Isomorphism& iso);

/// Witness from B to A.
Isomorphism inverse(const Isomorphism& iso);
/// First `ab`, then `bc`.
Isomorphism compose(const Isomorphism& ab, const Isomorphism& bc);

/// Graph with every rotation reversed and the dynamics kept.
NewtonGraphData mirrored(const NewtonGraphData& data);

}  // namespace newtongraph
