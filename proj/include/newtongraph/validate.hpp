#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "newtongraph/embedded_graph.hpp"

namespace newtongraph {

struct ConditionResult {
  std::string id;
  bool pass = false;
  std::vector<int> vertices;  ///< witness vertices
  std::vector<int> edges;     ///< witness edges
  std::vector<int> faces;     ///< witness faces (indices into EmbeddedGraph::faces())
  std::string detail;
};

struct ValidationReport {
  std::vector<ConditionResult> entries;

  bool all_pass() const;
  /// Entry with the given id, or nullptr.
  const ConditionResult* find(const std::string& id) const;
};

nlohmann::json to_json(const ValidationReport& r);
std::string to_text(const ValidationReport& r);

/// The four conditions of an abstract channel diagram, for the subgraph
/// formed by `delta_edges`. v0 defaults to the vertex at infinity, or the
/// endpoint shared by the most channel edges.
ValidationReport validate_channel_diagram(const EmbeddedGraph& g, const std::vector<int>& delta_edges, int v0 = -1);

/// Sector model of the extension near every vertex, and injectivity of
/// the extension on the corners of each face above each vertex.
ValidationReport regular_extension_check(const EmbeddedGraph& g, const GraphDynamics& dyn);

/// The seven conditions of an abstract Newton graph, ids "1" ... "7".
ValidationReport validate_newton_graph(const EmbeddedGraph& g, const GraphDynamics& dyn);

}  // namespace newtongraph
