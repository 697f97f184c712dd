#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace newtongraph {

enum class VertexKind { Root, Infinity, Pole, Prepole, Preroot, Other };

const char* to_string(VertexKind kind);
VertexKind vertex_kind_from_string(const std::string& s);

/// Combinatorial map of a graph embedded in the oriented sphere.
///
/// Edge e owns darts 2e (tail) and 2e+1 (head), so alpha(d) = d ^ 1.
/// sigma(d) is the next dart counterclockwise around the vertex of d.
/// Faces are the orbits of sigma . alpha.
class EmbeddedGraph {
public:
  EmbeddedGraph() = default;

  /// `rotation[v]` lists the darts at v in counterclockwise order.
  EmbeddedGraph(std::vector<VertexKind> kinds, const std::vector<std::vector<int>>& rotation);

  int num_vertices() const { return static_cast<int>(kinds_.size()); }
  int num_edges() const { return static_cast<int>(sigma_.size() / 2); }
  int num_darts() const { return static_cast<int>(sigma_.size()); }

  static int alpha(int dart) { return dart ^ 1; }
  static int edge_of(int dart) { return dart / 2; }
  int sigma(int dart) const { return sigma_[dart]; }
  int vertex_of(int dart) const { return dart_vertex_[dart]; }
  VertexKind kind(int v) const { return kinds_[v]; }
  const std::vector<VertexKind>& kinds() const { return kinds_; }

  int tail(int edge) const { return dart_vertex_[2 * edge]; }
  int head(int edge) const { return dart_vertex_[2 * edge + 1]; }

  /// Darts at v in counterclockwise order, starting from the smallest id.
  std::vector<int> rotation(int v) const;
  const std::vector<std::vector<int>>& rotations() const { return rotation_; }

  std::vector<std::vector<int>> faces() const;
  int num_faces() const;
  /// Face index of every dart.
  std::vector<int> face_of_dart() const;
  bool is_connected() const;
  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }

  /// Vertex ids carrying the Infinity kind.
  std::optional<int> infinity_vertex() const;

  /// Empty when the rotation system is a valid connected spherical map.
  std::optional<std::string> check() const;

  /// Same graph with every rotation reversed.
  EmbeddedGraph mirrored() const;

private:
  void rebuild_from_rotation();

  std::vector<VertexKind> kinds_;
  std::vector<std::vector<int>> rotation_;
  std::vector<int> sigma_;
  std::vector<int> dart_vertex_;
};

/// Self-map of an embedded graph.
struct GraphDynamics {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> dart_map;      ///< -1 for a dart whose image is missing
  std::vector<int> local_degree;
  std::vector<int> delta_edges;   ///< sorted edge ids of the channel diagram
  int N = 0;
};

struct NewtonGraphData {
  EmbeddedGraph graph;
  GraphDynamics dynamics;
};

nlohmann::json to_json(const EmbeddedGraph& g, const GraphDynamics& dyn);
/// Accepts the combinatorial JSON, or any object carrying it under
/// "combinatorial". Throws Error(Parse) on malformed input.
NewtonGraphData newton_graph_from_json(const nlohmann::json& j);

/// Graph with edges renumbered, edges flipped and vertices renumbered by a
/// seeded permutation; dynamics transported along.
NewtonGraphData relabeled(const NewtonGraphData& data, unsigned seed);

/// Edge depth: least n with edge_map^n(e) in the channel diagram; -1 if never.
std::vector<int> edge_depths(const GraphDynamics& dyn, int num_edges);

}  // namespace newtongraph
