#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "newtongraph/embedded_graph.hpp"
#include "newtongraph/sphere.hpp"

namespace newtongraph {

/// Samples of a curve on the sphere; only the last point may be infinity.
struct Polyline {
  std::vector<SpherePoint> points;
  int owner = -1;  ///< root whose basin contains the interior
};

/// Euclidean distance from z to the finite part of the polyline. A final
/// segment into infinity counts as the radial half-line from its last
/// finite sample.
double distance_to_polyline(Complex z, const Polyline& line);

struct GeoVertex {
  SpherePoint pos;
  VertexKind kind = VertexKind::Other;
  int level = 0;   ///< first level at which the vertex appears
  int image = -1;  ///< vertex id of f(pos)
};

struct GeoEdge {
  int from = -1;
  int to = -1;
  Polyline line;  ///< from `from` to `to`, endpoints included
  int level = 0;
  int maps_to = -1;  ///< edge id of f(edge); level-0 edges map to themselves
};

struct GeoGraph {
  std::vector<GeoVertex> vertices;
  std::vector<GeoEdge> edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  /// Id of the vertex within chordal distance tol of z, or -1.
  int find_vertex(const SpherePoint& z, double tol) const;

  /// Direction of dart d at its vertex. At infinity this is the angle in
  /// the w = 1/z chart.
  double dart_angle(int dart) const;

  /// Darts at each vertex sorted counterclockwise by dart_angle.
  std::vector<std::vector<int>> cyclic_orders() const;

  EmbeddedGraph to_embedded() const;
};

nlohmann::json to_json(const GeoGraph& g);
GeoGraph geo_graph_from_json(const nlohmann::json& j);
std::string to_dot(const GeoGraph& g);

/// Winding number of the boundary walk of `face` (darts of g.to_embedded())
/// around z. Passages through infinity are closed by arcs far out, so
/// points of the face get -1.
int face_winding(const GeoGraph& g, const std::vector<int>& face, Complex z);

}  // namespace newtongraph
