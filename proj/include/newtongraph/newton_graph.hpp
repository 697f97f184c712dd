#pragma once

#include <vector>

#include <json.hpp>

#include "newtongraph/dynamics.hpp"
#include "newtongraph/embedded_graph.hpp"
#include "newtongraph/geo_graph.hpp"
#include "newtongraph/rays.hpp"

namespace newtongraph {

/// Delta_n from Delta_{n-1}: the component of f^{-1}(current) containing
/// infinity. Vertex and edge ids of `current` are kept; new ones follow.
/// Edge lifts run in parallel unless `parallel` is false.
GeoGraph pullback_level(const NewtonMap& f, const GeoGraph& current, bool parallel = true);

struct NewtonGraphResult {
  std::vector<GeoGraph> graphs;  ///< Delta_0 ... Delta_N
  int N = 0;
  int pole_cover_level = -1;     ///< least n with every pole in Delta_n, -1 if not reached
  NewtonGraphData combinatorial;
};

/// Throws NotPostcriticallyFixed or LevelCapExceeded.
NewtonGraphResult compute_newton_graph(const NewtonMap& f, int max_level = 8, const RayParams& rays = {});

/// Embedded graph and dynamics of a pulled-back graph, with the level-0
/// edges as the channel diagram.
NewtonGraphData to_combinatorial(const NewtonMap& f, const GeoGraph& g, int N);

bool contains_vertex(const GeoGraph& g, const SpherePoint& z, double tol);

struct FaceCount {
  int face = -1;
  std::vector<int> boundary_roots;  ///< root vertex ids on the boundary walk
  std::vector<int> interior_poles;  ///< indices into f.poles
  int interior_pole_multiplicity = 0;
  bool fixed_point_rule = false;    ///< #roots on the boundary = #poles inside + 1
  bool shared_pole = false;         ///< a pole inside is directly reached by rays of two roots
};

struct FaceCountReport {
  std::vector<FaceCount> faces;
  std::vector<int> unplaced_poles;        ///< poles not inside exactly one face
  std::vector<int> simple_pole_overload;  ///< simple poles reached directly by more than two roots
  bool all_pass() const;
};

/// Fixed-point and shared-pole counts on the faces of Delta_0, read
/// against Delta_1.
FaceCountReport verify_face_counts(const NewtonGraphResult& result, const NewtonMap& f);

/// GeoGraph JSON of Delta_N with the dynamics attached. `max_samples`
/// thins each edge polyline for output (0 keeps everything).
nlohmann::json to_json(const NewtonGraphResult& r, int max_samples = 0);

}  // namespace newtongraph
