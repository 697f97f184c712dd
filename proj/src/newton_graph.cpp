#include "newtongraph/newton_graph.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

#include "newtongraph/error.hpp"
#include "newtongraph/lifting.hpp"

namespace newtongraph {

namespace {

VertexKind preimage_kind(VertexKind target) {
  switch (target) {
    case VertexKind::Infinity: return VertexKind::Pole;
    case VertexKind::Pole:
    case VertexKind::Prepole: return VertexKind::Prepole;
    case VertexKind::Root:
    case VertexKind::Preroot: return VertexKind::Preroot;
    default: return VertexKind::Other;
  }
}

int infinity_id(const GeoGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.vertices[v].kind == VertexKind::Infinity) return v;
  throw Error(ErrorCode::InvalidArgument, "graph has no vertex at infinity");
}

int max_level(const GeoGraph& g) {
  int m = 0;
  for (const auto& e : g.edges) m = std::max(m, e.level);
  return m;
}

std::string describe(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  return "(" + std::to_string(p.value().real()) + ", " + std::to_string(p.value().imag()) + ")";
}

bool all_present(const GeoGraph& g, const std::vector<RootWithMultiplicity>& pts, double tol) {
  return std::all_of(pts.begin(), pts.end(), [&](const auto& c) { return contains_vertex(g, c.point, tol); });
}

}  // namespace

bool contains_vertex(const GeoGraph& g, const SpherePoint& z, double tol) { return g.find_vertex(z, tol) >= 0; }

GeoGraph pullback_level(const NewtonMap& f, const GeoGraph& cur, bool parallel) {
  const double tol = f.tol.match_tol;
  const int V = cur.num_vertices(), E = cur.num_edges();
  const int level = max_level(cur) + 1;

  std::vector<Fiber> fibers(V);
  for (int b = 0; b < V; ++b) {
    fibers[b] = lift_point(f, cur.vertices[b].pos);
    for (auto& r : fibers[b]) {
      const int v = cur.find_vertex(r.point, tol);
      if (v >= 0) r.point = cur.vertices[v].pos;
    }
  }

  std::vector<std::vector<EdgeLift>> lifts(E);
  std::vector<std::exception_ptr> errors(E);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int e = 0; e < E; ++e) {
    try {
      const auto& edge = cur.edges[e];
      lifts[e] = lift_edge_all(f, edge.line, fibers[edge.from], fibers[edge.to]);
    } catch (...) {
      errors[e] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  // Identify fiber points with vertices.
  GeoGraph full;
  full.vertices = cur.vertices;
  std::vector<std::vector<int>> fiber_vertex(V);
  for (int b = 0; b < V; ++b)
    for (const auto& r : fibers[b]) {
      int v = full.find_vertex(r.point, tol);
      if (v >= 0 && full.vertices[v].image != b)
        throw Error(ErrorCode::VertexCollision, "preimages of different vertices meet near " + describe(r.point));
      if (v < 0) {
        v = full.num_vertices();
        full.vertices.push_back({r.point, preimage_kind(cur.vertices[b].kind), level, b});
      }
      fiber_vertex[b].push_back(v);
    }
  for (int a = V; a < full.num_vertices(); ++a)
    for (int b = a + 1; b < full.num_vertices(); ++b)
      if (near(full.vertices[a].pos, full.vertices[b].pos, tol))
        throw Error(ErrorCode::VertexCollision, "distinct preimages closer than match_tol near " +
                                                    describe(full.vertices[a].pos));

  // Existing edges reappear among the lifts; everything else is new.
  full.edges = cur.edges;
  std::multimap<int, int> by_source;
  for (int e = 0; e < E; ++e) by_source.emplace(cur.edges[e].maps_to, e);
  std::vector<char> reproduced(E, 0);
  const double same_tol = 1e-6 * f.scale();
  for (int e = 0; e < E; ++e) {
    const auto& src = cur.edges[e];
    for (auto& lift : lifts[e]) {
      const int u = fiber_vertex[src.from][lift.tail], v = fiber_vertex[src.to][lift.head];
      const auto& pts = lift.line.points;
      const SpherePoint mid = pts[pts.size() / 2];
      int match = -1;
      auto [lo, hi] = by_source.equal_range(e);
      for (auto it = lo; it != hi && match < 0; ++it) {
        const auto& old = cur.edges[it->second];
        if (old.from == u && old.to == v && mid.is_finite() && distance_to_polyline(mid.value(), old.line) < same_tol)
          match = it->second;
      }
      if (match >= 0) {
        if (reproduced[match]) throw Error(ErrorCode::NonPlanarIncidence, "two lifts coincide with one edge");
        reproduced[match] = 1;
        continue;
      }
      GeoEdge ne;
      ne.from = u;
      ne.to = v;
      ne.level = level;
      ne.maps_to = e;
      ne.line = std::move(lift.line);
      ne.line.points.front() = full.vertices[u].pos;
      ne.line.points.back() = full.vertices[v].pos;
      full.edges.push_back(std::move(ne));
    }
  }
  for (int e = 0; e < E; ++e)
    if (!reproduced[e])
      throw Error(ErrorCode::EndpointUnmatched, "edge " + std::to_string(e) + " is not among the lifts of its image");

  // Component of infinity.
  std::vector<std::vector<int>> adj(full.num_vertices());
  for (const auto& e : full.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<char> keep(full.num_vertices(), 0);
  std::vector<int> stack{infinity_id(cur)};
  keep[stack.back()] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!keep[w]) {
        keep[w] = 1;
        stack.push_back(w);
      }
  }
  std::vector<int> new_id(full.num_vertices(), -1);
  GeoGraph out;
  for (int v = 0; v < full.num_vertices(); ++v)
    if (keep[v]) {
      new_id[v] = out.num_vertices();
      out.vertices.push_back(full.vertices[v]);
    }
  for (int v = 0; v < V; ++v)
    if (new_id[v] != v) throw Error(ErrorCode::InvalidArgument, "input graph is not connected");
  for (auto& e : full.edges)
    if (keep[e.from]) {
      e.from = new_id[e.from];
      e.to = new_id[e.to];
      out.edges.push_back(std::move(e));
    }

  const EmbeddedGraph emb = out.to_embedded();
  if (const auto problem = emb.check())
    throw Error(ErrorCode::NonPlanarIncidence, "level " + std::to_string(level) + ": " + *problem);
  return out;
}

NewtonGraphData to_combinatorial(const NewtonMap& f, const GeoGraph& g, int N) {
  NewtonGraphData out;
  out.graph = g.to_embedded();
  auto& dyn = out.dynamics;
  dyn.N = N;
  for (const auto& v : g.vertices) {
    dyn.vertex_map.push_back(v.image);
    dyn.local_degree.push_back(local_degree(f, v.pos));
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const int m = g.edges[e].maps_to;
    dyn.edge_map.push_back(m);
    dyn.dart_map.push_back(2 * m);
    dyn.dart_map.push_back(2 * m + 1);
    if (g.edges[e].level == 0) dyn.delta_edges.push_back(e);
  }
  return out;
}

NewtonGraphResult compute_newton_graph(const NewtonMap& f, int max_level, const RayParams& rays) {
  try {
    is_postcritically_fixed(critical_orbits(f));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnresolvedOrbit) throw;
    throw Error(ErrorCode::NotPostcriticallyFixed, e.what());
  }
  const double tol = f.tol.match_tol;
  NewtonGraphResult r;
  r.graphs.push_back(channel_diagram(f, rays));

  auto extend = [&](std::vector<GeoGraph>& graphs, const char* goal) {
    if (static_cast<int>(graphs.size()) > max_level)
      throw Error(ErrorCode::LevelCapExceeded, std::string(goal) + " not reached by level " + std::to_string(max_level) +
                                                   " (" + std::to_string(graphs.back().num_edges()) + " edges)");
    graphs.push_back(pullback_level(f, graphs.back()));
  };

  while (!all_present(r.graphs.back(), f.critical_points, tol)) extend(r.graphs, "critical points");
  r.N = static_cast<int>(r.graphs.size());
  extend(r.graphs, "final pullback");

  for (std::size_t n = 0; n < r.graphs.size(); ++n)
    if (all_present(r.graphs[n], f.poles, tol)) {
      r.pole_cover_level = static_cast<int>(n);
      break;
    }
  if (r.pole_cover_level < 0) {
    std::vector<GeoGraph> more{r.graphs.back()};
    int n = r.N;
    while (n < max_level) {
      more.push_back(pullback_level(f, more.back()));
      more.erase(more.begin());
      ++n;
      if (all_present(more.back(), f.poles, tol)) {
        r.pole_cover_level = n;
        break;
      }
    }
  }
  r.combinatorial = to_combinatorial(f, r.graphs.back(), r.N);
  return r;
}

bool FaceCountReport::all_pass() const {
  return unplaced_poles.empty() && simple_pole_overload.empty() &&
         std::all_of(faces.begin(), faces.end(), [](const auto& fc) { return fc.fixed_point_rule && fc.shared_pole; });
}

FaceCountReport verify_face_counts(const NewtonGraphResult& result, const NewtonMap& f) {
  if (result.graphs.size() < 2) throw Error(ErrorCode::InvalidArgument, "face counts need Delta_0 and Delta_1");
  const GeoGraph& d0 = result.graphs[0];
  const GeoGraph& d1 = result.graphs[1];
  const EmbeddedGraph emb = d0.to_embedded();
  const auto faces = emb.faces();
  const double tol = f.tol.match_tol;

  // Roots joined to a pole by an edge of Delta_1 have the pole on the
  // boundary of their immediate basin.
  auto roots_at_pole = [&](int pole) {
    std::set<int> roots;
    const int pv = d1.find_vertex(f.poles[pole].point, tol);
    if (pv < 0) return roots;
    for (const auto& e : d1.edges) {
      const int other = e.from == pv ? e.to : e.to == pv ? e.from : -1;
      if (other >= 0 && d1.vertices[other].kind == VertexKind::Root) roots.insert(other);
    }
    return roots;
  };

  FaceCountReport report;
  std::vector<int> home(f.poles.size(), -1);
  for (std::size_t p = 0; p < f.poles.size(); ++p) {
    int hits = 0;
    for (std::size_t fi = 0; fi < faces.size(); ++fi)
      if (face_winding(d0, faces[fi], f.poles[p].point.value()) == -1) {
        home[p] = static_cast<int>(fi);
        ++hits;
      }
    if (hits != 1) report.unplaced_poles.push_back(static_cast<int>(p));
  }

  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    FaceCount fc;
    fc.face = static_cast<int>(fi);
    std::set<int> roots;
    for (int d : faces[fi])
      if (emb.kind(emb.vertex_of(d)) == VertexKind::Root) roots.insert(emb.vertex_of(d));
    fc.boundary_roots.assign(roots.begin(), roots.end());
    for (std::size_t p = 0; p < f.poles.size(); ++p)
      if (home[p] == fc.face) {
        fc.interior_poles.push_back(static_cast<int>(p));
        fc.interior_pole_multiplicity += f.poles[p].multiplicity;
        if (roots_at_pole(static_cast<int>(p)).size() >= 2) fc.shared_pole = true;
      }
    fc.fixed_point_rule = static_cast<int>(fc.boundary_roots.size()) == fc.interior_pole_multiplicity + 1;
    report.faces.push_back(std::move(fc));
  }

  for (std::size_t p = 0; p < f.poles.size(); ++p)
    if (f.poles[p].multiplicity == 1 && roots_at_pole(static_cast<int>(p)).size() > 2)
      report.simple_pole_overload.push_back(static_cast<int>(p));
  return report;
}

nlohmann::json to_json(const NewtonGraphResult& r, int max_samples) {
  GeoGraph g = r.graphs.back();
  if (max_samples >= 2)
    for (auto& e : g.edges) {
      auto& pts = e.line.points;
      if (static_cast<int>(pts.size()) <= max_samples) continue;
      std::vector<SpherePoint> thin;
      const std::size_t n = pts.size() - 1;
      for (int i = 0; i < max_samples; ++i) thin.push_back(pts[n * i / (max_samples - 1)]);
      pts = std::move(thin);
    }
  nlohmann::json j = to_json(g);
  const auto& dyn = r.combinatorial.dynamics;
  nlohmann::json vm = nlohmann::json::object(), em = nlohmann::json::object(), ld = nlohmann::json::object();
  for (std::size_t v = 0; v < dyn.vertex_map.size(); ++v) {
    vm[std::to_string(v)] = dyn.vertex_map[v];
    ld[std::to_string(v)] = dyn.local_degree[v];
  }
  for (std::size_t e = 0; e < dyn.edge_map.size(); ++e) em[std::to_string(e)] = dyn.edge_map[e];
  j["vertex_map"] = vm;
  j["edge_map"] = em;
  j["local_degrees"] = ld;
  j["N"] = r.N;
  j["pole_cover_level"] = r.pole_cover_level;
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t n = 0; n < r.graphs.size(); ++n)
    levels.push_back({{"level", n}, {"vertices", r.graphs[n].num_vertices()}, {"edges", r.graphs[n].num_edges()}});
  j["levels"] = levels;
  j["combinatorial"] = to_json(r.combinatorial.graph, dyn);
  return j;
}

}  // namespace newtongraph
