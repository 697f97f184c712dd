#include "newtongraph/geo_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "newtongraph/error.hpp"

namespace newtongraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

double segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

nlohmann::json point_json(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  return {p.value().real(), p.value().imag()};
}

SpherePoint point_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return SpherePoint::infinity();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return SpherePoint(j[0].get<double>(), j[1].get<double>());
  throw Error(ErrorCode::Parse, "bad point " + j.dump());
}

}  // namespace

double distance_to_polyline(Complex z, const Polyline& line) {
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = line.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const SpherePoint &a = pts[i], &b = pts[i + 1];
    if (a.is_finite() && b.is_finite()) {
      best = std::min(best, segment_distance(z, a.value(), b.value()));
    } else if (a.is_finite() != b.is_finite()) {
      const Complex base = a.is_finite() ? a.value() : b.value();
      best = std::min(best, segment_distance(z, base, base * 1e12));
    }
  }
  if (pts.size() == 1 && pts[0].is_finite()) best = std::abs(z - pts[0].value());
  return best;
}

int GeoGraph::find_vertex(const SpherePoint& z, double tol) const {
  int best = -1;
  double best_d = tol;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double d = chordal_distance(vertices[i].pos, z);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double GeoGraph::dart_angle(int dart) const {
  const GeoEdge& e = edges[dart / 2];
  const auto& pts = e.line.points;
  const bool tail = (dart & 1) == 0;
  const SpherePoint& v = tail ? pts.front() : pts.back();
  const SpherePoint& next = tail ? pts[1] : pts[pts.size() - 2];
  if (v.is_infinity()) return wrap(-std::arg(next.value()));
  if (next.is_infinity()) return wrap(std::arg(v.value()));
  return wrap(std::arg(next.value() - v.value()));
}

std::vector<std::vector<int>> GeoGraph::cyclic_orders() const {
  std::vector<std::vector<int>> out(vertices.size());
  for (int e = 0; e < num_edges(); ++e) {
    out[edges[e].from].push_back(2 * e);
    out[edges[e].to].push_back(2 * e + 1);
  }
  for (auto& darts : out) {
    std::vector<std::pair<double, int>> keyed;
    for (int d : darts) keyed.emplace_back(dart_angle(d), d);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < darts.size(); ++i) darts[i] = keyed[i].second;
  }
  return out;
}

EmbeddedGraph GeoGraph::to_embedded() const {
  std::vector<VertexKind> kinds;
  for (const auto& v : vertices) kinds.push_back(v.kind);
  return EmbeddedGraph(kinds, cyclic_orders());
}

nlohmann::json to_json(const GeoGraph& g) {
  using nlohmann::json;
  json vs = json::array(), es = json::array(), orders = json::object();
  for (int i = 0; i < g.num_vertices(); ++i) {
    const auto& v = g.vertices[i];
    vs.push_back({{"id", i}, {"kind", to_string(v.kind)}, {"pos", point_json(v.pos)}, {"label", "v" + std::to_string(i)},
                  {"level", v.level}, {"image", v.image}});
  }
  for (int i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edges[i];
    json samples = json::array();
    for (const auto& p : e.line.points) samples.push_back(point_json(p));
    es.push_back({{"id", i}, {"from", e.from}, {"to", e.to}, {"level", e.level}, {"maps_to", e.maps_to},
                  {"owner", e.line.owner}, {"samples", samples}});
  }
  const auto co = g.cyclic_orders();
  for (std::size_t v = 0; v < co.size(); ++v) orders[std::to_string(v)] = co[v];
  return {{"vertices", vs}, {"edges", es}, {"cyclic_orders", orders}};
}

GeoGraph geo_graph_from_json(const nlohmann::json& j) {
  GeoGraph g;
  try {
    for (const auto& v : j.at("vertices")) {
      GeoVertex gv;
      gv.pos = point_from_json(v.at("pos"));
      gv.kind = vertex_kind_from_string(v.at("kind").get<std::string>());
      gv.level = v.value("level", 0);
      gv.image = v.value("image", -1);
      g.vertices.push_back(gv);
    }
    for (const auto& e : j.at("edges")) {
      GeoEdge ge;
      ge.from = e.at("from").get<int>();
      ge.to = e.at("to").get<int>();
      ge.level = e.value("level", 0);
      ge.maps_to = e.value("maps_to", -1);
      ge.line.owner = e.value("owner", -1);
      for (const auto& p : e.at("samples")) ge.line.points.push_back(point_from_json(p));
      if (ge.from < 0 || ge.from >= g.num_vertices() || ge.to < 0 || ge.to >= g.num_vertices() ||
          ge.line.points.size() < 2)
        throw Error(ErrorCode::Parse, "bad edge " + e.dump().substr(0, 80));
      g.edges.push_back(std::move(ge));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, ex.what());
  }
  return g;
}

std::string to_dot(const GeoGraph& g) {
  std::ostringstream os;
  os << "graph newton {\n  node [shape=point];\n";
  for (int i = 0; i < g.num_vertices(); ++i) {
    const auto& v = g.vertices[i];
    os << "  v" << i << " [xlabel=\"" << to_string(v.kind) << "\"";
    if (v.pos.is_finite()) os << ", pos=\"" << v.pos.value().real() << "," << v.pos.value().imag() << "!\"";
    os << "];\n";
  }
  for (int i = 0; i < g.num_edges(); ++i)
    os << "  v" << g.edges[i].from << " -- v" << g.edges[i].to << " [label=\"e" << i << " L" << g.edges[i].level
       << "\"];\n";
  os << "}\n";
  return os.str();
}

int face_winding(const GeoGraph& g, const std::vector<int>& face, Complex z) {
  double far = 1.0;
  for (const auto& e : g.edges)
    for (const auto& p : e.line.points)
      if (p.is_finite()) far = std::max(far, std::abs(p.value()));
  far *= 10.0;

  const EmbeddedGraph emb = g.to_embedded();
  std::vector<Complex> loop;
  for (int d : face) {
    const auto& pts = g.edges[d / 2].line.points;
    std::vector<SpherePoint> walk(pts.begin(), pts.end());
    if (d & 1) std::reverse(walk.begin(), walk.end());
    for (const auto& p : walk)
      if (p.is_finite()) loop.push_back(p.value());
    if (walk.back().is_infinity()) {
      // Corner at infinity: counterclockwise in the w chart from the
      // arriving dart to the next one, which is clockwise in z.
      const int arrive = EmbeddedGraph::alpha(d), leave = emb.sigma(arrive);
      double sweep = wrap(g.dart_angle(leave) - g.dart_angle(arrive));
      if (sweep == 0.0) sweep = kTwoPi;
      const double start = -g.dart_angle(arrive);
      const int steps = std::max(2, static_cast<int>(std::ceil(sweep / (kTwoPi / 64))));
      for (int s = 0; s <= steps; ++s) loop.push_back(std::polar(far, start - sweep * s / steps));
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Complex a = loop[i] - z, b = loop[(i + 1) % loop.size()] - z;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace newtongraph
