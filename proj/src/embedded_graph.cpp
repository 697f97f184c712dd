#include "newtongraph/embedded_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "newtongraph/error.hpp"

namespace newtongraph {

namespace {

constexpr std::pair<VertexKind, const char*> kKindNames[] = {
    {VertexKind::Root, "root"},       {VertexKind::Infinity, "infinity"}, {VertexKind::Pole, "pole"},
    {VertexKind::Prepole, "prepole"}, {VertexKind::Preroot, "preroot"},   {VertexKind::Other, "other"},
};

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

int as_int(const nlohmann::json& j, const char* what) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(j.get<std::string>(), &pos);
      if (pos == j.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  parse_fail(std::string("expected integer for ") + what);
}

// Keys of a JSON object, or indices of a JSON array, as integers.
std::map<int, nlohmann::json> int_keyed(const nlohmann::json& j, const char* what) {
  std::map<int, nlohmann::json> out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) out[as_int(nlohmann::json(it.key()), what)] = it.value();
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out[static_cast<int>(i)] = j[i];
  } else {
    parse_fail(std::string(what) + " must be an object or array");
  }
  return out;
}

}  // namespace

const char* to_string(VertexKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "other";
}

VertexKind vertex_kind_from_string(const std::string& s) {
  for (const auto& [k, name] : kKindNames)
    if (s == name) return k;
  parse_fail("unknown vertex kind '" + s + "'");
}

EmbeddedGraph::EmbeddedGraph(std::vector<VertexKind> kinds, const std::vector<std::vector<int>>& rotation)
    : kinds_(std::move(kinds)), rotation_(rotation) {
  if (rotation_.size() != kinds_.size())
    throw Error(ErrorCode::InvalidArgument, "rotation and kind lists differ in size");
  rebuild_from_rotation();
}

void EmbeddedGraph::rebuild_from_rotation() {
  std::size_t total = 0;
  for (const auto& r : rotation_) total += r.size();
  if (total % 2) throw Error(ErrorCode::InvalidArgument, "odd number of darts");
  sigma_.assign(total, -1);
  dart_vertex_.assign(total, -1);
  for (std::size_t v = 0; v < rotation_.size(); ++v) {
    auto& r = rotation_[v];
    if (!r.empty()) std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const int d = r[i];
      if (d < 0 || static_cast<std::size_t>(d) >= total || dart_vertex_[d] != -1)
        throw Error(ErrorCode::InvalidArgument, "dart " + std::to_string(d) + " missing or repeated in rotations");
      dart_vertex_[d] = static_cast<int>(v);
      sigma_[d] = r[(i + 1) % r.size()];
    }
  }
}

std::vector<int> EmbeddedGraph::rotation(int v) const { return rotation_[v]; }

std::vector<std::vector<int>> EmbeddedGraph::faces() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(sigma_.size(), 0);
  for (int d0 = 0; d0 < num_darts(); ++d0) {
    if (seen[d0]) continue;
    std::vector<int> walk;
    for (int d = d0; !seen[d]; d = sigma_[alpha(d)]) {
      seen[d] = 1;
      walk.push_back(d);
    }
    out.push_back(std::move(walk));
  }
  return out;
}

int EmbeddedGraph::num_faces() const {
  // An isolated vertex still bounds one face.
  if (num_darts() == 0) return num_vertices() > 0 ? 1 : 0;
  return static_cast<int>(faces().size());
}

std::vector<int> EmbeddedGraph::face_of_dart() const {
  std::vector<int> out(sigma_.size(), -1);
  const auto fs = faces();
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (int d : fs[f]) out[d] = static_cast<int>(f);
  return out;
}

bool EmbeddedGraph::is_connected() const {
  if (num_vertices() == 0) return true;
  std::vector<char> seen(kinds_.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int d : rotation_[v]) {
      const int w = dart_vertex_[alpha(d)];
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == num_vertices();
}

std::optional<int> EmbeddedGraph::infinity_vertex() const {
  for (int v = 0; v < num_vertices(); ++v)
    if (kinds_[v] == VertexKind::Infinity) return v;
  return std::nullopt;
}

std::optional<std::string> EmbeddedGraph::check() const {
  for (int d = 0; d < num_darts(); ++d)
    if (dart_vertex_[d] < 0) return "dart " + std::to_string(d) + " is not in any rotation";
  if (!is_connected()) return "graph is not connected";
  if (euler_characteristic() != 2) return "V - E + F = " + std::to_string(euler_characteristic()) + ", expected 2";
  return std::nullopt;
}

EmbeddedGraph EmbeddedGraph::mirrored() const {
  auto rot = rotation_;
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return EmbeddedGraph(kinds_, rot);
}

nlohmann::json to_json(const EmbeddedGraph& g, const GraphDynamics& dyn) {
  using nlohmann::json;
  json j;
  json darts = json::array(), alpha = json::array();
  for (int d = 0; d < g.num_darts(); ++d) darts.push_back(d);
  for (int e = 0; e < g.num_edges(); ++e) alpha.push_back({2 * e, 2 * e + 1});
  j["darts"] = darts;
  j["alpha"] = alpha;
  json sigma = json::object(), kinds = json::object();
  for (int v = 0; v < g.num_vertices(); ++v) {
    sigma[std::to_string(v)] = g.rotation(v);
    kinds[std::to_string(v)] = to_string(g.kind(v));
  }
  j["sigma"] = sigma;
  j["vertex_kinds"] = kinds;

  auto keyed = [](const std::vector<int>& xs) {
    json o = json::object();
    for (std::size_t i = 0; i < xs.size(); ++i) o[std::to_string(i)] = xs[i];
    return o;
  };
  json dj;
  dj["vertex_map"] = keyed(dyn.vertex_map);
  dj["edge_map"] = keyed(dyn.edge_map);
  dj["dart_map"] = keyed(dyn.dart_map);
  dj["local_degree"] = keyed(dyn.local_degree);
  dj["delta_edges"] = dyn.delta_edges;
  dj["N"] = dyn.N;
  j["dynamics"] = dj;
  return j;
}

NewtonGraphData newton_graph_from_json(const nlohmann::json& input) {
  const nlohmann::json& j = input.contains("combinatorial") ? input.at("combinatorial") : input;
  if (!j.is_object() || !j.contains("alpha") || !j.contains("sigma"))
    parse_fail("combinatorial graph needs 'alpha' and 'sigma'");

  // Input dart ids become canonical: the i-th alpha pair is edge i.
  std::map<int, int> dart_id;
  int e = 0;
  for (const auto& pair : j.at("alpha")) {
    if (!pair.is_array() || pair.size() != 2) parse_fail("alpha entries must be dart pairs");
    const int a = as_int(pair[0], "dart"), b = as_int(pair[1], "dart");
    if (a == b || dart_id.count(a) || dart_id.count(b)) parse_fail("alpha is not a fixed-point-free involution");
    dart_id[a] = 2 * e;
    dart_id[b] = 2 * e + 1;
    ++e;
  }
  if (j.contains("darts")) {
    std::set<int> listed;
    for (const auto& d : j.at("darts")) listed.insert(as_int(d, "dart"));
    if (listed.size() != dart_id.size()) parse_fail("'darts' disagrees with 'alpha'");
    for (int d : listed)
      if (!dart_id.count(d)) parse_fail("dart " + std::to_string(d) + " has no alpha partner");
  }
  auto dart = [&](const nlohmann::json& x) {
    const int d = as_int(x, "dart");
    if (d == -1) return -1;
    const auto it = dart_id.find(d);
    if (it == dart_id.end()) parse_fail("unknown dart " + std::to_string(d));
    return it->second;
  };

  const auto sigma_in = int_keyed(j.at("sigma"), "sigma");
  std::map<int, int> vertex_id;
  for (const auto& [v, _] : sigma_in) vertex_id.emplace(v, static_cast<int>(vertex_id.size()));
  auto vertex = [&](const nlohmann::json& x) {
    const auto it = vertex_id.find(as_int(x, "vertex"));
    if (it == vertex_id.end()) parse_fail("unknown vertex " + x.dump());
    return it->second;
  };

  std::vector<std::vector<int>> rotation(vertex_id.size());
  for (const auto& [v, cycle] : sigma_in) {
    if (!cycle.is_array()) parse_fail("sigma cycles must be arrays");
    for (const auto& d : cycle) rotation[vertex_id[v]].push_back(dart(d));
  }
  std::vector<VertexKind> kinds(vertex_id.size(), VertexKind::Other);
  if (j.contains("vertex_kinds"))
    for (const auto& [v, k] : int_keyed(j.at("vertex_kinds"), "vertex_kinds")) {
      if (!k.is_string()) parse_fail("vertex kinds must be strings");
      kinds[vertex(nlohmann::json(v))] = vertex_kind_from_string(k.get<std::string>());
    }

  NewtonGraphData out;
  try {
    out.graph = EmbeddedGraph(kinds, rotation);
  } catch (const Error& err) {
    parse_fail(err.what());
  }
  const int V = out.graph.num_vertices(), E = out.graph.num_edges(), D = out.graph.num_darts();
  auto& dyn = out.dynamics;
  dyn.vertex_map.assign(V, -1);
  dyn.edge_map.assign(E, -1);
  dyn.dart_map.assign(D, -1);
  dyn.local_degree.assign(V, 1);
  if (!j.contains("dynamics")) return out;
  const auto& dj = j.at("dynamics");

  auto edge = [&](const nlohmann::json& x) {
    const int id = as_int(x, "edge");
    if (id == -1) return -1;
    if (id < 0 || id >= E) parse_fail("edge id out of range: " + std::to_string(id));
    return id;
  };
  if (dj.contains("vertex_map"))
    for (const auto& [v, w] : int_keyed(dj.at("vertex_map"), "vertex_map"))
      dyn.vertex_map[vertex(nlohmann::json(v))] = vertex(w);
  if (dj.contains("edge_map"))
    for (const auto& [a, b] : int_keyed(dj.at("edge_map"), "edge_map")) dyn.edge_map[edge(nlohmann::json(a))] = edge(b);
  if (dj.contains("dart_map"))
    for (const auto& [a, b] : int_keyed(dj.at("dart_map"), "dart_map")) {
      const int from = dart(nlohmann::json(a));
      if (from < 0) parse_fail("dart_map key -1");
      dyn.dart_map[from] = dart(b);
    }
  if (dj.contains("local_degree"))
    for (const auto& [v, k] : int_keyed(dj.at("local_degree"), "local_degree"))
      dyn.local_degree[vertex(nlohmann::json(v))] = as_int(k, "local degree");
  if (dj.contains("delta_edges")) {
    for (const auto& x : dj.at("delta_edges")) dyn.delta_edges.push_back(edge(x));
    std::sort(dyn.delta_edges.begin(), dyn.delta_edges.end());
  }
  if (dj.contains("N")) dyn.N = as_int(dj.at("N"), "N");
  return out;
}

NewtonGraphData relabeled(const NewtonGraphData& data, unsigned seed) {
  const EmbeddedGraph& g = data.graph;
  const GraphDynamics& dyn = data.dynamics;
  std::mt19937 rng(seed);
  std::vector<int> edge_perm(g.num_edges()), vertex_perm(g.num_vertices());
  std::iota(edge_perm.begin(), edge_perm.end(), 0);
  std::iota(vertex_perm.begin(), vertex_perm.end(), 0);
  std::shuffle(edge_perm.begin(), edge_perm.end(), rng);
  std::shuffle(vertex_perm.begin(), vertex_perm.end(), rng);
  std::vector<int> flip(g.num_edges());
  for (int& f : flip) f = static_cast<int>(rng() & 1u);
  auto dart = [&](int d) { return d < 0 ? -1 : 2 * edge_perm[d / 2] + ((d & 1) ^ flip[d / 2]); };

  std::vector<VertexKind> kinds(g.num_vertices());
  std::vector<std::vector<int>> rotation(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    kinds[vertex_perm[v]] = g.kind(v);
    for (int d : g.rotation(v)) rotation[vertex_perm[v]].push_back(dart(d));
  }
  NewtonGraphData out;
  out.graph = EmbeddedGraph(kinds, rotation);
  auto& o = out.dynamics;
  o.N = dyn.N;
  o.vertex_map.assign(g.num_vertices(), -1);
  o.local_degree.assign(g.num_vertices(), 1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v < static_cast<int>(dyn.vertex_map.size()) && dyn.vertex_map[v] >= 0)
      o.vertex_map[vertex_perm[v]] = vertex_perm[dyn.vertex_map[v]];
    if (v < static_cast<int>(dyn.local_degree.size())) o.local_degree[vertex_perm[v]] = dyn.local_degree[v];
  }
  o.edge_map.assign(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges() && e < static_cast<int>(dyn.edge_map.size()); ++e)
    if (dyn.edge_map[e] >= 0) o.edge_map[edge_perm[e]] = edge_perm[dyn.edge_map[e]];
  o.dart_map.assign(g.num_darts(), -1);
  for (int d = 0; d < g.num_darts() && d < static_cast<int>(dyn.dart_map.size()); ++d)
    o.dart_map[dart(d)] = dart(dyn.dart_map[d]);
  for (int e : dyn.delta_edges) o.delta_edges.push_back(edge_perm[e]);
  std::sort(o.delta_edges.begin(), o.delta_edges.end());
  return out;
}

std::vector<int> edge_depths(const GraphDynamics& dyn, int num_edges) {
  std::vector<char> in_delta(num_edges, 0);
  for (int e : dyn.delta_edges)
    if (e >= 0 && e < num_edges) in_delta[e] = 1;
  std::vector<int> depth(num_edges, -1);
  for (int e = 0; e < num_edges; ++e) {
    int cur = e;
    for (int n = 0; n <= num_edges; ++n) {
      if (cur < 0 || cur >= num_edges) break;
      if (in_delta[cur]) {
        depth[e] = n;
        break;
      }
      cur = cur < static_cast<int>(dyn.edge_map.size()) ? dyn.edge_map[cur] : -1;
    }
  }
  return depth;
}

}  // namespace newtongraph
