#include "newtongraph/validate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace newtongraph {

namespace {

// Dynamics resized to the graph, with out-of-range ids replaced by -1.
struct Dyn {
  std::vector<int> vmap, emap, dmap, deg;
  std::vector<char> in_delta;
  std::vector<int> delta;
  int N = 0;
};

Dyn normalize(const EmbeddedGraph& g, const GraphDynamics& dyn) {
  const int V = g.num_vertices(), E = g.num_edges(), D = g.num_darts();
  auto fit = [](const std::vector<int>& src, int n, int range, int fill) {
    std::vector<int> out(n, fill);
    for (int i = 0; i < n && i < static_cast<int>(src.size()); ++i)
      out[i] = (src[i] >= 0 && src[i] < range) ? src[i] : -1;
    return out;
  };
  Dyn d;
  d.vmap = fit(dyn.vertex_map, V, V, -1);
  d.emap = fit(dyn.edge_map, E, E, -1);
  d.dmap = fit(dyn.dart_map, D, D, -1);
  d.deg.assign(V, 1);
  for (int v = 0; v < V && v < static_cast<int>(dyn.local_degree.size()); ++v) d.deg[v] = dyn.local_degree[v];
  d.in_delta.assign(E, 0);
  for (int e : dyn.delta_edges)
    if (e >= 0 && e < E && !d.in_delta[e]) {
      d.in_delta[e] = 1;
      d.delta.push_back(e);
    }
  std::sort(d.delta.begin(), d.delta.end());
  d.N = dyn.N;
  return d;
}

int other_end(const EmbeddedGraph& g, int e, int v) { return g.tail(e) == v ? g.head(e) : g.tail(e); }

void unique_sort(std::vector<int>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

int pick_v0(const EmbeddedGraph& g, const std::vector<int>& delta) {
  std::vector<int> count(g.num_vertices(), 0);
  for (int e : delta) {
    ++count[g.tail(e)];
    if (g.head(e) != g.tail(e)) ++count[g.head(e)];
  }
  if (const auto inf = g.infinity_vertex(); inf && count[*inf] > 0) return *inf;
  return static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
}

struct ChannelInfo {
  int v0 = -1;
  std::vector<int> others;  ///< v_1 ... v_d
};

ChannelInfo channel_info(const EmbeddedGraph& g, const std::vector<int>& delta, int v0) {
  ChannelInfo info;
  info.v0 = v0 >= 0 ? v0 : (delta.empty() ? -1 : pick_v0(g, delta));
  std::set<int> vs;
  for (int e : delta) {
    vs.insert(g.tail(e));
    vs.insert(g.head(e));
  }
  vs.erase(info.v0);
  info.others.assign(vs.begin(), vs.end());
  return info;
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const ConditionResult* ValidationReport::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : r.entries)
    out.push_back({{"condition", e.id},
                   {"pass", e.pass},
                   {"witness", {{"vertices", e.vertices}, {"edges", e.edges}, {"faces", e.faces}}},
                   {"detail", e.detail}});
  return {{"conditions", out}, {"pass", r.all_pass()}};
}

std::string to_text(const ValidationReport& r) {
  std::ostringstream os;
  auto list = [&](const char* name, const std::vector<int>& xs) {
    if (xs.empty()) return;
    os << " " << name << "=";
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  };
  for (const auto& e : r.entries) {
    os << "condition " << e.id << ": " << (e.pass ? "pass" : "FAIL");
    list("vertices", e.vertices);
    list("edges", e.edges);
    list("faces", e.faces);
    if (!e.detail.empty()) os << " (" << e.detail << ")";
    os << "\n";
  }
  return os.str();
}

ValidationReport validate_channel_diagram(const EmbeddedGraph& g, const std::vector<int>& delta_edges, int v0) {
  std::vector<int> delta;
  for (int e : delta_edges)
    if (e >= 0 && e < g.num_edges()) delta.push_back(e);
  unique_sort(delta);
  const ChannelInfo info = channel_info(g, delta, v0);
  const int d = static_cast<int>(info.others.size());
  ValidationReport rep;

  ConditionResult c1;
  c1.id = "1";
  c1.pass = static_cast<int>(delta.size()) <= 2 * d - 2 && !delta.empty();
  if (!c1.pass) c1.edges = delta;
  c1.detail = std::to_string(delta.size()) + " edges, degree " + std::to_string(d);
  rep.entries.push_back(c1);

  ConditionResult c2;
  c2.id = "2";
  for (int e : delta)
    if ((g.tail(e) == info.v0) == (g.head(e) == info.v0)) c2.edges.push_back(e);
  c2.pass = c2.edges.empty() && info.v0 >= 0;
  if (!c2.pass) c2.detail = "edges not joining v0 to another vertex";
  rep.entries.push_back(c2);

  ConditionResult c3;
  c3.id = "3";
  for (int v : info.others) {
    const bool linked = std::any_of(delta.begin(), delta.end(), [&](int e) {
      return (g.tail(e) == v && g.head(e) == info.v0) || (g.head(e) == v && g.tail(e) == info.v0);
    });
    if (!linked) c3.vertices.push_back(v);
  }
  c3.pass = c3.vertices.empty();
  if (!c3.pass) c3.detail = "vertices without an edge to v0";
  rep.entries.push_back(c3);

  // Parallel edges: both angular intervals at v0 between them must lead
  // to some vertex other than their common endpoint.
  ConditionResult c4;
  c4.id = "4";
  c4.pass = true;
  if (info.v0 >= 0) {
    std::vector<int> around;  // channel darts at v0, counterclockwise
    std::vector<char> is_delta(g.num_edges(), 0);
    for (int e : delta) is_delta[e] = 1;
    for (int dart : g.rotation(info.v0))
      if (is_delta[EmbeddedGraph::edge_of(dart)]) around.push_back(dart);
    const int n = static_cast<int>(around.size());
    for (int vk : info.others) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (g.vertex_of(EmbeddedGraph::alpha(around[i])) == vk) idx.push_back(i);
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          auto side_ok = [&](int from, int to) {
            for (int i = (from + 1) % n; i != to; i = (i + 1) % n) {
              const int w = g.vertex_of(EmbeddedGraph::alpha(around[i]));
              if (w != vk && w != info.v0) return true;
            }
            return false;
          };
          if (!side_ok(idx[a], idx[b]) || !side_ok(idx[b], idx[a])) {
            c4.pass = false;
            c4.edges.push_back(EmbeddedGraph::edge_of(around[idx[a]]));
            c4.edges.push_back(EmbeddedGraph::edge_of(around[idx[b]]));
            c4.vertices.push_back(vk);
          }
        }
    }
  }
  unique_sort(c4.edges);
  unique_sort(c4.vertices);
  if (!c4.pass) c4.detail = "parallel edges bound an empty region";
  rep.entries.push_back(c4);
  return rep;
}

ValidationReport regular_extension_check(const EmbeddedGraph& g, const GraphDynamics& dyn_in) {
  const Dyn dyn = normalize(g, dyn_in);
  const int V = g.num_vertices();
  std::vector<int> pos(g.num_darts(), -1);
  std::vector<int> size(V, 0);
  for (int v = 0; v < V; ++v) {
    const auto r = g.rotation(v);
    size[v] = static_cast<int>(r.size());
    for (int i = 0; i < size[v]; ++i) pos[r[i]] = i;
  }
  const auto face_of = g.face_of_dart();

  ConditionResult model;
  model.id = "sector-model";
  ConditionResult inject;
  inject.id = "face-injectivity";
  // coverage[(face, y)][gap] = vertices whose corners cover that gap
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> coverage;

  for (int v = 0; v < V; ++v) {
    const auto r = g.rotation(v);
    const int m = static_cast<int>(r.size());
    if (m == 0) continue;
    const int y = dyn.vmap[v];
    bool ok = y >= 0 && size[y] > 0;
    for (int dart : r)
      if (ok && (dyn.dmap[dart] < 0 || g.vertex_of(dyn.dmap[dart]) != y)) ok = false;
    if (!ok) {
      model.vertices.push_back(v);
      continue;
    }
    const int D = size[y], k = dyn.deg[v];
    std::vector<int> step(m);
    if (m == 1) {
      step[0] = k * D;
    } else {
      for (int j = 0; j < m; ++j) {
        const int s = ((pos[dyn.dmap[r[(j + 1) % m]]] - pos[dyn.dmap[r[j]]]) % D + D) % D;
        step[j] = s == 0 ? D : s;
      }
    }
    if (std::accumulate(step.begin(), step.end(), 0) != k * D) {
      model.vertices.push_back(v);
      model.vertices.push_back(y);
      continue;
    }
    for (int j = 0; j < m; ++j) {
      const int face = face_of[r[(j + 1) % m]];
      auto& cov = coverage[{face, y}];
      if (cov.empty()) cov.resize(D);
      const int start = pos[dyn.dmap[r[j]]];
      for (int s = 0; s < step[j]; ++s) cov[(start + s) % D].push_back(v);
    }
  }
  unique_sort(model.vertices);
  model.pass = model.vertices.empty();
  if (!model.pass) model.detail = "dart images do not wrap the image star by the local degree";

  for (const auto& [key, cov] : coverage)
    for (const auto& who : cov)
      if (who.size() > 1) {
        inject.faces.push_back(key.first);
        inject.vertices.push_back(key.second);
        inject.vertices.insert(inject.vertices.end(), who.begin(), who.end());
      }
  unique_sort(inject.faces);
  unique_sort(inject.vertices);
  inject.pass = inject.faces.empty();
  if (!inject.pass) inject.detail = "corners in one face overlap above a vertex";

  ValidationReport rep;
  rep.entries = {model, inject};
  return rep;
}

ValidationReport validate_newton_graph(const EmbeddedGraph& g, const GraphDynamics& dyn_in) {
  const Dyn dyn = normalize(g, dyn_in);
  const int V = g.num_vertices(), E = g.num_edges();
  const ChannelInfo info = channel_info(g, dyn.delta, -1);
  const int d = static_cast<int>(info.others.size());
  std::vector<char> delta_vertex(V, 0);
  if (info.v0 >= 0) delta_vertex[info.v0] = 1;
  for (int v : info.others) delta_vertex[v] = 1;
  ValidationReport rep;

  // (1) channel diagram of degree >= 3, proper subgraph, fixed by g
  {
    ConditionResult c;
    c.id = "1";
    const auto channel = validate_channel_diagram(g, dyn.delta, info.v0);
    std::vector<std::string> why;
    for (const auto& e : channel.entries)
      if (!e.pass) {
        why.push_back("channel diagram condition " + e.id);
        c.vertices.insert(c.vertices.end(), e.vertices.begin(), e.vertices.end());
        c.edges.insert(c.edges.end(), e.edges.begin(), e.edges.end());
      }
    if (d < 3) why.push_back("degree " + std::to_string(d) + " < 3");
    if (static_cast<int>(dyn.delta.size()) >= E) why.push_back("channel diagram is all of the graph");
    for (int e : dyn.delta)
      if (dyn.emap[e] != e || dyn.dmap[2 * e] != 2 * e || dyn.dmap[2 * e + 1] != 2 * e + 1) {
        c.edges.push_back(e);
        why.push_back("edge " + std::to_string(e) + " not fixed");
      }
    for (int v = 0; v < V; ++v)
      if (delta_vertex[v] && dyn.vmap[v] != v) {
        c.vertices.push_back(v);
        why.push_back("vertex " + std::to_string(v) + " not fixed");
      }
    unique_sort(c.vertices);
    unique_sort(c.edges);
    c.pass = why.empty();
    for (std::size_t i = 0; i < why.size() && i < 4; ++i) c.detail += (i ? "; " : "") + why[i];
    rep.entries.push_back(c);
  }

  // (2) v0 meets only the channel diagram; v_i meet the rest and carry
  // deg - 1 channel edges
  {
    ConditionResult c;
    c.id = "2";
    if (info.v0 >= 0)
      for (int dart : g.rotation(info.v0))
        if (!dyn.in_delta[EmbeddedGraph::edge_of(dart)]) {
          c.vertices.push_back(info.v0);
          c.edges.push_back(EmbeddedGraph::edge_of(dart));
        }
    for (int v : info.others) {
      int outside = 0, to_v0 = 0;
      for (int dart : g.rotation(v)) {
        const int e = EmbeddedGraph::edge_of(dart);
        if (!dyn.in_delta[e]) ++outside;
        else if (other_end(g, e, v) == info.v0) ++to_v0;
      }
      if (outside == 0 || to_v0 != dyn.deg[v] - 1 || to_v0 < 1) c.vertices.push_back(v);
    }
    unique_sort(c.vertices);
    unique_sort(c.edges);
    c.pass = c.vertices.empty() && info.v0 >= 0;
    if (!c.pass) c.detail = "channel vertex with wrong edge counts";
    rep.entries.push_back(c);
  }

  // (3) degree bookkeeping
  {
    ConditionResult c;
    c.id = "3";
    int sum = 0;
    for (int v = 0; v < V; ++v) {
      sum += dyn.deg[v] - 1;
      if (dyn.deg[v] < 1) c.vertices.push_back(v);
    }
    c.pass = sum == 2 * d - 2 && c.vertices.empty();
    if (!c.pass) {
      for (int v = 0; v < V; ++v)
        if (dyn.deg[v] > 1) c.vertices.push_back(v);
      unique_sort(c.vertices);
    }
    c.detail = "sum " + std::to_string(sum) + ", expected " + std::to_string(2 * d - 2);
    rep.entries.push_back(c);
  }

  const auto depth = edge_depths({dyn.vmap, dyn.emap, dyn.dmap, dyn.deg, dyn.delta, dyn.N}, E);

  // (4) every edge reaches the channel diagram within N steps, and N is
  // minimal for the branch vertices
  {
    ConditionResult c;
    c.id = "4";
    for (int e = 0; e < E; ++e)
      if (depth[e] < 0 || depth[e] > dyn.N) c.edges.push_back(e);
    int need = 0;
    std::vector<int> vdepth(V, -1);
    for (int v = 0; v < V; ++v) {
      int cur = v;
      for (int n = 0; n <= V && cur >= 0; ++n, cur = dyn.vmap[cur])
        if (delta_vertex[cur]) {
          vdepth[v] = n;
          break;
        }
      if (dyn.deg[v] > 1) {
        if (vdepth[v] < 0) c.vertices.push_back(v);
        else need = std::max(need, vdepth[v] + 1);
      }
    }
    if (c.vertices.empty() && need != dyn.N)
      for (int v = 0; v < V; ++v)
        if (dyn.deg[v] > 1 && vdepth[v] + 1 == need) c.vertices.push_back(v);
    c.pass = c.edges.empty() && c.vertices.empty() && dyn.N >= 1;
    c.detail = "declared N = " + std::to_string(dyn.N) + ", branch vertices need " + std::to_string(need);
    rep.entries.push_back(c);
  }

  // (5) the closure of the non-channel part is connected
  {
    ConditionResult c;
    c.id = "5";
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::set<int> touched;
    for (int e = 0; e < E; ++e)
      if (!dyn.in_delta[e]) {
        parent[find(g.tail(e))] = find(g.head(e));
        touched.insert(g.tail(e));
        touched.insert(g.head(e));
      }
    std::set<int> roots;
    for (int v : touched) roots.insert(find(v));
    if (roots.size() > 1) {
      const int main_root = find(*touched.begin());
      for (int v : touched)
        if (find(v) != main_root) c.vertices.push_back(v);
    }
    c.pass = roots.size() == 1;
    c.detail = std::to_string(roots.size()) + " component(s)";
    rep.entries.push_back(c);
  }

  // (6) spherical embedding with a regular extension
  {
    ConditionResult c;
    c.id = "6";
    std::vector<std::string> why;
    if (const auto problem = g.check()) why.push_back(*problem);
    for (const auto& e : regular_extension_check(g, dyn_in).entries)
      if (!e.pass) {
        why.push_back(e.id + ": " + e.detail);
        c.vertices.insert(c.vertices.end(), e.vertices.begin(), e.vertices.end());
        c.faces.insert(c.faces.end(), e.faces.begin(), e.faces.end());
      }
    unique_sort(c.vertices);
    unique_sort(c.faces);
    c.pass = why.empty();
    for (std::size_t i = 0; i < why.size(); ++i) c.detail += (i ? "; " : "") + why[i];
    rep.entries.push_back(c);
  }

  // (7) star saturation: each dart of depth < N at g(v) has exactly
  // deg(v) preimage darts at v
  {
    ConditionResult c;
    c.id = "7";
    std::vector<int> count(g.num_darts(), 0);
    for (int v = 0; v < V; ++v) {
      const int y = dyn.vmap[v];
      if (y < 0) {
        c.vertices.push_back(v);
        continue;
      }
      const auto here = g.rotation(v);
      for (int dart : here)
        if (dyn.dmap[dart] >= 0) ++count[dyn.dmap[dart]];
      for (int target : g.rotation(y)) {
        const int e = EmbeddedGraph::edge_of(target);
        if (depth[e] >= 0 && depth[e] <= dyn.N - 1 && count[target] != dyn.deg[v]) {
          c.vertices.push_back(v);
          c.edges.push_back(e);
        }
      }
      for (int dart : here)
        if (dyn.dmap[dart] >= 0) --count[dyn.dmap[dart]];
    }
    unique_sort(c.vertices);
    unique_sort(c.edges);
    c.pass = c.vertices.empty();
    if (!c.pass) c.detail = "missing or extra lifts at a vertex star";
    rep.entries.push_back(c);
  }
  return rep;
}

}  // namespace newtongraph
