#include "newtongraph/equivalence.hpp"

#include <algorithm>
#include <atomic>

namespace newtongraph {

namespace {

bool same_shape(const NewtonGraphData& a, const NewtonGraphData& b) {
  const auto& ga = a.graph;
  const auto& gb = b.graph;
  return ga.num_vertices() == gb.num_vertices() && ga.num_edges() == gb.num_edges() &&
         a.dynamics.delta_edges.size() == b.dynamics.delta_edges.size() && a.dynamics.N == b.dynamics.N;
}

int at(const std::vector<int>& xs, int i) { return i >= 0 && i < static_cast<int>(xs.size()) ? xs[i] : -1; }

// Image of x under `phi`, with -1 fixed.
int carry(const std::vector<int>& phi, int x) { return x < 0 ? -1 : at(phi, x); }

std::optional<Isomorphism> try_anchor(const NewtonGraphData& a, const NewtonGraphData& b, int anchor) {
  const auto& ga = a.graph;
  const auto& gb = b.graph;
  const int D = ga.num_darts();
  Isomorphism iso;
  iso.anchor = anchor;
  iso.dart_map.assign(D, -1);
  std::vector<char> used(D, 0);
  std::vector<int> stack{0};
  iso.dart_map[0] = anchor;
  used[anchor] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    const int y = iso.dart_map[x];
    const std::pair<int, int> next[] = {{ga.sigma(x), gb.sigma(y)},
                                        {EmbeddedGraph::alpha(x), EmbeddedGraph::alpha(y)}};
    for (const auto& [nx, ny] : next) {
      if (iso.dart_map[nx] >= 0) {
        if (iso.dart_map[nx] != ny) return std::nullopt;
        continue;
      }
      if (used[ny]) return std::nullopt;
      iso.dart_map[nx] = ny;
      used[ny] = 1;
      stack.push_back(nx);
    }
  }
  if (std::find(iso.dart_map.begin(), iso.dart_map.end(), -1) != iso.dart_map.end()) return std::nullopt;

  iso.vertex_map.assign(ga.num_vertices(), -1);
  for (int d = 0; d < D; ++d) iso.vertex_map[ga.vertex_of(d)] = gb.vertex_of(iso.dart_map[d]);
  iso.edge_map.resize(ga.num_edges());
  for (int e = 0; e < ga.num_edges(); ++e) iso.edge_map[e] = EmbeddedGraph::edge_of(iso.dart_map[2 * e]);
  if (!is_witness(a, b, iso)) return std::nullopt;
  return iso;
}

std::optional<Isomorphism> trivial_case(const NewtonGraphData& a, const NewtonGraphData& b) {
  // No darts: only a single vertex can be matched.
  if (a.graph.num_vertices() != 1) return std::nullopt;
  Isomorphism iso;
  iso.vertex_map = {0};
  if (!is_witness(a, b, iso)) return std::nullopt;
  return iso;
}

}  // namespace

bool is_witness(const NewtonGraphData& a, const NewtonGraphData& b, const Isomorphism& iso) {
  const auto& ga = a.graph;
  const auto& gb = b.graph;
  const auto& da = a.dynamics;
  const auto& db = b.dynamics;
  if (!same_shape(a, b)) return false;
  const int D = ga.num_darts(), V = ga.num_vertices(), E = ga.num_edges();
  if (static_cast<int>(iso.dart_map.size()) != D || static_cast<int>(iso.vertex_map.size()) != V ||
      static_cast<int>(iso.edge_map.size()) != E)
    return false;

  std::vector<char> hit(D, 0);
  for (int d = 0; d < D; ++d) {
    const int y = iso.dart_map[d];
    if (y < 0 || y >= D || hit[y]) return false;
    hit[y] = 1;
    if (gb.sigma(y) != iso.dart_map[ga.sigma(d)]) return false;
    if (EmbeddedGraph::alpha(y) != iso.dart_map[EmbeddedGraph::alpha(d)]) return false;
    if (gb.vertex_of(y) != iso.vertex_map[ga.vertex_of(d)]) return false;
    if (EmbeddedGraph::edge_of(y) != iso.edge_map[EmbeddedGraph::edge_of(d)]) return false;
    if (carry(iso.dart_map, at(da.dart_map, d)) != at(db.dart_map, y)) return false;
  }
  std::vector<char> vhit(V, 0);
  for (int v = 0; v < V; ++v) {
    const int w = iso.vertex_map[v];
    if (w < 0 || w >= V || vhit[w]) return false;
    vhit[w] = 1;
    if (ga.kind(v) != gb.kind(w)) return false;
    if (at(da.local_degree, v) != at(db.local_degree, w)) return false;
    if (carry(iso.vertex_map, at(da.vertex_map, v)) != at(db.vertex_map, w)) return false;
  }
  std::vector<char> in_b(E, 0);
  for (int e : db.delta_edges)
    if (e >= 0 && e < E) in_b[e] = 1;
  std::vector<char> in_a(E, 0);
  for (int e : da.delta_edges)
    if (e >= 0 && e < E) in_a[e] = 1;
  for (int e = 0; e < E; ++e) {
    const int f = iso.edge_map[e];
    if (f < 0 || f >= E || in_a[e] != in_b[f]) return false;
    if (carry(iso.edge_map, at(da.edge_map, e)) != at(db.edge_map, f)) return false;
  }
  return true;
}

std::optional<Isomorphism> graphs_equivalent_serial(const NewtonGraphData& a, const NewtonGraphData& b) {
  if (!same_shape(a, b)) return std::nullopt;
  if (a.graph.num_darts() == 0) return trivial_case(a, b);
  for (int anchor = 0; anchor < b.graph.num_darts(); ++anchor)
    if (auto iso = try_anchor(a, b, anchor)) return iso;
  return std::nullopt;
}

std::optional<Isomorphism> graphs_equivalent(const NewtonGraphData& a, const NewtonGraphData& b) {
  if (!same_shape(a, b)) return std::nullopt;
  if (a.graph.num_darts() == 0) return trivial_case(a, b);
  const int D = b.graph.num_darts();
  std::atomic<int> best{D};
#pragma omp parallel for schedule(dynamic, 4)
  for (int anchor = 0; anchor < D; ++anchor) {
    if (anchor >= best.load()) continue;
    if (try_anchor(a, b, anchor)) {
      int cur = best.load();
      while (anchor < cur && !best.compare_exchange_weak(cur, anchor)) {
      }
    }
  }
  if (best.load() == D) return std::nullopt;
  return try_anchor(a, b, best.load());
}

Isomorphism inverse(const Isomorphism& iso) {
  auto invert = [](const std::vector<int>& xs) {
    std::vector<int> out(xs.size(), -1);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (xs[i] >= 0 && xs[i] < static_cast<int>(xs.size())) out[xs[i]] = static_cast<int>(i);
    return out;
  };
  Isomorphism out;
  out.dart_map = invert(iso.dart_map);
  out.vertex_map = invert(iso.vertex_map);
  out.edge_map = invert(iso.edge_map);
  out.anchor = out.dart_map.empty() ? -1 : out.dart_map[0];
  return out;
}

Isomorphism compose(const Isomorphism& ab, const Isomorphism& bc) {
  auto chain = [](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(f.size(), -1);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = carry(g, f[i]);
    return out;
  };
  Isomorphism out;
  out.dart_map = chain(ab.dart_map, bc.dart_map);
  out.vertex_map = chain(ab.vertex_map, bc.vertex_map);
  out.edge_map = chain(ab.edge_map, bc.edge_map);
  out.anchor = out.dart_map.empty() ? -1 : out.dart_map[0];
  return out;
}

NewtonGraphData mirrored(const NewtonGraphData& data) { return {data.graph.mirrored(), data.dynamics}; }

}  // namespace newtongraph
