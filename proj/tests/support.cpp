#include "support.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>

namespace testing {

const std::vector<PoolEntry>& pool() {
  static const std::vector<PoolEntry> p{
      {"z3-1", {-1.0, 0.0, 0.0, 1.0}, 2},
      {"z3-z", {0.0, -1.0, 0.0, 1.0}, 1},
      {"z4-1", {-1.0, 0.0, 0.0, 0.0, 1.0}, 2},
      {"z4-z", {0.0, -1.0, 0.0, 0.0, 1.0}, 1},
      {"z4-6z2-3", {-3.0, 0.0, -6.0, 0.0, 1.0}, 3},
  };
  return p;
}

namespace {

const PoolEntry& entry(const std::string& name) {
  for (const auto& e : pool())
    if (e.name == name) return e;
  throw std::out_of_range("no pool member " + name);
}

std::mutex cache_mutex;

}  // namespace

const newtongraph::NewtonMap& pool_map(const std::string& name) {
  static std::map<std::string, newtongraph::NewtonMap> cache;
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, newtongraph::make_newton_map(newtongraph::Polynomial(entry(name).coeffs))).first;
  return it->second;
}

const newtongraph::NewtonGraphResult& pool_graph(const std::string& name) {
  static std::map<std::string, newtongraph::NewtonGraphResult> cache;
  const auto& f = pool_map(name);
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, newtongraph::compute_newton_graph(f)).first;
  return it->second;
}

std::string data_path(const std::string& file) { return std::string(NEWTONGRAPH_TEST_DATA) + "/" + file; }

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(NEWTONGRAPH_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "newtongraph_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace testing

namespace testing {

using namespace newtongraph;

Mutation delete_edge(const NewtonGraphData& g, int x) {
  const int E = g.graph.num_edges();
  auto dart = [&](int d) { return d < 2 * x ? d : (d < 2 * x + 2 ? -1 : d - 2); };
  auto edge = [&](int e) { return e < x ? e : (e == x ? -1 : e - 1); };
  std::vector<std::vector<int>> rot;
  for (const auto& r : g.graph.rotations()) {
    std::vector<int> out;
    for (int d : r)
      if (dart(d) >= 0) out.push_back(dart(d));
    rot.push_back(out);
  }
  Mutation m;
  m.what = "delete edge " + std::to_string(x);
  m.site = {g.graph.tail(x), g.graph.head(x)};
  m.data.graph = EmbeddedGraph(g.graph.kinds(), rot);
  auto& dyn = m.data.dynamics;
  dyn = g.dynamics;
  dyn.edge_map.clear();
  for (int e = 0; e < E; ++e)
    if (e != x) dyn.edge_map.push_back(g.dynamics.edge_map[e] < 0 ? -1 : edge(g.dynamics.edge_map[e]));
  dyn.dart_map.clear();
  for (int d = 0; d < 2 * E; ++d)
    if (dart(d) >= 0) dyn.dart_map.push_back(g.dynamics.dart_map[d] < 0 ? -1 : dart(g.dynamics.dart_map[d]));
  dyn.delta_edges.clear();
  for (int e : g.dynamics.delta_edges)
    if (e != x) dyn.delta_edges.push_back(edge(e));
  return m;
}

Mutation bump_degree(const NewtonGraphData& g, int v) {
  Mutation m{g, "raise local degree at vertex " + std::to_string(v), {v}};
  m.data.dynamics.local_degree[v] += 1;
  return m;
}

Mutation swap_darts(const NewtonGraphData& g, int v, int i, int j) {
  auto rot = g.graph.rotations();
  std::swap(rot[v][i], rot[v][j]);
  return {{EmbeddedGraph(g.graph.kinds(), rot), g.dynamics},
          "swap darts " + std::to_string(rot[v][i]) + ", " + std::to_string(rot[v][j]) + " at vertex " +
              std::to_string(v),
          {v}};
}

Mutation random_mutation(const NewtonGraphData& g, unsigned r, unsigned pick) {
  const auto& delta = g.dynamics.delta_edges;
  if (pick % 3 == 0) {
    std::vector<int> outer;
    for (int e = 0; e < g.graph.num_edges(); ++e)
      if (!std::binary_search(delta.begin(), delta.end(), e)) outer.push_back(e);
    return delete_edge(g, outer[r % outer.size()]);
  }
  if (pick % 3 == 1) return bump_degree(g, static_cast<int>(r % g.graph.num_vertices()));
  std::vector<std::array<int, 3>> swaps;
  for (int v = 0; v < g.graph.num_vertices(); ++v) {
    const auto& rot = g.graph.rotations()[v];
    if (rot.size() < 3) continue;
    for (std::size_t i = 0; i < rot.size(); ++i)
      for (std::size_t j = i + 1; j < rot.size(); ++j)
        if (g.dynamics.dart_map[rot[i]] != g.dynamics.dart_map[rot[j]])
          swaps.push_back({v, static_cast<int>(i), static_cast<int>(j)});
  }
  const auto& s = swaps[r % swaps.size()];
  return swap_darts(g, s[0], s[1], s[2]);
}

bool witness_hits(const ValidationReport& rep, const EmbeddedGraph& g, const std::vector<int>& site) {
  auto at_site = [&](int v) { return std::find(site.begin(), site.end(), v) != site.end(); };
  for (const auto& e : rep.entries) {
    if (e.pass) continue;
    for (int v : e.vertices)
      if (at_site(v)) return true;
    for (int x : e.edges)
      if (x < g.num_edges() && (at_site(g.tail(x)) || at_site(g.head(x)))) return true;
  }
  return false;
}

}  // namespace testing
