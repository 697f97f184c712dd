#pragma once

#include <map>
#include <string>
#include <vector>

#include "newtongraph/newton_graph.hpp"
#include "newtongraph/validate.hpp"

namespace testing {

using newtongraph::Complex;

struct PoolEntry {
  std::string name;
  std::vector<Complex> coeffs;  // lowest degree first
  int N;
};

/// Postcritically fixed polynomials of degree 3 and 4.
const std::vector<PoolEntry>& pool();

const newtongraph::NewtonMap& pool_map(const std::string& name);
/// Newton graph of a pool member, computed once per process.
const newtongraph::NewtonGraphResult& pool_graph(const std::string& name);

std::string data_path(const std::string& file);

struct Run {
  int code;
  std::string out;
};
/// Runs the command line tool with `args`, capturing stdout.
Run run_cli(const std::string& args);

std::string read_file(const std::string& path);
std::string temp_path(const std::string& name);

}  // namespace testing

namespace testing {

struct Mutation {
  newtongraph::NewtonGraphData data;
  std::string what;
  std::vector<int> site;  ///< vertices touched by the mutation
};

/// Removes edge x; darts and edges above it are renumbered and dynamics
/// pointing at it become missing.
Mutation delete_edge(const newtongraph::NewtonGraphData& g, int x);
Mutation bump_degree(const newtongraph::NewtonGraphData& g, int v);
/// Swaps the darts at rotation positions i and j of vertex v.
Mutation swap_darts(const newtongraph::NewtonGraphData& g, int v, int i, int j);

/// One of the three mutations, chosen by `rng_value`; swaps only exchange
/// darts with different images.
Mutation random_mutation(const newtongraph::NewtonGraphData& g, unsigned rng_value, unsigned pick);

/// Some failing condition names a site vertex or an edge at a site vertex.
bool witness_hits(const newtongraph::ValidationReport& rep, const newtongraph::EmbeddedGraph& g,
                  const std::vector<int>& site);

}  // namespace testing
