#pragma once

#include <optional>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

namespace newtongraph {

using Rational = boost::rational<long long>;
using RationalMatrix = std::vector<std::vector<Rational>>;

struct CurveLift {
  std::optional<int> target;  ///< class of the lifted curve, none if peripheral or trivial
  int degree = 1;
};

struct MulticurveSpec {
  int classes = 0;
  std::vector<std::vector<CurveLift>> lifts;  ///< lifts[j]: preimage components of curve j
};

/// Throws InvalidArgument on degrees < 1 or targets out of range.
void check(const MulticurveSpec& spec);

struct TransitionMatrix {
  RationalMatrix entries;  ///< entries[i][j] = sum of 1/degree over lifts of j in class i
  double lambda = 0.0;
  bool irreducible = false;
};

RationalMatrix transition_entries(const MulticurveSpec& spec);
TransitionMatrix transition_matrix(const MulticurveSpec& spec);

/// Spectral radius of a non-negative square matrix, block by block over
/// the strongly connected components. Power iteration from the all-ones
/// vector; a block that does not settle (periodic) is retried as
/// B + 1e-3 I. Throws NoConvergence if that fails too.
double leading_eigenvalue(const std::vector<std::vector<double>>& a);
double leading_eigenvalue(const RationalMatrix& a);

/// Support digraph strongly connected, with powers k >= 1 only: the 1x1
/// zero matrix is reducible.
bool is_irreducible(const std::vector<std::vector<double>>& a);
bool is_irreducible(const RationalMatrix& a);

bool is_irreducible_obstruction(const MulticurveSpec& spec);

std::vector<std::vector<double>> to_double(const RationalMatrix& a);

/// {"classes": m, "lifts": {"j": [{"target": i | null, "degree": k}, ...]}}
/// with 0-based class indices; "lifts" may also be an array.
MulticurveSpec multicurve_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MulticurveSpec& spec);
nlohmann::json to_json(const TransitionMatrix& t);

}  // namespace newtongraph
