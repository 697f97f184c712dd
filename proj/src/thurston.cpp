#include "newtongraph/thurston.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "newtongraph/error.hpp"

namespace newtongraph {

namespace {

using Matrix = std::vector<std::vector<double>>;

std::vector<std::vector<char>> reachability(const Matrix& a) {
  const std::size_t m = a.size();
  std::vector<std::vector<char>> r(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) r[i][j] = a[i][j] > 0.0;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < m; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

void check_square(const Matrix& a) {
  for (const auto& row : a) {
    if (row.size() != a.size()) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
    for (double x : row)
      if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "matrix has a negative entry");
  }
}

struct Bounds {
  double lo, hi;
};

// Collatz-Wielandt bounds for an irreducible block from power iteration.
std::optional<double> power_iteration(const Matrix& b, double shift, int max_iter) {
  const std::size_t m = b.size();
  std::vector<double> x(m, 1.0), y(m);
  for (int it = 0; it < max_iter; ++it) {
    Bounds bd{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < m; ++i) {
      y[i] = shift * x[i];
      for (std::size_t j = 0; j < m; ++j) y[i] += b[i][j] * x[j];
      const double q = y[i] / x[i];
      bd.lo = std::min(bd.lo, q);
      bd.hi = std::max(bd.hi, q);
    }
    if (bd.hi - bd.lo <= 1e-12 * std::max(bd.hi, 1e-300)) return 0.5 * (bd.lo + bd.hi) - shift;
    const double top = *std::max_element(y.begin(), y.end());
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / top;
    if (std::any_of(x.begin(), x.end(), [](double v) { return v <= 0.0; })) return std::nullopt;
  }
  return std::nullopt;
}

double block_radius(const Matrix& b) {
  if (b.size() == 1) return b[0][0];
  double scale = 0.0;
  for (const auto& row : b) {
    double s = 0.0;
    for (double v : row) s += v;
    scale = std::max(scale, s);
  }
  Matrix n = b;
  for (auto& row : n)
    for (double& v : row) v /= scale;
  if (auto r = power_iteration(n, 0.0, 2000)) return *r * scale;
  if (auto r = power_iteration(n, 1e-3, 2'000'000)) return *r * scale;
  throw Error(ErrorCode::NoConvergence, "power iteration did not settle");
}

}  // namespace

void check(const MulticurveSpec& spec) {
  if (spec.classes < 0) throw Error(ErrorCode::InvalidArgument, "negative class count");
  if (static_cast<int>(spec.lifts.size()) > spec.classes)
    throw Error(ErrorCode::InvalidArgument, "lifts given for more classes than declared");
  for (const auto& lifts : spec.lifts)
    for (const auto& l : lifts) {
      if (l.degree < 1) throw Error(ErrorCode::InvalidArgument, "lift degree must be at least 1");
      if (l.target && (*l.target < 0 || *l.target >= spec.classes))
        throw Error(ErrorCode::InvalidArgument, "lift target out of range");
    }
}

RationalMatrix transition_entries(const MulticurveSpec& spec) {
  check(spec);
  RationalMatrix a(spec.classes, std::vector<Rational>(spec.classes, Rational(0)));
  for (std::size_t j = 0; j < spec.lifts.size(); ++j)
    for (const auto& l : spec.lifts[j])
      if (l.target) a[*l.target][j] += Rational(1, l.degree);
  return a;
}

TransitionMatrix transition_matrix(const MulticurveSpec& spec) {
  TransitionMatrix t;
  t.entries = transition_entries(spec);
  t.lambda = leading_eigenvalue(t.entries);
  t.irreducible = is_irreducible(t.entries);
  return t;
}

std::vector<std::vector<double>> to_double(const RationalMatrix& a) {
  Matrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& v : a[i]) out[i].push_back(boost::rational_cast<double>(v));
  return out;
}

double leading_eigenvalue(const Matrix& a) {
  check_square(a);
  const std::size_t m = a.size();
  const auto r = reachability(a);
  std::vector<char> done(m, 0);
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> comp{i};
    for (std::size_t j = i + 1; j < m; ++j)
      if (r[i][j] && r[j][i]) comp.push_back(j);
    for (auto c : comp) done[c] = 1;
    Matrix b(comp.size(), std::vector<double>(comp.size()));
    for (std::size_t p = 0; p < comp.size(); ++p)
      for (std::size_t q = 0; q < comp.size(); ++q) b[p][q] = a[comp[p]][comp[q]];
    best = std::max(best, block_radius(b));
  }
  return best;
}

double leading_eigenvalue(const RationalMatrix& a) { return leading_eigenvalue(to_double(a)); }

bool is_irreducible(const Matrix& a) {
  check_square(a);
  if (a.empty()) return false;
  for (const auto& row : reachability(a))
    for (char c : row)
      if (!c) return false;
  return true;
}

bool is_irreducible(const RationalMatrix& a) { return is_irreducible(to_double(a)); }

bool is_irreducible_obstruction(const MulticurveSpec& spec) {
  const auto t = transition_matrix(spec);
  return t.irreducible && t.lambda >= 1.0 - 1e-10;
}

MulticurveSpec multicurve_from_json(const nlohmann::json& j) {
  try {
    MulticurveSpec spec;
    spec.classes = j.at("classes").get<int>();
    spec.lifts.assign(std::max(spec.classes, 0), {});
    auto read_list = [&](int cls, const nlohmann::json& list) {
      if (cls < 0 || cls >= spec.classes) throw Error(ErrorCode::Parse, "lift table for unknown class");
      for (const auto& item : list) {
        CurveLift l;
        if (item.contains("target") && !item.at("target").is_null()) l.target = item.at("target").get<int>();
        l.degree = item.value("degree", 1);
        spec.lifts[cls].push_back(l);
      }
    };
    if (j.contains("lifts")) {
      const auto& lifts = j.at("lifts");
      if (lifts.is_array()) {
        for (std::size_t c = 0; c < lifts.size(); ++c) read_list(static_cast<int>(c), lifts[c]);
      } else {
        for (const auto& [key, list] : lifts.items()) read_list(std::stoi(key), list);
      }
    }
    check(spec);
    return spec;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, std::string("multicurve spec: ") + e.what());
  }
}

nlohmann::json to_json(const MulticurveSpec& spec) {
  nlohmann::json lifts = nlohmann::json::object();
  for (std::size_t c = 0; c < spec.lifts.size(); ++c) {
    auto list = nlohmann::json::array();
    for (const auto& l : spec.lifts[c])
      list.push_back({{"target", l.target ? nlohmann::json(*l.target) : nlohmann::json(nullptr)}, {"degree", l.degree}});
    lifts[std::to_string(c)] = list;
  }
  return {{"classes", spec.classes}, {"lifts", lifts}};
}

nlohmann::json to_json(const TransitionMatrix& t) {
  auto exact = nlohmann::json::array();
  for (const auto& row : t.entries) {
    auto r = nlohmann::json::array();
    for (const auto& v : row)
      r.push_back(v.denominator() == 1 ? std::to_string(v.numerator())
                                       : std::to_string(v.numerator()) + "/" + std::to_string(v.denominator()));
    exact.push_back(r);
  }
  return {{"matrix", exact},
          {"lambda", t.lambda},
          {"irreducible", t.irreducible},
          {"obstruction", t.irreducible && t.lambda >= 1.0 - 1e-10}};
}

}  // namespace newtongraph
