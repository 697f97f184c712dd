// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "newtongraph/dynamics.hpp"
#include "newtongraph/equivalence.hpp"
#include "newtongraph/error.hpp"
#include "newtongraph/newton_graph.hpp"
#include "newtongraph/rays.hpp"
#include "newtongraph/thurston.hpp"
#include "newtongraph/validate.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace newtongraph;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failed checks with a short reason.
struct Checks {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome finish(const Checks& c, const std::string& summary) {
  if (c.ok()) return {true, summary};
  std::string s = summary;
  for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) s += "; " + c.failures[i];
  if (c.failures.size() > 5) s += "; +" + std::to_string(c.failures.size() - 5) + " more";
  return {false, s};
}

std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

bool same_coeffs(const Polynomial& p, const std::vector<Complex>& expect, double tol) {
  if (p.degree() + 1 != static_cast<int>(expect.size())) return false;
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (std::abs(p[static_cast<int>(i)] - expect[i]) > tol) return false;
  return true;
}

bool exported_graph_passes(const NewtonGraphResult& r) {
  const auto data = newton_graph_from_json(nlohmann::json::parse(to_json(r).dump()));
  return validate_newton_graph(data.graph, data.dynamics).all_pass();
}

bool has_pole(const NewtonMap& f, Complex z, int mult) {
  for (const auto& p : f.poles)
    if (std::abs(p.point.value() - z) < 1e-9) return p.multiplicity == mult;
  return false;
}

Outcome criterion1() {
  Checks c;
  const auto t0 = Clock::now();
  const auto f = make_newton_map(Polynomial({-1.0, 0.0, 0.0, 1.0}));
  c.require(f.d == 3, "d != 3");
  // f = (2z^3 + 1) / (3z^2)
  c.require(same_coeffs(f.numerator(), {1.0, 0.0, 0.0, 2.0}, 1e-14), "numerator != 2z^3 + 1");
  c.require(same_coeffs(f.denominator(), {0.0, 0.0, 3.0}, 1e-14), "denominator != 3z^2");
  const auto factored = multiply(multiply({-1.0, 1.0}, {-1.0, 1.0}), {1.0, 2.0});
  c.require(same_coeffs(f.numerator() - f.denominator(), factored, 1e-14), "N - D != (z-1)^2 (2z+1)");
  c.require(f.roots.size() == 3, "root count");
  for (const auto& xi : f.roots) {
    const auto b = bottcher_local(f, xi);
    c.require(b.k == 2, "root not superattracting of degree 2");
    c.require(b.fixed_directions.size() == 1, "fixed ray count != k - 1");
  }
  c.require(has_pole(f, 0.0, 2), "pole 0 of multiplicity 2 missing");
  const auto r = compute_newton_graph(f);
  const auto& d0 = r.graphs.at(0);
  c.require(d0.num_edges() == 3 && d0.num_vertices() == 4, "Delta_0 size");
  c.require(d0.to_embedded().num_faces() == 1, "Delta_0 faces != 1");
  c.require(r.graphs.size() > 1 && contains_vertex(r.graphs[1], SpherePoint(0.0), 1e-6), "pole not in Delta_1");
  c.require(r.N == 2, "N = " + std::to_string(r.N));
  c.require(exported_graph_passes(r), "validation of export");
  const double s = seconds_since(t0);
  c.require(s < 10.0, "runtime");
  std::ostringstream os;
  os << "N=" << r.N << " |Delta_0|=(" << d0.num_vertices() << "," << d0.num_edges() << ") " << s << "s";
  return finish(c, os.str());
}

Outcome criterion2() {
  Checks c;
  const auto t0 = Clock::now();
  const auto f = make_newton_map(Polynomial({0.0, -1.0, 0.0, 1.0}));
  // f = 2z^3 / (3z^2 - 1)
  c.require(same_coeffs(f.numerator(), {0.0, 0.0, 0.0, 2.0}, 1e-14), "numerator != 2z^3");
  c.require(same_coeffs(f.denominator(), {-1.0, 0.0, 3.0}, 1e-14), "denominator != 3z^2 - 1");
  c.require(local_degree(f, SpherePoint(0.0)) == 3, "local degree at 0");
  const auto b = bottcher_local(f, SpherePoint(0.0));
  const double pi = std::numbers::pi;
  c.require(b.fixed_directions.size() == 2 && std::abs(b.fixed_directions[0] - pi / 2) < 1e-6 &&
                std::abs(b.fixed_directions[1] - 3 * pi / 2) < 1e-6,
            "fixed directions at 0");
  const auto r = compute_newton_graph(f);
  c.require(r.graphs.at(0).num_edges() == 4, "Delta_0 edges");
  const double p = 1.0 / std::sqrt(3.0);
  c.require(r.graphs.size() > 1 && contains_vertex(r.graphs[1], SpherePoint(p), 1e-6) &&
                contains_vertex(r.graphs[1], SpherePoint(-p), 1e-6),
            "poles not in Delta_1");
  c.require(r.N == 1, "N = " + std::to_string(r.N));
  c.require(exported_graph_passes(r), "validation of export");
  const double s = seconds_since(t0);
  c.require(s < 10.0, "runtime");
  std::ostringstream os;
  os << "N=" << r.N << " " << s << "s";
  return finish(c, os.str());
}

// Members of z^d + a z^j + b with small integer a, b whose Newton map is
// postcritically fixed.
std::set<std::vector<double>> scan_families() {
  std::set<std::vector<double>> found;
  for (int d : {3, 4})
    for (int j = 0; j < d - 1; ++j)
      for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b) {
          if (j == 0 && a != 0) continue;
          std::vector<Complex> coeffs(d + 1, 0.0);
          coeffs[d] = 1.0;
          coeffs[j] += a;
          coeffs[0] += b;
          try {
            const auto f = make_newton_map(Polynomial(coeffs));
            if (!is_postcritically_fixed(critical_orbits(f)).fixed) continue;
          } catch (const Error&) {
            continue;
          }
          std::vector<double> key;
          for (const auto& x : coeffs) key.push_back(x.real());
          found.insert(key);
        }
  return found;
}

Outcome criterion3() {
  Checks c;
  const auto certified = scan_families();
  int checked = 0;
  for (const auto& e : testing::pool()) {
    std::vector<double> key;
    for (const auto& x : e.coeffs) key.push_back(x.real());
    c.require(certified.count(key) == 1, e.name + " not certified by the scan");
    const auto& f = testing::pool_map(e.name);
    const auto& r = testing::pool_graph(e.name);
    int sum = 0;
    for (int k : r.combinatorial.dynamics.local_degree) sum += k - 1;
    c.require(sum == 2 * f.d - 2, e.name + ": degree sum " + std::to_string(sum));
    const auto emb = r.graphs.back().to_embedded();
    c.require(emb.euler_characteristic() == 2, e.name + ": Euler characteristic");
    c.require(r.combinatorial.graph.euler_characteristic() == 2, e.name + ": exported Euler characteristic");
    ++checked;
  }
  c.require(checked >= 4, "pool too small");
  return finish(c, std::to_string(checked) + " pool members, " + std::to_string(certified.size()) +
                       " certified in the family scan");
}

Outcome criterion4() {
  Checks c;
  int faces = 0;
  for (const auto& e : testing::pool()) {
    const auto rep = verify_face_counts(testing::pool_graph(e.name), testing::pool_map(e.name));
    for (const auto& fc : rep.faces) {
      ++faces;
      c.require(fc.fixed_point_rule, e.name + ": face " + std::to_string(fc.face) + " root/pole count");
      c.require(fc.shared_pole, e.name + ": face " + std::to_string(fc.face) + " has no shared pole");
    }
    c.require(rep.unplaced_poles.empty(), e.name + ": unplaced poles");
    c.require(rep.simple_pole_overload.empty(), e.name + ": simple pole touching > 2 roots");
  }
  return finish(c, std::to_string(faces) + " faces");
}

Outcome criterion5() {
  Checks c;
  std::vector<NewtonGraphData> graphs, copies;
  for (const auto& e : testing::pool()) {
    const auto& a = testing::pool_graph(e.name).combinatorial;
    const auto b = relabeled(a, 1234u + static_cast<unsigned>(graphs.size()));
    const auto iso = graphs_equivalent(a, b);
    c.require(iso && is_witness(a, b, *iso), e.name + ": relabeled copy not matched");
    graphs.push_back(a);
    copies.push_back(b);
  }
  double worst_ms = 0.0;
  int rejections = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      const auto& a = graphs[i];
      const auto& b = graphs[j];
      const bool eq = graphs_equivalent(a, b).has_value();
      c.require(eq == (i == j), "pool members " + std::to_string(i) + ", " + std::to_string(j));
      c.require(eq == graphs_equivalent(b, a).has_value(), "symmetry");
      for (std::size_t k = 0; k < graphs.size(); ++k)
        if (eq && graphs_equivalent(b, copies[k]))
          c.require(graphs_equivalent(a, copies[k]).has_value(), "transitivity");
      if (a.graph.num_vertices() != b.graph.num_vertices() || a.graph.num_edges() != b.graph.num_edges()) {
        double best = 1e300;
        for (int rep = 0; rep < 5; ++rep) {
          const auto t0 = Clock::now();
          const bool r = graphs_equivalent(a, b).has_value();
          best = std::min(best, seconds_since(t0) * 1e3);
          c.require(!r, "different sizes accepted");
        }
        worst_ms = std::max(worst_ms, best);
        ++rejections;
      }
    }
  c.require(worst_ms < 1.0, "slow rejection");
  std::ostringstream os;
  os << rejections << " size rejections, slowest " << worst_ms << " ms";
  return finish(c, os.str());
}

Outcome criterion6() {
  Checks c;
  std::mt19937 rng(20261015);
  int total = 0;
  for (const auto& e : testing::pool()) {
    const auto& base = testing::pool_graph(e.name).combinatorial;
    for (unsigned trial = 0; trial < 20; ++trial) {
      const auto m = testing::random_mutation(base, rng(), trial);
      const auto rep = validate_newton_graph(m.data.graph, m.data.dynamics);
      c.require(!rep.all_pass(), e.name + ": " + m.what + " passed");
      c.require(testing::witness_hits(rep, m.data.graph, m.site), e.name + ": " + m.what + " witness off site");
      ++total;
    }
  }
  return finish(c, std::to_string(total) + " mutations");
}

Outcome criterion7() {
  Checks c;
  std::mt19937 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 4;
    const auto spec = testing::random_spec(rng, m);
    const auto t = transition_matrix(spec);
    const double oracle = std::max(0.0, testing::largest_real_root(testing::characteristic(t.entries)));
    worst = std::max(worst, std::abs(t.lambda - oracle));
    std::vector<std::vector<int>> s(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s[i][j] = t.entries[i][j] > 0;
    c.require(t.irreducible == testing::irreducible_by_powers(s), "irreducibility, trial " + std::to_string(trial));
  }
  c.require(worst < 1e-8, "eigenvalue error");

  const auto half = transition_matrix(MulticurveSpec{1, {{{0, 2}}}});
  c.require(half.entries == RationalMatrix{{Rational(1, 2)}} && half.lambda == 0.5, "[1/2]");
  const auto swap = transition_matrix(MulticurveSpec{2, {{{1, 1}}, {{0, 1}}}});
  c.require(swap.entries == RationalMatrix{{0, 1}, {1, 0}} && std::abs(swap.lambda - 1.0) < 1e-12, "swap");
  const auto sixths = transition_matrix(MulticurveSpec{1, {{{0, 2}, {0, 3}}}});
  c.require(sixths.entries == RationalMatrix{{Rational(5, 6)}} && std::abs(sixths.lambda - 5.0 / 6.0) < 1e-15,
            "[5/6]");
  std::ostringstream os;
  os << "100 specs, max |lambda error| " << worst << "; swap lambda " << swap.lambda;
  return finish(c, os.str());
}

Outcome criterion8() {
  Checks c;
  double worst = 0.0;
  int samples = 0;
  for (const auto& e : testing::pool()) {
    const auto& f = testing::pool_map(e.name);
    const auto g = channel_diagram(f);
    for (const auto& edge : g.edges)
      for (const auto& z : edge.line.points) {
        if (z.is_infinity()) continue;
        ++samples;
        if (std::abs(z.value()) < 1e3) {
          const auto w = evaluate(f, z);
          if (!w.is_finite()) {
            c.require(false, e.name + ": ray sample maps to infinity");
            continue;
          }
          worst = std::max(worst, distance_to_polyline(w.value(), edge.line));
        }
        const auto o = classify_point(f, z, 500, 1e-6);
        c.require(o.landing == Landing::Basin && o.root == edge.line.owner, e.name + ": sample outside its basin");
      }
  }
  c.require(worst < 1e-4, "forward invariance");
  std::ostringstream os;
  os << samples << " samples, max distance " << worst;
  return finish(c, os.str());
}

Outcome criterion9() {
  Checks c;
  const auto input = testing::data_path("z4m6z2m3.json");
  const auto a = testing::temp_path("acc_graph_a.json"), b = testing::temp_path("acc_graph_b.json");
  c.require(testing::run_cli("graph " + input + " -o " + a).code == 0, "first run");
  c.require(testing::run_cli("graph " + input + " -o " + b).code == 0, "second run");
  const auto x = testing::read_file(a), y = testing::read_file(b);
  c.require(!x.empty() && x == y, "files differ");
  const auto s1 = testing::run_cli("--json graph " + input), s2 = testing::run_cli("--json graph " + input);
  c.require(s1.code == 0 && s1.out == s2.out, "stdout JSON differs");
  return finish(c, std::to_string(x.size()) + " bytes");
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
