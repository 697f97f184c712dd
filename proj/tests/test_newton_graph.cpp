#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "newtongraph/error.hpp"
#include "newtongraph/lifting.hpp"
#include "newtongraph/newton_graph.hpp"
#include "newtongraph/validate.hpp"
#include "support.hpp"

using namespace newtongraph;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

bool has_point(const Fiber& fiber, const SpherePoint& z, int mult, double tol = 1e-7) {
  for (const auto& x : fiber)
    if (near(x.point, z, tol)) return x.multiplicity == mult;
  return false;
}

}  // namespace

TEST_CASE("preimages of points") {
  const auto& f = testing::pool_map("z3-1");
  auto fib = lift_point(f, SpherePoint::infinity());
  CHECK(fib.size() == 2);
  CHECK(has_point(fib, SpherePoint(0.0), 2));
  CHECK(has_point(fib, SpherePoint::infinity(), 1));

  // 2z^3 - 3z^2 + 1 = (z - 1)^2 (2z + 1)
  const Polynomial lhs = f.numerator() - f.denominator();
  const std::vector<Complex> expect{1.0, 0.0, -3.0, 2.0};
  for (int i = 0; i <= 3; ++i) CHECK(std::abs(lhs[i] - expect[i]) < 1e-15);
  fib = lift_point(f, SpherePoint(1.0));
  CHECK(fib.size() == 2);
  CHECK(has_point(fib, SpherePoint(1.0), 2));
  CHECK(has_point(fib, SpherePoint(-0.5), 1));

  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& e : testing::pool()) {
    const auto& g = testing::pool_map(e.name);
    for (int t = 0; t < 10; ++t) {
      const Complex w(u(rng), u(rng));
      const auto pre = lift_point(g, SpherePoint(w));
      CHECK(static_cast<int>(pre.size()) == g.d);
      for (const auto& x : pre) {
        CHECK(x.multiplicity == 1);
        CHECK(std::abs(evaluate(g, x.point).value() - w) < 1e-9 * std::max(1.0, std::abs(w)));
      }
    }
  }
}

TEST_CASE("lifting a ray of z^3 - 1") {
  const auto& f = testing::pool_map("z3-1");
  const auto d0 = channel_diagram(f);
  const auto& ray = d0.edges[0].line;  // root 1 to infinity
  REQUIRE(std::abs(ray.points.front().value() - 1.0) < 1e-12);

  // 1 is critical, so two lifts start there: [1, inf) and (0, 1].
  const auto tail = lift_point(f, SpherePoint(1.0)), head = lift_point(f, SpherePoint::infinity());
  const auto all = lift_edge_all(f, ray, tail, head);
  CHECK(all.size() == 3);
  int to_infinity = 0, to_zero = 0;
  for (const auto& l : all) {
    if (!near(tail[l.tail].point, SpherePoint(1.0), 1e-9)) continue;
    const auto& end = head[l.head].point;
    if (end.is_infinity()) ++to_infinity;
    else if (std::abs(end.value()) < 1e-9) ++to_zero;
    for (std::size_t i = 0; i + 1 < l.line.points.size(); ++i) CHECK(std::abs(l.line.points[i].value().imag()) < 1e-9);
  }
  CHECK(to_infinity == 1);
  CHECK(to_zero == 1);
  const auto self = lift_edge(f, ray, SpherePoint(1.0));
  CHECK(near(self.points.front(), SpherePoint(1.0), 1e-9));

  const auto other = lift_edge(f, ray, SpherePoint(-0.5));
  const auto end = other.points.back();
  CHECK((end.is_infinity() || std::abs(end.value()) < 1e-6));
  for (const auto& z : other.points) {
    if (z.is_infinity() || std::abs(z.value()) < 1e-3) continue;
    const auto w = evaluate(f, z);
    if (w.is_finite() && std::abs(w.value()) < 1e3) CHECK(distance_to_polyline(w.value(), ray) < 1e-4);
  }
  CHECK(code_of([&] { lift_edge(f, ray, SpherePoint(0.3)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("first pullbacks") {
  const auto& f = testing::pool_map("z3-1");
  const auto d1 = pullback_level(f, channel_diagram(f));
  const int pole = d1.find_vertex(SpherePoint(0.0), 1e-6);
  REQUIRE(pole >= 0);
  CHECK(d1.vertices[pole].kind == VertexKind::Pole);
  int ends = 0;
  for (const auto& e : d1.edges)
    if ((e.from == pole || e.to == pole) && e.maps_to == 0) ++ends;
  CHECK(ends == 2);

  const auto& g = testing::pool_map("z3-z");
  const auto g0 = channel_diagram(g);
  const auto g1 = pullback_level(g, g0);
  CHECK(g1.find_vertex(SpherePoint(1.0 / std::sqrt(3.0)), 1e-6) >= 0);
  CHECK(g1.find_vertex(SpherePoint(-1.0 / std::sqrt(3.0)), 1e-6) >= 0);
  for (int i = 0; i < g0.num_edges(); ++i) CHECK(g1.edges[i].level == 0);
  for (int i = g0.num_edges(); i < g1.num_edges(); ++i) CHECK(g1.edges[i].level == 1);
  CHECK(to_json(g1).dump() == to_json(pullback_level(g, g0, false)).dump());
}

TEST_CASE("minimal level N") {
  const auto& g = testing::pool_graph("z3-z");
  CHECK(g.N == 1);
  const auto& top = g.graphs.back();
  // 0, +-1, infinity, the two poles, and the simple preimages -+1/2 of +-1
  CHECK(top.num_vertices() == 8);
  CHECK(top.find_vertex(SpherePoint(0.5), 1e-6) >= 0);
  CHECK(top.find_vertex(SpherePoint(-0.5), 1e-6) >= 0);

  CHECK(testing::pool_graph("z3-1").N == 2);

  const auto generic = make_newton_map(Polynomial({0.3, -1.0, 0.0, 1.0}));
  CHECK(code_of([&] { compute_newton_graph(generic); }) == ErrorCode::NotPostcriticallyFixed);
  CHECK(code_of([&] { compute_newton_graph(testing::pool_map("z4-6z2-3"), 1); }) == ErrorCode::LevelCapExceeded);
}

TEST_CASE("pullback tower properties on the pool") {
  for (const auto& e : testing::pool()) {
    CAPTURE(e.name);
    const auto& f = testing::pool_map(e.name);
    const auto& r = testing::pool_graph(e.name);
    CHECK(r.N == e.N);
    CHECK(r.pole_cover_level >= 0);
    CHECK(r.pole_cover_level <= r.N);
    REQUIRE(static_cast<int>(r.graphs.size()) == r.N + 1);
    for (std::size_t n = 0; n < r.graphs.size(); ++n) {
      const auto& g = r.graphs[n];
      const auto emb = g.to_embedded();
      CHECK(emb.check() == std::nullopt);
      CHECK(emb.euler_characteristic() == 2);
      if (n == 0) continue;
      const auto& prev = r.graphs[n - 1];
      REQUIRE(g.num_edges() >= prev.num_edges());
      for (int i = 0; i < prev.num_edges(); ++i) {
        CHECK(g.edges[i].from == prev.edges[i].from);
        CHECK(g.edges[i].to == prev.edges[i].to);
      }
      for (const auto& edge : g.edges) {
        if (edge.level == 0) continue;
        CHECK(g.edges[edge.maps_to].level == edge.level - 1);
      }
    }
    // critical points are vertices one level below the top
    for (const auto& c : f.critical_points) CHECK(contains_vertex(r.graphs[r.N - 1], c.point, 1e-6));
    int sum = 0;
    for (int k : r.combinatorial.dynamics.local_degree) sum += k - 1;
    CHECK(sum == 2 * f.d - 2);
    // lifts map onto their source edges
    const auto& top = r.graphs.back();
    for (const auto& edge : top.edges) {
      if (edge.level == 0) continue;
      const auto& src = top.edges[edge.maps_to].line;
      for (std::size_t i = 1; i + 1 < edge.line.points.size(); i += 7) {
        const auto w = evaluate(f, edge.line.points[i]);
        if (w.is_finite() && std::abs(w.value()) < 1e3) CHECK(distance_to_polyline(w.value(), src) < 1e-4);
      }
    }
  }
}

TEST_CASE("star saturation matches the geometric pullback") {
  for (const auto& e : testing::pool()) {
    CAPTURE(e.name);
    const auto& f = testing::pool_map(e.name);
    const auto& r = testing::pool_graph(e.name);
    for (int n = 1; n <= r.N; ++n) {
      const auto full = to_combinatorial(f, r.graphs[n], n);
      CHECK(validate_newton_graph(full.graph, full.dynamics).find("7")->pass);
      // the level below is a proper part of the pullback
      const auto part = to_combinatorial(f, r.graphs[n - 1], n);
      if (r.graphs[n].num_edges() > r.graphs[n - 1].num_edges())
        CHECK_FALSE(validate_newton_graph(part.graph, part.dynamics).find("7")->pass);
    }
  }
}

TEST_CASE("face counts on the channel diagram") {
  for (const auto& e : testing::pool()) {
    CAPTURE(e.name);
    const auto rep = verify_face_counts(testing::pool_graph(e.name), testing::pool_map(e.name));
    CHECK(rep.all_pass());
    CHECK(rep.unplaced_poles.empty());
    for (const auto& fc : rep.faces) {
      CHECK(fc.fixed_point_rule);
      CHECK(fc.shared_pole);
      CHECK(static_cast<int>(fc.boundary_roots.size()) == fc.interior_pole_multiplicity + 1);
    }
  }
  const auto rep = verify_face_counts(testing::pool_graph("z3-1"), testing::pool_map("z3-1"));
  REQUIRE(rep.faces.size() == 1);
  CHECK(rep.faces[0].boundary_roots.size() == 3);
  CHECK(rep.faces[0].interior_pole_multiplicity == 2);
}

TEST_CASE("graph export") {
  const auto& r = testing::pool_graph("z3-z");
  const auto j = to_json(r, 16);
  CHECK(j.at("N") == 1);
  CHECK(j.at("pole_cover_level") == 1);
  for (const auto& edge : j.at("edges")) CHECK(edge.at("samples").size() <= 16);
  CHECK(j.dump() == to_json(r, 16).dump());
  const auto data = newton_graph_from_json(j);
  CHECK(data.graph.num_edges() == r.combinatorial.graph.num_edges());
  CHECK(validate_newton_graph(data.graph, data.dynamics).all_pass());
}
