#include "newtongraph/rays.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "newtongraph/error.hpp"
#include "newtongraph/lifting.hpp"

namespace newtongraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSeedSamples = 16;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

// Roots other than xi, poles and free critical points.
std::vector<Complex> obstacles(const NewtonMap& f, const SpherePoint& xi) {
  std::vector<Complex> out;
  for (const auto& r : f.roots)
    if (!(r == xi)) out.push_back(r.value());
  for (const auto& p : f.poles) out.push_back(p.point.value());
  for (const auto& c : f.critical_points)
    if (root_index(f, c.point) < 0) out.push_back(c.point.value());
  return out;
}

struct RayJob {
  int root;
  double direction;
};

GeoGraph assemble(const NewtonMap& f, std::vector<RayJob> jobs, const std::vector<Polyline>& rays) {
  GeoGraph g;
  for (std::size_t i = 0; i < f.roots.size(); ++i)
    g.vertices.push_back({f.roots[i], VertexKind::Root, 0, static_cast<int>(i)});
  const int inf = static_cast<int>(f.roots.size());
  g.vertices.push_back({SpherePoint::infinity(), VertexKind::Infinity, 0, inf});
  for (std::size_t e = 0; e < rays.size(); ++e) {
    GeoEdge edge;
    edge.from = jobs[e].root;
    edge.to = inf;
    edge.line = rays[e];
    edge.level = 0;
    edge.maps_to = static_cast<int>(e);
    g.edges.push_back(std::move(edge));
  }

  // Rays must stay apart away from their common endpoints.
  const double tol = 1e-6 * f.scale();
  for (std::size_t a = 0; a < rays.size(); ++a)
    for (std::size_t b = a + 1; b < rays.size(); ++b) {
      const Complex xa = f.roots[jobs[a].root].value(), xb = f.roots[jobs[b].root].value();
      for (const auto& p : rays[a].points) {
        if (p.is_infinity() || std::abs(p.value()) > 1e3 || std::abs(p.value() - xa) < 1e-3 * f.scale()) continue;
        for (const auto& q : rays[b].points) {
          if (q.is_infinity() || std::abs(q.value()) > 1e3 || std::abs(q.value() - xb) < 1e-3 * f.scale()) continue;
          if (std::abs(p.value() - q.value()) < tol)
            throw Error(ErrorCode::RayCollision, "rays " + std::to_string(a) + " and " + std::to_string(b) + " meet");
        }
      }
    }
  return g;
}

std::vector<RayJob> ray_jobs(const NewtonMap& f, std::vector<BottcherLocal>& locals) {
  std::vector<RayJob> jobs;
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    locals.push_back(bottcher_local(f, f.roots[i]));
    for (double t : locals.back().fixed_directions) jobs.push_back({static_cast<int>(i), t});
  }
  return jobs;
}

}  // namespace

BottcherLocal bottcher_local(const NewtonMap& f, const SpherePoint& xi) {
  const int idx = root_index(f, xi);
  if (idx < 0) throw Error(ErrorCode::NotARoot, "point is not a root of p");
  BottcherLocal b;
  b.root = idx;
  b.xi = f.roots[idx];
  b.k = local_degree(f, b.xi);
  const Complex x = b.xi.value();
  // f(z) - xi = ((z - xi) p'(z) - p(z)) / p'(z)
  const Polynomial shifted = (f.numerator() - x * f.denominator()).shifted(x);
  b.a = shifted[b.k] / f.denominator()(x);
  for (int j = 0; j < b.k - 1; ++j) b.fixed_directions.push_back(wrap((-std::arg(b.a) + kTwoPi * j) / (b.k - 1)));
  std::sort(b.fixed_directions.begin(), b.fixed_directions.end());
  return b;
}

Polyline trace_fixed_ray(const NewtonMap& f, const BottcherLocal& b, double direction, const RayParams& params) {
  const bool fixed = std::any_of(b.fixed_directions.begin(), b.fixed_directions.end(), [&](double t) {
    const double diff = wrap(direction - t);
    return std::min(diff, kTwoPi - diff) < 1e-9;
  });
  if (!fixed) throw Error(ErrorCode::InvalidArgument, "direction is not a fixed direction");

  const Complex xi = b.xi.value();
  const double scale = f.scale();
  const auto obs = obstacles(f, b.xi);
  double nearest = std::numeric_limits<double>::infinity();
  for (Complex o : obs) nearest = std::min(nearest, std::abs(o - xi));

  double r0 = params.seed_radius;
  if (r0 <= 0.0) {
    r0 = 0.05 * std::pow(0.25 / std::abs(b.a), 1.0 / (b.k - 1));
    if (std::isfinite(nearest)) r0 = std::min(r0, 0.01 * nearest);
  }
  const Complex z0 = xi + std::polar(r0, direction);
  const SpherePoint fz0 = f.f(SpherePoint(z0));
  if (fz0.is_infinity()) throw Error(ErrorCode::RayCollision, "seed point maps to infinity");
  const Complex z1 = fz0.value();

  Polyline ray;
  ray.owner = b.root;
  ray.points.push_back(b.xi);
  for (double s : {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2}) ray.points.emplace_back(xi + s * (z1 - xi));

  std::vector<Complex> segment;
  for (int i = 0; i <= kSeedSamples; ++i) segment.push_back(z1 + (z0 - z1) * (static_cast<double>(i) / kSeedSamples));
  for (Complex z : segment) ray.points.emplace_back(z);

  const double guard = params.guard_tol * scale;
  const auto spacing = [&](Complex z) { return params.rel_spacing * std::abs(z - xi); };
  for (int step = 0; step < params.max_steps; ++step) {
    std::vector<Complex> next = continue_branch(f, segment, segment.back(), spacing);
    for (std::size_t i = 1; i < next.size(); ++i) {
      const Complex z = next[i];
      for (Complex o : obs)
        if (std::abs(z - o) < guard)
          throw Error(ErrorCode::RayCollision, "ray passes a critical point or pole at (" + std::to_string(o.real()) +
                                                   ", " + std::to_string(o.imag()) + ")");
      ray.points.emplace_back(z);
      if (std::abs(z) > f.tol.escape_radius) {
        ray.points.push_back(SpherePoint::infinity());
        return ray;
      }
    }
    segment = std::move(next);
  }
  throw Error(ErrorCode::NoEscape, "ray did not reach the escape radius in " + std::to_string(params.max_steps) +
                                       " pullbacks");
}

GeoGraph channel_diagram(const NewtonMap& f, const RayParams& params) {
  std::vector<BottcherLocal> locals;
  const auto jobs = ray_jobs(f, locals);
  std::vector<Polyline> rays(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < static_cast<int>(jobs.size()); ++j) {
    try {
      rays[j] = trace_fixed_ray(f, locals[jobs[j].root], jobs[j].direction, params);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return assemble(f, jobs, rays);
}

GeoGraph channel_diagram_serial(const NewtonMap& f, const RayParams& params) {
  std::vector<BottcherLocal> locals;
  const auto jobs = ray_jobs(f, locals);
  std::vector<Polyline> rays;
  for (const auto& job : jobs) rays.push_back(trace_fixed_ray(f, locals[job.root], job.direction, params));
  return assemble(f, jobs, rays);
}

}  // namespace newtongraph
