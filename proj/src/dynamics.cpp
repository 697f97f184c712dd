#include "newtongraph/dynamics.hpp"

#include <array>
#include <fstream>
#include <limits>

#include "newtongraph/error.hpp"

namespace newtongraph {

namespace {

int nearest_root_within(const NewtonMap& f, const SpherePoint& z, double radius) {
  if (z.is_infinity()) return -1;
  for (std::size_t i = 0; i < f.roots.size(); ++i)
    if (std::abs(f.roots[i].value() - z.value()) < radius) return static_cast<int>(i);
  return -1;
}

void classify_range(const NewtonMap& f, const RasterParams& params, Raster& out, int row) {
  for (int col = 0; col < params.width; ++col) {
    const auto r = classify_point(f, SpherePoint(cell_center(params, col, row)), params.max_iter, params.basin_tol);
    RasterCell& cell = out.cells[static_cast<std::size_t>(row) * params.width + col];
    cell.basin = r.landing == Landing::Basin ? r.root : -1;
    cell.iterations = r.landing == Landing::Basin ? r.steps : params.max_iter;
  }
}

Raster empty_raster(const RasterParams& params) {
  if (params.width < 1 || params.height < 1) throw Error(ErrorCode::InvalidArgument, "raster dims must be >= 1");
  Raster r;
  r.params = params;
  r.cells.resize(static_cast<std::size_t>(params.width) * params.height);
  return r;
}

constexpr std::array<std::array<unsigned char, 3>, 12> kPalette{{
    {230, 25, 75}, {60, 180, 75}, {0, 130, 200}, {255, 225, 25}, {245, 130, 48}, {145, 30, 180},
    {70, 240, 240}, {240, 50, 230}, {210, 245, 60}, {250, 190, 190}, {0, 128, 128}, {170, 110, 40},
}};

}  // namespace

OrbitResult classify_point(const NewtonMap& f, const SpherePoint& z, int max_iter, double basin_tol,
                           bool keep_trace) {
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
  OrbitResult result;
  std::vector<SpherePoint> trace;
  const double radius = basin_tol * f.scale();
  SpherePoint cur = z;
  for (int n = 0; n <= max_iter; ++n) {
    if (keep_trace) trace.push_back(cur);
    if (cur.is_infinity()) {
      result.prepole = n > 0 || z.is_infinity();
      break;
    }
    const int i = nearest_root_within(f, cur, radius);
    if (i >= 0) {
      SpherePoint probe = cur;
      bool stays = true;
      for (int k = 0; k < kBasinStayIterates && stays; ++k) {
        probe = evaluate(f, probe);
        stays = nearest_root_within(f, probe, radius) == i;
      }
      if (stays) {
        result.landing = Landing::Basin;
        result.root = i;
        result.steps = n;
        break;
      }
    }
    cur = evaluate(f, cur);
  }
  if (keep_trace) result.trace = std::move(trace);
  return result;
}

Complex cell_center(const RasterParams& params, int col, int row) {
  const double step = params.half_width / params.width;
  return {params.center.real() + (2.0 * col + 1.0 - params.width) * step,
          params.center.imag() + (params.height - 1.0 - 2.0 * row) * step};
}

Raster render_basins(const NewtonMap& f, const RasterParams& params) {
  Raster out = empty_raster(params);
#pragma omp parallel for schedule(dynamic, 4)
  for (int row = 0; row < params.height; ++row) classify_range(f, params, out, row);
  return out;
}

Raster render_basins_serial(const NewtonMap& f, const RasterParams& params) {
  Raster out = empty_raster(params);
  for (int row = 0; row < params.height; ++row) classify_range(f, params, out, row);
  return out;
}

std::string to_ppm(const Raster& raster) {
  std::string out = "P6\n" + std::to_string(raster.params.width) + " " + std::to_string(raster.params.height) + "\n255\n";
  out.reserve(out.size() + raster.cells.size() * 3);
  for (const auto& cell : raster.cells) {
    if (cell.basin < 0) {
      out.append(3, '\0');
    } else {
      const auto& c = kPalette[static_cast<std::size_t>(cell.basin) % kPalette.size()];
      for (unsigned char b : c) out.push_back(static_cast<char>(b));
    }
  }
  return out;
}

void write_ppm(const Raster& raster, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  const std::string data = to_ppm(raster);
  os.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!os) throw Error(ErrorCode::InvalidArgument, "failed writing " + path);
}

CriticalOrbitTable critical_orbits(const NewtonMap& f, int max_steps, double tol) {
  CriticalOrbitTable table;
  const double scale = f.scale();
  // A landing must arrive from outside this radius; slower approach is
  // asymptotic convergence, not landing.
  const double jump = 1e-3 * scale;
  for (const auto& c : f.critical_points) {
    CriticalOrbit entry;
    entry.point = c.point;
    entry.multiplicity = c.multiplicity;
    SpherePoint cur = c.point;
    double prev_dist = -1.0;
    int prev_root = -1;
    for (int t = 0; t <= max_steps; ++t) {
      entry.orbit.push_back(cur);
      if (cur.is_infinity()) {
        entry.landing = Landing::Infinity;
        entry.landing_time = t;
        break;
      }
      const int i = nearest_root_within(f, cur, tol * scale);
      if (i >= 0 && (t == 0 || prev_root != i || prev_dist > jump)) {
        entry.landing = Landing::Basin;
        entry.root = i;
        entry.landing_time = t;
        break;
      }
      // Track the distance to the closest root for the jump test.
      prev_root = -1;
      prev_dist = 0.0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < f.roots.size(); ++k) {
        const double dk = std::abs(f.roots[k].value() - cur.value());
        if (dk < best) {
          best = dk;
          prev_root = static_cast<int>(k);
        }
      }
      prev_dist = best;
      cur = evaluate(f, cur);
    }
    table.entries.push_back(std::move(entry));
  }
  return table;
}

PostcriticalStatus is_postcritically_fixed(const CriticalOrbitTable& table) {
  PostcriticalStatus status{true, 0};
  for (const auto& e : table.entries) {
    if (e.landing == Landing::Unresolved) {
      const Complex z = e.point.value();
      throw Error(ErrorCode::UnresolvedOrbit, "critical point (" + std::to_string(z.real()) + ", " +
                                                  std::to_string(z.imag()) + ") does not land on a fixed point");
    }
    status.landing_depth = std::max(status.landing_depth, e.landing_time);
  }
  return status;
}

}  // namespace newtongraph
