#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "newtongraph/newton_map.hpp"

namespace newtongraph {

enum class Landing { Basin, Infinity, Unresolved };

struct OrbitResult {
  Landing landing = Landing::Unresolved;
  int root = -1;           ///< basin id for Landing::Basin
  int steps = 0;           ///< first iterate inside the basin disk
  bool prepole = false;    ///< orbit passed through infinity
  std::optional<std::vector<SpherePoint>> trace;
};

/// Number of extra iterates that must stay inside the basin disk.
inline constexpr int kBasinStayIterates = 5;

OrbitResult classify_point(const NewtonMap& f, const SpherePoint& z, int max_iter, double basin_tol,
                           bool keep_trace = false);

struct RasterParams {
  int width = 64;
  int height = 64;
  Complex center{0.0, 0.0};
  double half_width = 2.0;
  int max_iter = 100;
  double basin_tol = 1e-6;
};

struct RasterCell {
  int basin = -1;  ///< -1: unresolved
  int iterations = 0;
};

struct Raster {
  RasterParams params;
  std::vector<RasterCell> cells;  ///< row-major, row 0 at the top

  const RasterCell& at(int col, int row) const { return cells[static_cast<std::size_t>(row) * params.width + col]; }
};

/// Center of cell (col, row). Coordinates are exact mirror images for
/// mirrored cells when the center is 0.
Complex cell_center(const RasterParams& params, int col, int row);

/// OpenMP kernel.
Raster render_basins(const NewtonMap& f, const RasterParams& params);
/// Serial reference for render_basins; results must be identical.
Raster render_basins_serial(const NewtonMap& f, const RasterParams& params);

/// Binary P6 image, palette indexed by basin id, black for unresolved.
std::string to_ppm(const Raster& raster);
void write_ppm(const Raster& raster, const std::string& path);

struct CriticalOrbit {
  SpherePoint point;
  int multiplicity = 1;
  std::vector<SpherePoint> orbit;  ///< c, f(c), ... up to landing
  Landing landing = Landing::Unresolved;
  int root = -1;                   ///< for Landing::Basin: the root landed on
  int landing_time = -1;
};

struct CriticalOrbitTable {
  std::vector<CriticalOrbit> entries;
};

/// Forward orbit of each critical point until it lands exactly on a fixed
/// point (a root or infinity). Asymptotic convergence is not landing.
CriticalOrbitTable critical_orbits(const NewtonMap& f, int max_steps = 64, double tol = 1e-11);

struct PostcriticalStatus {
  bool fixed = false;
  int landing_depth = 0;
};

/// Throws UnresolvedOrbit when any critical orbit is unresolved.
PostcriticalStatus is_postcritically_fixed(const CriticalOrbitTable& table);

}  // namespace newtongraph
