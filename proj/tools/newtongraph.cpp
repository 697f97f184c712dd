#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "newtongraph/dynamics.hpp"
#include "newtongraph/equivalence.hpp"
#include "newtongraph/error.hpp"
#include "newtongraph/io.hpp"
#include "newtongraph/newton_graph.hpp"
#include "newtongraph/thurston.hpp"
#include "newtongraph/validate.hpp"

using namespace newtongraph;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kScope = 3 };

std::string fmt(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g %+.12gi", z.real(), z.imag());
  return buf;
}

std::string fmt(const SpherePoint& z) { return z.is_infinity() ? "inf" : fmt(z.value()); }

nlohmann::json point_json(const SpherePoint& z) {
  return z.is_infinity() ? nlohmann::json("inf") : to_json(z.value());
}

int cmd_roots(const NewtonMap& f, bool json) {
  auto list = [](const std::vector<RootWithMultiplicity>& xs) {
    auto out = nlohmann::json::array();
    for (const auto& x : xs) out.push_back({{"point", point_json(x.point)}, {"multiplicity", x.multiplicity}});
    return out;
  };
  if (json) {
    auto roots = nlohmann::json::array();
    for (const auto& r : f.roots) roots.push_back(point_json(r));
    std::cout << nlohmann::json{{"degree", f.d},
                                {"roots", roots},
                                {"poles", list(f.poles)},
                                {"critical_points", list(f.critical_points)}}
                     .dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "degree " << f.d << "\nroots\n";
  for (const auto& r : f.roots) std::cout << "  " << fmt(r) << "\n";
  std::cout << "poles\n";
  for (const auto& p : f.poles) std::cout << "  " << fmt(p.point) << "  x" << p.multiplicity << "\n";
  std::cout << "critical points\n";
  for (const auto& c : f.critical_points) std::cout << "  " << fmt(c.point) << "  x" << c.multiplicity << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton maps, channel diagrams and abstract Newton graphs"};
  app.set_config("--config", "", "TOML or INI file with option defaults");
  app.require_subcommand(1);

  Tolerances tol;
  bool json = false;
  app.add_option("--root-tol", tol.root_tol, "root separation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--match-tol", tol.match_tol, "chordal vertex matching tolerance")->check(CLI::PositiveNumber);
  app.add_option("--escape-radius", tol.escape_radius, "ray cutoff radius")->check(CLI::PositiveNumber);
  app.add_option("--pole-tol", tol.pole_tol, "pole capture tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "machine-readable output on stdout");

  std::string poly_path, out_path, dot_path, graph_a, graph_b, spec_path;

  auto* roots = app.add_subcommand("roots", "roots, poles and critical points of the Newton map");
  roots->add_option("poly", poly_path, "polynomial JSON")->required();

  RasterParams raster;
  double center_re = 0.0, center_im = 0.0;
  auto* render = app.add_subcommand("render", "basin picture as binary PPM");
  render->add_option("poly", poly_path, "polynomial JSON")->required();
  render->add_option("-o,--output", out_path, "output .ppm")->required();
  render->add_option("--width", raster.width)->check(CLI::PositiveNumber);
  render->add_option("--height", raster.height)->check(CLI::PositiveNumber);
  render->add_option("--center-re", center_re);
  render->add_option("--center-im", center_im);
  render->add_option("--half-width", raster.half_width)->check(CLI::PositiveNumber);
  render->add_option("--max-iter", raster.max_iter)->check(CLI::PositiveNumber);

  int max_level = 8, max_samples = 256;
  auto* graph = app.add_subcommand("graph", "Newton graph of a postcritically fixed polynomial");
  graph->add_option("poly", poly_path, "polynomial JSON")->required();
  graph->add_option("-o,--output", out_path, "graph JSON");
  graph->add_option("--dot", dot_path, "Graphviz file of the final level");
  graph->add_option("--max-level", max_level)->check(CLI::NonNegativeNumber);
  graph->add_option("--max-samples", max_samples, "polyline samples kept per edge, 0 keeps all")
      ->check(CLI::NonNegativeNumber);

  auto* validate = app.add_subcommand("validate", "check the abstract Newton graph conditions");
  validate->add_option("graph", graph_a, "combinatorial graph JSON")->required();

  auto* compare = app.add_subcommand("compare", "decide equivalence of two Newton graphs");
  compare->add_option("a", graph_a)->required();
  compare->add_option("b", graph_b)->required();

  auto* thurston = app.add_subcommand("thurston", "Thurston matrix of a multicurve");
  thurston->add_option("spec", spec_path, "multicurve JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*roots) return cmd_roots(make_newton_map(read_polynomial(poly_path), tol), json);

    if (*render) {
      const auto f = make_newton_map(read_polynomial(poly_path), tol);
      raster.center = {center_re, center_im};
      write_ppm(render_basins(f, raster), out_path);
      if (!json) std::cout << "wrote " << out_path << "\n";
      return kOk;
    }

    if (*graph) {
      const auto f = make_newton_map(read_polynomial(poly_path), tol);
      const auto r = compute_newton_graph(f, max_level);
      const auto j = to_json(r, max_samples);
      if (!out_path.empty()) write_file(out_path, j.dump(1) + "\n");
      if (!dot_path.empty()) write_file(dot_path, to_dot(r.graphs.back()));
      if (json) {
        std::cout << j.dump(1) << "\n";
      } else {
        std::cout << "N = " << r.N << "\npole_cover_level = " << r.pole_cover_level << "\n";
        for (std::size_t n = 0; n < r.graphs.size(); ++n)
          std::cout << "level " << n << ": " << r.graphs[n].num_vertices() << " vertices, "
                    << r.graphs[n].num_edges() << " edges\n";
      }
      return kOk;
    }

    if (*validate) {
      const auto data = newton_graph_from_json(read_json_file(graph_a));
      const auto rep = validate_newton_graph(data.graph, data.dynamics);
      if (json) std::cout << to_json(rep).dump(2) << "\n";
      else std::cout << to_text(rep);
      return rep.all_pass() ? kOk : kFail;
    }

    if (*compare) {
      const auto a = newton_graph_from_json(read_json_file(graph_a));
      const auto b = newton_graph_from_json(read_json_file(graph_b));
      const auto iso = graphs_equivalent(a, b);
      if (json) {
        nlohmann::json out{{"equivalent", iso.has_value()}};
        if (iso)
          out["witness"] = {{"anchor", iso->anchor},
                            {"dart_map", iso->dart_map},
                            {"vertex_map", iso->vertex_map},
                            {"edge_map", iso->edge_map}};
        std::cout << out.dump(2) << "\n";
      } else if (iso) {
        std::cout << "equivalent\nvertex map:";
        for (std::size_t v = 0; v < iso->vertex_map.size(); ++v) std::cout << " " << v << "->" << iso->vertex_map[v];
        std::cout << "\n";
      } else {
        std::cout << "not equivalent\n";
      }
      return iso ? kOk : kFail;
    }

    if (*thurston) {
      const auto spec = multicurve_from_json(read_json_file(spec_path));
      const auto t = transition_matrix(spec);
      const auto j = to_json(t);
      if (json) {
        std::cout << j.dump(2) << "\n";
        return kOk;
      }
      std::cout << "matrix\n";
      for (const auto& row : j.at("matrix")) {
        std::cout << " ";
        for (const auto& x : row) std::cout << " " << x.get<std::string>();
        std::cout << "\n";
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", t.lambda);
      std::cout << "lambda " << buf << "\nirreducible " << (t.irreducible ? "yes" : "no") << "\nobstruction "
                << (j.at("obstruction").get<bool>() ? "yes" : "no") << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NotPostcriticallyFixed ? kScope : kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
