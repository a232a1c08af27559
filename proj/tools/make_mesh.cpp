// make_mesh: writes the built-in convex shapes as OFF files.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "globeq/errors.hpp"
#include "globeq/surface.hpp"

using namespace globeq;

int main(int argc, char** argv) {
  CLI::App app{"Write a built-in convex mesh as OFF"};
  std::string shape;
  int subdiv = 4;
  std::vector<double> axes{1.0, 0.8, 0.6};
  std::vector<double> center{0.0, 0.0, 0.0};
  double half = 0.5;
  std::string output = "-";
  app.add_option("shape", shape, "cube, sphere, ellipsoid, tetrahedron or corner-tetrahedron")
      ->required()
      ->check(CLI::IsMember({"cube", "sphere", "ellipsoid", "tetrahedron", "corner-tetrahedron"}));
  app.add_option("--subdiv", subdiv, "Icosphere subdivisions")->check(CLI::Range(0, 7))->capture_default_str();
  app.add_option("--axes", axes, "Ellipsoid semi-axes")->delimiter(',')->expected(3);
  app.add_option("--center", center, "Ellipsoid center")->delimiter(',')->expected(3);
  app.add_option("--half", half, "Cube half edge")->capture_default_str();
  app.add_option("--output,-o", output, "OFF path, - for stdout")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto build = [&]() {
      if (shape == "cube") return shapes::cube(half);
      if (shape == "sphere") return shapes::icosphere(subdiv);
      if (shape == "tetrahedron") return shapes::regular_tetrahedron();
      if (shape == "corner-tetrahedron") return shapes::corner_tetrahedron();
      return shapes::ellipsoid({axes[0], axes[1], axes[2]}, subdiv, {center[0], center[1], center[2]});
    };
    const ConvexMesh mesh = build();
    if (output == "-") {
      write_off(mesh, std::cout);
    } else {
      std::ofstream out(output);
      if (!out) throw Error(ErrorKind::Other, "cannot write " + output);
      write_off(mesh, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
