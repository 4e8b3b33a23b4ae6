#include <CLI11.hpp>

#include "widthlab/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"widthlab: homology, width and filling checks for cell maps"};
  app.require_subcommand(1);
  widthlab::cli::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--ring", cfg.ring, "coefficients: Z, Q or GF2");
    sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
    sub->add_option("--seed", cfg.seed, "seed for randomised steps");
  };
  auto* homology = app.add_subcommand("homology", "homology of a complex");
  homology->add_option("--complex", cfg.complex, "complex JSON")->required();
  add_common(homology);

  auto* width = app.add_subcommand("width", "fiber width of a map");
  width->add_option("--map", cfg.map, "map JSON")->required();
  width->add_option("--subdivide", cfg.subdivide, "subdivision rounds");
  add_common(width);

  auto* fill = app.add_subcommand("fill-check", "lattice certificate and pushforward vanishing of a map into a torus");
  fill->add_option("--map", cfg.map, "map JSON")->required();
  fill->add_option("--bound", cfg.bound, "rank bound for the filling certificate");
  add_common(fill);

  auto* cone = app.add_subcommand("cone", "cone the canonical cycle of a map, or report the obstruction");
  cone->add_option("--map", cfg.map, "map JSON")->required();
  cone->add_option("--mode", cfg.mode, "global or local")->check(CLI::IsMember({"global", "local"}));
  add_common(cone);

  auto* rational = app.add_subcommand("rational-check", "checks on rational models");
  rational->add_option("--map", cfg.map, "check input JSON")->required();
  add_common(rational);

  auto* examples = app.add_subcommand("examples", "write the example gallery");
  add_common(examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return widthlab::cli::input_error;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return widthlab::cli::run(cfg);
}
