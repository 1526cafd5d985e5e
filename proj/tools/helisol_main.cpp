// Command line front end: parses flags into a RunConfig and dispatches to
// the command implementations in the core library.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "helisol/cli.hpp"

namespace {

// Applies an "A:B" pair option to a (lo, hi) destination; returns false and
// reports on stderr when the text does not parse.
bool apply_range(const std::string& text, const char* flag, double& lo, double& hi) {
  if (text.empty()) return true;
  const auto pair = helisol::cli::parse_range(text);
  if (!pair) {
    std::cerr << "error: " << flag << " expects two numbers as A:B (got '" << text << "')\n";
    return false;
  }
  lo = pair->first;
  hi = pair->second;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using helisol::cli::Command;
  using helisol::cli::RunConfig;

  RunConfig config;
  std::string span_text, tol_text, v_range_text;

  CLI::App app{
      "Helicoidal soliton toolkit: phase portraits, generating-curve traces,\n"
      "surface meshes, and the invariant verification suite."};
  app.require_subcommand(1);
  // The pitch flag is --h, so the help shorthand -h must not exist.
  app.set_help_flag("--help", "Print help and exit");

  const auto add_pitch = [&](CLI::App* cmd) {
    cmd->set_help_flag("--help", "Print help and exit");
    cmd->add_option("--h", config.pitch, "Helicoidal pitch, > 0")->capture_default_str();
  };
  const auto add_out = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--out", config.out, what);
  };
  const auto add_trajectory = [&](CLI::App* cmd) {
    cmd->add_option("--tau0", config.tau0, "Initial tangential support")->capture_default_str();
    cmd->add_option("--mu0", config.mu0, "Initial normal support")->capture_default_str();
    cmd->add_option("--theta0", config.theta0, "Initial tangent angle")->capture_default_str();
    cmd->add_option("--span", span_text, "Arclength span A:B containing 0 [default -20:20]");
    cmd->add_option("--tol", tol_text, "Integrator tolerances ABS:REL [default 1e-10:1e-10]");
  };

  CLI::App* portrait = app.add_subcommand(
      "portrait", "Sample the phase-plane vector field on a square grid (CSV)");
  add_pitch(portrait);
  portrait->add_option("--window", config.window, "Half-width of the sampling window")
      ->capture_default_str();
  portrait->add_option("--grid-res", config.grid_res, "Samples per axis, >= 2")
      ->capture_default_str();
  add_out(portrait, "CSV destination (default stdout)");

  CLI::App* trace = app.add_subcommand(
      "trace", "Integrate one trajectory and trace its generating curve (CSV)");
  add_pitch(trace);
  add_trajectory(trace);
  add_out(trace, "CSV destination (default stdout)");

  CLI::App* mesh = app.add_subcommand(
      "mesh", "Sweep the generating curve into a helicoidal surface mesh (OBJ)");
  add_pitch(mesh);
  add_trajectory(mesh);
  mesh->add_option("--v-range", v_range_text, "Sweep interval A:B [default 0:2pi]");
  mesh->add_option("--nv", config.nv, "Mesh resolution along the sweep, >= 2")
      ->capture_default_str();
  mesh->add_option("--scalars", config.scalars,
                   "Also write per-vertex mean curvature and soliton residual (CSV)");
  add_out(mesh, "OBJ destination (default stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the invariant suite over the standard grid (JSON report)");
  verify->set_help_flag("--help", "Print help and exit");
  verify->add_option("--seed", config.seed, "Seed for the randomized checks")
      ->capture_default_str();
  verify
      ->add_option("--inject-curvature-bias", config.inject_bias,
                   "Additive curvature fault for exercising the suite")
      ->capture_default_str();
  add_out(verify, "JSON destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? helisol::cli::kExitSuccess : helisol::cli::kExitConfigError;
  }

  if (portrait->parsed()) config.command = Command::portrait;
  if (trace->parsed()) config.command = Command::trace;
  if (mesh->parsed()) config.command = Command::mesh;
  if (verify->parsed()) config.command = Command::verify;

  if (!apply_range(span_text, "--span", config.s_min, config.s_max) ||
      !apply_range(tol_text, "--tol", config.abs_tol, config.rel_tol) ||
      !apply_range(v_range_text, "--v-range", config.v_min, config.v_max))
    return helisol::cli::kExitConfigError;

  return helisol::cli::run(config);
}
