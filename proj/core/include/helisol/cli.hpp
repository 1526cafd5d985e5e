#pragma once

// Command implementations behind the helisol tool.  The binary in tools/
// only parses flags into a RunConfig and dispatches; everything observable
// (output bytes, validation messages, exit codes) is produced here so tests
// can drive the commands without spawning processes.
//
// Exit codes: 0 success, 1 verification-check failure, 2 configuration or
// I/O error.  Numeric output uses 17 significant digits throughout, so a
// rerun with identical inputs is byte-identical.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace helisol::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

enum class Command { portrait, trace, mesh, verify };

struct RunConfig {
  Command command = Command::trace;

  // Soliton and initial condition.
  double pitch = 1.0;
  double tau0 = 0.0;
  double mu0 = 0.0;
  double theta0 = 0.0;

  // Integration span and local tolerances (trace, mesh).
  double s_min = -20.0;
  double s_max = 20.0;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;

  // Sweep range and ring resolution of the surface mesh.
  double v_min = 0.0;
  double v_max = 6.283185307179586;  // one full turn
  int nv = 64;

  // Phase-portrait window [-window, window]^2 and per-axis resolution.
  double window = 3.0;
  int grid_res = 61;

  // Invariant-suite settings.
  std::uint64_t seed = 12345;
  double inject_bias = 0.0;  // additive curvature fault, 0 = pure law

  // Destinations: empty out means stdout; empty scalars means no sidecar.
  std::string out;
  std::string scalars;
};

// Parses "A:B" into {A, B}; nullopt when either half is not a full double.
std::optional<std::pair<double, double>> parse_range(const std::string& text);

// Individual commands; streams receive the complete output.  Configuration
// problems throw std::invalid_argument with a message naming the violated
// constraint.
int run_portrait(const RunConfig& config, std::ostream& out);
int run_trace(const RunConfig& config, std::ostream& out);
int run_mesh(const RunConfig& config, std::ostream& out, std::ostream* scalars_out);
int run_verify(const RunConfig& config, std::ostream& out);

// Opens the configured destinations, dispatches, and maps thrown
// configuration errors to kExitConfigError with a message on stderr.
int run(const RunConfig& config);

}  // namespace helisol::cli
