#include "helisol/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "helisol/curve.hpp"
#include "helisol/phase.hpp"
#include "helisol/surface.hpp"
#include "helisol/trajectory.hpp"
#include "helisol/verify.hpp"

namespace helisol::cli {
namespace {

// Rotator curvature with a constant additive fault, used to demonstrate that
// the invariant suite actually catches a broken law.
class BiasedRotatorLaw final : public CurvatureLaw {
 public:
  explicit BiasedRotatorLaw(double bias) : bias_(bias) {}
  double curvature(const PhasePoint& p, const SolitonParams& params) const override {
    return rotator_curvature(p, params) + bias_;
  }
  std::string name() const override { return "rotator+bias"; }

 private:
  double bias_;
};

std::shared_ptr<const CurvatureLaw> make_law(const RunConfig& config) {
  if (config.inject_bias != 0.0)
    return std::make_shared<BiasedRotatorLaw>(config.inject_bias);
  return std::make_shared<RotatorLaw>();
}

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

void validate_common(const RunConfig& config) {
  require(config.pitch > 0.0, "--h must be > 0");
  require(std::isfinite(config.pitch), "--h must be finite");
}

void validate_trajectory_config(const RunConfig& config) {
  require(config.s_min < config.s_max, "--span must satisfy A < B");
  require(config.s_min <= 0.0 && 0.0 <= config.s_max, "--span must contain 0");
  require(config.abs_tol > 0.0 && config.rel_tol > 0.0, "--tol components must be > 0");
}

Trajectory integrate_from(const RunConfig& config) {
  IntegratorOptions opts;
  opts.abs_tol = config.abs_tol;
  opts.rel_tol = config.rel_tol;
  return integrate_trajectory({config.tau0, config.mu0, config.theta0},
                              SolitonParams{config.pitch}, make_law(config),
                              {config.s_min, config.s_max}, opts);
}

double grid_coordinate(double window, int index, int res) {
  if (res == 1) return 0.0;
  return -window + 2.0 * window * static_cast<double>(index) / static_cast<double>(res - 1);
}

}  // namespace

std::optional<std::pair<double, double>> parse_range(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const auto parse_half = [](const char* first, const char* last) -> std::optional<double> {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || end != last) return std::nullopt;
    return value;
  };
  const char* data = text.data();
  const auto a = parse_half(data, data + colon);
  const auto b = parse_half(data + colon + 1, data + text.size());
  if (!a || !b) return std::nullopt;
  return std::make_pair(*a, *b);
}

int run_portrait(const RunConfig& config, std::ostream& out) {
  validate_common(config);
  require(config.window > 0.0, "--window must be > 0");
  require(config.grid_res >= 2, "--grid-res must be >= 2");

  const auto law = make_law(config);
  const SolitonParams params{config.pitch};
  out << "tau,mu,dtau,dmu\n";
  for (int i = 0; i < config.grid_res; ++i) {
    const double tau = grid_coordinate(config.window, i, config.grid_res);
    for (int j = 0; j < config.grid_res; ++j) {
      const double mu = grid_coordinate(config.window, j, config.grid_res);
      const PhaseDerivatives d = phase_rhs({tau, mu}, params, *law);
      out << fmt(tau) << ',' << fmt(mu) << ',' << fmt(d.dtau) << ',' << fmt(d.dmu) << '\n';
    }
  }
  return kExitSuccess;
}

int run_trace(const RunConfig& config, std::ostream& out) {
  validate_common(config);
  validate_trajectory_config(config);

  const GeneratingCurve curve = build_generating_curve(integrate_from(config));
  out << "s,tau,mu,theta,x,y,r,omega,k,phi,disk_x,disk_y\n";
  for (const CurveSample& cs : curve.samples()) {
    const double omega =
        cs.omega_defined ? cs.omega : std::numeric_limits<double>::quiet_NaN();
    const double denom = 1.0 + cs.phi;
    out << fmt(cs.s) << ',' << fmt(cs.tau) << ',' << fmt(cs.mu) << ',' << fmt(cs.theta) << ','
        << fmt(cs.alpha.x) << ',' << fmt(cs.alpha.y) << ',' << fmt(cs.r) << ',' << fmt(omega)
        << ',' << fmt(cs.k) << ',' << fmt(cs.phi) << ',' << fmt(cs.alpha.x / denom) << ','
        << fmt(cs.alpha.y / denom) << '\n';
  }
  return kExitSuccess;
}

int run_mesh(const RunConfig& config, std::ostream& out, std::ostream* scalars_out) {
  validate_common(config);
  validate_trajectory_config(config);
  require(config.v_min < config.v_max, "--v-range must satisfy A < B");
  require(config.nv >= 2, "--nv must be >= 2");

  const GeneratingCurve curve = build_generating_curve(integrate_from(config));
  MeshChannels channels;
  channels.mean_curvature = scalars_out != nullptr;
  channels.rotator_residual = scalars_out != nullptr;
  const Mesh mesh = export_mesh(curve, SolitonParams{config.pitch}, config.v_min, config.v_max,
                                config.nv, channels);
  write_obj(mesh, out);

  if (scalars_out) {
    *scalars_out << "vertex_index,H,rotator_residual\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
      *scalars_out << i + 1 << ',' << fmt(mesh.mean_curvature[i]) << ','
                   << fmt(mesh.rotator_residual[i]) << '\n';
  }
  return kExitSuccess;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  validate_common(config);
  require(std::isfinite(config.inject_bias), "--inject-curvature-bias must be finite");

  GridSpec grid;
  grid.seed = config.seed;
  const VerificationReport report =
      run_invariant_suite(grid, ToleranceProfile{}, make_law(config));
  out << report_to_json(report);
  return report.all_passed() ? kExitSuccess : kExitCheckFailure;
}

int run(const RunConfig& config) {
  try {
    std::ofstream out_file;
    if (!config.out.empty()) {
      out_file.open(config.out, std::ios::binary);
      if (!out_file) throw std::invalid_argument("--out destination cannot be opened");
    }
    std::ostream& out = config.out.empty() ? std::cout : out_file;

    switch (config.command) {
      case Command::portrait:
        return run_portrait(config, out);
      case Command::trace:
        return run_trace(config, out);
      case Command::mesh: {
        std::ofstream scalars_file;
        if (!config.scalars.empty()) {
          scalars_file.open(config.scalars, std::ios::binary);
          if (!scalars_file)
            throw std::invalid_argument("--scalars destination cannot be opened");
        }
        return run_mesh(config, out, config.scalars.empty() ? nullptr : &scalars_file);
      }
      case Command::verify:
        return run_verify(config, out);
    }
    throw std::invalid_argument("unknown command");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace helisol::cli
