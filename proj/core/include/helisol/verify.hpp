#pragma once

// Invariant suite: runs the library's property checks over a pitch x initial-
// condition grid and produces a machine-readable report.  Each check reports
// the worst observed value against a fixed tolerance; a check passes exactly
// when worst_value <= tolerance.  Bound-style checks (sign patterns, counts,
// monotone growth) encode the amount of violation as the worst value, so a
// clean run reports 0 against tolerance 0.
//
// The check name set is fixed; see the README table for the full list and
// what each one guards.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "helisol/curve.hpp"
#include "helisol/phase.hpp"
#include "helisol/trajectory.hpp"

namespace helisol {

// Central tolerance table.  Checks never embed ad-hoc constants; every
// threshold used by the suite lives here, grouped by tier.
struct ToleranceProfile {
  // Algebraic identities evaluated pointwise.
  double algebraic_tight = 1e-12;  // plain rational identities
  double algebraic_loose = 1e-10;  // identities with wide-range cancellation

  // Dense-output finite differences against closed-form derivatives.
  double ode_consistency = 1e-6;

  // Numeric evaluators built on finite differences of the embedding.
  double finite_difference = 1e-4;

  // Named per-check constants.
  double omega_derivative = 1e-5;       // d(omega)/ds vs -mu/r^2
  double k_slope = 1e-5;                // curvature slope at its zero vs formula
  double tau_zero_residual = 1e-11;     // |tau| at the located zero
  double prescribed_roundtrip = 1e-9;   // k -> target H -> k inversion
  double eta_orthogonality = 1e-9;      // <eta, X_u>, <eta, X_v> analytic
  double symmetry_multiplier = 10.0;    // x max(abs_tol, rel_tol)
  double symmetry_tau_zero = 1e-8;      // |s0(mirror) + s0(original)|
  double dense_residual_multiplier = 100.0;  // x local tolerance at midpoints
  double nu_window_ratio = 2.0;         // far-window |tau/mu| vs near-window
  double convergence_order_window = 0.3;     // |fitted order - 2|
  double min_rhs_norm = 1e-3;           // equilibrium-free margin
  double r2_minimum_slack = 1e-9;       // r^2(s0) may exceed the sample min by
};

// Parameter grid the suite sweeps.  Trajectories are integrated over
// [-tail_span, tail_span]; pointwise identity and consistency checks are
// restricted to |s| <= horizon, while tail proxies use the full span.
struct GridSpec {
  std::vector<double> pitches{0.5, 1.0, 2.0};
  double tau_min = -2.0, tau_max = 2.0;
  double mu_min = -2.0, mu_max = 2.0;
  int points_per_axis = 5;
  double theta0 = 0.0;
  double horizon = 20.0;
  double tail_span = 50.0;
  std::uint64_t seed = 12345;
  IntegratorOptions integrator = tight_integrator();

  static IntegratorOptions tight_integrator() {
    IntegratorOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    return opt;
  }
};

struct CheckLocation {
  double h = 0.0;
  double tau0 = 0.0;
  double mu0 = 0.0;
  double s = 0.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst_value = 0.0;
  double tolerance = 0.0;
  CheckLocation location;     // grid point and arclength of the worst case
  double wall_seconds = 0.0;  // not serialized: reports must be byte-stable
};

struct VerificationReport {
  GridSpec grid;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Runs every check over the grid.  `law` substitutes the curvature law driving
// the trajectories (fault injection for mutation testing); the default is the
// rotator law the identities hold for.  Throws std::invalid_argument on an
// empty or malformed grid.  Check failures are reported, never thrown.
VerificationReport run_invariant_suite(const GridSpec& grid, const ToleranceProfile& profile = {},
                                       std::shared_ptr<const CurvatureLaw> law = nullptr);

// Integrates the mirror companion (negated initial tau, mu) of `traj` and
// reports the worst |mirror(s) + original(-s)| over tau and mu.  The flow is
// odd under this reflection, so the bound tests the integrator, not the model.
// Tolerance: symmetry_multiplier x max(abs_tol, rel_tol) of the trajectory's
// own options.  Requires a span symmetric about 0.
CheckResult symmetry_check(const Trajectory& traj,
                           const ToleranceProfile& profile = {});

// Fits the observed convergence order of numeric_mean_curvature against the
// closed form over the given mesh widths (at least 3, strictly decreasing)
// by least squares on log error vs log du.  Passes when the fitted order is
// within convergence_order_window of 2.
CheckResult convergence_study(const GeneratingCurve& curve, const SolitonParams& params,
                              const std::vector<double>& du_list,
                              const ToleranceProfile& profile = {});

// Serializes a report: {"grid": {...}, "integrator": {...}, "checks": [...]}.
// Byte-identical for identical grid, seed, and tolerances.
std::string report_to_json(const VerificationReport& report);

}  // namespace helisol
