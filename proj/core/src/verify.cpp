#include "helisol/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

#include "helisol/geometry.hpp"
#include "helisol/surface.hpp"

#include "json.hpp"

namespace helisol {
namespace {

// Implementation constants of the suite.  These are probe step sizes and
// sampling parameters, not tolerances; every pass/fail threshold lives in
// ToleranceProfile.
constexpr double kConsistencyDelta = 2.5e-4;  // centered FD step, conserved scalars
constexpr double kOmegaDelta = 1e-4;          // centered FD step, winding rate
constexpr double kSlopeDelta = 5e-4;          // centered FD step, curvature slope
constexpr double kOmegaMinRadius = 0.1;       // winding-rate check stays off the axis
constexpr double kNuProbeStep = 0.05;         // sampling step for window maxima
constexpr double kSymmetrySpan = 10.0;        // half-width of the mirror comparison
constexpr int kSymmetryProbes = 1001;
constexpr int kSymmetryInitials = 10;
constexpr int kRandomPoints = 10000;         // pointwise randomized checks
constexpr double kRandomRange = 3.0;         // |tau|, |mu| bound for random draws
constexpr double kRoundtripPitchMin = 0.3;
constexpr double kRoundtripPitchMax = 3.0;
constexpr double kRoundtripCurvatureMax = 10.0;
constexpr std::array<double, 3> kConvergenceWidths{1e-2, 5e-3, 2.5e-3};

// Uniform double in [0, 1) built from the top 53 bits of the generator
// output.  std::uniform_real_distribution is not specified bit-for-bit
// across standard libraries; reports must be.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Tracks the largest observed value together with where it occurred.
class Worst {
 public:
  void update(double value, const CheckLocation& loc) {
    if (value > value_) {
      value_ = value;
      loc_ = loc;
    }
  }
  double value() const { return value_; }
  const CheckLocation& location() const { return loc_; }

 private:
  double value_ = 0.0;
  CheckLocation loc_{};
};

template <typename Fn>
CheckResult run_check(std::string name, double tolerance, Fn&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Worst worst;
  body(worst);
  const auto t1 = std::chrono::steady_clock::now();

  CheckResult result;
  result.name = std::move(name);
  result.tolerance = tolerance;
  result.worst_value = worst.value();
  result.location = worst.location();
  result.passed = result.worst_value <= tolerance;
  result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

// One grid point: its trajectory over [-tail_span, tail_span] and, when the
// reconstruction succeeds, the generating curve.  A failed reconstruction is
// not fatal here — the structural checks report what went wrong.
struct GridRecord {
  double pitch;
  double tau0;
  double mu0;
  Trajectory traj;
  std::optional<GeneratingCurve> curve;

  CheckLocation at(double s) const { return {pitch, tau0, mu0, s}; }
};

void validate_grid(const GridSpec& grid) {
  if (grid.pitches.empty()) throw std::invalid_argument("invariant suite: no pitches given");
  for (double h : grid.pitches)
    if (!(h > 0.0)) throw std::invalid_argument("invariant suite: pitches must be > 0");
  if (grid.points_per_axis < 1)
    throw std::invalid_argument("invariant suite: points_per_axis must be >= 1");
  if (!(grid.tau_min <= grid.tau_max) || !(grid.mu_min <= grid.mu_max))
    throw std::invalid_argument("invariant suite: initial-condition window is inverted");
  if (!(grid.horizon > 0.0))
    throw std::invalid_argument("invariant suite: horizon must be > 0");
  if (!(grid.tail_span >= 2.0 * grid.horizon))
    throw std::invalid_argument("invariant suite: tail_span must be >= 2 x horizon");
}

double axis_value(double lo, double hi, int index, int count) {
  if (count == 1) return 0.5 * (lo + hi);
  return lo + (hi - lo) * static_cast<double>(index) / static_cast<double>(count - 1);
}

std::vector<GridRecord> integrate_grid(const GridSpec& grid,
                                       const std::shared_ptr<const CurvatureLaw>& law) {
  std::vector<GridRecord> records;
  records.reserve(grid.pitches.size() * static_cast<std::size_t>(grid.points_per_axis) *
                  static_cast<std::size_t>(grid.points_per_axis));
  for (double h : grid.pitches) {
    const SolitonParams params{h};
    for (int i = 0; i < grid.points_per_axis; ++i) {
      const double tau0 = axis_value(grid.tau_min, grid.tau_max, i, grid.points_per_axis);
      for (int j = 0; j < grid.points_per_axis; ++j) {
        const double mu0 = axis_value(grid.mu_min, grid.mu_max, j, grid.points_per_axis);
        GridRecord rec{h, tau0, mu0,
                       integrate_trajectory({tau0, mu0, grid.theta0}, params, law,
                                            {-grid.tail_span, grid.tail_span}, grid.integrator),
                       std::nullopt};
        try {
          rec.curve.emplace(build_generating_curve(rec.traj));
        } catch (const NoSignChange&) {
        } catch (const MultipleZeros&) {
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

// Winding angle at the curve sample nearest to the requested arclength.
// Samples within r < 1e-9 of the axis carry no angle and are skipped.
std::optional<double> omega_near(const GeneratingCurve& curve, double s) {
  const auto& samples = curve.samples();
  if (samples.empty()) return std::nullopt;
  auto it = std::lower_bound(samples.begin(), samples.end(), s,
                             [](const CurveSample& cs, double value) { return cs.s < value; });
  std::ptrdiff_t hi = it - samples.begin();
  std::ptrdiff_t lo = hi - 1;
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  while (lo >= 0 || hi < n) {
    const double d_lo = lo >= 0 ? s - samples[static_cast<std::size_t>(lo)].s
                                : std::numeric_limits<double>::infinity();
    const double d_hi = hi < n ? samples[static_cast<std::size_t>(hi)].s - s
                               : std::numeric_limits<double>::infinity();
    if (d_lo <= d_hi) {
      const auto& cs = samples[static_cast<std::size_t>(lo)];
      if (cs.omega_defined) return cs.omega;
      --lo;
    } else {
      const auto& cs = samples[static_cast<std::size_t>(hi)];
      if (cs.omega_defined) return cs.omega;
      ++hi;
    }
  }
  return std::nullopt;
}

double rhs_norm(const PhaseDerivatives& d) { return std::hypot(d.dtau, d.dmu); }

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

CheckResult symmetry_check(const Trajectory& traj, const ToleranceProfile& profile) {
  const auto& samples = traj.samples();
  const double s_min = samples.front().s;
  const double s_max = samples.back().s;
  if (std::abs(s_min + s_max) > 1e-9 * std::max(1.0, std::abs(s_max)))
    throw std::invalid_argument("symmetry_check: span must be symmetric about 0");

  const AugmentedState init = traj.initial_state();
  const Trajectory mirror =
      integrate_trajectory({-init.tau, -init.mu, init.theta}, traj.params(), traj.law_ptr(),
                           {s_min, s_max}, traj.options());

  const double tol = profile.symmetry_multiplier *
                     std::max(traj.options().abs_tol, traj.options().rel_tol);
  return run_check("symmetry_mirror", tol, [&](Worst& worst) {
    for (int j = 0; j < kSymmetryProbes; ++j) {
      const double s =
          s_min + (s_max - s_min) * static_cast<double>(j) / (kSymmetryProbes - 1);
      const AugmentedState a = mirror.evaluate(s);
      const AugmentedState b = traj.evaluate(-s);
      const CheckLocation loc{traj.params().pitch, init.tau, init.mu, s};
      worst.update(std::abs(a.tau + b.tau), loc);
      worst.update(std::abs(a.mu + b.mu), loc);
    }
  });
}

CheckResult convergence_study(const GeneratingCurve& curve, const SolitonParams& params,
                              const std::vector<double>& du_list,
                              const ToleranceProfile& profile) {
  if (du_list.size() < 3)
    throw std::invalid_argument("convergence_study: need at least 3 mesh widths");
  for (std::size_t i = 1; i < du_list.size(); ++i)
    if (!(du_list[i] < du_list[i - 1]))
      throw std::invalid_argument("convergence_study: mesh widths must strictly decrease");

  const AugmentedState init = curve.trajectory().initial_state();
  return run_check("h_convergence_order", profile.convergence_order_window, [&](Worst& worst) {
    const auto& samples = curve.samples();
    std::vector<double> log_du, log_err;
    double worst_s = 0.0;
    for (double du : du_list) {
      const std::vector<double> numeric = numeric_mean_curvature(curve, params, du);
      double err = 0.0;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const PhasePoint p{samples[i].tau, samples[i].mu};
        const double diff = std::abs(numeric[i] - closed_form_H(p, params, samples[i].k));
        if (diff > err) {
          err = diff;
          worst_s = samples[i].s;
        }
      }
      log_du.push_back(std::log(du));
      log_err.push_back(std::log(std::max(err, 1e-300)));
    }
    const auto n = static_cast<double>(log_du.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_du.size(); ++i) {
      mx += log_du[i];
      my += log_err[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_du.size(); ++i) {
      sxy += (log_du[i] - mx) * (log_err[i] - my);
      sxx += (log_du[i] - mx) * (log_du[i] - mx);
    }
    const double order = sxy / sxx;
    worst.update(std::abs(order - 2.0), {params.pitch, init.tau, init.mu, worst_s});
  });
}

VerificationReport run_invariant_suite(const GridSpec& grid, const ToleranceProfile& profile,
                                       std::shared_ptr<const CurvatureLaw> law) {
  validate_grid(grid);
  if (!law) law = std::make_shared<RotatorLaw>();

  VerificationReport report;
  report.grid = grid;
  const std::vector<GridRecord> records = integrate_grid(grid, law);
  auto& checks = report.checks;

  // --- pointwise identities over the grid trajectories -----------------------

  checks.push_back(run_check("support_identity_H", profile.algebraic_loose, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      const SolitonParams params{rec.pitch};
      for (const auto& sample : rec.traj.samples()) {
        if (std::abs(sample.s) > grid.horizon) continue;
        const PhasePoint p = sample.state.phase();
        const double k = law->curvature(p, params);
        worst.update(std::abs(closed_form_H(p, params, k) - rotator_target_H(p, params)),
                     rec.at(sample.s));
      }
    }
  }));

  checks.push_back(run_check("residual_equality", profile.algebraic_tight, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      const SolitonParams params{rec.pitch};
      for (const auto& sample : rec.traj.samples()) {
        if (std::abs(sample.s) > grid.horizon) continue;
        const PhasePoint p = sample.state.phase();
        const double k = law->curvature(p, params);
        const SolitonResiduals res = soliton_residual_at(p, k, params);
        worst.update(std::abs(res.rotator - res.translator), rec.at(sample.s));
      }
    }
  }));

  // --- randomized pointwise checks ------------------------------------------

  const bool has_unit_pitch =
      std::find(grid.pitches.begin(), grid.pitches.end(), 1.0) != grid.pitches.end();
  if (has_unit_pitch) {
    checks.push_back(run_check("h1_closed_form", profile.algebraic_tight, [&](Worst& worst) {
      std::mt19937_64 rng(grid.seed + 1);
      const SolitonParams params{1.0};
      for (int i = 0; i < kRandomPoints; ++i) {
        const PhasePoint p{uniform_in(rng, -kRandomRange, kRandomRange),
                           uniform_in(rng, -kRandomRange, kRandomRange)};
        const double expected = 2.0 * p.tau / (1.0 + p.r_squared());
        worst.update(std::abs(law->curvature(p, params) - expected),
                     {1.0, p.tau, p.mu, 0.0});
      }
    }));
  }

  checks.push_back(
      run_check("prescribed_inversion_roundtrip", profile.prescribed_roundtrip, [&](Worst& worst) {
        std::mt19937_64 rng(grid.seed + 2);
        for (int i = 0; i < kRandomPoints; ++i) {
          const PhasePoint p{uniform_in(rng, -kRandomRange, kRandomRange),
                             uniform_in(rng, -kRandomRange, kRandomRange)};
          const SolitonParams params{
              uniform_in(rng, kRoundtripPitchMin, kRoundtripPitchMax)};
          const double k_in =
              uniform_in(rng, -kRoundtripCurvatureMax, kRoundtripCurvatureMax);
          const double target = closed_form_H(p, params, k_in);
          const double k_out =
              prescribed_curvature([target](double, double) { return target; }, p, params);
          worst.update(std::abs(k_out - k_in), {params.pitch, p.tau, p.mu, 0.0});
        }
      }));

  // --- unit normal ----------------------------------------------------------

  checks.push_back(run_check("eta_unit_norm", profile.algebraic_loose, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) continue;
      const SolitonParams params{rec.pitch};
      for (const CurveSample& cs : rec.curve->samples()) {
        if (std::abs(cs.s) > grid.horizon) continue;
        const FundamentalForms ff = fundamental_forms(cs, params);
        const double norm2 = dot(ff.eta_plane, ff.eta_plane) - ff.eta_e3 * ff.eta_e3 +
                             ff.eta_t * ff.eta_t;
        worst.update(std::abs(norm2 - 1.0), rec.at(cs.s));
      }
    }
  }));

  checks.push_back(run_check("eta_orthogonality", profile.eta_orthogonality, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) continue;
      const SolitonParams params{rec.pitch};
      for (const CurveSample& cs : rec.curve->samples()) {
        if (std::abs(cs.s) > grid.horizon) continue;
        const FundamentalForms ff = fundamental_forms(cs, params);
        const double phi_prime = cs.tau / cs.phi;
        const double ip_u = dot(ff.eta_plane, cs.tangent) - ff.eta_e3 * phi_prime;
        const double ip_v = dot(ff.eta_plane, perp(cs.alpha)) + ff.eta_t * params.pitch;
        worst.update(std::abs(ip_u), rec.at(cs.s));
        worst.update(std::abs(ip_v), rec.at(cs.s));
      }
    }
  }));

  // --- dense output vs closed-form derivatives ------------------------------

  const auto fd_check = [&](const char* name, auto&& value_of, auto&& rate_of) {
    return run_check(name, profile.ode_consistency, [&](Worst& worst) {
      for (const GridRecord& rec : records) {
        const SolitonParams params{rec.pitch};
        for (const auto& sample : rec.traj.samples()) {
          if (std::abs(sample.s) > grid.horizon) continue;
          const AugmentedState plus = rec.traj.evaluate(sample.s + kConsistencyDelta);
          const AugmentedState minus = rec.traj.evaluate(sample.s - kConsistencyDelta);
          const double fd =
              (value_of(plus) - value_of(minus)) / (2.0 * kConsistencyDelta);
          worst.update(std::abs(fd - rate_of(sample.state, params)), rec.at(sample.s));
        }
      }
    });
  };
  checks.push_back(fd_check(
      "ode_consistency_tau", [](const AugmentedState& y) { return y.tau; },
      [&](const AugmentedState& y, const SolitonParams& params) {
        return phase_rhs(y.phase(), params, *law).dtau;
      }));
  checks.push_back(fd_check(
      "ode_consistency_mu", [](const AugmentedState& y) { return y.mu; },
      [&](const AugmentedState& y, const SolitonParams& params) {
        return phase_rhs(y.phase(), params, *law).dmu;
      }));
  checks.push_back(fd_check(
      "r_squared_derivative",
      [](const AugmentedState& y) { return y.tau * y.tau + y.mu * y.mu; },
      [](const AugmentedState& y, const SolitonParams&) { return 2.0 * y.tau; }));
  checks.push_back(fd_check(
      "phi_derivative",
      [](const AugmentedState& y) {
        return std::sqrt(1.0 + y.tau * y.tau + y.mu * y.mu);
      },
      [](const AugmentedState& y, const SolitonParams&) {
        return y.tau / std::sqrt(1.0 + y.tau * y.tau + y.mu * y.mu);
      }));

  checks.push_back(run_check("omega_derivative", profile.omega_derivative, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) continue;
      for (const CurveSample& cs : rec.curve->samples()) {
        if (std::abs(cs.s) > grid.horizon || cs.r < kOmegaMinRadius) continue;
        const PlanePoint ap =
            reconstruct_position(rec.traj.evaluate(cs.s + kOmegaDelta)).alpha;
        const PlanePoint am =
            reconstruct_position(rec.traj.evaluate(cs.s - kOmegaDelta)).alpha;
        const double dangle = std::remainder(
            std::atan2(ap.y, ap.x) - std::atan2(am.y, am.x), 2.0 * std::numbers::pi);
        const double fd = dangle / (2.0 * kOmegaDelta);
        const double expected = -cs.mu / (cs.r * cs.r);
        worst.update(std::abs(fd - expected), rec.at(cs.s));
      }
    }
  }));

  // --- phase-portrait structure ---------------------------------------------

  checks.push_back(run_check("unique_tau_zero", 0.0, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      const auto& samples = rec.traj.samples();
      int crossings = 0;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].state.tau == 0.0) ++crossings;
        if (i + 1 < samples.size() &&
            samples[i].state.tau * samples[i + 1].state.tau < 0.0)
          ++crossings;
      }
      worst.update(std::abs(static_cast<double>(crossings - 1)), rec.at(0.0));
    }
  }));

  checks.push_back(run_check("tau_zero_residual", profile.tau_zero_residual, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) continue;
      const double s0 = rec.curve->tau_zero();
      worst.update(std::abs(rec.traj.evaluate(s0).tau), rec.at(s0));
    }
  }));

  checks.push_back(run_check("r_squared_minimum", profile.r2_minimum_slack, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) continue;
      const double s0 = rec.curve->tau_zero();
      const AugmentedState at_zero = rec.traj.evaluate(s0);
      const double r2_zero = at_zero.tau * at_zero.tau + at_zero.mu * at_zero.mu;
      double r2_min = r2_zero;
      for (const auto& sample : rec.traj.samples()) {
        const double r2 =
            sample.state.tau * sample.state.tau + sample.state.mu * sample.state.mu;
        r2_min = std::min(r2_min, r2);
      }
      worst.update(r2_zero - r2_min, rec.at(s0));
    }
  }));

  checks.push_back(run_check("k_zero_count", 0.0, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      try {
        const std::vector<double> zeros =
            rec.curve ? rec.curve->k_zeros() : locate_k_zeros(rec.traj);
        if (zeros.size() > 1)
          worst.update(static_cast<double>(zeros.size() - 1), rec.at(zeros[1]));
      } catch (const MultipleZeros&) {
        worst.update(1.0, rec.at(0.0));
      }
    }
  }));

  const auto slope_formula = [](const AugmentedState& y, const SolitonParams& params) {
    const double h2 = params.pitch * params.pitch;
    const double mu2 = y.mu * y.mu;
    const double r2 = y.tau * y.tau + mu2;
    return (6.0 * y.tau * y.tau + 2.0 * h2 * (1.0 + mu2)) / ((1.0 + r2) * (h2 + r2));
  };
  std::vector<std::pair<const GridRecord*, double>> slope_points;
  for (const GridRecord& rec : records) {
    if (!rec.curve) continue;
    for (double s1 : rec.curve->k_zeros())
      if (std::abs(s1) + kSlopeDelta <= grid.tail_span) slope_points.emplace_back(&rec, s1);
  }
  const auto fd_slope = [&](const GridRecord& rec, double s1) {
    const SolitonParams params{rec.pitch};
    const double kp = law->curvature(rec.traj.evaluate(s1 + kSlopeDelta).phase(), params);
    const double km = law->curvature(rec.traj.evaluate(s1 - kSlopeDelta).phase(), params);
    return (kp - km) / (2.0 * kSlopeDelta);
  };

  checks.push_back(run_check("k_zero_slope", profile.k_slope, [&](Worst& worst) {
    for (const auto& [rec, s1] : slope_points) {
      const double fd = fd_slope(*rec, s1);
      const double expected = slope_formula(rec->traj.evaluate(s1), SolitonParams{rec->pitch});
      worst.update(std::abs(fd - expected), rec->at(s1));
    }
  }));

  checks.push_back(run_check("k_zero_slope_positive", 0.0, [&](Worst& worst) {
    for (const auto& [rec, s1] : slope_points)
      worst.update(std::max(0.0, -fd_slope(*rec, s1)), rec->at(s1));
  }));

  checks.push_back(run_check("no_equilibria", 0.0, [&](Worst& worst) {
    double min_norm = std::numeric_limits<double>::infinity();
    CheckLocation min_loc{};
    for (const GridRecord& rec : records) {
      const SolitonParams params{rec.pitch};
      for (const auto& sample : rec.traj.samples()) {
        const double n = rhs_norm(phase_rhs(sample.state.phase(), params, *law));
        if (n < min_norm) {
          min_norm = n;
          min_loc = rec.at(sample.s);
        }
      }
    }
    worst.update(std::max(0.0, profile.min_rhs_norm - min_norm), min_loc);
  }));

  // --- tail behaviour -------------------------------------------------------

  checks.push_back(run_check("tail_sign_pattern", 0.0, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      const AugmentedState fwd = rec.traj.evaluate(grid.horizon);
      const AugmentedState bwd = rec.traj.evaluate(-grid.horizon);
      worst.update(std::max(0.0, -fwd.tau), rec.at(grid.horizon));
      worst.update(std::max(0.0, fwd.mu), rec.at(grid.horizon));
      worst.update(std::max(0.0, bwd.tau), rec.at(-grid.horizon));
      worst.update(std::max(0.0, -bwd.mu), rec.at(-grid.horizon));
    }
  }));

  checks.push_back(run_check("tail_growth", 0.0, [&](Worst& worst) {
    const auto quantities = [](const AugmentedState& y) {
      return std::array<double, 3>{std::abs(y.tau), std::abs(y.mu),
                                   y.tau * y.tau + y.mu * y.mu};
    };
    for (const GridRecord& rec : records) {
      for (double sign : {1.0, -1.0}) {
        const auto inner = quantities(rec.traj.evaluate(sign * 0.5 * grid.horizon));
        const auto mid = quantities(rec.traj.evaluate(sign * grid.horizon));
        const auto outer = quantities(rec.traj.evaluate(sign * 2.0 * grid.horizon));
        for (std::size_t q = 0; q < 3; ++q) {
          worst.update(std::max(0.0, inner[q] - mid[q]), rec.at(sign * grid.horizon));
          worst.update(std::max(0.0, mid[q] - outer[q]), rec.at(sign * 2.0 * grid.horizon));
        }
      }
    }
  }));

  checks.push_back(run_check("tail_winding_growth", 0.0, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) {
        worst.update(1.0, rec.at(0.0));
        continue;
      }
      for (double sign : {1.0, -1.0}) {
        const auto mid = omega_near(*rec.curve, sign * grid.horizon);
        const auto outer = omega_near(*rec.curve, sign * 2.0 * grid.horizon);
        if (!mid || !outer) {
          worst.update(1.0, rec.at(sign * grid.horizon));
          continue;
        }
        worst.update(std::max(0.0, *mid - *outer), rec.at(sign * 2.0 * grid.horizon));
      }
    }
  }));

  checks.push_back(run_check("omega_monotone_far", 0.0, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) continue;
      const auto& samples = rec.curve->samples();
      for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const CurveSample& a = samples[i];
        const CurveSample& b = samples[i + 1];
        if (!a.omega_defined || !b.omega_defined) continue;
        if (a.s >= 0.5 * grid.tail_span && b.s <= grid.tail_span)
          worst.update(std::max(0.0, a.omega - b.omega), rec.at(b.s));
        if (a.s >= -grid.tail_span && b.s <= -0.5 * grid.tail_span)
          worst.update(std::max(0.0, b.omega - a.omega), rec.at(a.s));
      }
    }
  }));

  checks.push_back(run_check("nu_window_bound", profile.nu_window_ratio, [&](Worst& worst) {
    for (const GridRecord& rec : records) {
      if (!rec.curve) continue;
      const double s0 = rec.curve->tau_zero();
      const double split = 0.5 * grid.tail_span;
      const auto window_max = [&](double lo, double hi) {
        double m = 0.0;
        for (double s = lo; s <= hi; s += kNuProbeStep) {
          const AugmentedState y = rec.traj.evaluate(s);
          if (std::abs(y.mu) < 1e-12) continue;
          m = std::max(m, std::abs(y.tau / y.mu));
        }
        return m;
      };
      const double near = window_max(s0 + 1.0, split);
      const double far = window_max(split, grid.tail_span);
      if (near > 0.0) worst.update(far / near, rec.at(split));
    }
  }));

  // --- reflection symmetry --------------------------------------------------

  {
    std::mt19937_64 rng(grid.seed + 3);
    struct MirrorPair {
      SolitonParams params;
      Trajectory original, mirrored;
    };
    std::vector<MirrorPair> pairs;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < kSymmetryInitials; ++i) {
      const double tau0 = uniform_in(rng, grid.tau_min, grid.tau_max);
      const double mu0 = uniform_in(rng, grid.mu_min, grid.mu_max);
      const SolitonParams params{grid.pitches[static_cast<std::size_t>(i) % grid.pitches.size()]};
      pairs.push_back(
          {params,
           integrate_trajectory({tau0, mu0, grid.theta0}, params, law,
                                {-kSymmetrySpan, kSymmetrySpan}, grid.integrator),
           integrate_trajectory({-tau0, -mu0, grid.theta0}, params, law,
                                {-kSymmetrySpan, kSymmetrySpan}, grid.integrator)});
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double setup_seconds = std::chrono::duration<double>(t1 - t0).count();

    CheckResult mirror_merged;
    mirror_merged.name = "symmetry_mirror";
    mirror_merged.tolerance = profile.symmetry_multiplier *
                              std::max(grid.integrator.abs_tol, grid.integrator.rel_tol);
    mirror_merged.passed = true;
    mirror_merged.wall_seconds = setup_seconds;
    for (const MirrorPair& pair : pairs) {
      const CheckResult one = symmetry_check(pair.original, profile);
      mirror_merged.wall_seconds += one.wall_seconds;
      if (one.worst_value > mirror_merged.worst_value) {
        mirror_merged.worst_value = one.worst_value;
        mirror_merged.location = one.location;
      }
      mirror_merged.passed = mirror_merged.passed && one.passed;
    }
    checks.push_back(std::move(mirror_merged));

    checks.push_back(
        run_check("symmetry_tau_zero", profile.symmetry_tau_zero, [&](Worst& worst) {
          for (const MirrorPair& pair : pairs) {
            const AugmentedState init = pair.original.initial_state();
            try {
              const double s0 = locate_tau_zero(pair.original);
              const double s0_mirror = locate_tau_zero(pair.mirrored);
              worst.update(std::abs(s0_mirror + s0),
                           {pair.params.pitch, init.tau, init.mu, s0});
            } catch (const NoSignChange&) {
            } catch (const MultipleZeros&) {
            }
          }
        }));
  }

  // --- integrator self-consistency ------------------------------------------

  checks.push_back(run_check(
      "dense_output_consistency",
      profile.dense_residual_multiplier, [&](Worst& worst) {
        for (const GridRecord& rec : records) {
          const SolitonParams params{rec.pitch};
          const IntegratorOptions& opts = rec.traj.options();
          for (const auto& seg : rec.traj.segments()) {
            const double s_mid = seg.s0 + 0.5 * seg.h;
            const AugmentedState y = rec.traj.evaluate(s_mid);
            const AugmentedState dy = rec.traj.derivative(s_mid);
            const PhaseDerivatives f = phase_rhs(y.phase(), params, *law);
            const std::array<double, 3> resid{dy.tau - f.dtau, dy.mu - f.dmu,
                                              dy.theta - f.dtheta};
            const std::array<double, 3> value{y.tau, y.mu, y.theta};
            for (std::size_t c = 0; c < 3; ++c) {
              const double scale = opts.abs_tol + opts.rel_tol * std::abs(value[c]);
              worst.update(std::abs(resid[c]) * seg.h / scale, rec.at(s_mid));
            }
          }
        }
      }));

  // --- mesh-width convergence of the numeric evaluator ----------------------

  {
    const SolitonParams params{1.0};
    const Trajectory traj =
        integrate_trajectory({0.0, 0.0, grid.theta0}, params, law,
                             {-grid.horizon, grid.horizon}, grid.integrator);
    const GeneratingCurve curve = build_generating_curve(traj);
    checks.push_back(convergence_study(
        curve, params,
        {kConvergenceWidths[0], kConvergenceWidths[1], kConvergenceWidths[2]}, profile));

    checks.push_back(
        run_check("h_agreement_absolute", profile.finite_difference, [&](Worst& worst) {
          const std::vector<double> numeric =
              numeric_mean_curvature(curve, params, kConvergenceWidths.back());
          const auto& samples = curve.samples();
          for (std::size_t i = 0; i < samples.size(); ++i) {
            const PhasePoint p{samples[i].tau, samples[i].mu};
            worst.update(std::abs(numeric[i] - closed_form_H(p, params, samples[i].k)),
                         {params.pitch, 0.0, 0.0, samples[i].s});
          }
        }));
  }

  return report;
}

std::string report_to_json(const VerificationReport& report) {
  using json = nlohmann::ordered_json;

  json grid;
  grid["pitches"] = report.grid.pitches;
  grid["tau_range"] = {report.grid.tau_min, report.grid.tau_max};
  grid["mu_range"] = {report.grid.mu_min, report.grid.mu_max};
  grid["points_per_axis"] = report.grid.points_per_axis;
  grid["theta0"] = report.grid.theta0;
  grid["horizon"] = report.grid.horizon;
  grid["tail_span"] = report.grid.tail_span;
  grid["seed"] = report.grid.seed;

  json integrator;
  integrator["abs_tol"] = report.grid.integrator.abs_tol;
  integrator["rel_tol"] = report.grid.integrator.rel_tol;
  integrator["max_steps"] = report.grid.integrator.max_steps;
  if (report.grid.integrator.fixed_step)
    integrator["fixed_step"] = *report.grid.integrator.fixed_step;
  else
    integrator["fixed_step"] = nullptr;

  json checks = json::array();
  for (const CheckResult& check : report.checks) {
    json entry;
    entry["name"] = check.name;
    entry["passed"] = check.passed;
    entry["worst_value"] = check.worst_value;
    entry["tolerance"] = check.tolerance;
    entry["location"] = {{"h", check.location.h},
                         {"tau0", check.location.tau0},
                         {"mu0", check.location.mu0},
                         {"s", check.location.s}};
    checks.push_back(std::move(entry));
  }

  json root;
  root["grid"] = std::move(grid);
  root["integrator"] = std::move(integrator);
  root["checks"] = std::move(checks);
  return root.dump(2) + "\n";
}

}  // namespace helisol
