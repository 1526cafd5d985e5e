#pragma once

// Adaptive integration of the support-function system
//
//   (tau, mu, theta)' = (1 + k mu, -k tau, k),
//
// with s = 0 anchoring the initial condition; spans crossing zero are
// integrated separately in each direction and concatenated.  The stepper
// is an embedded Runge-Kutta-Fehlberg 4(5) pair advancing the fourth-order
// solution, with PI step-size control and cubic Hermite dense output.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "helisol/phase.hpp"

namespace helisol {

struct AugmentedState {
  double tau = 0.0;
  double mu = 0.0;
  double theta = 0.0;

  PhasePoint phase() const { return {tau, mu}; }
};

struct Span {
  double s_min = 0.0;
  double s_max = 0.0;
};

struct IntegratorOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::uint64_t max_steps = 10'000'000;  // cap per integration direction
  std::optional<double> fixed_step;      // disables step-size control when set
};

struct MaxStepsExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Trajectory {
 public:
  struct Sample {
    double s;
    AugmentedState state;
  };

  // One accepted step, stored left-to-right: y0 = state at s0, y1 at s0 + h,
  // f0/f1 the system right-hand sides at the endpoints (h > 0).
  struct Segment {
    double s0;
    double h;
    std::array<double, 3> y0, y1, f0, f1;
  };

  const std::vector<Sample>& samples() const { return samples_; }
  const std::vector<Segment>& segments() const { return segments_; }

  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

  const SolitonParams& params() const { return params_; }
  const CurvatureLaw& law() const { return *law_; }
  std::shared_ptr<const CurvatureLaw> law_ptr() const { return law_; }
  const IntegratorOptions& options() const { return options_; }
  AugmentedState initial_state() const { return init_; }

  // Dense evaluation anywhere in [s_min, s_max]; throws std::out_of_range
  // beyond the span (modulo a 1e-12-scale edge allowance).
  AugmentedState evaluate(double s) const;

  // Slope of the dense interpolant; used by the self-consistency checks.
  AugmentedState derivative(double s) const;

 private:
  friend Trajectory integrate_trajectory(const AugmentedState&, const SolitonParams&,
                                         std::shared_ptr<const CurvatureLaw>, Span,
                                         const IntegratorOptions&);

  std::size_t locate_segment(double s) const;

  SolitonParams params_;
  std::shared_ptr<const CurvatureLaw> law_;
  IntegratorOptions options_;
  AugmentedState init_;
  double s_min_ = 0.0, s_max_ = 0.0;
  std::vector<Sample> samples_;
  std::vector<Segment> segments_;
};

// Integrates from state `init` placed at s = 0 over `span` (s_min <= 0 <= s_max,
// s_min < s_max).  Throws MaxStepsExceeded / StepUnderflow on budget exhaustion
// or a collapsing step (the signature of a singular prescribed profile).
Trajectory integrate_trajectory(const AugmentedState& init, const SolitonParams& params,
                                std::shared_ptr<const CurvatureLaw> law, Span span,
                                const IntegratorOptions& options = {});

// One uncontrolled Runge-Kutta step of signed size h from `state`.  Exposed for
// finite-difference probes that need nearby states without interpolation noise.
AugmentedState single_step(const AugmentedState& state, double h, const SolitonParams& params,
                           const CurvatureLaw& law);

}  // namespace helisol
