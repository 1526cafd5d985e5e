#pragma once

// Reconstruction of the generating curve from a phase trajectory.  The
// support functions determine the position exactly through the moving
// frame: alpha = tau T + mu N with T = (cos theta, sin theta), N = J T,
// so no second quadrature is needed.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "helisol/geometry.hpp"
#include "helisol/trajectory.hpp"

namespace helisol {

struct NoSignChange : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MultipleZeros : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FrenetFrame {
  PlanePoint alpha;
  PlanePoint tangent;
  PlanePoint normal;
};

FrenetFrame reconstruct_position(const AugmentedState& state);

struct CurveSample {
  double s = 0.0;
  PlanePoint alpha, tangent, normal;
  double tau = 0.0, mu = 0.0, theta = 0.0;
  double k = 0.0;    // planar curvature under the trajectory's law
  double r = 0.0;    // |alpha|
  double phi = 0.0;  // sqrt(1 + r^2), height of the lifted curve
  double omega = 0.0;
  bool omega_defined = false;  // false within r < 1e-9 of the origin
};

// Continuous unwrapping of atan2 along an ordered point list.  Entries with
// |p| < r_min are undefined (NaN); accumulation restarts across gaps from the
// last defined angle.
std::vector<double> unwrap_angles(const std::vector<PlanePoint>& pts, double r_min = 1e-9);

// Unique zero of tau on the trajectory, refined by bisection on the dense
// output to an interval below 1e-12.  Throws NoSignChange / MultipleZeros.
double locate_tau_zero(const Trajectory& traj);

// Zeros of the law's curvature along the trajectory (at most one expected;
// more raise MultipleZeros).  An empty result is valid.
std::vector<double> locate_k_zeros(const Trajectory& traj);

class GeneratingCurve {
 public:
  const Trajectory& trajectory() const { return traj_; }
  const std::vector<CurveSample>& samples() const { return samples_; }
  const SolitonParams& params() const { return traj_.params(); }

  double tau_zero() const { return tau_zero_; }
  std::size_t tau_zero_index() const { return tau_zero_index_; }
  const std::vector<double>& k_zeros() const { return k_zeros_; }

 private:
  friend GeneratingCurve build_generating_curve(Trajectory traj);

  Trajectory traj_;
  std::vector<CurveSample> samples_;
  double tau_zero_ = 0.0;
  std::size_t tau_zero_index_ = 0;
  std::vector<double> k_zeros_;
};

// Builds the sampled curve: locates the tau zero (inserting a sample there),
// reconstructs the frame per sample, and unwraps the polar angle per arm.
GeneratingCurve build_generating_curve(Trajectory traj);

}  // namespace helisol
