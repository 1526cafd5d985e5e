#include "helisol/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace helisol {

namespace {

constexpr double kOmegaRMin = 1e-9;
constexpr double kBisectWidth = 1e-12;
constexpr double kRootMergeDist = 1e-9;

double wrap_to_pi(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  if (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

// Zeros of fn along the trajectory samples, each refined by bisection on the
// dense output.  Exact zeros sitting on a sample are taken as-is.
std::vector<double> locate_zeros(const Trajectory& traj,
                                 const std::function<double(double)>& fn) {
  const auto& samples = traj.samples();
  std::vector<double> roots;

  std::vector<double> vals(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) vals[i] = fn(samples[i].s);

  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (vals[i] == 0.0) {
      roots.push_back(samples[i].s);
      continue;
    }
    if (i + 1 < samples.size() && vals[i] * vals[i + 1] < 0.0) {
      double lo = samples[i].s, hi = samples[i + 1].s;
      double flo = vals[i];
      for (int it = 0; it < 200 && (hi - lo) > kBisectWidth; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn(mid);
        if (fmid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fmid < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
  }

  // A value within rounding of zero at a sample can produce two adjacent
  // crossings; collapse roots closer than the merge distance.
  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (merged.empty() || r - merged.back() > kRootMergeDist) merged.push_back(r);
  }
  return merged;
}

}  // namespace

FrenetFrame reconstruct_position(const AugmentedState& state) {
  const PlanePoint tangent{std::cos(state.theta), std::sin(state.theta)};
  const PlanePoint normal = perp(tangent);
  return {state.tau * tangent + state.mu * normal, tangent, normal};
}

std::vector<double> unwrap_angles(const std::vector<PlanePoint>& pts, double r_min) {
  std::vector<double> out(pts.size(), std::numeric_limits<double>::quiet_NaN());
  bool have_prev = false;
  double prev_raw = 0.0, prev_omega = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (norm(pts[i]) < r_min) continue;
    const double raw = std::atan2(pts[i].y, pts[i].x);
    if (!have_prev) {
      out[i] = raw;
      have_prev = true;
    } else {
      out[i] = prev_omega + wrap_to_pi(raw - prev_raw);
    }
    prev_raw = raw;
    prev_omega = out[i];
  }
  return out;
}

double locate_tau_zero(const Trajectory& traj) {
  const auto roots =
      locate_zeros(traj, [&](double s) { return traj.evaluate(s).tau; });
  if (roots.empty())
    throw NoSignChange("locate_tau_zero: tau does not change sign on the span");
  if (roots.size() > 1)
    throw MultipleZeros("locate_tau_zero: multiple tau zeros on the span");
  return roots.front();
}

std::vector<double> locate_k_zeros(const Trajectory& traj) {
  const auto& law = traj.law();
  const auto& params = traj.params();
  const auto roots = locate_zeros(traj, [&](double s) {
    return law.curvature(traj.evaluate(s).phase(), params);
  });
  if (roots.size() > 1)
    throw MultipleZeros("locate_k_zeros: curvature changes sign more than once");
  return roots;
}

GeneratingCurve build_generating_curve(Trajectory traj) {
  GeneratingCurve curve;
  const double s0 = locate_tau_zero(traj);
  const auto k_zeros = locate_k_zeros(traj);

  const auto& params = traj.params();
  const auto& law = traj.law();

  // Sample grid = accepted steps plus one sample pinned at the tau zero, so
  // the minimum of r^2 is attained on the grid itself.
  std::vector<Trajectory::Sample> grid(traj.samples().begin(), traj.samples().end());
  auto pos = std::lower_bound(grid.begin(), grid.end(), s0,
                              [](const Trajectory::Sample& a, double v) { return a.s < v; });
  const bool duplicate =
      (pos != grid.end() && std::abs(pos->s - s0) < 1e-13) ||
      (pos != grid.begin() && std::abs(std::prev(pos)->s - s0) < 1e-13);
  if (!duplicate) grid.insert(pos, {s0, traj.evaluate(s0)});

  curve.samples_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& st = grid[i].state;
    CurveSample& cs = curve.samples_[i];
    cs.s = grid[i].s;
    const FrenetFrame frame = reconstruct_position(st);
    cs.alpha = frame.alpha;
    cs.tangent = frame.tangent;
    cs.normal = frame.normal;
    cs.tau = st.tau;
    cs.mu = st.mu;
    cs.theta = st.theta;
    cs.k = law.curvature(st.phase(), params);
    cs.r = std::hypot(st.tau, st.mu);
    cs.phi = std::sqrt(1.0 + cs.r * cs.r);
  }

  std::size_t idx0 = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < curve.samples_.size(); ++i) {
    const double d = std::abs(curve.samples_[i].s - s0);
    if (d < best) {
      best = d;
      idx0 = i;
    }
  }

  // Polar angle unwrapped per arm, both arms seeded at the tau zero so omega
  // is continuous across it whenever the curve misses the origin.
  const std::size_t n = curve.samples_.size();
  {
    std::vector<PlanePoint> fwd_pts;
    for (std::size_t i = idx0; i < n; ++i) fwd_pts.push_back(curve.samples_[i].alpha);
    const auto fwd = unwrap_angles(fwd_pts, kOmegaRMin);
    for (std::size_t i = idx0; i < n; ++i) {
      curve.samples_[i].omega = fwd[i - idx0];
      curve.samples_[i].omega_defined = std::isfinite(fwd[i - idx0]);
    }

    std::vector<PlanePoint> back_pts;
    for (std::size_t j = 0; j <= idx0; ++j)
      back_pts.push_back(curve.samples_[idx0 - j].alpha);
    const auto back = unwrap_angles(back_pts, kOmegaRMin);
    for (std::size_t j = 1; j <= idx0; ++j) {
      curve.samples_[idx0 - j].omega = back[j];
      curve.samples_[idx0 - j].omega_defined = std::isfinite(back[j]);
    }
  }

  curve.traj_ = std::move(traj);
  curve.tau_zero_ = s0;
  curve.tau_zero_index_ = idx0;
  curve.k_zeros_ = k_zeros;
  return curve;
}

}  // namespace helisol
