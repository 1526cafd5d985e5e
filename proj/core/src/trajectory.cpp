#include "helisol/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace helisol {

namespace {

using Vec3 = std::array<double, 3>;

constexpr double kMinStep = 1e-14;

// Runge-Kutta-Fehlberg 4(5) tableau.  The fourth-order solution is advanced
// (classic Fehlberg); the fifth-order companion enters only through the
// embedded error estimate e_i = b5_i - b4_i.  Advancing the lower order keeps
// the global error cleanly O(h^4) in fixed-step mode, which convergence
// studies rely on.
constexpr double a21 = 1.0 / 4.0;
constexpr double a31 = 3.0 / 32.0, a32 = 9.0 / 32.0;
constexpr double a41 = 1932.0 / 2197.0, a42 = -7200.0 / 2197.0, a43 = 7296.0 / 2197.0;
constexpr double a51 = 439.0 / 216.0, a52 = -8.0, a53 = 3680.0 / 513.0, a54 = -845.0 / 4104.0;
constexpr double a61 = -8.0 / 27.0, a62 = 2.0, a63 = -3544.0 / 2565.0, a64 = 1859.0 / 4104.0,
                 a65 = -11.0 / 40.0;
constexpr double b1 = 25.0 / 216.0, b3 = 1408.0 / 2565.0, b4 = 2197.0 / 4104.0, b5 = -1.0 / 5.0;
constexpr double e1 = 1.0 / 360.0, e3 = -128.0 / 4275.0, e4 = -2197.0 / 75240.0, e5 = 1.0 / 50.0,
                 e6 = 2.0 / 55.0;

Vec3 to_vec(const AugmentedState& y) { return {y.tau, y.mu, y.theta}; }
AugmentedState to_state(const Vec3& v) { return {v[0], v[1], v[2]}; }

struct System {
  const SolitonParams& params;
  const CurvatureLaw& law;

  Vec3 operator()(const Vec3& y) const {
    // Escaping trial states (singular prescribed profiles) must surface as a
    // rejectable non-finite error estimate, not as an exception mid-step.
    if (!(std::abs(y[0]) < 1e150 && std::abs(y[1]) < 1e150)) {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      return {nan, nan, nan};
    }
    const double k = law.curvature({y[0], y[1]}, params);
    return {1.0 + k * y[1], -k * y[0], k};
  }
};

Vec3 axpy(const Vec3& y, double h, const Vec3& d) {
  return {y[0] + h * d[0], y[1] + h * d[1], y[2] + h * d[2]};
}

struct StepResult {
  Vec3 y_new;
  Vec3 err;  // embedded 4th/5th order difference, already scaled by h
};

StepResult rkf45_step(const System& f, const Vec3& y, const Vec3& k1, double h) {
  const Vec3 k2 = f(axpy(y, h, {a21 * k1[0], a21 * k1[1], a21 * k1[2]}));
  Vec3 t;
  for (int i = 0; i < 3; ++i) t[i] = a31 * k1[i] + a32 * k2[i];
  const Vec3 k3 = f(axpy(y, h, t));
  for (int i = 0; i < 3; ++i) t[i] = a41 * k1[i] + a42 * k2[i] + a43 * k3[i];
  const Vec3 k4 = f(axpy(y, h, t));
  for (int i = 0; i < 3; ++i) t[i] = a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
  const Vec3 k5 = f(axpy(y, h, t));
  for (int i = 0; i < 3; ++i)
    t[i] = a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
  const Vec3 k6 = f(axpy(y, h, t));

  StepResult out;
  for (int i = 0; i < 3; ++i) {
    out.y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i]);
    out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
  }
  return out;
}

double error_norm(const Vec3& err, const Vec3& y, const Vec3& y_new,
                  const IntegratorOptions& opt) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    const double q = err[i] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / 3.0);
}

double scaled_norm(const Vec3& v, const Vec3& y, const IntegratorOptions& opt) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double sc = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
    const double q = v[i] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / 3.0);
}

// Standard starting-step heuristic (two trial derivative evaluations).
double initial_step(const System& f, const Vec3& y0, const Vec3& f0, double dir, double s_len,
                    const IntegratorOptions& opt) {
  const double d0 = scaled_norm(y0, y0, opt);
  const double d1 = scaled_norm(f0, y0, opt);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
  h0 = std::min(h0, s_len);
  const Vec3 y1 = axpy(y0, dir * h0, f0);
  const Vec3 f1 = f(y1);
  Vec3 df;
  for (int i = 0; i < 3; ++i) df[i] = f1[i] - f0[i];
  const double d2 = scaled_norm(df, y0, opt) / h0;
  double h1;
  const double dm = std::max(d1, d2);
  if (dm <= 1e-15) {
    h1 = std::max(1e-6, h0 * 1e-3);
  } else {
    h1 = std::pow(0.01 / dm, 0.2);
  }
  return std::min({100.0 * h0, h1, s_len});
}

struct DirectionRun {
  std::vector<Trajectory::Sample> samples;    // excludes the anchor
  std::vector<Trajectory::Segment> segments;  // left-normalized (h > 0)
};

// Integrates from (s = 0, y0) to s_end (either sign).  Collects accepted
// steps as Hermite segments.
DirectionRun integrate_direction(const System& f, const Vec3& y0, double s_end,
                                 const IntegratorOptions& opt) {
  DirectionRun run;
  const double dir = (s_end > 0.0) ? 1.0 : -1.0;
  const double s_len = std::abs(s_end);

  Vec3 y = y0;
  Vec3 fy = f(y);
  double s = 0.0;

  double h;
  if (opt.fixed_step) {
    if (!(*opt.fixed_step > 0.0))
      throw std::invalid_argument("integrate_trajectory: fixed_step must be > 0");
    h = std::min(*opt.fixed_step, s_len);
  } else {
    h = initial_step(f, y, fy, dir, s_len, opt);
  }

  constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 5.0, facc2 = 0.1;  // growth/shrink caps per step
  double facold = 1e-4;

  // Fixed-step grids are reconstructed as k * h0 rather than by repeated
  // addition, whose rounding drift would otherwise fabricate a tiny extra
  // step at the far end of long spans.
  const double h0 = h;
  std::uint64_t accepted = 0;
  std::uint64_t steps = 0;
  bool last = false;
  while (true) {
    if (++steps > opt.max_steps)
      throw MaxStepsExceeded("integrate_trajectory: step budget exhausted");
    if (h < kMinStep) throw StepUnderflow("integrate_trajectory: step size underflow");

    // Clip the final step so the span endpoint is hit exactly.
    if ((std::abs(s) + h) >= s_len * (1.0 - 1e-14)) {
      h = s_len - std::abs(s);
      last = true;
      if (h < kMinStep * 0.5) break;  // endpoint already reached
    }

    const StepResult st = rkf45_step(f, y, fy, dir * h);
    double err = error_norm(st.err, y, st.y_new, opt);
    if (!std::isfinite(err)) err = 10.0;  // force rejection on non-finite data

    if (opt.fixed_step) err = 0.0;  // no control in fixed-step mode

    if (err <= 1.0) {
      ++accepted;
      const double s_new =
          last ? s_end
               : (opt.fixed_step ? dir * static_cast<double>(accepted) * h0 : s + dir * h);
      const Vec3 fy_new = f(st.y_new);

      Trajectory::Segment seg;
      if (dir > 0) {
        seg = {s, std::abs(s_new - s), y, st.y_new, fy, fy_new};
      } else {
        seg = {s_new, std::abs(s_new - s), st.y_new, y, fy_new, fy};
      }
      run.segments.push_back(seg);
      run.samples.push_back({s_new, to_state(st.y_new)});

      y = st.y_new;
      fy = fy_new;
      s = s_new;
      if (last) break;

      if (!opt.fixed_step) {
        const double fac11 = std::pow(std::max(err, 1e-30), expo1);
        double fac = fac11 / std::pow(facold, beta);
        fac = std::max(facc2, std::min(facc1, fac / safe));
        facold = std::max(err, 1e-4);
        h = h / fac;
      }
    } else {
      last = false;
      const double fac11 = std::pow(err, expo1);
      h = h / std::min(facc1, fac11 / safe);
    }
  }
  return run;
}

}  // namespace

Trajectory integrate_trajectory(const AugmentedState& init, const SolitonParams& params,
                                std::shared_ptr<const CurvatureLaw> law, Span span,
                                const IntegratorOptions& options) {
  if (!(params.pitch > 0.0))
    throw std::invalid_argument("integrate_trajectory: pitch must be > 0");
  if (!law) throw std::invalid_argument("integrate_trajectory: null curvature law");
  if (!(span.s_min <= 0.0 && 0.0 <= span.s_max && span.s_min < span.s_max))
    throw std::invalid_argument("integrate_trajectory: span must satisfy s_min <= 0 <= s_max");

  const System f{params, *law};
  const Vec3 y0 = to_vec(init);

  Trajectory traj;
  traj.params_ = params;
  traj.law_ = std::move(law);
  traj.options_ = options;
  traj.init_ = init;
  traj.s_min_ = span.s_min;
  traj.s_max_ = span.s_max;

  DirectionRun back, fwd;
  if (span.s_min < 0.0) back = integrate_direction(f, y0, span.s_min, options);
  if (span.s_max > 0.0) fwd = integrate_direction(f, y0, span.s_max, options);

  traj.samples_.reserve(back.samples.size() + fwd.samples.size() + 1);
  for (auto it = back.samples.rbegin(); it != back.samples.rend(); ++it)
    traj.samples_.push_back(*it);
  traj.samples_.push_back({0.0, init});
  for (const auto& smp : fwd.samples) traj.samples_.push_back(smp);

  traj.segments_.reserve(back.segments.size() + fwd.segments.size());
  for (auto it = back.segments.rbegin(); it != back.segments.rend(); ++it)
    traj.segments_.push_back(*it);
  for (const auto& seg : fwd.segments) traj.segments_.push_back(seg);

  return traj;
}

std::size_t Trajectory::locate_segment(double s) const {
  // First segment whose left edge is at or before s; segments are sorted.
  auto it = std::upper_bound(segments_.begin(), segments_.end(), s,
                             [](double v, const Segment& seg) { return v < seg.s0; });
  if (it == segments_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

AugmentedState Trajectory::evaluate(double s) const {
  const double edge = 1e-12 * std::max(1.0, std::abs(s));
  if (s < s_min_ - edge || s > s_max_ + edge)
    throw std::out_of_range("Trajectory::evaluate: s outside integrated span");
  if (segments_.empty()) return init_;
  const Segment& seg = segments_[locate_segment(std::clamp(s, s_min_, s_max_))];

  const double t = std::clamp((s - seg.s0) / seg.h, 0.0, 1.0);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;

  Vec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = h00 * seg.y0[i] + h10 * seg.h * seg.f0[i] + h01 * seg.y1[i] + h11 * seg.h * seg.f1[i];
  return to_state(out);
}

AugmentedState Trajectory::derivative(double s) const {
  const double edge = 1e-12 * std::max(1.0, std::abs(s));
  if (s < s_min_ - edge || s > s_max_ + edge)
    throw std::out_of_range("Trajectory::derivative: s outside integrated span");
  if (segments_.empty()) return {0.0, 0.0, 0.0};
  const Segment& seg = segments_[locate_segment(std::clamp(s, s_min_, s_max_))];

  const double t = std::clamp((s - seg.s0) / seg.h, 0.0, 1.0);
  const double t2 = t * t;
  const double d00 = (6.0 * t2 - 6.0 * t) / seg.h;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / seg.h;
  const double d11 = 3.0 * t2 - 2.0 * t;

  Vec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = d00 * seg.y0[i] + d10 * seg.f0[i] + d01 * seg.y1[i] + d11 * seg.f1[i];
  return to_state(out);
}

AugmentedState single_step(const AugmentedState& state, double h, const SolitonParams& params,
                           const CurvatureLaw& law) {
  const System f{params, law};
  const Vec3 y = to_vec(state);
  const StepResult st = rkf45_step(f, y, f(y), h);
  return to_state(st.y_new);
}

}  // namespace helisol
