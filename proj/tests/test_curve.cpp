#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "helisol/curve.hpp"
#include "helisol/phase.hpp"
#include "helisol/trajectory.hpp"
#include "test_util.hpp"

using namespace helisol;
using testutil::uniform_in;

namespace {

std::shared_ptr<const CurvatureLaw> rotator() { return std::make_shared<RotatorLaw>(); }

class ConstantCurvatureLaw final : public CurvatureLaw {
 public:
  explicit ConstantCurvatureLaw(double c) : c_(c) {}
  double curvature(const PhasePoint&, const SolitonParams&) const override { return c_; }
  std::string name() const override { return "constant"; }

 private:
  double c_;
};

GeneratingCurve default_curve(double pitch, double span, AugmentedState init = {0.0, 0.0, 0.0}) {
  IntegratorOptions opts;
  opts.abs_tol = opts.rel_tol = 1e-12;
  return build_generating_curve(
      integrate_trajectory(init, SolitonParams{pitch}, rotator(), {-span, span}, opts));
}

// Winding angle at the defined sample nearest to the requested arclength.
double omega_at(const GeneratingCurve& curve, double s) {
  double best = std::numeric_limits<double>::infinity();
  double omega = 0.0;
  for (const CurveSample& cs : curve.samples()) {
    if (!cs.omega_defined) continue;
    if (std::abs(cs.s - s) < best) {
      best = std::abs(cs.s - s);
      omega = cs.omega;
    }
  }
  REQUIRE(best < 0.1);
  return omega;
}

}  // namespace

TEST_SUITE("curve") {
  TEST_CASE("frame reconstruction is orthonormal and integrates the tangent") {
    // Tight tolerance: the finite-difference quotient below divides dense-output
    // noise by 2 delta, so interpolation error must sit well under 1e-10.
    IntegratorOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-13;
    const Trajectory traj = integrate_trajectory({0.5, -0.3, 0.2}, SolitonParams{1.0}, rotator(),
                                                 {-5.0, 5.0}, opts);
    std::mt19937_64 rng(41);
    const double delta = 1e-4;
    for (int i = 0; i < 100; ++i) {
      const double s = uniform_in(rng, -4.9, 4.9);
      const FrenetFrame frame = reconstruct_position(traj.evaluate(s));
      CHECK(std::abs(norm(frame.tangent) - 1.0) <= 1e-14);
      CHECK(std::abs(dot(frame.tangent, frame.normal)) <= 1e-14);
      CHECK(frame.normal.x == perp(frame.tangent).x);
      CHECK(frame.normal.y == perp(frame.tangent).y);

      // alpha' = T: the reconstructed position moves along the tangent.
      const FrenetFrame plus = reconstruct_position(traj.evaluate(s + delta));
      const FrenetFrame minus = reconstruct_position(traj.evaluate(s - delta));
      const PlanePoint fd = (1.0 / (2.0 * delta)) * (plus.alpha - minus.alpha);
      CHECK(norm(fd - frame.tangent) <= 1e-6);
    }
  }

  TEST_CASE("angle unwrapping follows a synthetic spiral across branch cuts") {
    std::vector<PlanePoint> pts;
    for (int j = 0; j <= 70; ++j) {
      const double angle = 0.3 * static_cast<double>(j);  // winds past pi several times
      pts.push_back({std::cos(angle), std::sin(angle)});
    }
    const std::vector<double> unwrapped = unwrap_angles(pts);
    REQUIRE(unwrapped.size() == pts.size());
    for (int j = 0; j <= 70; ++j)
      CHECK(unwrapped[static_cast<std::size_t>(j)] ==
            doctest::Approx(0.3 * static_cast<double>(j)).epsilon(1e-12));

    SUBCASE("points at the origin interrupt and restart the accumulation") {
      pts[30] = {0.0, 0.0};  // below the definedness radius
      const std::vector<double> gapped = unwrap_angles(pts);
      CHECK(std::isnan(gapped[30]));
      CHECK(gapped[29] == doctest::Approx(0.3 * 29).epsilon(1e-12));
      // Continuation resumes from the last defined angle, so the branch
      // stays on the same sheet instead of snapping back to atan2 range.
      CHECK(gapped[31] == doctest::Approx(0.3 * 31).epsilon(1e-10));
    }
  }

  TEST_CASE("tau-zero location is bisected to tolerance") {
    IntegratorOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-12;
    const Trajectory traj = integrate_trajectory({1.5, -0.8, 0.0}, SolitonParams{2.0}, rotator(),
                                                 {-30.0, 30.0}, opts);
    const double s0 = locate_tau_zero(traj);
    CHECK(std::abs(traj.evaluate(s0).tau) <= 1e-11);

    SUBCASE("a span that stays on one side reports no sign change") {
      const Trajectory one_sided = integrate_trajectory({1.0, 0.5, 0.0}, SolitonParams{1.0},
                                                        rotator(), {0.0, 2.0}, opts);
      CHECK_THROWS_AS(locate_tau_zero(one_sided), NoSignChange);
    }
    SUBCASE("an oscillating curvature law produces multiple zeros") {
      const Trajectory wavy =
          integrate_trajectory({0.0, 0.0, 0.0}, SolitonParams{1.0},
                               std::make_shared<ConstantCurvatureLaw>(3.0), {-3.0, 3.0}, opts);
      CHECK_THROWS_AS(locate_tau_zero(wavy), MultipleZeros);
    }
  }

  TEST_CASE("the built curve is ordered, anchored, and annotated") {
    const GeneratingCurve curve = default_curve(1.0, 20.0);
    const auto& samples = curve.samples();
    REQUIRE(samples.size() > 100);

    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
      CHECK(samples[i].s < samples[i + 1].s);

    // The trajectory starts on the tau zero, so the anchor is at s = 0.
    CHECK(std::abs(curve.tau_zero()) <= 1e-12);
    const CurveSample& anchor = samples[curve.tau_zero_index()];
    CHECK(std::abs(anchor.s - curve.tau_zero()) <= 1e-12);
    CHECK(std::abs(anchor.tau) <= 1e-11);

    // This trajectory passes through the axis: no angle there, angles nearby.
    CHECK(anchor.r <= 1e-9);
    CHECK_FALSE(anchor.omega_defined);
    CHECK(samples.front().omega_defined);
    CHECK(samples.back().omega_defined);

    for (const CurveSample& cs : samples) {
      CHECK(cs.r == doctest::Approx(norm(cs.alpha)).epsilon(1e-12));
      CHECK(cs.phi == doctest::Approx(std::sqrt(1.0 + cs.r * cs.r)).epsilon(1e-12));
      CHECK(std::abs(norm(cs.alpha - (cs.tau * cs.tangent + cs.mu * cs.normal))) <= 1e-9);
    }
  }

  TEST_CASE("the radius is strictly monotone on each side of its minimum") {
    for (const double pitch : {0.5, 1.0, 2.0}) {
      const GeneratingCurve curve = default_curve(pitch, 30.0, {1.5, -0.8, 0.0});
      const double s0 = curve.tau_zero();
      const auto& samples = curve.samples();
      for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double r2a = samples[i].r * samples[i].r;
        const double r2b = samples[i + 1].r * samples[i + 1].r;
        if (samples[i + 1].s <= s0) CHECK(r2b < r2a);
        if (samples[i].s >= s0) CHECK(r2b > r2a);
      }
    }
  }

  TEST_CASE("both arms keep winding outward") {
    const GeneratingCurve curve = default_curve(1.0, 20.0);
    CHECK(omega_at(curve, 10.0) - omega_at(curve, 5.0) > 0.0);
    CHECK(omega_at(curve, -10.0) - omega_at(curve, -5.0) > 0.0);
  }

  TEST_CASE("far windows do not grow new radial excursions") {
    const GeneratingCurve curve = default_curve(1.0, 50.0);
    const Trajectory& traj = curve.trajectory();
    const double s0 = curve.tau_zero();
    const auto window_max = [&](double lo, double hi) {
      double m = 0.0;
      for (double s = lo; s <= hi; s += 0.05) {
        const AugmentedState y = traj.evaluate(s);
        if (std::abs(y.mu) < 1e-12) continue;
        m = std::max(m, std::abs(y.tau / y.mu));
      }
      return m;
    };
    const double near = window_max(s0 + 1.0, 25.0);
    const double far = window_max(25.0, 50.0);
    CHECK(far <= 2.0 * near);
  }

  TEST_CASE("the initial angle only rotates the curve") {
    IntegratorOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-12;
    const double theta0 = 0.9;
    const GeneratingCurve base = default_curve(1.0, 10.0, {0.7, -0.2, 0.0});
    const GeneratingCurve turned = build_generating_curve(integrate_trajectory(
        {0.7, -0.2, theta0}, SolitonParams{1.0}, rotator(), {-10.0, 10.0}, opts));

    // The two integrations may accept different steps (theta participates in
    // the error control), so compare through the dense output.
    double worst = 0.0;
    for (double s = -9.5; s <= 9.5; s += 0.5) {
      const AugmentedState ya = base.trajectory().evaluate(s);
      const AugmentedState yb = turned.trajectory().evaluate(s);
      const PlanePoint alpha_a = reconstruct_position(ya).alpha;
      const PlanePoint alpha_b = reconstruct_position(yb).alpha;
      worst = std::max({worst, std::abs(ya.tau - yb.tau), std::abs(ya.mu - yb.mu),
                        norm(alpha_b - apply_rotation(theta0, alpha_a))});
    }
    CHECK(worst <= 1e-6);
  }
}
