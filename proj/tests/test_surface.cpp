#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "helisol/curve.hpp"
#include "helisol/phase.hpp"
#include "helisol/surface.hpp"
#include "helisol/trajectory.hpp"
#include "test_util.hpp"

using namespace helisol;

namespace {

std::shared_ptr<const CurvatureLaw> rotator() { return std::make_shared<RotatorLaw>(); }

GeneratingCurve soliton_curve(double pitch, double span) {
  IntegratorOptions opts;
  opts.abs_tol = opts.rel_tol = 1e-12;
  return build_generating_curve(integrate_trajectory({0.0, 0.0, 0.0}, SolitonParams{pitch},
                                                     rotator(), {-span, span}, opts));
}

// A unit circle traversed so that tau = 0, mu = -1, k = 1: a closed curve
// that is definitely not a soliton arm, used to pin the residual scale.
CurveSample unit_circle_sample() {
  CurveSample cs;
  cs.s = 0.0;
  cs.tangent = {1.0, 0.0};
  cs.normal = {0.0, 1.0};
  cs.tau = 0.0;
  cs.mu = -1.0;
  cs.alpha = {0.0, -1.0};
  cs.theta = 0.0;
  cs.k = 1.0;
  cs.r = 1.0;
  cs.phi = std::sqrt(2.0);
  cs.omega = -std::numbers::pi / 2.0;
  cs.omega_defined = true;
  return cs;
}

// Ambient 4-vector (plane, x3, t) with inner product + + - +.
struct Vec4 {
  double x = 0.0, y = 0.0, z = 0.0, t = 0.0;
};
double inner(const Vec4& a, const Vec4& b) {
  return a.x * b.x + a.y * b.y - a.z * b.z + a.t * b.t;
}
Vec4 embed(PlanePoint plane, double x3, double t) { return {plane.x, plane.y, x3, t}; }

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("a circle is measurably not a soliton for any pitch") {
    const CurveSample circle = unit_circle_sample();
    const PhasePoint p{circle.tau, circle.mu};
    for (const double pitch : {0.5, 1.0, 2.0, 5.0}) {
      const SolitonParams params{pitch};
      const SolitonResiduals res = soliton_residual_at(p, circle.k, params);

      // Both residuals stay pinned at 1/sqrt(2), independent of pitch.
      CHECK(std::abs(res.rotator) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
      CHECK(std::abs(res.translator) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
      CHECK(std::abs(res.rotator) > 0.1);

      // The two mean-curvature paths agree even off the soliton locus.
      const FundamentalForms ff = fundamental_forms(circle, params);
      CHECK(mean_curvature_from_forms(ff) ==
            doctest::Approx(closed_form_H(p, params, circle.k)).epsilon(1e-13));
    }
  }

  TEST_CASE("fundamental forms equal ambient inner products at any sweep angle") {
    const GeneratingCurve curve = soliton_curve(1.5, 6.0);
    const SolitonParams params{1.5};
    const double h = params.pitch;

    double worst = 0.0;
    for (std::size_t i = 0; i < curve.samples().size(); i += 7) {
      const CurveSample& cs = curve.samples()[i];
      const FundamentalForms ff = fundamental_forms(cs, params);
      const double phi_prime = cs.tau / cs.phi;
      const double phi_second =
          (cs.k * cs.mu + (1.0 + cs.mu * cs.mu) / (cs.phi * cs.phi)) / cs.phi;

      for (const double v : {0.0, 0.8, -2.3}) {
        const auto rot = [v](PlanePoint q) { return apply_rotation(v, q); };
        const Vec4 Xu = embed(rot(cs.tangent), phi_prime, 0.0);
        const Vec4 Xv = embed(rot(perp(cs.alpha)), 0.0, h);
        const Vec4 Xuu = embed(rot(cs.k * cs.normal), phi_second, 0.0);
        const Vec4 Xuv = embed(rot(perp(cs.tangent)), 0.0, 0.0);
        const Vec4 Xvv = embed(rot(-1.0 * cs.alpha), 0.0, 0.0);

        const AuxQuantities aux = aux_quantities({cs.tau, cs.mu}, params);
        const Vec4 eta = embed(rot(aux.rho * (aux.a * cs.tangent + aux.b * cs.normal)),
                               aux.rho * cs.mu, aux.rho * aux.c);

        worst = std::max({worst,
                          std::abs(inner(Xu, Xu) - ff.E), std::abs(inner(Xu, Xv) - ff.F),
                          std::abs(inner(Xv, Xv) - ff.G), std::abs(inner(Xuu, eta) - ff.e),
                          std::abs(inner(Xuv, eta) - ff.f), std::abs(inner(Xvv, eta) - ff.g),
                          std::abs(inner(eta, eta) - 1.0), std::abs(inner(eta, Xu)),
                          std::abs(inner(eta, Xv))});
      }
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("numeric and closed-form mean curvature agree at second order") {
    const GeneratingCurve curve = soliton_curve(1.0, 10.0);
    const SolitonParams params{1.0};
    const auto& samples = curve.samples();

    const auto worst_error = [&](double du) {
      const std::vector<double> numeric = numeric_mean_curvature(curve, params, du);
      double err = 0.0;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const PhasePoint p{samples[i].tau, samples[i].mu};
        err = std::max(err, std::abs(numeric[i] - closed_form_H(p, params, samples[i].k)));
      }
      return err;
    };

    const double coarse = worst_error(1e-2);
    const double fine = worst_error(5e-3);
    const double ratio = coarse / fine;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);

    SUBCASE("the numeric evaluator vanishes where the closed form does") {
      const std::vector<double> numeric = numeric_mean_curvature(curve, params, 5e-3);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (std::abs(samples[i].s - curve.tau_zero()) <= 1e-12)
          CHECK(std::abs(numeric[i]) <= 1e-4);
        if (std::abs(samples[i].tau) > 0.01)
          CHECK(std::signbit(numeric[i]) == std::signbit(samples[i].tau));
      }
    }
  }

  TEST_CASE("too few profile samples cannot support the finite-difference stencil") {
    IntegratorOptions opts;
    opts.fixed_step = 5e-4;
    const GeneratingCurve tiny = build_generating_curve(integrate_trajectory(
        {0.0, 0.0, 0.0}, SolitonParams{1.0}, rotator(), {-5e-4, 5e-4}, opts));
    CHECK_THROWS_AS(numeric_mean_curvature(tiny, SolitonParams{1.0}, 1e-3), GridTooCoarse);
  }

  TEST_CASE("mesh export lays out rings with the requested channels") {
    const GeneratingCurve curve = soliton_curve(2.0, 3.0);
    const SolitonParams params{2.0};
    const int nv = 5;
    const double v1 = std::numbers::pi;
    MeshChannels channels;
    channels.mean_curvature = true;
    channels.rotator_residual = true;
    const Mesh mesh = export_mesh(curve, params, 0.0, v1, nv, channels);

    const std::size_t ns = curve.samples().size();
    CHECK(mesh.vertices.size() == ns * static_cast<std::size_t>(nv));
    CHECK(mesh.mean_curvature.size() == mesh.vertices.size());
    CHECK(mesh.rotator_residual.size() == mesh.vertices.size());
    CHECK(mesh.quads.size() <= (ns - 1) * static_cast<std::size_t>(nv - 1));
    CHECK(mesh.quads.size() > 0);

    for (const auto& quad : mesh.quads)
      for (const auto idx : quad) CHECK(idx < mesh.vertices.size());

    for (const auto& vertex : mesh.vertices) {
      CHECK(std::hypot(vertex.x, vertex.y) < 1.0);  // Poincare disk
      CHECK(vertex.z >= -1e-12);
      CHECK(vertex.z <= params.pitch * v1 + 1e-12);
    }

    // This surface is an exact soliton, so the residual channel is noise.
    double worst = 0.0;
    for (const double r : mesh.rotator_residual) worst = std::max(worst, std::abs(r));
    CHECK(worst <= 1e-10);

    SUBCASE("the OBJ serialization is line-per-element") {
      std::ostringstream os;
      write_obj(mesh, os);
      const std::string text = os.str();
      std::size_t v_lines = 0, f_lines = 0;
      std::istringstream in(text);
      std::string line;
      while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v_lines;
        if (line.rfind("f ", 0) == 0) ++f_lines;
      }
      CHECK(v_lines == mesh.vertices.size());
      CHECK(f_lines == mesh.quads.size());
    }
  }
}
