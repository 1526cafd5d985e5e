#include "helisol/surface.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace helisol {

namespace {

// Ambient coordinates (x1, x2, x3, t) with the product metric
// dx1^2 + dx2^2 - dx3^2 + dt^2.
struct Vec4 {
  double x1, x2, x3, t;
};

Vec4 operator-(const Vec4& p, const Vec4& q) {
  return {p.x1 - q.x1, p.x2 - q.x2, p.x3 - q.x3, p.t - q.t};
}
Vec4 operator+(const Vec4& p, const Vec4& q) {
  return {p.x1 + q.x1, p.x2 + q.x2, p.x3 + q.x3, p.t + q.t};
}
Vec4 operator*(double c, const Vec4& p) { return {c * p.x1, c * p.x2, c * p.x3, c * p.t}; }

double ambient_inner(const Vec4& p, const Vec4& q) {
  return p.x1 * q.x1 + p.x2 * q.x2 - p.x3 * q.x3 + p.t * q.t;
}

Vec4 embed(const AugmentedState& state, double v, double pitch) {
  const FrenetFrame frame = reconstruct_position(state);
  const PlanePoint plane = apply_rotation(v, frame.alpha);
  const double phi = std::sqrt(1.0 + state.tau * state.tau + state.mu * state.mu);
  return {plane.x, plane.y, phi, pitch * v};
}

}  // namespace

SurfacePoint surface_point(const CurveSample& sample, double v, const SolitonParams& params) {
  const HyperboloidPoint p = lift_to_hyperboloid(apply_rotation(v, sample.alpha));
  return {p.vec(), params.pitch * v};
}

FundamentalForms fundamental_forms(const CurveSample& sample, const SolitonParams& params) {
  const PhasePoint p{sample.tau, sample.mu};
  const AuxQuantities q = aux_quantities(p, params);
  const double h2 = params.pitch * params.pitch;
  const double r2 = p.r_squared();
  const double one_mu2 = 1.0 + p.mu * p.mu;
  const double phi2 = q.phi * q.phi;

  FundamentalForms ff;
  ff.E = one_mu2 / phi2;
  ff.F = -p.mu;
  ff.G = r2 + h2;

  const double phi_pp = (sample.k * p.mu + one_mu2 / phi2) / q.phi;
  ff.e = q.rho * (q.b * sample.k - phi_pp * p.mu);
  ff.f = q.rho * q.b;
  ff.g = -q.rho * (q.a * p.tau + q.b * p.mu);

  ff.eta_plane = q.rho * (q.a * sample.tangent + q.b * sample.normal);
  ff.eta_e3 = q.rho * p.mu;
  ff.eta_t = q.rho * q.c;
  return ff;
}

double mean_curvature_from_forms(const FundamentalForms& ff) {
  return (ff.E * ff.g - 2.0 * ff.f * ff.F + ff.G * ff.e) /
         (2.0 * (ff.E * ff.G - ff.F * ff.F));
}

std::vector<double> numeric_mean_curvature(const GeneratingCurve& curve,
                                           const SolitonParams& params, double du) {
  if (!(du > 0.0)) throw std::invalid_argument("numeric_mean_curvature: du must be > 0");
  const auto& samples = curve.samples();
  if (samples.size() < 5)
    throw GridTooCoarse("numeric_mean_curvature: need at least 5 samples");

  const CurvatureLaw& law = curve.trajectory().law();
  const double pitch = params.pitch;
  const double dv = 0.5 * du;  // the v-stencil is kept tighter: third
                               // v-derivatives grow like r while u-derivatives
                               // of the arclength curve stay bounded

  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const CurveSample& cs = samples[i];
    const AugmentedState y0{cs.tau, cs.mu, cs.theta};
    const AugmentedState yp = single_step(y0, du, params, law);
    const AugmentedState ym = single_step(y0, -du, params, law);

    const Vec4 Xc = embed(y0, 0.0, pitch);
    const Vec4 Xp = embed(yp, 0.0, pitch);
    const Vec4 Xm = embed(ym, 0.0, pitch);
    const Vec4 Xvp = embed(y0, dv, pitch);
    const Vec4 Xvm = embed(y0, -dv, pitch);
    const Vec4 Xpp = embed(yp, dv, pitch);
    const Vec4 Xpm = embed(yp, -dv, pitch);
    const Vec4 Xmp = embed(ym, dv, pitch);
    const Vec4 Xmm = embed(ym, -dv, pitch);

    const Vec4 Xu = (1.0 / (2.0 * du)) * (Xp - Xm);
    const Vec4 Xv = (1.0 / (2.0 * dv)) * (Xvp - Xvm);
    const Vec4 Xuu = (1.0 / (du * du)) * ((Xp - Xc) + (Xm - Xc));
    const Vec4 Xvv = (1.0 / (dv * dv)) * ((Xvp - Xc) + (Xvm - Xc));
    const Vec4 Xuv = (1.0 / (4.0 * du * dv)) * ((Xpp - Xpm) + (Xmm - Xmp));

    const FundamentalForms an = fundamental_forms(cs, params);
    const Vec4 eta{an.eta_plane.x, an.eta_plane.y, an.eta_e3, an.eta_t};

    const double E = ambient_inner(Xu, Xu);
    const double F = ambient_inner(Xu, Xv);
    const double G = ambient_inner(Xv, Xv);
    const double e = ambient_inner(Xuu, eta);
    const double f = ambient_inner(Xuv, eta);
    const double g = ambient_inner(Xvv, eta);

    out[i] = (E * g - 2.0 * f * F + G * e) / (2.0 * (E * G - F * F));
  }
  return out;
}

SolitonResiduals soliton_residual_at(const PhasePoint& p, double k, const SolitonParams& params) {
  const AuxQuantities q = aux_quantities(p, params);
  const double H = closed_form_H(p, params, k);
  const double rotator_side = q.rho * (q.b * p.tau - q.a * p.mu);
  const double translator_side = -params.pitch * q.rho * q.c;
  return {H - rotator_side, H - translator_side};
}

std::vector<SolitonResiduals> soliton_residuals(const GeneratingCurve& curve,
                                                const SolitonParams& params) {
  const auto& samples = curve.samples();
  std::vector<SolitonResiduals> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    out[i] = soliton_residual_at({samples[i].tau, samples[i].mu}, samples[i].k, params);
  return out;
}

Mesh export_mesh(const GeneratingCurve& curve, const SolitonParams& params, double v0, double v1,
                 int nv, MeshChannels channels) {
  if (nv < 2) throw std::invalid_argument("export_mesh: nv must be at least 2");
  if (!(v0 < v1)) throw std::invalid_argument("export_mesh: need v0 < v1");

  const auto& samples = curve.samples();
  const std::size_t ns = samples.size();
  Mesh mesh;
  mesh.vertices.reserve(ns * static_cast<std::size_t>(nv));
  if (channels.mean_curvature) mesh.mean_curvature.reserve(ns * nv);
  if (channels.rotator_residual) mesh.rotator_residual.reserve(ns * nv);

  for (std::size_t i = 0; i < ns; ++i) {
    const CurveSample& cs = samples[i];
    const double H =
        channels.mean_curvature ? closed_form_H({cs.tau, cs.mu}, params, cs.k) : 0.0;
    const double res = channels.rotator_residual
                           ? soliton_residual_at({cs.tau, cs.mu}, cs.k, params).rotator
                           : 0.0;
    for (int j = 0; j < nv; ++j) {
      const double v = v0 + (v1 - v0) * (static_cast<double>(j) / (nv - 1));
      const SurfacePoint sp = surface_point(cs, v, params);
      const PlanePoint disk = poincare_projection(lift_to_hyperboloid({sp.spatial.x1, sp.spatial.x2}));
      mesh.vertices.push_back({disk.x, disk.y, sp.t});
      if (channels.mean_curvature) mesh.mean_curvature.push_back(H);
      if (channels.rotator_residual) mesh.rotator_residual.push_back(res);
    }
  }

  auto area = [&](std::uint32_t i0, std::uint32_t i1, std::uint32_t i2) {
    const auto& a = mesh.vertices[i0];
    const auto& b = mesh.vertices[i1];
    const auto& c = mesh.vertices[i2];
    const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
    const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
    const double cx = uy * vz - uz * vy, cy = uz * vx - ux * vz, cz = ux * vy - uy * vx;
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
  };

  for (std::size_t i = 0; i + 1 < ns; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      const auto idx = [&](std::size_t si, int vj) {
        return static_cast<std::uint32_t>(si * nv + vj);
      };
      const std::array<std::uint32_t, 4> q{idx(i, j), idx(i + 1, j), idx(i + 1, j + 1),
                                           idx(i, j + 1)};
      if (area(q[0], q[1], q[2]) + area(q[0], q[2], q[3]) < 1e-14) continue;
      mesh.quads.push_back(q);
    }
  }
  return mesh;
}

void write_obj(const Mesh& mesh, std::ostream& os) {
  char line[160];
  for (const auto& v : mesh.vertices) {
    std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    os << line;
  }
  for (const auto& q : mesh.quads) {
    std::snprintf(line, sizeof line, "f %u %u %u %u\n", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
    os << line;
  }
}

}  // namespace helisol
