#pragma once

// The helicoidal surface swept from a generating curve:
//
//   X(u, v) = (e^{vJ} alpha(u), phi(u), h v)
//
// with its fundamental forms, unit normal, mean curvature (closed form and
// an independent finite-difference evaluation), soliton residuals, and a
// quad-mesh export in Poincare-disk coordinates.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "helisol/curve.hpp"

namespace helisol {

struct GridTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfacePoint {
  LorentzVec spatial;  // point of H^2 in the hyperboloid model
  double t = 0.0;      // height in the R factor
};

SurfacePoint surface_point(const CurveSample& sample, double v, const SolitonParams& params);

struct FundamentalForms {
  double E, F, G;  // first fundamental form in (u, v)
  double e, f, g;  // second fundamental form against the unit normal
  // Unit normal at v = 0: eta = rho (a T + b N, mu, c); the rotated copies
  // at other v differ only by e^{vJ} on the plane part.
  PlanePoint eta_plane;
  double eta_e3;
  double eta_t;
};

FundamentalForms fundamental_forms(const CurveSample& sample, const SolitonParams& params);

// H = (E g - 2 f F + G e) / (2 (E G - F^2)).
double mean_curvature_from_forms(const FundamentalForms& ff);

// Mean curvature per sample recomputed from centered finite differences of
// the full embedding projected on the analytic unit normal; neighbor states
// along u come from single uncontrolled RK steps so the only error left is
// the O(du^2) truncation being measured.
std::vector<double> numeric_mean_curvature(const GeneratingCurve& curve,
                                           const SolitonParams& params, double du);

struct SolitonResiduals {
  double rotator;     // H - rho (b tau - a mu)
  double translator;  // H - (-h rho c)
};

SolitonResiduals soliton_residual_at(const PhasePoint& p, double k, const SolitonParams& params);
std::vector<SolitonResiduals> soliton_residuals(const GeneratingCurve& curve,
                                                const SolitonParams& params);

struct Mesh {
  struct Vertex {
    double x, y, z;  // Poincare disk coordinates + height
  };
  std::vector<Vertex> vertices;
  std::vector<std::array<std::uint32_t, 4>> quads;  // 0-based corners
  std::vector<double> mean_curvature;               // per vertex when requested
  std::vector<double> rotator_residual;             // per vertex when requested
};

struct MeshChannels {
  bool mean_curvature = false;
  bool rotator_residual = false;
};

// Vertices are laid out sample-major ((n_samples x nv) rows of constant u);
// quads with render-space area below 1e-14 are dropped.
Mesh export_mesh(const GeneratingCurve& curve, const SolitonParams& params, double v0, double v1,
                 int nv, MeshChannels channels = {});

// ASCII OBJ: "v x y z" lines followed by 1-based quad faces "f i j k l".
void write_obj(const Mesh& mesh, std::ostream& os);

}  // namespace helisol
