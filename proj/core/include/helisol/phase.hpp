#pragma once

// Phase-plane description of helicoidal mean-curvature-flow solitons in
// H^2 x R.  A generating curve is tracked through its support functions
// tau = <alpha, T> and mu = <alpha, N>; together with the tangent angle
// theta they satisfy
//
//   tau' = 1 + k mu,   mu' = -k tau,   theta' = k,
//
// where the planar curvature k is supplied by a curvature law.  The
// rotator law makes the helicoidal surface a soliton for the rotation
// field (and simultaneously for vertical translation).

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace helisol {

struct SolitonParams {
  double pitch = 1.0;  // h > 0, vertical rise per unit of helicoidal sweep
};

struct PhasePoint {
  double tau = 0.0;
  double mu = 0.0;

  double r_squared() const { return tau * tau + mu * mu; }
};

// Derived quantities of the lifted curve sigma = (alpha, phi) and of the
// helicoidal unit normal eta = rho (e^{vJ}(a T + b N), mu, c):
//   phi  = sqrt(1 + r^2),  phi' = tau / phi,
//   a = mu phi',  b = (1 + mu^2) / phi,  c = -phi' / h,
//   rho = (a^2 + b^2 - mu^2 + c^2)^{-1/2}.
// The radicand simplifies to (tau^2 + h^2 (1 + mu^2)) / (h^2 phi^2) > 0.
struct AuxQuantities {
  double phi;
  double phi_prime;
  double a;
  double b;
  double c;
  double rho;
};

AuxQuantities aux_quantities(const PhasePoint& p, const SolitonParams& params);

// Planar curvature making the helicoidal surface a rotator:
//   k = [2 (tau^2 + h^2 (1 + mu^2)) tau + (h^2 - 1)(1 + mu^2) mu]
//       / [(1 + r^2)(h^2 + r^2)].
double rotator_curvature(const PhasePoint& p, const SolitonParams& params);

// Mean curvature of the helicoidal surface through phase point p when the
// generating curve has planar curvature k there:
//   H = (rho / phi) [ (phi^2 k - mu (1 + mu^2))(h^2 + r^2)
//                     + mu (1 + mu^2) phi^2 ] / (2 (tau^2 + h^2 (1 + mu^2))).
double closed_form_H(const PhasePoint& p, const SolitonParams& params, double k);

// Normal component of the rotation field: rho (b tau - a mu) = rho tau / phi.
double rotator_target_H(const PhasePoint& p, const SolitonParams& params);

using PsiFn = std::function<double(double tau, double mu)>;

// Inverts the closed-form mean curvature for k so that H == psi(tau, mu):
//   k = [ 2 (tau^2 + h^2 (1 + mu^2)) psi phi / rho
//         - mu (1 + mu^2)(phi^2 - (h^2 + r^2)) ] / [ phi^2 (h^2 + r^2) ].
double prescribed_curvature(const PsiFn& psi, const PhasePoint& p, const SolitonParams& params);

class CurvatureLaw {
 public:
  virtual ~CurvatureLaw() = default;
  virtual double curvature(const PhasePoint& p, const SolitonParams& params) const = 0;
  virtual std::string name() const = 0;
};

class RotatorLaw final : public CurvatureLaw {
 public:
  double curvature(const PhasePoint& p, const SolitonParams& params) const override {
    return rotator_curvature(p, params);
  }
  std::string name() const override { return "rotator"; }
};

// Curvature law realizing a prescribed mean curvature profile psi(tau, mu).
class PrescribedHLaw final : public CurvatureLaw {
 public:
  explicit PrescribedHLaw(PsiFn psi, std::string label = "prescribed")
      : psi_(std::move(psi)), label_(std::move(label)) {}

  double curvature(const PhasePoint& p, const SolitonParams& params) const override {
    return prescribed_curvature(psi_, p, params);
  }
  std::string name() const override { return label_; }

 private:
  PsiFn psi_;
  std::string label_;
};

struct PhaseDerivatives {
  double dtau;
  double dmu;
  double dtheta;
};

PhaseDerivatives phase_rhs(const PhasePoint& p, const SolitonParams& params,
                           const CurvatureLaw& law);

}  // namespace helisol
