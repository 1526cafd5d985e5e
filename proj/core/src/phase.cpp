#include "helisol/phase.hpp"

#include <cmath>

namespace helisol {

AuxQuantities aux_quantities(const PhasePoint& p, const SolitonParams& params) {
  const double h = params.pitch;
  if (!(h > 0.0)) throw std::invalid_argument("aux_quantities: pitch must be > 0");

  const double mu2 = p.mu * p.mu;
  const double phi = std::sqrt(1.0 + p.r_squared());
  const double phi_prime = p.tau / phi;

  const double a = p.mu * phi_prime;
  const double b = (1.0 + mu2) / phi;
  const double c = -phi_prime / h;

  // Equals (tau^2 + h^2 (1 + mu^2)) / (h^2 phi^2), hence strictly positive;
  // the guard catches a singular prescribed profile sneaking in non-finite data.
  const double radicand = a * a + b * b - mu2 + c * c;
  if (!(radicand > 0.0)) throw std::domain_error("aux_quantities: normal radicand not positive");

  return {phi, phi_prime, a, b, c, 1.0 / std::sqrt(radicand)};
}

double rotator_curvature(const PhasePoint& p, const SolitonParams& params) {
  const double h = params.pitch;
  if (!(h > 0.0)) throw std::invalid_argument("rotator_curvature: pitch must be > 0");
  const double h2 = h * h;
  const double r2 = p.r_squared();
  const double one_mu2 = 1.0 + p.mu * p.mu;
  const double num = 2.0 * (p.tau * p.tau + h2 * one_mu2) * p.tau + (h2 - 1.0) * one_mu2 * p.mu;
  return num / ((1.0 + r2) * (h2 + r2));
}

double closed_form_H(const PhasePoint& p, const SolitonParams& params, double k) {
  const AuxQuantities q = aux_quantities(p, params);
  const double h2 = params.pitch * params.pitch;
  const double r2 = p.r_squared();
  const double one_mu2 = 1.0 + p.mu * p.mu;
  const double phi2 = q.phi * q.phi;
  const double bracket =
      (phi2 * k - p.mu * one_mu2) * (h2 + r2) + p.mu * one_mu2 * phi2;
  return (q.rho / q.phi) * bracket / (2.0 * (p.tau * p.tau + h2 * one_mu2));
}

double rotator_target_H(const PhasePoint& p, const SolitonParams& params) {
  const AuxQuantities q = aux_quantities(p, params);
  return q.rho * (q.b * p.tau - q.a * p.mu);
}

double prescribed_curvature(const PsiFn& psi, const PhasePoint& p, const SolitonParams& params) {
  const AuxQuantities q = aux_quantities(p, params);
  const double h2 = params.pitch * params.pitch;
  const double r2 = p.r_squared();
  const double one_mu2 = 1.0 + p.mu * p.mu;
  const double phi2 = q.phi * q.phi;
  const double num = 2.0 * (p.tau * p.tau + h2 * one_mu2) * psi(p.tau, p.mu) * q.phi / q.rho -
                     p.mu * one_mu2 * (phi2 - (h2 + r2));
  return num / (phi2 * (h2 + r2));
}

PhaseDerivatives phase_rhs(const PhasePoint& p, const SolitonParams& params,
                           const CurvatureLaw& law) {
  const double k = law.curvature(p, params);
  return {1.0 + k * p.mu, -k * p.tau, k};
}

}  // namespace helisol
