#pragma once

// Hyperboloid model of the hyperbolic plane inside Minkowski 3-space
// (signature + + -), plus the planar rotation/quarter-turn helpers used
// by the generating-curve frame.

#include <cmath>

namespace helisol {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

constexpr PlanePoint operator+(PlanePoint p, PlanePoint q) { return {p.x + q.x, p.y + q.y}; }
constexpr PlanePoint operator-(PlanePoint p, PlanePoint q) { return {p.x - q.x, p.y - q.y}; }
constexpr PlanePoint operator*(double c, PlanePoint p) { return {c * p.x, c * p.y}; }

constexpr double dot(PlanePoint p, PlanePoint q) { return p.x * q.x + p.y * q.y; }
inline double norm(PlanePoint p) { return std::hypot(p.x, p.y); }

// Quarter turn J: (x, y) -> (-y, x).  The curve normal is N = J T.
constexpr PlanePoint perp(PlanePoint p) { return {-p.y, p.x}; }

// Rotation e^{vJ} acting on the plane factor.
inline PlanePoint apply_rotation(double v, PlanePoint p) {
  const double cv = std::cos(v), sv = std::sin(v);
  return {cv * p.x - sv * p.y, sv * p.x + cv * p.y};
}

struct LorentzVec {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

// Bilinear form dx1^2 + dx2^2 - dx3^2.
constexpr double minkowski_inner(const LorentzVec& p, const LorentzVec& q) {
  return p.x1 * q.x1 + p.x2 * q.x2 - p.x3 * q.x3;
}

// Point on the upper unit hyperboloid <p,p> = -1, x3 > 0.  The third
// coordinate is always recomputed from the plane part, so the defining
// constraint holds by construction instead of drifting through arithmetic.
class HyperboloidPoint {
 public:
  explicit HyperboloidPoint(PlanePoint plane)
      : p_{plane.x, plane.y, std::sqrt(1.0 + plane.x * plane.x + plane.y * plane.y)} {}

  const LorentzVec& vec() const { return p_; }
  PlanePoint plane() const { return {p_.x1, p_.x2}; }
  double height() const { return p_.x3; }

 private:
  LorentzVec p_;
};

inline HyperboloidPoint lift_to_hyperboloid(PlanePoint plane) { return HyperboloidPoint(plane); }

// Central projection onto the Poincare disk: (x1, x2) / (1 + x3).
inline PlanePoint poincare_projection(const HyperboloidPoint& p) {
  const double d = 1.0 + p.height();
  return {p.vec().x1 / d, p.vec().x2 / d};
}

}  // namespace helisol
