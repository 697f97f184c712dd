#pragma once

#include <cmath>
#include <complex>

namespace newtongraph {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
public:
  SpherePoint() = default;
  SpherePoint(Complex z) : z_(z) {}  // NOLINT: implicit on purpose
  SpherePoint(double re, double im) : z_(re, im) {}

  static SpherePoint infinity() {
    SpherePoint p;
    p.inf_ = true;
    return p;
  }

  bool is_infinity() const { return inf_; }
  bool is_finite() const { return !inf_; }

  /// Coordinate of a finite point. Undefined for infinity (returns 0).
  Complex value() const { return inf_ ? Complex{} : z_; }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.z_ == b.z_;
  }

private:
  Complex z_{};
  bool inf_ = false;
};

/// Chordal distance on the unit-diameter sphere, in [0, 1].
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinity()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
  const Complex za = a.value(), zb = b.value();
  return std::abs(za - zb) / (std::sqrt(1.0 + std::norm(za)) * std::sqrt(1.0 + std::norm(zb)));
}

inline bool near(const SpherePoint& a, const SpherePoint& b, double tol) {
  return chordal_distance(a, b) < tol;
}

}  // namespace newtongraph
