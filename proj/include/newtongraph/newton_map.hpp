#pragma once

#include <string>
#include <vector>

#include "newtongraph/polynomial.hpp"

namespace newtongraph {

/// Numerical tolerances shared by the whole pipeline.
struct Tolerances {
  double root_tol = 1e-8;        ///< minimum root separation, relative to coefficient scale
  double match_tol = 1e-6;       ///< chordal vertex identification
  double escape_radius = 1e6;    ///< rays are cut here and joined to infinity
  double pole_tol = 1e-9;        ///< orbit points this close to a pole are sent to infinity
};

/// f = numerator / denominator.
struct RationalMap {
  Polynomial numerator;
  Polynomial denominator;

  int degree() const { return std::max(numerator.degree(), denominator.degree()); }
  SpherePoint operator()(const SpherePoint& z) const;
  Complex derivative(Complex z) const;
};

struct NewtonMap {
  Polynomial p;
  RationalMap f;  ///< numerator z p' - p, denominator p'
  int d = 0;
  std::vector<SpherePoint> roots;
  std::vector<RootWithMultiplicity> poles;
  std::vector<RootWithMultiplicity> critical_points;
  Tolerances tol;

  const Polynomial& numerator() const { return f.numerator; }
  const Polynomial& denominator() const { return f.denominator; }
  /// Length scale of the configuration (largest root modulus, at least 1).
  double scale() const;
};

NewtonMap make_newton_map(const Polynomial& p, const Tolerances& tol = {});

/// f(z) on the sphere. Poles map exactly to infinity; large |z| uses the
/// reciprocal chart.
SpherePoint evaluate(const NewtonMap& f, const SpherePoint& z);

/// f'(z) = p p'' / p'^2 for finite z.
Complex newton_derivative(const NewtonMap& f, Complex z);

int local_degree(const NewtonMap& f, const SpherePoint& z);

/// Index of the root within match_tol of z, or -1.
int root_index(const NewtonMap& f, const SpherePoint& z);
/// Index of the pole within `tol` (absolute, scaled) of z, or -1.
int pole_index(const NewtonMap& f, Complex z, double tol);

struct ConditionCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

struct NewtonConditionReport {
  std::vector<ConditionCheck> checks;
  double multiplier_at_infinity = 0.0;
  bool all_pass() const;
};

/// Checks that every finite fixed point is superattracting and that
/// infinity is a repelling fixed point.
NewtonConditionReport verify_newton_conditions(const RationalMap& f, double tol = 1e-8);
inline NewtonConditionReport verify_newton_conditions(const NewtonMap& f, double tol = 1e-8) {
  return verify_newton_conditions(f.f, tol);
}

}  // namespace newtongraph
