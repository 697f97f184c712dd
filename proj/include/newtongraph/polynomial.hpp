#pragma once

#include <span>
#include <vector>

#include "newtongraph/sphere.hpp"

namespace newtongraph {

/// Dense univariate polynomial with complex coefficients, lowest degree first.
/// The leading coefficient is nonzero except for the zero polynomial, which
/// is stored as a single 0 coefficient.
class Polynomial {
public:
  Polynomial() : coeffs_{Complex{}} {}
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial monomial(int degree, Complex c = 1.0);
  /// Monic polynomial with the given zeros.
  static Polynomial from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](int i) const { return i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : Complex{}; }
  Complex leading() const { return coeffs_.back(); }

  Complex operator()(Complex z) const;
  /// Value and first derivative in one Horner pass.
  void eval_with_derivative(Complex z, Complex& value, Complex& deriv) const;

  Polynomial derivative() const;
  /// Coefficients of q(h) = p(c + h).
  Polynomial shifted(Complex c) const;
  /// Coefficients reversed: z^deg p(1/z).
  Polynomial reversed() const;

  /// Largest coefficient modulus; the natural scale for residual tests.
  double coefficient_scale() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
  void trim();
  std::vector<Complex> coeffs_;
};

struct RootWithMultiplicity {
  SpherePoint point;
  int multiplicity = 1;
};

/// All complex zeros of q with multiplicities (summing to degree(q)).
/// Simultaneous Aberth-Ehrlich iteration, followed by clustering of nearly
/// coincident approximations and refinement of each cluster center on the
/// appropriate derivative. Throws NoConvergence if residuals stay large.
std::vector<RootWithMultiplicity> roots_of(const Polynomial& q, double tol = 1e-8);

/// Raw simultaneous iteration: degree(q) approximations, no clustering.
/// `warm` seeds the iteration when it has the right size.
std::vector<Complex> aberth_roots(const Polynomial& q, std::span<const Complex> warm = {});

/// Newton polish of a simple root; returns the refined point.
Complex polish_root(const Polynomial& q, Complex z, int max_iter = 50);

}  // namespace newtongraph
