#include "newtongraph/newton_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "newtongraph/error.hpp"

namespace newtongraph {

namespace {

constexpr double kReciprocalChartRadius = 1e3;

bool is_huge(Complex w) {
  return !std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > 1e300;
}

double angle_key(Complex z) {
  double a = std::atan2(z.imag(), z.real());
  if (a < -1e-12) a += 2.0 * std::numbers::pi;
  if (a < 0.0) a = 0.0;
  return std::round(a * 1e9);
}

}  // namespace

SpherePoint RationalMap::operator()(const SpherePoint& z) const {
  const int n = numerator.degree(), m = denominator.degree();
  if (z.is_infinity()) {
    if (n > m) return SpherePoint::infinity();
    if (n == m) return SpherePoint(numerator.leading() / denominator.leading());
    return SpherePoint(Complex{});
  }
  const Complex x = z.value();
  Complex w;
  if (std::abs(x) > kReciprocalChartRadius) {
    // num(x) = x^n numrev(1/x), den(x) = x^m denrev(1/x)
    const Complex r = 1.0 / x;
    const Complex nr = numerator.reversed()(r), dr = denominator.reversed()(r);
    if (dr == Complex{}) return SpherePoint::infinity();
    w = nr / dr * std::pow(x, n - m);
  } else {
    const Complex den = denominator(x);
    if (den == Complex{}) return SpherePoint::infinity();
    w = numerator(x) / den;
  }
  if (is_huge(w)) return SpherePoint::infinity();
  return SpherePoint(w);
}

Complex RationalMap::derivative(Complex z) const {
  Complex n, dn, m, dm;
  numerator.eval_with_derivative(z, n, dn);
  denominator.eval_with_derivative(z, m, dm);
  return (dn * m - n * dm) / (m * m);
}

double NewtonMap::scale() const {
  double s = 1.0;
  for (const auto& r : roots) s = std::max(s, std::abs(r.value()));
  return s;
}

NewtonMap make_newton_map(const Polynomial& p, const Tolerances& tol) {
  if (p.degree() < 3)
    throw Error(ErrorCode::DegreeTooLow, "Newton maps need degree >= 3, got " + std::to_string(p.degree()));

  NewtonMap f;
  f.p = p;
  f.d = p.degree();
  f.tol = tol;
  const Polynomial dp = p.derivative();
  const Polynomial z = Polynomial::monomial(1);
  f.f = RationalMap{z * dp - p, dp};

  auto roots = roots_of(p, tol.root_tol);
  for (const auto& r : roots)
    if (r.multiplicity > 1) throw Error(ErrorCode::MultipleRoot, "polynomial has a repeated root");
  double scale = 1.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r.point.value()));
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i].point.value() - roots[j].point.value()) < tol.root_tol * scale)
        throw Error(ErrorCode::MultipleRoot, "two roots closer than root_tol");

  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    const Complex x = a.point.value(), y = b.point.value();
    const double ka = angle_key(x), kb = angle_key(y);
    if (ka != kb) return ka < kb;
    return std::abs(x) < std::abs(y);
  });
  for (const auto& r : roots) f.roots.push_back(r.point);

  f.poles = roots_of(dp, tol.root_tol);

  // Critical points of f are the zeros of p p'' (poles of order m carry m-1).
  auto crit = roots_of(p * dp.derivative(), tol.root_tol);
  for (auto& c : crit) {
    const int ri = root_index(f, c.point);
    if (ri >= 0) c.point = f.roots[ri];
    for (const auto& pole : f.poles)
      if (near(c.point, pole.point, tol.match_tol)) c.point = pole.point;
  }
  f.critical_points = std::move(crit);
  return f;
}

int root_index(const NewtonMap& f, const SpherePoint& z) {
  int best = -1;
  double best_d = f.tol.match_tol;
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    const double d = chordal_distance(f.roots[i], z);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

int pole_index(const NewtonMap& f, Complex z, double tol) {
  for (std::size_t i = 0; i < f.poles.size(); ++i)
    if (std::abs(f.poles[i].point.value() - z) < tol) return static_cast<int>(i);
  return -1;
}

SpherePoint evaluate(const NewtonMap& f, const SpherePoint& z) {
  if (z.is_infinity()) return z;
  if (pole_index(f, z.value(), f.tol.pole_tol * f.scale()) >= 0) return SpherePoint::infinity();
  return f.f(z);
}

Complex newton_derivative(const NewtonMap& f, Complex z) {
  const Complex dp = f.f.denominator(z);
  return f.p(z) * f.f.denominator.derivative()(z) / (dp * dp);
}

int local_degree(const NewtonMap& f, const SpherePoint& z) {
  if (z.is_infinity()) return 1;
  for (const auto& pole : f.poles)
    if (near(pole.point, z, f.tol.match_tol)) return pole.multiplicity;
  for (const auto& c : f.critical_points)
    if (near(c.point, z, f.tol.match_tol)) return 1 + c.multiplicity;
  return 1;
}

bool NewtonConditionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

NewtonConditionReport verify_newton_conditions(const RationalMap& f, double tol) {
  NewtonConditionReport report;
  const int d = f.degree();
  report.checks.push_back({"degree>=3", d >= 3, static_cast<double>(d), "degree " + std::to_string(d)});

  const int n = f.numerator.degree(), m = f.denominator.degree();
  const bool inf_fixed = n > m;
  double multiplier = 0.0;
  if (n == m + 1) multiplier = std::abs(f.denominator.leading() / f.numerator.leading());
  report.multiplier_at_infinity = multiplier;
  report.checks.push_back({"infinity-repelling", inf_fixed && multiplier > 1.0, multiplier,
                           inf_fixed ? "multiplier at infinity in the 1/z chart" : "infinity is not fixed"});

  const Polynomial fixed = f.numerator - Polynomial::monomial(1) * f.denominator;
  bool all_super = true;
  double worst = 0.0;
  std::string detail;
  if (fixed.degree() >= 1) {
    for (const auto& r : roots_of(fixed, tol)) {
      const Complex z = r.point.value();
      const double mult = std::abs(f.derivative(z));
      worst = std::max(worst, mult);
      if (r.multiplicity > 1 || mult >= tol) {
        all_super = false;
        detail = "fixed point (" + std::to_string(z.real()) + "," + std::to_string(z.imag()) +
                 ") has |f'| = " + std::to_string(mult);
      }
    }
  }
  report.checks.push_back({"finite-fixed-points-superattracting", all_super, worst, detail});
  return report;
}

}  // namespace newtongraph
