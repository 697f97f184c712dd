#include "newtongraph/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "newtongraph/error.hpp"

namespace newtongraph {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
  trim();
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int degree, Complex c) {
  std::vector<Complex> v(degree + 1, Complex{});
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots) {
  Polynomial p({Complex{1.0}});
  for (Complex r : roots) p = p * Polynomial({-r, Complex{1.0}});
  return p;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void Polynomial::eval_with_derivative(Complex z, Complex& value, Complex& deriv) const {
  value = Complex{};
  deriv = Complex{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(Complex c) const {
  // Repeated synthetic division (Taylor shift).
  std::vector<Complex> a = coeffs_;
  const int n = degree();
  for (int k = 0; k < n; ++k)
    for (int i = n - 1; i >= k; --i) a[i] += c * a[i + 1];
  return Polynomial(std::move(a));
}

Polynomial Polynomial::reversed() const {
  std::vector<Complex> r(coeffs_.rbegin(), coeffs_.rend());
  return Polynomial(std::move(r));
}

double Polynomial::coefficient_scale() const {
  double s = 0.0;
  for (Complex c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0 * b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> r(a.coeffs_.size() + b.coeffs_.size() - 1, Complex{});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(r));
}

Polynomial operator*(Complex s, const Polynomial& a) {
  std::vector<Complex> r = a.coeffs_;
  for (Complex& c : r) c *= s;
  return Polynomial(std::move(r));
}

namespace {

// Sum of |a_i| |z|^i: the roundoff scale of evaluating q at z.
double eval_scale(const Polynomial& q, Complex z) {
  const double r = std::abs(z);
  double acc = 0.0;
  const auto& c = q.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

std::vector<Complex> initial_guesses(const Polynomial& q) {
  const int n = q.degree();
  const Complex center = -q[n - 1] / (static_cast<double>(n) * q[n]);
  const Polynomial s = q.shifted(center);
  double radius = 0.0;
  for (int i = 1; i <= n; ++i)
    radius = std::max(radius, std::pow(std::abs(s[n - i] / s[n]), 1.0 / i));
  if (radius == 0.0) radius = 1.0;
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = center + 0.5 * radius * Complex(std::cos(theta), std::sin(theta));
  }
  return z;
}

}  // namespace

std::vector<Complex> aberth_roots(const Polynomial& q, std::span<const Complex> warm) {
  const int n = q.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "aberth_roots needs degree >= 1");
  if (n == 1) return {-q[0] / q[1]};
  std::vector<Complex> z = (static_cast<int>(warm.size()) == n) ? std::vector<Complex>(warm.begin(), warm.end())
                                                               : initial_guesses(q);
  constexpr int kMaxIter = 2000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex v, d;
      q.eval_with_derivative(z[i], v, d);
      if (v == Complex{}) continue;
      if (d == Complex{}) d = Complex(1e-300, 0.0);
      const Complex ratio = v / d;
      Complex sum{};
      for (int j = 0; j < n; ++j)
        if (j != i) {
          Complex diff = z[i] - z[j];
          if (diff == Complex{}) diff = Complex(1e-300, 0.0);
          sum += 1.0 / diff;
        }
      const Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (max_step < 1e-16) break;
  }
  return z;
}

Complex polish_root(const Polynomial& q, Complex z, int max_iter) {
  for (int i = 0; i < max_iter; ++i) {
    Complex v, d;
    q.eval_with_derivative(z, v, d);
    if (v == Complex{} || d == Complex{}) break;
    const Complex step = v / d;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

std::vector<RootWithMultiplicity> roots_of(const Polynomial& q, double tol) {
  if (q.degree() < 1) throw Error(ErrorCode::InvalidArgument, "roots_of needs degree >= 1");

  std::vector<RootWithMultiplicity> out;
  // Exact zeros at the origin.
  int zero_mult = 0;
  while (zero_mult < q.degree() && q[zero_mult] == Complex{}) ++zero_mult;
  if (zero_mult > 0) out.push_back({SpherePoint(Complex{}), zero_mult});
  if (zero_mult == q.degree()) return out;

  const Polynomial rest(std::vector<Complex>(q.coeffs().begin() + zero_mult, q.coeffs().end()));
  std::vector<Complex> z = aberth_roots(rest);
  const int n = static_cast<int>(z.size());

  // Union-find on approximations that are suspiciously close.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
      if (std::abs(z[i] - z[j]) < 1e-3 * scale) parent[find(i)] = find(j);
    }

  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

  for (const auto& g : groups) {
    if (g.empty()) continue;
    const int m = static_cast<int>(g.size());
    bool accepted = false;
    if (m > 1) {
      Complex c{};
      for (int i : g) c += z[i];
      c /= static_cast<double>(m);
      Polynomial dq = rest;
      for (int k = 1; k < m; ++k) dq = dq.derivative();
      c = polish_root(dq, c);
      if (std::abs(rest(c)) <= 1e-11 * eval_scale(rest, c)) {
        out.push_back({SpherePoint(c), m});
        accepted = true;
      }
    }
    if (!accepted)
      for (int i : g) out.push_back({SpherePoint(polish_root(rest, z[i])), 1});
  }

  for (const auto& r : out) {
    const Complex c = r.point.value();
    if (r.multiplicity == 1 && std::abs(rest(c)) > std::max(tol, 1e-8) * eval_scale(rest, c) &&
        !(c == Complex{} && zero_mult > 0))
      throw Error(ErrorCode::NoConvergence, "root residual too large");
  }

  // Quantized real part keeps the order stable under roundoff.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const Complex x = a.point.value(), y = b.point.value();
    const double kx = std::round(x.real() * 1e9), ky = std::round(y.real() * 1e9);
    if (kx != ky) return kx < ky;
    return x.imag() < y.imag();
  });
  return out;
}

}  // namespace newtongraph
