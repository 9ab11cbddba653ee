#include "tempered/numerics.hpp"

#include <algorithm>
#include <limits>

namespace tempered {

Window::Window(Vec lower, Vec upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_dimension(lower_.size(), upper_.size(), "Window bounds");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] <= upper_[i])) {
      throw std::invalid_argument("Window: lower bound exceeds upper bound");
    }
  }
}

Window Window::cube(std::size_t dim, double lo, double hi) {
  return Window(Vec(dim, lo), Vec(dim, hi));
}

Window Window::everything(std::size_t dim) {
  const double inf = std::numeric_limits<double>::infinity();
  return Window(Vec(dim, -inf), Vec(dim, inf));
}

bool Window::contains(const Vec& x) const {
  require_same_dimension(x.size(), dimension(), "Window::contains");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

bool Window::intersects(const Window& other) const {
  require_same_dimension(other.dimension(), dimension(), "Window::intersects");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (other.upper_[i] < lower_[i] || other.lower_[i] > upper_[i]) return false;
  }
  return true;
}

Window Window::shifted(const Vec& v) const { return Window(add(lower_, v), add(upper_, v)); }

bool Window::empty_interior() const {
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) return true;
  }
  return false;
}

double norm2(const Vec& x) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += (v / scale) * (v / scale);
  return scale * std::sqrt(s);
}

double dot(const Vec& a, const Vec& b) {
  require_same_dimension(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  require_same_dimension(a.size(), b.size(), "add");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  require_same_dimension(a.size(), b.size(), "sub");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scaled(const Vec& a, double s) {
  Vec out(a);
  for (double& v : out) v *= s;
  return out;
}

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

double bump_rho(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // Logistic form of rho(t)/(rho(t)+rho(1-t)); keeps S(t) + S(1-t) = 1 to rounding.
  const double u = 1.0 / t - 1.0 / (1.0 - t);
  if (u > 700.0) return 0.0;
  if (u < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(u));
}

std::array<double, 4> smooth_step_derivatives(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0, 0.0};
  const double u = 1.0 / t - 1.0 / (1.0 - t);
  if (u > 700.0) return {0.0, 0.0, 0.0, 0.0};
  if (u < -700.0) return {1.0, 0.0, 0.0, 0.0};
  // u(t) and derivatives.
  const double s = 1.0 - t;
  const double u1 = -1.0 / (t * t) - 1.0 / (s * s);
  const double u2 = 2.0 / (t * t * t) - 2.0 / (s * s * s);
  const double u3 = -6.0 / (t * t * t * t) - 6.0 / (s * s * s * s);
  // L(u) = 1/(1+e^u): L' = -L(1-L), L'' = L(1-L)(1-2L), L''' = -L(1-L)(1-6L+6L^2).
  const double L = 1.0 / (1.0 + std::exp(u));
  const double q = L * (1.0 - L);
  const double L1 = -q;
  const double L2 = q * (1.0 - 2.0 * L);
  const double L3 = -q * (1.0 - 6.0 * L + 6.0 * L * L);
  // Faa di Bruno up to third order.
  const double d1 = L1 * u1;
  const double d2 = L2 * u1 * u1 + L1 * u2;
  const double d3 = L3 * u1 * u1 * u1 + 3.0 * L2 * u1 * u2 + L1 * u3;
  return {L, d1, d2, d3};
}

double harmonic_number(std::size_t n) {
  CompensatedSum<double> s;
  for (std::size_t k = n; k >= 1; --k) s.add(1.0 / static_cast<double>(k));
  return s.value();
}

}  // namespace tempered
