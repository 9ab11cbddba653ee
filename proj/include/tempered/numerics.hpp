#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "tempered/types.hpp"

namespace tempered {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Neumaier compensated summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      comp_ += std::complex<double>(correction(sum_.real(), x.real(), t.real()),
                                    correction(sum_.imag(), x.imag(), t.imag()));
    } else {
      comp_ += correction(sum_, x, t);
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double correction(double s, double x, double t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }
  T sum_{};
  T comp_{};
};

// sin(z)/z with the removable singularity filled by a 5th-order Taylor series.
inline double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// rho(t) = exp(-1/t) for t > 0, else 0.
double bump_rho(double t);

// Smooth step S(t) = rho(t) / (rho(t) + rho(1 - t)); 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

// S and its first three derivatives at t.
std::array<double, 4> smooth_step_derivatives(double t);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
};

// Composite Simpson with `intervals` (rounded up to even) subintervals, with
// a Richardson error estimate against the half-resolution rule.
template <typename F>
QuadratureResult simpson(F&& f, double a, double b, std::size_t intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 4 != 0) intervals += 4 - intervals % 4;
  const double h = (b - a) / static_cast<double>(intervals);
  CompensatedSum<double> even, odd, quarter;  // quarter: points odd at coarse level
  const double fa = f(a), fb = f(b);
  for (std::size_t i = 1; i < intervals; ++i) {
    const double v = f(a + h * static_cast<double>(i));
    if (i % 2 == 1) {
      odd.add(v);
    } else if (i % 4 == 2) {
      quarter.add(v);
    } else {
      even.add(v);
    }
  }
  const double fine = h / 3.0 * (fa + fb + 4.0 * odd.value() +
                                 2.0 * (even.value() + quarter.value()));
  const double coarse =
      2.0 * h / 3.0 * (fa + fb + 4.0 * quarter.value() + 2.0 * even.value());
  return {fine, std::abs(fine - coarse) / 15.0, intervals + 1};
}

namespace detail {
template <typename F>
double adaptive_simpson_step(F& f, double a, double b, double fa, double fm,
                             double fb, double whole, double tol, int depth,
                             std::size_t& evals, std::size_t max_evals,
                             double& err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || evals >= max_evals) {
    err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                               evals, max_evals, err) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                               evals, max_evals, err);
}
}  // namespace detail

// Adaptive Simpson on [a,b] pre-split into `cells` equal pieces. Throws
// BudgetExceeded when the evaluation count passes `max_evals`.
template <typename F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol,
                                  std::size_t cells, std::size_t max_evals) {
  if (cells == 0) cells = 1;
  if (2 * cells + 1 > max_evals) {
    throw BudgetExceeded("adaptive_simpson: initial subdivision over budget");
  }
  QuadratureResult out;
  CompensatedSum<double> total;
  const double width = (b - a) / static_cast<double>(cells);
  const double cell_tol = tol / static_cast<double>(cells);
  double x0 = a;
  double f0 = f(a);
  out.evaluations = 1;
  for (std::size_t c = 0; c < cells; ++c) {
    const double x1 = (c + 1 == cells) ? b : a + width * static_cast<double>(c + 1);
    const double xm = 0.5 * (x0 + x1);
    const double fm = f(xm), f1 = f(x1);
    out.evaluations += 2;
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total.add(detail::adaptive_simpson_step(f, x0, x1, f0, fm, f1, whole, cell_tol,
                                            40, out.evaluations, max_evals,
                                            out.error));
    if (out.evaluations >= max_evals) {
      throw BudgetExceeded("adaptive_simpson: evaluation budget exhausted");
    }
    x0 = x1;
    f0 = f1;
  }
  out.value = total.value();
  return out;
}

// Harmonic partial sum H_N = sum_{k=1}^N 1/k.
double harmonic_number(std::size_t n);

}  // namespace tempered
