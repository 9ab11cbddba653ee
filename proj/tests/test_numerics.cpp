#include <cmath>
#include <vector>

#include "doctest.h"
#include "tempered/numerics.hpp"

using namespace tempered;

TEST_CASE("compensated sum recovers cancelled low-order terms") {
  CompensatedSum<double> s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);

  // 0.1 added ten million times; naive summation drifts by ~1e-4.
  CompensatedSum<double> t;
  for (int i = 0; i < 10'000'000; ++i) t.add(0.1);
  CHECK(std::abs(t.value() - 1e6) < 1e-8);
}

TEST_CASE("complex compensated sum") {
  CompensatedSum<std::complex<double>> s;
  s.add({1e16, -1e16});
  s.add({1.0, 2.0});
  s.add({-1e16, 1e16});
  CHECK(s.value() == std::complex<double>(1.0, 2.0));
}

TEST_CASE("sinc is continuous across the series switch") {
  CHECK(sinc(0.0) == 1.0);
  const double z = 1e-4;
  CHECK(std::abs(sinc(z * (1 - 1e-12)) - std::sin(z) / z) < 1e-15);
  CHECK(std::abs(sinc(-z * 0.5) - std::sin(z * 0.5) / (z * 0.5)) < 1e-15);
  CHECK(std::abs(sinc(3.0) - std::sin(3.0) / 3.0) < 1e-16);
}

TEST_CASE("smooth step: flat ends, symmetry, monotone") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK(std::abs(smooth_step(0.5) - 0.5) < 1e-15);
  double prev = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double t = i / 1000.0;
    const double v = smooth_step(t);
    CHECK(v >= prev);
    CHECK(std::abs(v + smooth_step(1.0 - t) - 1.0) < 1e-14);
    prev = v;
  }
}

TEST_CASE("smooth step derivatives match central differences") {
  const double h = 1e-5;
  for (double t : {0.1, 0.25, 0.4, 0.5, 0.7, 0.93}) {
    const auto d = smooth_step_derivatives(t);
    CHECK(d[0] == doctest::Approx(smooth_step(t)).epsilon(1e-14));
    const auto f = [](double x) { return smooth_step(x); };
    const double d1 = (f(t + h) - f(t - h)) / (2 * h);
    const double d2 = (f(t + h) - 2 * f(t) + f(t - h)) / (h * h);
    const double d3 = (smooth_step_derivatives(t + h)[2] - smooth_step_derivatives(t - h)[2]) / (2 * h);
    CHECK(d[1] == doctest::Approx(d1).epsilon(1e-7));
    CHECK(d[2] == doctest::Approx(d2).epsilon(1e-3));
    CHECK(d[3] == doctest::Approx(d3).epsilon(1e-6));
  }
}

TEST_CASE("simpson is exact on cubics") {
  const auto r = simpson([](double x) { return 2 * x * x * x - x + 3; }, -1.0, 2.0, 4);
  // antiderivative x^4/2 - x^2/2 + 3x
  const auto F = [](double x) { return x * x * x * x / 2 - x * x / 2 + 3 * x; };
  CHECK(r.value == doctest::Approx(F(2.0) - F(-1.0)).epsilon(1e-14));
}

TEST_CASE("adaptive simpson") {
  const auto r = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12, 4, 1'000'000);
  CHECK(std::abs(r.value - 2.0) < 1e-11);
  const auto g = adaptive_simpson([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12, 16, 1'000'000);
  CHECK(std::abs(g.value - std::sqrt(kPi)) < 1e-11);
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return std::sin(1e6 * x * x); }, 0.0, 10.0, 1e-14, 1, 1000),
                  BudgetExceeded);
}

TEST_CASE("harmonic numbers") {
  double h = 0.0;
  for (int k = 1; k <= 1000; ++k) h += 1.0 / k;
  CHECK(harmonic_number(1000) == doctest::Approx(h).epsilon(1e-14));
  CHECK(harmonic_number(1) == 1.0);
  CHECK(harmonic_number(0) == 0.0);
}
