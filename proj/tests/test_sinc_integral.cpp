#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "doctest.h"
#include "tempered/sinc_integral.hpp"

using namespace tempered;
using boost::math::quadrature::gauss_kronrod;

namespace {
constexpr double kPiD = 3.141592653589793;

double sinc_pi(double x) { return x == 0.0 ? 1.0 : std::sin(kPiD * x) / (kPiD * x); }

// 2 * integral_0^alpha |2 sinc(2 pi t) sinc(2 pi t / n)| dt, Gauss-Kronrod on
// each half period (n = 0 drops the second factor).
double gk_window(double n, double alpha) {
  const auto f = [n](double t) {
    const double a = 2.0 * sinc_pi(2.0 * t);
    return std::abs(n > 0 ? a * sinc_pi(2.0 * t / n) : a);
  };
  double s = 0.0;
  for (double k = 0; k < 2 * alpha; k += 1.0) {
    s += gauss_kronrod<double, 21>::integrate(f, k / 2, std::min(alpha, (k + 1) / 2), 8, 1e-14);
  }
  return 2.0 * s;
}
}  // namespace

TEST_CASE("direct windows agree with Gauss-Kronrod") {
  for (double alpha : {0.3, 1.0, 7.5, 60.0}) {
    const SincIntegral w = f_hat_l1_window(alpha);
    CHECK(std::abs(w.value - gk_window(0, alpha)) <= w.error);
    CHECK(w.error < 2e-6);
    for (double n : {1.0, 3.0, 16.0}) {
      const SincIntegral s = sinc_l1_window(n, alpha);
      CHECK(std::abs(s.value - gk_window(n, alpha)) <= s.error);
      CHECK(s.error < 2e-6);
    }
  }
}

TEST_CASE("log phi against Gauss-Kronrod") {
  for (double z : {2.0, 50.0, 1000.0}) {
    double oracle = 0.0;
    for (double a = 1.0; a < z; a += 1.0) {
      oracle += gauss_kronrod<double, 31>::integrate(
          [](double w) { return std::abs(std::sin(w)) / (w * w); }, a, std::min(z, a + 1.0), 8, 1e-14);
    }
    const SincIntegral p = sinc_detail::log_phi(std::log(z));
    CHECK(std::abs(p.value - oracle) <= p.error + 1e-9);
  }
}

TEST_CASE("asymptotic tail continues the direct window") {
  // For large windows the f^ integral grows like (4 / pi^2) ln alpha.
  const double base = f_hat_l1_window(4096.0).value;
  for (int p : {14, 20, 40}) {
    const SincIntegral w = sinc_l1_window_dyadic(std::nullopt, p);
    CHECK(w.asymptotic);
    const double expected = base + 4.0 / (kPiD * kPiD) * std::log(std::ldexp(1.0, p) / 4096.0);
    CHECK(std::abs(w.value - expected) < 1e-4);
  }
}

TEST_CASE("dyadic and plain entry points agree") {
  for (int p : {-3, 0, 5, 10}) {
    const double alpha = std::ldexp(1.0, p);
    CHECK(sinc_l1_window_dyadic(std::nullopt, p).value == doctest::Approx(f_hat_l1_window(alpha).value).epsilon(1e-10));
    CHECK(sinc_l1_window_dyadic(2, p).value == doctest::Approx(sinc_l1_window(4.0, alpha).value).epsilon(1e-10));
  }
}

TEST_CASE("product integrals increase with n and alpha and stay below the f^ integral") {
  for (int p : {6, 16, 30}) {
    const double top = sinc_l1_window_dyadic(std::nullopt, p).upper();
    double prev = 0.0;
    for (int q = 0; q <= p + 8; q += 2) {
      const SincIntegral s = sinc_l1_window_dyadic(q, p);
      CHECK(s.value >= prev - 1e-9);
      CHECK(s.lower() <= top);
      prev = s.value;
    }
  }
  CHECK(sinc_l1_window_dyadic(3, 20).value > sinc_l1_window_dyadic(3, 12).value);
}

TEST_CASE("mass parameters are minimal") {
  for (double B : {1.0, 4.0, 10.0}) {
    const MassParameters m = find_mass_parameters(B);
    CHECK(m.window.lower() > 2.0 * B);
    CHECK(sinc_l1_window_dyadic(std::nullopt, m.log2_alpha - 1).lower() <= 2.0 * B);
    CHECK(m.product.lower() > B);
    if (m.log2_n > 0) CHECK(sinc_l1_window_dyadic(m.log2_n - 1, m.log2_alpha).lower() <= B);
    const int r = smallest_window_exponent(m.log2_n, B, -24, m.log2_alpha);
    CHECK(r <= m.log2_alpha);
    CHECK(sinc_l1_window_dyadic(m.log2_n, r).lower() > B);
  }
  CHECK_THROWS_AS(find_mass_parameters(10.0, 20), SearchCapReached);
  CHECK_THROWS_AS(find_mass_parameters(-1.0), std::invalid_argument);
}
