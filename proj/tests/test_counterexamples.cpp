#include <cmath>

#include "doctest.h"
#include "tempered/counterexamples.hpp"
#include "tempered/numerics.hpp"

using namespace tempered;

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

// smallest n with n / 2 >= m + m log2(m^2 + 1), in long double
int minimal_n_oracle(int m) {
  const long double need = 2.0L * (m + m * std::log2(static_cast<long double>(m) * m + 1.0L));
  return static_cast<int>(std::ceil(need - 1e-12L));
}
}  // namespace

TEST_CASE("KS block atoms") {
  const AtomicMeasure k = ks_block(0.2, 0.3);
  REQUIRE(k.size() == 4);
  CHECK(k.total_mass() == Complex(2.0));
  CHECK(k.total_variation() == 4.0);
  CHECK(k.atoms()[3].position[0] == doctest::Approx(0.5));
  CHECK(k.atoms()[3].weight == Complex(-1.0));
}

TEST_CASE("square-root-of-prime parameters") {
  for (int n = 1; n <= 8; ++n) {
    const KSParameters p = q_independent_sample(n);
    CHECK(p.n == n);
    CHECK(p.provenance == KSParameters::Provenance::kSqrtPrimeScaled);
    const double d = std::ceil(std::sqrt(static_cast<double>(kPrimes[2 * n - 1]))) * n;
    for (int i = 0; i < n; ++i) {
      CHECK(p.a[i] == doctest::Approx(std::sqrt(static_cast<double>(kPrimes[2 * i])) / d).epsilon(1e-15));
      CHECK(p.b[i] == doctest::Approx(std::sqrt(static_cast<double>(kPrimes[2 * i + 1])) / d).epsilon(1e-15));
      CHECK(p.a[i] > 0.0);
      CHECK(p.b[i] <= 1.0 / n);
    }
    CHECK_NOTHROW(p.validate());
  }
  KSParameters bad;
  bad.n = 2;
  bad.a = {0.1, 0.1};
  bad.b = {0.2, 0.3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.a = {0.1, 0.6};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("nu_n atoms carry the sign rule and are distinct") {
  const int n = 3;
  const KSParameters p = q_independent_sample(n);
  const AtomicMeasure nu = make_nu(p).enumerate(1 << 12);
  REQUIRE(nu.size() == 64);
  CHECK(nu.total_variation() == 64.0);
  for (int code = 0; code < 64; ++code) {
    std::vector<int> k(n), l(n);
    double x = 0.0;
    for (int i = 0; i < n; ++i) {
      k[i] = (code >> (2 * i)) & 1;
      l[i] = (code >> (2 * i + 1)) & 1;
      x += k[i] * p.a[i] + l[i] * p.b[i];
    }
    int sign = 1;
    for (int i = 0; i < n; ++i) sign *= (k[i] && l[i]) ? -1 : 1;
    CHECK(ks_sign(k, l) == sign);
    const Window near = Window::interval(x - 1e-13, x + 1e-13);
    const AtomicMeasure hit = restrict_to(nu, near);
    REQUIRE(hit.size() == 1);
    CHECK(hit.atoms()[0].weight == Complex(sign));
  }
  CHECK(distinctness_check(make_nu(p), 1 << 12).distinct());
}

TEST_CASE("transform modulus of nu_n is the product of closed forms") {
  const KSParameters p = q_independent_sample(4);
  const FTEvaluator e(make_nu(p));
  for (double t : {0.0, 0.37, 5.1, 88.8}) {
    double prod = 1.0;
    for (int i = 0; i < 4; ++i) prod *= ks_factor_abs2(p.a[i], p.b[i], t);
    CHECK(std::norm(e.value({t})) == doctest::Approx(prod).epsilon(1e-10));
  }
  CHECK(std::abs(e.value({0.0})) == doctest::Approx(16.0));
}

TEST_CASE("minimal n for omega_m") {
  int total = 0;
  for (int m = 1; m <= 30; ++m) {
    CHECK(omega_minimal_n(m) == minimal_n_oracle(m));
    total += omega_minimal_n(m);
  }
  CHECK(omega_minimal_n(1) == 4);
  CHECK(omega_minimal_n(10) == 154);
  CHECK(total == 8787);
}

TEST_CASE("omega_m is normalised on the search window") {
  for (int m = 1; m <= 2; ++m) {
    const OmegaBlock& w = omega_block(m);
    CHECK(w.n == omega_minimal_n(m));
    CHECK(w.report.all_pass());
    // omega^ at the witness is 2^-m by construction
    const FTEvaluator e(w.omega);
    CHECK(std::abs(e.value(w.sup_est.witness)) == doctest::Approx(std::exp2(-m)).epsilon(1e-9));
    CHECK(w.log2_tv == doctest::Approx(2.0 * w.n + w.log2_scale));
    CHECK(w.tv == doctest::Approx(total_variation(w.omega, 1 << 20)).epsilon(1e-9));
    CHECK(w.tv >= std::pow(m * m + 1.0, m));
  }
}

TEST_CASE("discrete counterexample layout") {
  const BlockMeasure mu = discrete_counterexample(2);
  REQUIRE(mu.blocks().size() == 2);
  CHECK(mu.blocks()[0].shift == Vec{8.0});
  CHECK(mu.blocks()[1].shift == Vec{16.0});
  CHECK(mu.support_radius() == 2.0);
  CHECK(total_variation(mu, 1 << 20) ==
        doctest::Approx(omega_block(1).tv + omega_block(2).tv).epsilon(1e-12));
}

TEST_CASE("g against direct quadrature for small targets") {
  for (double A : {0.5, 1.0}) {
    const ContinuousG g = construct_g(A);
    CHECK(g.report.all_pass());
    CHECK(g.l1_mass >= A);
    CHECK(g.ft_sup <= 1.0 + 1e-6);
    const auto l1 = adaptive_simpson([&](double x) { return std::abs(g.g(x)); }, -2.0, 2.0, 1e-9, 4096,
                                     50'000'000);
    CHECK(l1.value >= g.l1_mass);
    CHECK(l1.value <= g.l1_upper);
    CompactFunction spatial = g.g;
    spatial.spectral = nullptr;
    for (double s : {0.0, 0.7, 3.0}) {
      const Complex direct = ft_compact(spatial, s, QuadratureMethod::kAdaptiveSimpson, 1e-10, 50'000'000);
      CHECK(std::abs(g.g.spectral(s) - direct) < 1e-5);
      CHECK(std::abs(direct) <= g.ft_sup);
    }
  }
  CHECK_THROWS_AS(construct_g(0.0), std::invalid_argument);
}

TEST_CASE("g at A = 10 has a negative value") {
  const ContinuousG g = construct_g(10.0);
  CHECK(g.log2_n() == 55);
  CHECK(g.l1_mass >= 10.0);
  REQUIRE(g.negative_witness);
  CHECK(g.negative_witness->second < 0.0);
  CHECK(g.g(g.negative_witness->first) == g.negative_witness->second);
}

TEST_CASE("g_n scaling") {
  const GN& g1 = g_n_block(1);
  CHECK(g1.gamma == 4.0);
  CHECK(g1.beta == doctest::Approx(0.5));
  CHECK(g1.g.support_radius == doctest::Approx(0.5));
  CHECK(g1.l1_mass >= 2.0);
  CHECK(g1.ft_sup <= 0.5 * (1 + 1e-6));
  CHECK(g1.g(0.01) == doctest::Approx(g1.base.g(0.04) / 0.5));
  CHECK(g_n_target(2) == doctest::Approx(4.0 * 25.0));
}

TEST_CASE("continuous pairing counts each block at its centre") {
  const ContinuousCounterexample mu = continuous_counterexample(2);
  CHECK(mu.report.all_pass());
  SmoothTestFunction psi;
  psi.name = "const-near-minus-one";
  psi.dimension = 1;
  const SmoothTestFunction b = interval_bump();
  psi.value = [b](const Vec& x) { return b({4.0 * (x[0] + 1.0)}); };
  psi.support = Window::interval(-1.5, -0.5);
  const ContinuousPairing p = continuous_pairing(mu, psi);
  REQUIRE(p.blocks == std::vector<int>{1});
  const GN& g1 = mu.blocks[0];
  const double expected = g1.base.phi(0.0) / (g1.beta * g1.gamma * g1.base.C);
  CHECK(std::abs(p.value - expected) <= p.error + 1e-12);
}
