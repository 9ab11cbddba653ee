#include <cmath>

#include "doctest.h"
#include "tempered/schwartz.hpp"

using namespace tempered;

namespace {
double choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

TEST_CASE("multi-index bookkeeping") {
  const MultiIndex a({2, 1});
  CHECK(a.order() == 3);
  CHECK(MultiIndex({1, 1}).le(a));
  CHECK(!MultiIndex({0, 2}).le(a));
  CHECK(a.minus(MultiIndex({1, 0})) == MultiIndex({1, 1}));
  CHECK(binomial(a, MultiIndex({1, 1})) == 2.0);
  CHECK(sub_indices(a).size() == 6);
  for (std::size_t d = 1; d <= 3; ++d) {
    for (int k = 0; k <= 3; ++k) {
      CHECK(indices_up_to(d, k).size() == static_cast<std::size_t>(choose(static_cast<int>(d) + k, k)));
    }
  }
  CHECK(MultiIndex::unit(3, 1, 2) == MultiIndex({0, 2, 0}));
}

TEST_CASE("jet arithmetic against closed forms") {
  // f(x, y) = exp(x) sin(y) at (0.3, 1.1): D^(a,b) f = exp(x) sin^(b)(y)
  const double x0 = 0.3, y0 = 1.1;
  const Jet X = Jet::variable(2, 0, x0), Y = Jet::variable(2, 1, y0);
  const double e = std::exp(x0);
  const Jet f = X.compose({e, e, e, e}) *
                Y.compose({std::sin(y0), std::cos(y0), -std::sin(y0), -std::cos(y0)});
  const double dsin[4] = {std::sin(y0), std::cos(y0), -std::sin(y0), -std::cos(y0)};
  for (const MultiIndex& m : indices_up_to(2, 3)) {
    CHECK(f.derivative(m) == doctest::Approx(e * dsin[m.index[1]]).epsilon(1e-13));
  }
  // x^2 y has D^(2,1) = 2
  const Jet p = X * X * Y;
  CHECK(p.derivative(MultiIndex({2, 1})) == doctest::Approx(2.0));
  CHECK(p.derivative(MultiIndex({1, 1})) == doctest::Approx(2.0 * x0));
  CHECK((p - p * 1.0).value() == 0.0);
}

TEST_CASE("interval bump shape and exact derivatives") {
  const SmoothTestFunction b = interval_bump();
  CHECK(b.method() == DerivativeMethod::kExact);
  CHECK(b({0.0}) == 1.0);
  CHECK(b({1.0}) == 1.0);
  CHECK(b({-2.0}) == 0.0);
  CHECK(b({2.5}) == 0.0);
  CHECK(b({1.5}) > 0.0);
  CHECK(b({1.5}) < 1.0);
  for (double x : {-1.7, -1.2, 1.3, 1.5, 1.9}) {
    for (int k = 1; k <= 3; ++k) {
      const MultiIndex a({k});
      const double fd = finite_difference(b.value, a, {x}, 1e-3);
      CHECK(b.derivative(a, {x}) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("annular bump plateau and support") {
  for (std::size_t d : {1u, 2u, 3u}) {
    const SmoothTestFunction s = annular_bump(d);
    Vec x(d, 0.0);
    for (double r : {0.5, 2.0, 32.0, 40.0}) {
      x[0] = r;
      CHECK(s(x) == 0.0);
    }
    for (double r : {4.0, 8.0, 16.0}) {
      x[0] = r;
      CHECK(s(x) == doctest::Approx(1.0));
    }
    x[0] = 3.0;
    const double mid = s(x);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
  }
  // radial: value depends on |x| only
  const SmoothTestFunction s2 = annular_bump(2);
  CHECK(s2({3.0, 0.0}) == doctest::Approx(s2({3.0 / std::sqrt(2.0), 3.0 / std::sqrt(2.0)})));
}

TEST_CASE("exact and finite-difference derivatives of the annular bump agree") {
  SmoothTestFunction s = annular_bump(2);
  REQUIRE(s.jet);
  const Vec x{2.3, 1.4};
  for (const MultiIndex& a : indices_up_to(2, 3)) {
    const double fd = finite_difference(s.value, a, x, 1e-3);
    CHECK(s.derivative(a, x) == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("plateau function levels and shells") {
  const PlateauSchwartz psi({5, 9, 14}, {0.5, 0.25, 1e-3}, 1);
  CHECK(plateau_eval(psi, {32.0}) == doctest::Approx(0.5));
  CHECK(plateau_eval(psi, {-512.0}) == doctest::Approx(0.25));
  CHECK(plateau_eval(psi, {std::ldexp(1.0, 14)}) == doctest::Approx(1e-3));
  CHECK(plateau_eval(psi, {1.0}) == 0.0);
  CHECK(psi.shell_of(32.0) == std::optional<std::size_t>(0));
  CHECK(psi.shell_of(100.0) == std::optional<std::size_t>(0));
  CHECK(psi.shell_of(200.0) == std::optional<std::size_t>(1));
  CHECK(!psi.shell_of(4.0));
  CHECK(!psi.shell_of(1e9));
  // constant(alpha, beta) = max c_n 2^{(k_n - 3)(|beta| - |alpha|)}
  CHECK(psi.constant(MultiIndex({0}), MultiIndex({1})) ==
        doctest::Approx(std::max({0.5 * 4, 0.25 * 64, 1e-3 * 2048})));
  CHECK(psi.decay_diagnostic().size() == 9);
  CHECK_THROWS_AS(PlateauSchwartz({5, 7}, {1.0, 1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(PlateauSchwartz({3}, {1.0}, 1), std::invalid_argument);
}

TEST_CASE("seminorms of the interval bump") {
  const SmoothTestFunction b = interval_bump();
  const SeminormEstimate s0 = seminorm_estimate(b, MultiIndex({0}), MultiIndex({0}));
  CHECK(s0.value == doctest::Approx(1.0));
  const SeminormEstimate s1 = seminorm_estimate(b, MultiIndex({0}), MultiIndex({1}));
  CHECK(s1.value >= 1.0);
  CHECK(s1.value <= 2.0);
  // sup |b'| dominates |b(1.5) - b(1)| / 0.5
  const SeminormEstimate d1 = seminorm_estimate(b, MultiIndex({1}), MultiIndex({0}));
  CHECK(d1.value >= 2.0 * (1.0 - b({1.5})));
}

TEST_CASE("plateau seminorm scales with the shell") {
  const PlateauSchwartz psi({5}, {1.0}, 1);
  const SeminormEstimate s = seminorm_estimate(psi, MultiIndex({0}), MultiIndex({1}));
  // dense oracle: psi(x) = sigma(x / 4)
  const SmoothTestFunction sigma = annular_bump(1);
  double oracle = 0.0;
  for (int i = 0; i <= 1'000'000; ++i) {
    const double r = 128.0 * i / 1e6;
    oracle = std::max(oracle, r * sigma({r / 4.0}));
  }
  CHECK(s.value >= 64.0);
  CHECK(s.value == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("reciprocal selection follows the growth rule") {
  DyadicProfile prof;
  for (int j = 0; j <= 40; ++j) prof.masses.push_back(std::ldexp(1.0, j * j / 4));
  const ReciprocalSelection sel = reciprocal_coefficients(prof);
  REQUIRE(!sel.k.empty());
  CHECK(sel.k[0] > 4);
  for (std::size_t j = 0; j < sel.k.size(); ++j) {
    const int k = sel.k[j];
    CHECK(std::log2(prof.masses[k]) > static_cast<double>(j + 1) * k);
    CHECK(sel.c[j] == doctest::Approx(1.0 / prof.masses[k]));
    if (j > 0) CHECK(sel.k[j] > sel.k[j - 1] + 4);
  }
  DyadicProfile flat;
  flat.masses.assign(30, 1.0);
  CHECK_THROWS_AS(reciprocal_coefficients(flat), InsufficientGrowth);
}

TEST_CASE("leibniz bound sums binomial products") {
  DerivativeSups f{{MultiIndex({0}), 1.0}, {MultiIndex({1}), 2.0}, {MultiIndex({2}), 5.0}};
  SeminormTable phi{{{MultiIndex({0}), MultiIndex({1})}, 3.0},
                    {{MultiIndex({1}), MultiIndex({1})}, 7.0},
                    {{MultiIndex({2}), MultiIndex({1})}, 11.0}};
  // 1*1*11 + 2*2*7 + 1*5*3
  CHECK(leibniz_product_bound(f, phi, MultiIndex({2}), MultiIndex({1})) == 54.0);
  CHECK_THROWS_AS(leibniz_product_bound(f, phi, MultiIndex({3}), MultiIndex({1})), std::invalid_argument);
}

TEST_CASE("separation function is one on U and zero on V") {
  const std::vector<Vec> u{{0.0}, {3.0}, {7.5}}, v{{1.0}, {5.0}, {9.0}};
  const SeparationFunction s = separation_function(u, v);
  CHECK(s.radius == doctest::Approx(0.5));
  for (const Vec& p : u) CHECK(s.function(p) == doctest::Approx(1.0));
  for (const Vec& p : v) CHECK(s.function(p) == 0.0);
  CHECK(s.function({0.25}) > 0.0);
  CHECK(s.function({2.0}) == 0.0);
  const double slope = std::abs(s.function({0.3}) - s.function({0.3 + 1e-6})) / 1e-6;
  CHECK(slope <= s.gradient_bound * (1 + 1e-6));
  CHECK_THROWS_AS(separation_function({{0.0}}, {{0.0}}), std::invalid_argument);
}
