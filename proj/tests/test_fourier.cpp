#include <cmath>
#include <random>

#include "doctest.h"
#include "tempered/fourier.hpp"
#include "tempered/numerics.hpp"
#include "tempered/schwartz.hpp"

using namespace tempered;

namespace {
constexpr double kTau = 6.283185307179586;

AtomicMeasure line(std::vector<std::pair<double, Complex>> atoms) {
  std::vector<Atom> a;
  for (auto& [x, w] : atoms) a.push_back({{x}, w});
  return AtomicMeasure(1, a);
}

// Direct sum without phase reduction or compensation.
Complex naive_ft(const AtomicMeasure& mu, const Vec& t) {
  Complex s = 0.0;
  for (const Atom& a : mu.atoms()) {
    double p = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) p += a.position[i] * t[i];
    s += a.weight * std::polar(1.0, -kTau * p);
  }
  return s;
}

AtomicMeasure ks(double a, double b) { return line({{0.0, 1.0}, {a, 1.0}, {b, 1.0}, {a + b, -1.0}}); }

// Triangle max(0, 1 - |x|) has transform sinc(pi t)^2.
CompactFunction triangle() {
  CompactFunction g;
  g.name = "triangle";
  g.value = [](double x) { return std::max(0.0, 1.0 - std::abs(x)); };
  g.oscillation_scale = 0.25;
  g.even = true;
  return g;
}
double triangle_hat(double t) {
  if (t == 0.0) return 1.0;
  const double s = std::sin(kPi * t) / (kPi * t);
  return s * s;
}
}  // namespace

TEST_CASE("atomic transform matches the direct sum") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Atom> atoms;
  for (int i = 0; i < 12; ++i) atoms.push_back({{u(rng), u(rng)}, Complex(u(rng), u(rng))});
  const AtomicMeasure mu(2, atoms);
  for (int k = 0; k < 50; ++k) {
    const Vec t{u(rng), u(rng)};
    CHECK(std::abs(ft_eval(mu, t) - naive_ft(mu, t)) < 1e-12);
  }
}

TEST_CASE("phase reduction keeps large frequencies accurate") {
  // x = 1/4 at t = 4e8 + 1 is an integer plus a quarter turn
  const AtomicMeasure mu = line({{0.25, 1.0}});
  const Complex v = ft_eval(mu, {4e8 + 1.0});
  CHECK(std::abs(v - Complex(0.0, -1.0)) < 1e-7);
}

TEST_CASE("KS factor modulus closed form") {
  for (double a : {0.1, std::sqrt(2.0) / 10}) {
    for (double t : {0.0, 0.3, 1.7, 12.25, 401.1}) {
      const double direct = std::norm(naive_ft(ks(a, 0.37), {t}));
      CHECK(ks_factor_abs2(a, 0.37, t) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
  CHECK(ks_factor_abs2(0.2, 0.3, 0.0) == doctest::Approx(4.0));
  CHECK(factor_sup_bound(ks(0.2, 0.3)) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(factor_sup_bound(translate(ks(0.2, 0.3), {5.0})) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(factor_sup_bound(line({{0.0, 1.0}, {1.0, -3.0}})) == 4.0);
}

TEST_CASE("product transform is the product of factor transforms") {
  const ProductMeasure p({ks(0.1, 0.23), ks(0.05, 0.071), ks(0.02, 0.033)}, {2.0}, 0.25);
  const AtomicMeasure e = p.enumerate(1000);
  for (double t : {0.0, 0.7, 3.3, 19.1}) {
    CHECK(std::abs(ft_product_eval(p, {t}) - naive_ft(e, {t})) < 1e-12);
    const FTEvaluator ev(p);
    CHECK(ev.normalized_modulus({t}) * std::exp2(ev.log2_scale()) ==
          doctest::Approx(std::abs(naive_ft(e, {t}))).epsilon(1e-10));
  }
}

TEST_CASE("lipschitz bound dominates finite slopes") {
  const AtomicMeasure mu = line({{-1.0, 2.0}, {0.5, Complex(0, 1)}, {3.0, -1.0}});
  const double L = lipschitz_bound(mu);
  CHECK(L == doctest::Approx(kTau * (2.0 + 0.5 + 3.0)));
  for (double t = 0.0; t < 5.0; t += 0.013) {
    const double slope = std::abs(std::abs(ft_eval(mu, {t + 1e-4})) - std::abs(ft_eval(mu, {t}))) / 1e-4;
    CHECK(slope <= L);
  }
}

TEST_CASE("certified sup brackets a dense sample maximum") {
  const AtomicMeasure mu = convolve(ks(0.13, 0.31), ks(0.017, 0.029));
  const FTEvaluator e(mu);
  double dense = 0.0;
  for (int i = 0; i <= 200'000; ++i) dense = std::max(dense, std::abs(naive_ft(mu, {i * 1e-4})));
  SupOptions opt;
  opt.refine_tolerance = 1e-8;
  const SupEstimate s = sup_norm_estimate(e, Window::interval(0.0, 20.0), 0.05, opt);
  CHECK(s.lower <= s.upper_on_window);
  CHECK(s.lower >= dense * (1 - 1e-8));
  CHECK(s.upper_on_window >= dense);
  CHECK(s.upper_on_window <= s.lower * (1 + 2e-8));
  CHECK(std::abs(naive_ft(mu, s.witness)) == doctest::Approx(s.lower).epsilon(1e-12));
  CHECK(e.analytic_bound() == doctest::Approx(mu.total_variation()));
}

TEST_CASE("sup search in two dimensions") {
  const AtomicMeasure mu(2, {{{0.0, 0.0}, 1.0}, {{0.5, 0.0}, 1.0}, {{0.0, 0.25}, -1.0}});
  SupOptions opt;
  opt.refine_tolerance = 1e-3;
  const SupEstimate s = sup_norm_estimate(FTEvaluator(mu), Window::cube(2, 0.0, 4.0), 0.1, opt);
  // all three phases align at t = (1, 2): 1 + 1 - (-1) = 3
  CHECK(s.lower == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(s.upper_on_window >= 3.0);
  CHECK(s.upper_on_window <= 3.0 * (1 + 2e-3));
  CHECK_THROWS_AS(sup_norm_estimate(FTEvaluator(mu), Window::cube(2, 0.0, 4.0), 1e-4), BudgetExceeded);
}

TEST_CASE("sinc transforms") {
  CHECK(sinc_ft(SincKind::kF, 0.0) == 2.0);
  CHECK(sinc_ft(SincKind::kF, 0.25) == doctest::Approx(2.0 * std::sin(kPi / 2) / (kPi / 2)));
  CHECK(sinc_ft(SincKind::kFn, 3.0, 4) == doctest::Approx(std::sin(kTau * 0.75) / (kTau * 0.75)));
  CHECK_THROWS_AS(sinc_ft(SincKind::kFn, 1.0, 0), std::invalid_argument);
}

TEST_CASE("compact transforms by quadrature") {
  const CompactFunction g = triangle();
  for (double t : {0.0, 0.2, 1.5, 3.7, 10.25}) {
    const Complex v = ft_compact(g, t, QuadratureMethod::kAdaptiveSimpson, 1e-12);
    CHECK(std::abs(v - triangle_hat(t)) < 1e-9);
  }
  // bump: trapezoid against adaptive Simpson
  const CompactFunction bump = as_compact_function(interval_bump());
  for (double t : {0.0, 0.3, 2.0, 6.5}) {
    const Complex a = ft_compact(bump, t, QuadratureMethod::kAdaptiveSimpson, 1e-12);
    const Complex b = ft_compact(bump, t, QuadratureMethod::kTrapezoid);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("dilation scales the transform") {
  const CompactFunction g = triangle();
  const CompactFunction h = dilate(g, 2.0, 4.0);
  CHECK(h.support_radius == 0.25);
  CHECK(h(0.1) == doctest::Approx(g(0.4) / 2.0));
  for (double t : {0.0, 1.0, 5.5}) {
    const Complex v = ft_compact(h, t, QuadratureMethod::kAdaptiveSimpson, 1e-12);
    CHECK(std::abs(v - triangle_hat(t / 4.0) / 8.0) < 1e-9);
  }
}

TEST_CASE("block transform is the sum of shifted payload transforms") {
  const AtomicMeasure f = ks(0.1, 0.2);
  const BlockMeasure mu = BlockMeasure::lattice({2.0}, 0.5, {f, f});
  const AtomicMeasure flat = restrict_to(mu, Window::interval(-10, 10), 100);
  for (double t : {0.0, 0.3, 2.2}) CHECK(std::abs(ft_block_eval(mu, {t}) - naive_ft(flat, {t})) < 1e-12);
}

TEST_CASE("parseval pairing agrees on both sides") {
  const AtomicMeasure mu = line({{-0.7, 1.0}, {0.2, -2.0}, {1.1, Complex(0.5, 1.0)}});
  const CompactFunction phi = as_compact_function(interval_bump());
  const ParsevalResult r = parseval_pairing(mu, phi, 40.0);
  CHECK(r.gap <= r.tail_bound + 1e-9);
  CHECK(r.gap < 1e-6);
  Complex direct = 0.0;
  for (const Atom& a : mu.atoms()) direct += a.weight * phi(a.position[0]);
  CHECK(std::abs(r.lhs - direct) < 1e-15);
}
