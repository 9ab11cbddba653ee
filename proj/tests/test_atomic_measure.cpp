#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "tempered/atomic_measure.hpp"

using namespace tempered;

namespace {
AtomicMeasure line(std::vector<std::pair<double, Complex>> atoms) {
  std::vector<Atom> a;
  for (auto& [x, w] : atoms) a.push_back({{x}, w});
  return AtomicMeasure(1, a);
}
}  // namespace

TEST_CASE("construction merges, drops zeros and sorts") {
  const AtomicMeasure mu = line({{2.0, 1.0}, {0.5, 2.0}, {2.0 + 1e-13, 3.0}, {1.0, 0.0}, {-1.0, -1.0}});
  REQUIRE(mu.size() == 3);
  CHECK(mu.atoms()[0].position[0] == -1.0);
  CHECK(mu.atoms()[1].position[0] == 0.5);
  CHECK(mu.atoms()[2].weight == Complex(4.0, 0.0));
  CHECK(mu == line({{-1.0, -1.0}, {2.0, 4.0}, {0.5, 2.0}}));
}

TEST_CASE("weights cancelling on merge vanish") {
  const AtomicMeasure mu = line({{1.0, 1.0}, {1.0, -1.0}, {3.0, 2.0}});
  CHECK(mu.size() == 1);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(AtomicMeasure(2, {{{1.0}, 1.0}}), DimensionMismatch);
  CHECK_THROWS_AS(convolve(AtomicMeasure::dirac({0.0}), AtomicMeasure::dirac({0.0, 0.0})), DimensionMismatch);
}

TEST_CASE("total variation, mass, radius and gap") {
  const AtomicMeasure mu = line({{-3.0, Complex(3.0, 4.0)}, {1.0, -2.0}, {1.5, Complex(0, 1)}});
  CHECK(mu.total_variation() == doctest::Approx(8.0));
  CHECK(mu.total_mass() == Complex(1.0, 5.0));
  CHECK(mu.support_radius() == 3.0);
  REQUIRE(mu.min_gap());
  CHECK(*mu.min_gap() == doctest::Approx(0.5));
  CHECK(!AtomicMeasure::dirac({0.0}).min_gap());
}

TEST_CASE("convolution against brute-force sums") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Atom> a, b;
    for (int i = 0; i < 5; ++i) a.push_back({{std::round(8 * u(rng)) / 8}, Complex(u(rng), u(rng))});
    for (int i = 0; i < 4; ++i) b.push_back({{std::round(8 * u(rng)) / 8}, Complex(u(rng), 0)});
    const AtomicMeasure ma(1, a), mb(1, b);
    std::map<double, Complex> oracle;
    for (const Atom& x : ma.atoms()) {
      for (const Atom& y : mb.atoms()) oracle[x.position[0] + y.position[0]] += x.weight * y.weight;
    }
    const AtomicMeasure c = convolve(ma, mb);
    std::size_t nonzero = 0;
    for (auto& [x, w] : oracle) nonzero += w != Complex(0.0) ? 1 : 0;
    CHECK(c.size() == nonzero);
    for (const Atom& at : c.atoms()) {
      CHECK(std::abs(at.weight - oracle.at(at.position[0])) < 1e-14);
    }
  }
}

TEST_CASE("translate and restrict") {
  const AtomicMeasure mu = line({{0.0, 1.0}, {1.0, 2.0}, {2.0, 3.0}});
  const AtomicMeasure t = translate(mu, {10.0});
  CHECK(t.atoms()[2].position[0] == 12.0);
  const AtomicMeasure r = restrict_to(t, Window::interval(10.5, 12.0));
  CHECK(r == line({{11.0, 2.0}, {12.0, 3.0}}));
}

TEST_CASE("variation, scaling and combinations") {
  const AtomicMeasure mu = line({{0.0, Complex(0, -2)}, {1.0, -1.0}});
  CHECK(variation(mu) == line({{0.0, 2.0}, {1.0, 1.0}}));
  CHECK(scale_weights(mu, 2.0) == line({{0.0, Complex(0, -4)}, {1.0, -2.0}}));
  CHECK(linear_combination(mu, 1.0, mu, -1.0).empty());
}

TEST_CASE("hahn-jordan decomposition") {
  const AtomicMeasure mu = line({{0.0, Complex(1, -2)}, {1.0, -3.0}, {2.0, Complex(0, 4)}});
  const HahnJordan hj = hahn_jordan(mu);
  CHECK(hj.pos_real == line({{0.0, 1.0}}));
  CHECK(hj.neg_real == line({{1.0, 3.0}}));
  CHECK(hj.pos_imag == line({{2.0, 4.0}}));
  CHECK(hj.neg_imag == line({{0.0, 2.0}}));
  CHECK(recombine(hj) == mu);
}

TEST_CASE("product measure enumeration equals iterated convolution") {
  const AtomicMeasure f = line({{0.0, 1.0}, {0.3, 1.0}, {0.5, 1.0}, {0.8, -1.0}});
  const AtomicMeasure g = line({{0.0, 1.0}, {0.07, -2.0}});
  const ProductMeasure p({f, g, f}, {1.0}, 0.5);
  CHECK(p.implicit_size() == 32);
  CHECK(p.log2_implicit_size() == doctest::Approx(5.0));
  const AtomicMeasure oracle = scale_weights(translate(convolve(convolve(f, g), f), {1.0}), 0.5);
  const AtomicMeasure e = p.enumerate(1000);
  REQUIRE(e.size() == oracle.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    // summation order differs, so positions may disagree in the last ulp
    CHECK(std::abs(e.atoms()[i].position[0] - oracle.atoms()[i].position[0]) < 1e-15);
    CHECK(std::abs(e.atoms()[i].weight - oracle.atoms()[i].weight) < 1e-15);
  }
  CHECK_THROWS_AS(p.enumerate(10), BudgetExceeded);
  CHECK(p.support_radius_bound() == doctest::Approx(1.0 + 0.8 + 0.07 + 0.8));
}

TEST_CASE("raw atoms keep multiplicities in mixed-radix order") {
  const AtomicMeasure f = line({{0.0, 1.0}, {1.0, 2.0}});
  const ProductMeasure p({f, f}, {0.0});
  const std::vector<Atom> raw = p.raw_atoms(100);
  REQUIRE(raw.size() == 4);
  CHECK(raw[1].position[0] == 1.0);
  CHECK(raw[1].weight == Complex(2.0));
  CHECK(raw[2].position[0] == 1.0);
  CHECK(raw[3].weight == Complex(4.0));
}

TEST_CASE("distinctness and total variation of products") {
  const AtomicMeasure f = line({{0.0, 1.0}, {1.0, 1.0}});
  // f * f has the collision 0 + 1 = 1 + 0
  const ProductMeasure collide({f, f}, {0.0});
  CHECK(distinctness_check(collide, 100).verdict == DistinctnessReport::Verdict::kCollision);
  CHECK(total_variation(collide, 100) == 4.0);  // enumeration merges 1 + 1
  const AtomicMeasure g = line({{0.0, 1.0}, {std::sqrt(2.0), -1.0}});
  const ProductMeasure distinct({f, g}, {0.0}, 3.0);
  CHECK(distinctness_check(distinct, 100).distinct());
  CHECK(total_variation(distinct, 100) == 12.0);
  CHECK(log2_total_variation(distinct, 100) == doctest::Approx(std::log2(12.0)));
  const ProductMeasure big(std::vector<AtomicMeasure>(30, f), {0.0});
  CHECK_THROWS_AS(total_variation(big, 1000), BudgetExceeded);
  CHECK(total_variation(big.with_distinctness(Distinctness::kAssumed), 1000) == std::ldexp(1.0, 30));
}
