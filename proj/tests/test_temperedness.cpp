#include <cmath>
#include <random>

#include "doctest.h"
#include "tempered/schwartz.hpp"
#include "tempered/temperedness.hpp"

using namespace tempered;

namespace {
// Annulus index by repeated doubling.
int slow_index(double r) {
  if (r < 1.0) return 0;
  int j = 1;
  double edge = 2.0;
  while (r >= edge) {
    edge *= 2.0;
    ++j;
  }
  return j;
}

AtomicMeasure random_measure(std::size_t d, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-300.0, 300.0), w(-2.0, 2.0);
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i) {
    Vec x(d);
    for (double& c : x) c = u(rng);
    atoms.push_back({x, Complex(w(rng), w(rng))});
  }
  return AtomicMeasure(d, atoms);
}

DyadicProfile profile_of(const std::function<double(int)>& log2_mass, int J) {
  DyadicProfile p;
  for (int j = 0; j <= J; ++j) p.masses.push_back(std::exp2(log2_mass(j)));
  return p;
}
}  // namespace

TEST_CASE("annulus index") {
  for (double r : {0.0, 0.5, 0.999, 1.0, 1.5, 2.0, 3.99, 4.0, 1000.0, 1024.0}) {
    CHECK(annulus_index(r) == slow_index(r));
  }
}

TEST_CASE("atomic profile matches bucketing") {
  for (std::size_t d : {1u, 2u}) {
    const AtomicMeasure mu = random_measure(d, 400, 3 + d);
    const DyadicProfile p = dyadic_profile(mu, 12);
    std::vector<double> oracle(13, 0.0);
    for (const Atom& a : mu.atoms()) {
      const int j = slow_index(norm2(a.position));
      if (j <= 12) oracle[j] += std::abs(a.weight);
    }
    for (int j = 0; j <= 12; ++j) CHECK(p.masses[j] == doctest::Approx(oracle[j]).epsilon(1e-12));
  }
}

TEST_CASE("block profile without enumeration equals the flattened profile") {
  const AtomicMeasure f(1, {{{-0.25}, 1.0}, {{0.0}, -2.0}, {{0.25}, Complex(0, 3)}});
  const BlockMeasure mu = BlockMeasure::lattice({3.0}, 0.5, {f, f, f, f, f, f, f, f, f, f});
  const AtomicMeasure flat = restrict_to(mu, Window::interval(-100, 100), 1000);
  const DyadicProfile a = dyadic_profile(mu, 6);
  const DyadicProfile b = dyadic_profile(flat, 6);
  for (int j = 0; j <= 6; ++j) CHECK(a.masses[j] == doctest::Approx(b.masses[j]));
}

TEST_CASE("growth verdicts") {
  const GrowthVerdict poly = growth_test(profile_of([](int j) { return 3.0 * j + 1.0; }, 40));
  CHECK(poly.poly_bounded());
  CHECK(poly.a == 3);
  CHECK(poly.c == doctest::Approx(2.0));
  const GrowthVerdict fast = growth_test(profile_of([](int j) { return 0.5 * j * j; }, 40));
  CHECK(!fast.poly_bounded());
  REQUIRE(!fast.witnesses.empty());
  for (std::size_t l = 0; l < fast.witnesses.size(); ++l) {
    const int k = fast.witnesses[l];
    CHECK(0.5 * k * k > static_cast<double>(l + 1) * k);
  }
  CHECK(fast.trend.back() == doctest::Approx(20.0));
  CHECK_THROWS_AS(growth_test(profile_of([](int) { return 0.0; }, 2)), std::invalid_argument);
}

TEST_CASE("slow increase partials bracket the weighted integral") {
  const AtomicMeasure mu = random_measure(1, 500, 99);
  const DyadicProfile prof = dyadic_profile(mu, 12);
  for (int p : {1, 2, 3}) {
    const SlowIncrease s = slow_increase_partial(prof, p);
    double direct = 0.0;
    for (const Atom& a : mu.atoms()) direct += std::abs(a.weight) / (1.0 + std::pow(norm2(a.position), p));
    CHECK(s.lower_partials.back() <= direct * (1 + 1e-12));
    CHECK(s.partials.back() >= direct * (1 - 1e-12));
  }
  const DyadicProfile poly = profile_of([](int j) { return 2.0 * j; }, 30);
  const GrowthVerdict v = growth_test(poly);
  const SlowIncrease s = slow_increase_partial(poly, v.a + 1);
  CHECK(s.partials.back() <= slow_increase_limit(poly, v));
  CHECK_THROWS_AS(slow_increase_partial(poly, 0), std::invalid_argument);
}

TEST_CASE("block divergence partials") {
  const AtomicMeasure f(1, {{{0.0}, 2.0}, {{0.1}, -1.0}});
  const BlockMeasure mu = BlockMeasure::lattice({4.0}, 0.5, {f, f, f});
  const std::vector<double> d = block_divergence_partials(mu, 2);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == doctest::Approx(3.0 / (1.0 + 4.5 * 4.5)));
  CHECK(d[2] == doctest::Approx(3.0 / (1.0 + 4.5 * 4.5) + 3.0 / (1.0 + 8.5 * 8.5) + 3.0 / (1.0 + 12.5 * 12.5)));
}

TEST_CASE("pairing partial sums") {
  const AtomicMeasure mu(1, {{{40.0}, 2.0}, {{600.0}, Complex(0, -1)}, {{3000.0}, 1.0}});
  const PlateauSchwartz psi({5, 9, 13}, {0.5, 0.25, 0.125}, 1);
  const PairingResult r = pairing_partial_sums(mu, psi, 20);
  REQUIRE(r.terms.size() == 3);
  CHECK(r.terms[0] == doctest::Approx(2.0 * plateau_eval(psi, {40.0})));
  CHECK(r.partials.back() == doctest::Approx(2.0 * plateau_eval(psi, {40.0}) + plateau_eval(psi, {600.0}) +
                                             plateau_eval(psi, {3000.0})));
  const SmoothTestFunction b = interval_bump();
  const AtomicMeasure near(1, {{{0.5}, 1.0}, {{1.5}, -3.0}});
  const PairingResult q = pairing_partial_sums(near, b, 3);
  CHECK(q.partials.back() == doctest::Approx(1.0 + 3.0 * b({1.5})));
}

TEST_CASE("pairing bound holds for a tempered measure") {
  std::vector<Atom> atoms;
  for (int i = -30; i <= 30; ++i) atoms.push_back({{i / 10.0}, Complex(std::cos(i), std::sin(3.0 * i))});
  const AtomicMeasure mu(1, atoms);
  const SmoothTestFunction b = interval_bump();
  const PairingBound pb = pairing_bound_check(mu, b, 2, 2.0);
  Complex direct = 0.0;
  for (const Atom& a : mu.atoms()) direct += a.weight * b(a.position);
  CHECK(pb.lhs == doctest::Approx(std::abs(direct)));
  CHECK(pb.holds);
  CHECK(pb.weighted_sup >= 1.0);
  CHECK(pb.lhs <= pb.rhs * (1 + 1e-6));
}
