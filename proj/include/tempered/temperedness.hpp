#pragma once

#include <optional>
#include <vector>

#include "tempered/atomic_measure.hpp"
#include "tempered/block_measure.hpp"
#include "tempered/profile.hpp"
#include "tempered/schwartz.hpp"

namespace tempered {

// x -> 1 + |x|_2^p
struct PolyDenominator {
  int p = 1;
  double operator()(const Vec& x) const;
};

DyadicProfile dyadic_profile(const AtomicMeasure& mu, int max_index);
// Blocks lying inside one annulus contribute their TV there without
// enumeration. Other blocks are enumerated, or split at their centre when they
// are even densities straddling a single annulus boundary there.
DyadicProfile dyadic_profile(const BlockMeasure& mu, int max_index,
                             std::size_t max_atoms = std::size_t{1} << 20);

struct GrowthVerdict {
  enum class Kind { kPolyBounded, kSuperpolynomialEvidence };
  Kind kind = Kind::kPolyBounded;
  double c = 0.0;
  int a = 0;
  std::vector<int> witnesses;      // k_l with m_{k_l} > 2^{l k_l}
  std::vector<double> trend;       // running max of log2(m_j) / j
  int truncation = 0;              // last profiled index

  bool poly_bounded() const { return kind == Kind::kPolyBounded; }
};

GrowthVerdict growth_test(const DyadicProfile& profile, int a_max = 16);

struct SlowIncrease {
  std::vector<double> partials;        // sum_{j<=J} of the upper annulus terms
  std::vector<double> bound_chain;     // m_j / (1 + 2^{j p}), lower annulus terms
  std::vector<double> lower_partials;  // cumulative bound_chain
};

SlowIncrease slow_increase_partial(const DyadicProfile& profile, int p);

// I_0 + c 2^{a+1} for a poly_bounded verdict, bounding the partials with p = a + 1.
double slow_increase_limit(const DyadicProfile& profile, const GrowthVerdict& verdict);

// sum_{m <= M} TV(block_m) / (1 + R_m^p), with R_m = |shift_m| + A the outer radius
// of the m-th block box. Entry M-1 holds the partial sum over the first M blocks.
std::vector<double> block_divergence_partials(const BlockMeasure& mu, int p,
                                              std::size_t max_atoms = std::size_t{1} << 20);

struct PairingResult {
  std::vector<double> terms;     // per shell (or annulus)
  std::vector<double> partials;  // S_N
  bool converging = false;
  std::optional<double> tail_estimate;
};

// S_N = sum over atoms of the first N shells of |w| psi(x).
PairingResult pairing_partial_sums(const AtomicMeasure& mu, const PlateauSchwartz& psi,
                                   int max_index);
// Annulus-wise partial sums of |w| psi(x) for |x| < 2^J.
PairingResult pairing_partial_sums(const AtomicMeasure& mu, const SmoothTestFunction& psi,
                                   int max_index);

struct PairingBound {
  double lhs = 0.0;            // |mu(psi)|
  double weighted_sup = 0.0;   // sup (1 + |x|^p) |psi(x)| over the samples and atoms
  double integral = 0.0;       // integral d|mu| / (1 + |x|^p)
  double rhs = 0.0;
  bool holds = false;          // lhs <= rhs (1 + 1e-6)
};

// |mu(psi)| <= ||(1 + |x|^p) psi||_inf * integral d|mu| / (1 + |x|^p), with the sup
// taken over a grid on [-radius, radius]^d together with the atom positions.
PairingBound pairing_bound_check(const AtomicMeasure& mu, const SmoothTestFunction& psi, int p,
                                 double radius, int samples_per_axis = 4001);

}  // namespace tempered
