#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempered/atomic_measure.hpp"
#include "tempered/block_measure.hpp"
#include "tempered/compact_function.hpp"
#include "tempered/fourier.hpp"
#include "tempered/profile.hpp"
#include "tempered/report.hpp"
#include "tempered/schwartz.hpp"
#include "tempered/sinc_integral.hpp"
#include "tempered/temperedness.hpp"
#include "tempered/types.hpp"

namespace tempered {

// delta_0 + delta_a + delta_b - delta_{a+b} on R.
AtomicMeasure ks_block(double a, double b);

struct KSParameters {
  enum class Provenance { kSqrtPrimeScaled, kUser };
  int n = 0;
  std::vector<double> a, b;
  Provenance provenance = Provenance::kUser;

  // Throws std::invalid_argument unless all 2n values are positive, at most
  // 1/n and pairwise distinct.
  void validate() const;
};

// a_i = sqrt(p_{2i-1}) / (ceil(sqrt(p_{2n})) n), b_i = sqrt(p_{2i}) / (ceil(sqrt(p_{2n})) n).
KSParameters q_independent_sample(int n);

// Largest n whose subset sums are checked by enumeration in make_nu.
inline constexpr int kCertifiedDistinctMax = 8;

// Convolution of the n blocks. Distinctness of all 4^n subset sums is
// certified by enumeration for n <= 8 and assumed from the construction above.
ProductMeasure make_nu(const KSParameters& params);

// (-1)^{#{i : k_i = l_i = 1}} for the atom sum_i (k_i a_i + l_i b_i).
int ks_sign(const std::vector<int>& k, const std::vector<int>& l);

// Smallest n with 2^{n/2} >= 2^m (m^2 + 1)^m, compared exactly.
int omega_minimal_n(int m);

struct OmegaOptions {
  Window window = Window::interval(0.0, 1000.0);
  double grid_step = 0.01;
  Budgets budgets;
};

struct OmegaBlock {
  int m = 0;
  int n = 0;
  KSParameters params;
  ProductMeasure nu{{}, {0.0}};
  SupEstimate sup_est;       // of nu_n^ over the window, plain grid
  double log2_scale = 0.0;   // -m - log2(sup_est.lower)
  double scale = 0.0;
  ProductMeasure omega{{}, {0.0}};  // nu scaled by `scale`
  double log2_tv = 0.0;      // 2n + log2_scale
  double tv = 0.0;
  ClaimReport report;
};

OmegaBlock make_omega(int m, const OmegaOptions& options = {});

// Memoized make_omega for the default options (blocks are deterministic).
const OmegaBlock& omega_block(int m);

// Blocks delta_{8m} * omega_m, m = 1..M, with support radius 2.
BlockMeasure discrete_counterexample(int M);
BlockMeasure discrete_counterexample(int M, const OmegaOptions& options);

struct ContinuousG {
  double A = 0.0;
  CompactFunction phi;         // bump, 1 on [-1, 1], vanishing outside (-2, 2)
  double C = 0.0;              // certified upper bound of ||phi^||_1
  double phi_hat_l1 = 0.0;     // quadrature value of ||phi^||_1
  MassParameters mass;         // alpha = 2^p, n = 2^q
  int log2_a = 0;
  SincIntegral window;         // integral_{-a}^{a} |f_n^ f^|
  CompactFunction g;
  double l1_mass = 0.0;        // certified lower bound of ||g||_1
  double l1_upper = 0.0;       // certified upper bound of ||g||_1
  double ft_sup = 0.0;         // certified upper bound of ||g^||_inf
  double ft_sup_sampled = 0.0; // largest |g^| seen on the sample grid
  std::optional<std::pair<double, double>> negative_witness;  // (x, g(x)) with g(x) < 0
  ClaimReport report;

  int log2_n() const { return mass.log2_n; }
  int log2_alpha() const { return mass.log2_alpha; }
};

ContinuousG construct_g(double A);

struct GN {
  int n = 0;
  ContinuousG base;
  double beta = 0.0;
  double gamma = 0.0;
  CompactFunction g;        // x -> g(gamma x) / beta
  double l1_mass = 0.0;     // certified lower bound of ||g_n||_1
  double ft_sup = 0.0;      // certified upper bound of ||g_n^||_inf
  ClaimReport report;
};

// Mass target 2^n (n^2 + 1)^n.
double g_n_target(int n);
GN make_g_n(int n);
const GN& g_n_block(int n);  // memoized

struct ContinuousCounterexample {
  BlockMeasure measure;
  std::vector<GN> blocks;  // blocks[j - 1] builds the density at shift -j
  ClaimReport report;
};

// Density blocks g_j at shift -j, j = 1..N.
ContinuousCounterexample continuous_counterexample(int N);

struct ContinuousPairing {
  double value = 0.0;
  double error = 0.0;  // certified bound on |value - true pairing|
  std::vector<int> blocks;  // indices j of the blocks met by the test function
};

// integral psi d mu_N for a smooth test function on R with bounded support.
// Each block contributes psi(-j) phi(0) / (beta gamma C) up to the frequency
// cut-off error of its needle.
ContinuousPairing continuous_pairing(const ContinuousCounterexample& mu, const SmoothTestFunction& psi);

}  // namespace tempered
