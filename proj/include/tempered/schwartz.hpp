#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempered/compact_function.hpp"
#include "tempered/profile.hpp"
#include "tempered/types.hpp"

namespace tempered {

inline constexpr int kMaxDerivativeOrder = 3;

struct MultiIndex {
  std::vector<int> index;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> idx);
  static MultiIndex zero(std::size_t d) { return MultiIndex(std::vector<int>(d, 0)); }
  static MultiIndex unit(std::size_t d, std::size_t i, int order = 1);

  std::size_t dimension() const { return index.size(); }
  int order() const;
  // Componentwise partial order.
  bool le(const MultiIndex& other) const;
  MultiIndex minus(const MultiIndex& other) const;
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

// prod_i binom(alpha_i, gamma_i)
double binomial(const MultiIndex& alpha, const MultiIndex& gamma);
// All gamma <= alpha.
std::vector<MultiIndex> sub_indices(const MultiIndex& alpha);
// All multi-indices in d variables of order <= k, ordered by order then lexicographically.
std::vector<MultiIndex> indices_up_to(std::size_t d, int k);

// Truncated Taylor polynomial of order <= 3 in d variables around a point.
// coefficient(alpha) is D^alpha f / alpha!.
class Jet {
 public:
  explicit Jet(std::size_t d = 1);
  static Jet constant(std::size_t d, double c);
  // The coordinate function x_i expanded at the point value x0.
  static Jet variable(std::size_t d, std::size_t i, double x0);

  std::size_t dimension() const { return d_; }
  double value() const { return c_[0]; }
  double coefficient(const MultiIndex& alpha) const;
  double derivative(const MultiIndex& alpha) const;

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator*(double s) const;

  // f(self) given f and its first three derivatives at self.value().
  Jet compose(const std::array<double, 4>& f) const;

 private:
  std::size_t d_;
  std::vector<double> c_;  // indexed like indices_up_to(d, 3)
  const std::vector<MultiIndex>& basis() const;
  std::size_t slot(const MultiIndex& a) const;
};

enum class DerivativeMethod { kExact, kFiniteDifference };

// Smooth function on R^d, zero outside `support` (a box).
struct SmoothTestFunction {
  std::string name;
  std::size_t dimension = 1;
  std::function<double(const Vec&)> value;
  std::function<Jet(const Vec&)> jet;  // empty: finite differences
  Window support;

  DerivativeMethod method() const {
    return jet ? DerivativeMethod::kExact : DerivativeMethod::kFiniteDifference;
  }
  double operator()(const Vec& x) const;
  // D^alpha f(x); |alpha| <= 3.
  double derivative(const MultiIndex& alpha, const Vec& x) const;
};

// Central differences with step 1e-5 and one level of Richardson extrapolation.
double finite_difference(const std::function<double(const Vec&)>& f, const MultiIndex& alpha,
                         const Vec& x, double step = 1e-5);

// Radial bump sigma(|x|_2): 1 on 4 <= |x| <= 16, 0 outside 2 < |x| < 32.
SmoothTestFunction annular_bump(std::size_t d);

// One-dimensional plateau bump: 1 on [-1, 1], supported in [-2, 2].
SmoothTestFunction interval_bump();
CompactFunction as_compact_function(const SmoothTestFunction& f);

// psi = sum_n c_n phi(x / 2^{k_n - 3}) with phi the annular bump.
class PlateauSchwartz {
 public:
  PlateauSchwartz(std::vector<int> k, std::vector<double> c, std::size_t d);

  const std::vector<int>& k() const { return k_; }
  const std::vector<double>& c() const { return c_; }
  std::size_t dimension() const { return d_; }
  const SmoothTestFunction& base() const { return base_; }

  // Index of the shell 2^{k_n-2} < |x| < 2^{k_n+2} containing r, if any.
  std::optional<std::size_t> shell_of(double radius) const;
  double derivative(const MultiIndex& alpha, const Vec& x) const;

  // max_n c_n 2^{(k_n - 3) N'} for N' = 0..8; bounded growth check (2) on the
  // stored truncation.
  std::vector<double> decay_diagnostic() const;
  // sup_n c_n 2^{(k_n - 3)(|beta| - |alpha|)}
  double constant(const MultiIndex& alpha, const MultiIndex& beta) const;

 private:
  std::vector<int> k_;
  std::vector<double> c_;
  std::size_t d_;
  SmoothTestFunction base_;
};

double plateau_eval(const PlateauSchwartz& psi, const Vec& x);

struct SeminormGrid {
  int points_per_axis = 2001;
  std::optional<double> radius;  // defaults to the support
};

struct SeminormEstimate {
  MultiIndex alpha;
  MultiIndex beta;
  double value = 0.0;  // max over the grid of |x^beta D^alpha f(x)|
  Vec argmax;
  std::size_t samples = 0;
  DerivativeMethod method = DerivativeMethod::kExact;
};

SeminormEstimate seminorm_estimate(const SmoothTestFunction& f, const MultiIndex& alpha,
                                   const MultiIndex& beta, const SeminormGrid& grid = {});
// For a plateau function the grid is the base grid scaled onto each shell.
SeminormEstimate seminorm_estimate(const PlateauSchwartz& psi, const MultiIndex& alpha,
                                   const MultiIndex& beta, const SeminormGrid& grid = {});

struct InsufficientGrowth : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReciprocalSelection {
  std::vector<int> k;
  std::vector<double> c;  // c_j = 1 / m_{k_j}
};

// Greedy choice 4 < k_1, k_{j+1} > k_j + 4 with m_{k_j} > 2^{j k_j}.
ReciprocalSelection reciprocal_coefficients(const DyadicProfile& profile,
                                            std::size_t max_terms = 64);

using DerivativeSups = std::map<MultiIndex, double>;
// Keyed by (derivative index, weight index): sup |x^weight D^derivative phi|.
using SeminormTable = std::map<std::pair<MultiIndex, MultiIndex>, double>;

// sum_{gamma <= alpha} binom(alpha, gamma) ||D^gamma f||_inf ||phi||_{alpha - gamma, beta}
double leibniz_product_bound(const DerivativeSups& f_sups, const SeminormTable& phi_seminorms,
                             const MultiIndex& alpha, const MultiIndex& beta);

// f = sum_{u in U} phi_r(x - u) with phi_r(x) = S(1 - |x|^2 / r^2) and 2r the
// minimal gap of U and V. Equals 1 on U and 0 on V.
struct SeparationFunction {
  SmoothTestFunction function;
  double radius = 0.0;
  // sup |phi_r'| along a radius, which bounds |grad f| (disjoint supports).
  double gradient_bound = 0.0;
};
SeparationFunction separation_function(const std::vector<Vec>& u, const std::vector<Vec>& v);

}  // namespace tempered
