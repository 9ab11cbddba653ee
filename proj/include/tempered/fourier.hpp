#pragma once

#include <optional>
#include <variant>

#include "tempered/atomic_measure.hpp"
#include "tempered/block_measure.hpp"
#include "tempered/compact_function.hpp"

namespace tempered {

// Fourier convention: mu^(t) = integral exp(-2 pi i x.t) d mu(x).

Complex ft_eval(const AtomicMeasure& mu, const Vec& t);
Complex ft_product_eval(const ProductMeasure& p, const Vec& t);
Complex ft_block_eval(const BlockMeasure& mu, const Vec& t);

// |mu_{a,b}^(t)|^2 = 4 - 2 cos(2 pi (a+b) t) + 2 cos(2 pi (a-b) t).
double ks_factor_abs2(double a, double b, double t);

// 2 pi sum_j |w_j| |x_j|_2, a bound on |grad mu^|.
double lipschitz_bound(const AtomicMeasure& mu);

// Certified bound on sup_t |mu^(t)|: TV(mu), tightened to 2 sqrt 2 when mu has
// the shape delta_p + delta_{p+a} + delta_{p+b} - delta_{p+a+b}.
double factor_sup_bound(const AtomicMeasure& mu);

// Evaluates a transform together with the constants needed to certify its sup.
// Moduli are handled in normalized form |F(t)| / 2^log2_scale so that large
// products stay representable.
class FTEvaluator {
 public:
  using Source = std::variant<AtomicMeasure, ProductMeasure, BlockMeasure, CompactFunction>;

  explicit FTEvaluator(Source source);

  const Source& source() const { return source_; }
  std::size_t dimension() const { return dimension_; }

  Complex value(const Vec& t) const;
  double normalized_modulus(const Vec& t) const;
  double log2_scale() const { return log2_scale_; }
  // Lipschitz bound of the normalized modulus.
  double normalized_lipschitz() const { return normalized_lipschitz_; }
  // Lipschitz bound of |F| itself (may overflow to inf for huge products).
  double lipschitz_bound() const;
  // A priori bound on sup over all t: TV, or the product of factor bounds.
  double analytic_bound() const;

 private:
  Source source_;
  std::size_t dimension_ = 1;
  double log2_scale_ = 0.0;
  double normalized_lipschitz_ = 0.0;
  std::vector<double> factor_bounds_;  // product sources only
  std::vector<std::optional<std::pair<double, double>>> ks_shapes_;
};

struct SupEstimate {
  double lower = 0.0;             // attained at `witness`
  Vec witness;
  double upper_on_window = 0.0;   // certified over the window
  std::optional<double> analytic_upper;
  double log2_lower = 0.0;
  double log2_upper = 0.0;
  Window window;
  double grid_step = 0.0;
  double min_step = 0.0;          // finest cell after refinement
  std::size_t evaluations = 0;
};

struct SupOptions {
  // Refine cells whose Lipschitz bound exceeds lower * (1 + refine_tolerance).
  bool refine = true;
  double refine_tolerance = 1e-12;
  // Also stop once every open cell bound is below this value (same units as
  // |F|); useful when only an a priori bound needs certifying.
  std::optional<double> stop_below;
  std::size_t max_evaluations = 50'000'000;
};

// Grid search for sup |F| over a window in d = 1 or 2. The upper bound is
// max over cells of (largest corner value + Lipschitz * cell half-diagonal).
SupEstimate sup_norm_estimate(const FTEvaluator& e, const Window& window, double grid_step,
                              const SupOptions& options = {});

enum class SincKind { kF, kFn };
// Closed-form transforms of f = 1_[-1,1] (2 sinc(2 pi t)) and
// f_n = (n/2) 1_[-1/n, 1/n] (sinc(2 pi t / n)).
double sinc_ft(SincKind kind, double t, int n = 1);

enum class QuadratureMethod { kAdaptiveSimpson, kTrapezoid };

// Transform of a compactly supported function by quadrature over its support,
// or by its spectral evaluator when one is attached. kTrapezoid is exact up to
// aliasing for smooth functions vanishing with all derivatives at the edges.
Complex ft_compact(const CompactFunction& g, double t,
                   QuadratureMethod method = QuadratureMethod::kAdaptiveSimpson,
                   double tolerance = 1e-9, std::size_t max_evaluations = 10'000'000);

// Precomputed trapezoid nodes for transforms of smooth compactly supported
// functions. The rule is exact up to aliasing: the error at frequency t is
// sum_{k != 0} g^(t + k/h).
struct TrapezoidTransform {
  double h = 0.0;
  std::vector<double> nodes;
  std::vector<double> values;

  TrapezoidTransform(const CompactFunction& g, double max_frequency);
  // integral g(x) exp(-2 pi i x t) dx
  Complex operator()(double t) const;
};

struct CompactSupOptions {
  SupOptions grid;
  bool tail_bound = true;  // needs second_derivative_l1
};

// Sup of |g^| over the window grid combined with the tail bound
// ||g''||_1 / (2 pi t)^2 outside it.
SupEstimate ft_compact_sup(const CompactFunction& g, const Window& window, double grid_step,
                           const CompactSupOptions& options = {});

struct ParsevalResult {
  Complex lhs;        // sum_j w_j phi(x_j)
  Complex rhs;        // integral_{-T}^{T} phi^(-t) mu^(t) dt
  double gap = 0.0;   // |lhs - rhs|
  double tail_bound = 0.0;
};

// Pairing of a one-dimensional atomic measure with a smooth compactly
// supported test function, directly and through the transform side.
ParsevalResult parseval_pairing(const AtomicMeasure& mu, const CompactFunction& phi,
                                double truncation);

}  // namespace tempered
