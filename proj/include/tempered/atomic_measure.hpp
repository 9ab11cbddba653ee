#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "tempered/types.hpp"

namespace tempered {

using Complex = std::complex<double>;

struct Atom {
  Vec position;
  Complex weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Finite complex point measure sum_j w_j delta_{x_j} on R^d.
//
// Construction normalizes the atom list: positions within kMergeTolerance are
// merged by summing weights, exact zero weights are dropped, and atoms are kept
// in lexicographic position order. Two measures built from the same atoms in
// any order therefore compare equal.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(std::size_t dimension = 1);
  AtomicMeasure(std::size_t dimension, std::vector<Atom> atoms);

  static AtomicMeasure dirac(const Vec& position, Complex weight = 1.0);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  // Minimal pairwise distance of positions; nullopt with fewer than two atoms.
  std::optional<double> min_gap() const { return min_gap_; }

  double total_variation() const;
  Complex total_mass() const;
  // Largest |x|_2 over the support (0 for the empty measure).
  double support_radius() const;

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  std::size_t dimension_;
  std::vector<Atom> atoms_;
  std::optional<double> min_gap_;
};

std::optional<double> minimal_gap(std::vector<Vec> positions);

AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b);
AtomicMeasure translate(const AtomicMeasure& mu, const Vec& v);
AtomicMeasure variation(const AtomicMeasure& mu);
AtomicMeasure restrict_to(const AtomicMeasure& mu, const Window& window);
AtomicMeasure scale_weights(const AtomicMeasure& mu, Complex factor);
// c1*a + c2*b
AtomicMeasure linear_combination(const AtomicMeasure& a, Complex c1,
                                 const AtomicMeasure& b, Complex c2);
double total_variation(const AtomicMeasure& mu);

// mu = (pos_real - neg_real) + i (pos_imag - neg_imag), all four parts positive
// with disjoint supports inside each pair.
struct HahnJordan {
  AtomicMeasure pos_real;
  AtomicMeasure neg_real;
  AtomicMeasure pos_imag;
  AtomicMeasure neg_imag;
};
HahnJordan hahn_jordan(const AtomicMeasure& mu);
AtomicMeasure recombine(const HahnJordan& parts);

enum class Distinctness { kUnknown, kCertified, kAssumed, kCollision };

// Lazy convolution product: scale * delta_shift * factor_1 * ... * factor_n.
// The implicit atom count is the product of the factor sizes; nothing is
// enumerated until explicitly requested.
class ProductMeasure {
 public:
  ProductMeasure(std::vector<AtomicMeasure> factors, Vec shift, double scale = 1.0,
                 Distinctness distinct = Distinctness::kUnknown);

  std::size_t dimension() const { return shift_.size(); }
  const std::vector<AtomicMeasure>& factors() const { return factors_; }
  const Vec& shift() const { return shift_; }
  double scale() const { return scale_; }
  Distinctness distinctness() const { return distinct_; }

  // Product of factor sizes; saturates at SIZE_MAX.
  std::size_t implicit_size() const;
  // log2 of the implicit atom count.
  double log2_implicit_size() const;

  ProductMeasure with_distinctness(Distinctness d) const;
  ProductMeasure with_scale(double scale) const;
  ProductMeasure translated(const Vec& v) const;

  // All sum-positions with product weights, unmerged, in mixed-radix order
  // (factor 1 varies slowest). Throws BudgetExceeded past `max_atoms`.
  std::vector<Atom> raw_atoms(std::size_t max_atoms) const;
  AtomicMeasure enumerate(std::size_t max_atoms) const;

  // Sum over factors of log2 TV(factor), plus log2 scale.
  double log2_total_variation_bound() const;
  // Largest |x|_2 any implicit atom can reach: |shift| + sum of factor radii.
  double support_radius_bound() const;

  friend bool operator==(const ProductMeasure&, const ProductMeasure&) = default;

 private:
  std::vector<AtomicMeasure> factors_;
  Vec shift_;
  double scale_;
  Distinctness distinct_;
};

ProductMeasure translate(const ProductMeasure& p, const Vec& v);

struct DistinctnessReport {
  enum class Verdict { kDistinct, kCollision, kUncertified };
  Verdict verdict = Verdict::kUncertified;
  std::optional<double> min_gap;
  bool distinct() const { return verdict == Verdict::kDistinct; }
};

DistinctnessReport distinctness_check(const ProductMeasure& p, std::size_t max_atoms);

// Exact TV for products: analytic when distinctness is certified, assumed, or
// can be certified within budget; otherwise enumeration with merging.
double total_variation(const ProductMeasure& p, std::size_t max_atoms);
double log2_total_variation(const ProductMeasure& p, std::size_t max_atoms);

}  // namespace tempered
