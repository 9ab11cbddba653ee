#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tempered {

using Vec = std::vector<double>;

// Positions closer than this (Euclidean) are treated as one atom.
inline constexpr double kMergeTolerance = 1e-12;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised whenever a computation would exceed one of the Budgets below.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A construction produced a value violating one of its certified bounds.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Budgets {
  std::size_t atoms = std::size_t{1} << 20;      // explicit enumeration
  std::size_t product_factors = 1024;            // lazy product form
  std::size_t quadrature_points = 10'000'000;    // per integral
  std::size_t grid_points = 50'000'000;          // per sup search
};

// Axis-aligned closed box in R^d.
class Window {
 public:
  Window() = default;
  Window(Vec lower, Vec upper);

  static Window interval(double lo, double hi) { return Window({lo}, {hi}); }
  static Window cube(std::size_t dim, double lo, double hi);
  static Window everything(std::size_t dim);

  std::size_t dimension() const { return lower_.size(); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  bool contains(const Vec& x) const;
  bool intersects(const Window& other) const;
  Window shifted(const Vec& v) const;
  bool empty_interior() const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Vec lower_;
  Vec upper_;
};

double norm2(const Vec& x);
double dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
void require_same_dimension(std::size_t a, std::size_t b, const char* what);

}  // namespace tempered
