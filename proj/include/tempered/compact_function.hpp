#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

namespace tempered {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// A real function on R vanishing outside [-support_radius, support_radius].
//
// Besides point values it may carry derivative evaluators, the L1 norm of the
// second derivative (for |ĝ(t)| <= ||g''||_1 / (2 pi t)^2 tail bounds), a
// frequency-domain evaluator for functions whose spatial oscillation is too
// fine for quadrature, and certified bounds on its own L1 norm.
struct CompactFunction {
  std::string name;
  std::function<double(double)> value;
  double support_radius = 1.0;
  std::function<double(double)> first_derivative;
  std::function<double(double)> second_derivative;
  std::optional<double> second_derivative_l1;
  // Shortest length scale on which the function varies; drives quadrature
  // pre-splitting and the budget check in ft_compact.
  double oscillation_scale = 1.0;
  std::function<std::complex<double>(double)> spectral;
  std::optional<Interval> l1_norm;
  bool even = false;  // g(-x) = g(x)

  double operator()(double x) const {
    return std::abs(x) > support_radius ? 0.0 : value(x);
  }
  bool has_derivatives() const {
    return static_cast<bool>(first_derivative) && static_cast<bool>(second_derivative);
  }
};

// x -> (1/beta) g(gamma x): support shrinks by gamma, L1 norm by beta*gamma.
CompactFunction dilate(const CompactFunction& g, double beta, double gamma);

}  // namespace tempered
