#pragma once

#include <optional>
#include <stdexcept>

namespace tempered {

// Windowed L1 integrals of f^(t) = 2 sinc(2 pi t) and f_n^(t) = sinc(2 pi t / n).
//
// Small windows are integrated directly (composite Simpson on each half period
// [k/2, (k+1)/2], where both factors keep a constant sign). Large windows use
// a head integral on [0, 256] plus an asymptotic tail in which |sin 2 pi t| is
// replaced by its mean 2/pi; the replacement error is bounded by one
// integration by parts against the periodic primitive of |sin| - 2/pi.
// Windows and n are then handled through their logarithms, so alpha = 2^p and
// n = 2^q stay usable far beyond the double range.

struct SincIntegral {
  double value = 0.0;
  double error = 0.0;        // absolute error bound (estimate for the direct rule)
  bool asymptotic = false;
  double lower() const { return value - error; }
  double upper() const { return value + error; }
};

// Largest window integrated directly.
inline constexpr double kDirectWindowLimit = 4096.0;

// integral_{-alpha}^{alpha} |f_n^(t) f^(t)| dt for integer n >= 1.
SincIntegral sinc_l1_window(double n, double alpha, double quad_step = 1.0 / 64.0);

// integral_{-alpha}^{alpha} |f^(t)| dt.
SincIntegral f_hat_l1_window(double alpha, double quad_step = 1.0 / 64.0);

// Dyadic versions: alpha = 2^log2_alpha, n = 2^log2_n (nullopt: n = infinity,
// which gives the f^ integral).
SincIntegral sinc_l1_window_dyadic(std::optional<int> log2_n, int log2_alpha);

struct MassParameters {
  double target = 0.0;       // B
  int log2_alpha = 0;
  SincIntegral window;       // integral of |f^| over [-alpha, alpha], > 2B
  int log2_n = 0;
  SincIntegral product;      // integral of |f_n^ f^| over [-alpha, alpha], > B
  int steps = 0;             // dyadic steps taken by both scans

  double alpha() const;
  double n() const;
};

struct SearchCapReached : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dyadic search: the smallest alpha = 2^p with certified window integral > 2B,
// then the smallest n = 2^q with certified product integral > B.
MassParameters find_mass_parameters(double target, int max_log2 = 200'000);

// Smallest r >= min_log2 with certified integral_{-2^r}^{2^r} |f_n^ f^| > target.
int smallest_window_exponent(int log2_n, double target, int min_log2, int max_log2);

// Pieces of the asymptotic machinery, exposed for testing.
namespace sinc_detail {
inline constexpr double kHeadEnd = 256.0;
// Phi(z) = integral_1^z |sin w| / w^2 dw, taking ln z; returns value and error.
SincIntegral log_phi(double ln_z);
// integral_0^{T} |sinc(2 pi t) sinc(2 pi t / n)| dt by direct Simpson.
SincIntegral direct_half_line(double n, double upper, double quad_step);
}  // namespace sinc_detail

}  // namespace tempered
