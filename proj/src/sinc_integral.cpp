#include "tempered/sinc_integral.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

#include "tempered/numerics.hpp"

namespace tempered {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
// sup |P| for P(t) = integral_0^t (|sin 2 pi u| - 2/pi) du, which is 1/2-periodic.
constexpr double kPrimitiveBound = 0.0336;
constexpr int kTableSize = 4096;
const double kTableEnd = kTableSize * kPi;
constexpr int kHeadPieces = 64;  // Simpson intervals per half period in cached heads
constexpr double kInfinite = std::numeric_limits<double>::infinity();

double product_integrand(double t, double n) {
  const double a = sinc(kTwoPi * t);
  const double b = std::isinf(n) ? 1.0 : sinc(kTwoPi * t / n);
  return std::abs(a * b);
}

// R(w) = sum_{k >= 1} (-1)^k w^{2k} / (2k (2k+1)!), so that
// integral_z^1 (sinc w - 1)/w dw = R(1) - R(z) for 0 <= z <= 1.
double series_r(double w) {
  const double w2 = w * w;
  double term_power = 1.0;
  double factorial = 1.0;  // (2k+1)!
  double sum = 0.0;
  for (int k = 1; k <= 14; ++k) {
    term_power *= w2;
    factorial *= (2.0 * k) * (2.0 * k + 1.0);
    const double t = term_power / (2.0 * k * factorial);
    sum += (k % 2 == 1) ? -t : t;
  }
  return sum;
}

double phi_integrand(double w) {
  const double s = std::sin(w);
  return std::abs(s) / (w * w);
}

struct PhiTable {
  std::vector<double> value;  // Phi(node_k)
  std::vector<double> error;  // accumulated quadrature error
  // node_0 = 1, node_k = k pi
  static double node(int k) { return k == 0 ? 1.0 : k * kPi; }

  PhiTable() : value(kTableSize + 1, 0.0), error(kTableSize + 1, 0.0) {
    CompensatedSum<double> acc;
    double err = 0.0;
    for (int k = 1; k <= kTableSize; ++k) {
      const QuadratureResult q = simpson(phi_integrand, node(k - 1), node(k), 64);
      acc.add(q.value);
      err += q.error + 1e-17;
      value[k] = acc.value();
      error[k] = err;
    }
  }
};

const PhiTable& phi_table() {
  static const PhiTable table;
  return table;
}

SincIntegral cached_head(double n) {
  static std::mutex mutex;
  static std::map<double, SincIntegral> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const SincIntegral h = sinc_detail::direct_half_line(n, sinc_detail::kHeadEnd, 0.5 / kHeadPieces);
  cache.emplace(n, h);
  return h;
}

// integral_0^X |sinc(2 pi t) sinc(2 pi t / n)| dt for X >= kHeadEnd, with
// ln_n = +inf for n = infinity.
SincIntegral asymptotic_half_line(double ln_n, double ln_x) {
  const double t0 = sinc_detail::kHeadEnd;
  const bool infinite = std::isinf(ln_n);
  SincIntegral head;
  if (infinite || ln_n > 40.0 * kLn2) {
    head = cached_head(kInfinite);
    if (!infinite) {
      // |1 - sinc z| <= z^2 / 6 with z <= 2 pi T0 / n on the head.
      const double z = kTwoPi * t0 * std::exp(-ln_n);
      head.error += head.value * z * z / 6.0;
    }
  } else {
    head = cached_head(std::exp(ln_n));
  }
  SincIntegral out;
  out.asymptotic = true;
  const double u0 = 1.0 / (kTwoPi * t0);
  if (infinite) {
    out.value = head.value + (ln_x - std::log(t0)) / (kPi * kPi);
    out.error = head.error + kPrimitiveBound * 2.0 * u0;
    return out;
  }
  const SincIntegral phi0 = sinc_detail::log_phi(std::log(kTwoPi * t0) - ln_n);
  const SincIntegral phi1 = sinc_detail::log_phi(std::log(kTwoPi) + ln_x - ln_n);
  const double z0 = std::exp(std::log(kTwoPi * t0) - ln_n);
  const double k = z0 < 1.0 ? (1.0 - z0) / 3.0 + 2.0 : 2.0 / z0;
  out.value = head.value + (phi1.value - phi0.value) / (kPi * kPi);
  out.error = head.error + kPrimitiveBound * (2.0 * u0 + k * std::exp(-ln_n)) +
              (phi0.error + phi1.error) / (kPi * kPi);
  return out;
}

SincIntegral scaled(SincIntegral s, double factor) {
  s.value *= factor;
  s.error *= factor;
  return s;
}

void require_integer_n(double n) {
  if (!(n >= 1.0) || (std::isfinite(n) && n != std::floor(n))) {
    throw std::invalid_argument("sinc integral: n must be an integer >= 1");
  }
}

}  // namespace

namespace sinc_detail {

SincIntegral log_phi(double ln_z) {
  SincIntegral out;
  if (ln_z <= 0.0) {
    const double z = std::exp(ln_z);
    out.value = ln_z - (series_r(1.0) - series_r(z));
    out.error = 1e-16 * (1.0 + std::abs(ln_z));
    return out;
  }
  const PhiTable& table = phi_table();
  if (ln_z >= std::log(kTableEnd)) {
    const double inv_z = std::exp(-ln_z);
    out.value = table.value[kTableSize] + (2.0 / kPi) * (1.0 / kTableEnd - inv_z);
    out.error = table.error[kTableSize] + 2.0 * kTwoPi * kPrimitiveBound / (kTableEnd * kTableEnd);
    return out;
  }
  const double z = std::exp(ln_z);
  int k = static_cast<int>(std::floor(z / kPi));
  k = std::clamp(k, 0, kTableSize);
  const double start = PhiTable::node(k);
  const QuadratureResult q = simpson(phi_integrand, start, std::max(start, z), 64);
  out.value = table.value[k] + q.value;
  out.error = table.error[k] + q.error + 1e-16;
  return out;
}

SincIntegral direct_half_line(double n, double upper, double quad_step) {
  if (!(quad_step > 0.0)) throw std::invalid_argument("sinc integral: quad_step must be positive");
  SincIntegral out;
  if (!(upper > 0.0)) return out;
  const auto per_piece = static_cast<std::size_t>(std::ceil(0.5 / quad_step));
  const auto pieces = static_cast<std::size_t>(std::ceil(2.0 * upper));
  CompensatedSum<double> total;
  double err = 0.0;
  for (std::size_t k = 0; k < pieces; ++k) {
    const double a = 0.5 * static_cast<double>(k);
    const double b = std::min(0.5 * static_cast<double>(k + 1), upper);
    const auto intervals =
        std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(per_piece * (b - a) / 0.5)));
    const QuadratureResult q = simpson([n](double t) { return product_integrand(t, n); }, a, b, intervals);
    total.add(q.value);
    // Richardson's |S_h - S_2h| / 15 is only asymptotically sharp; double it.
    err += 2.0 * q.error;
  }
  out.value = total.value();
  out.error = err + 1e-15 * out.value;
  return out;
}

}  // namespace sinc_detail

SincIntegral sinc_l1_window(double n, double alpha, double quad_step) {
  require_integer_n(n);
  if (!(alpha > 0.0)) throw std::invalid_argument("sinc_l1_window: alpha must be positive");
  if (alpha <= kDirectWindowLimit) {
    return scaled(sinc_detail::direct_half_line(n, alpha, quad_step), 4.0);
  }
  const double ln_n = std::isinf(n) ? kInfinite : std::log(n);
  return scaled(asymptotic_half_line(ln_n, std::log(alpha)), 4.0);
}

SincIntegral f_hat_l1_window(double alpha, double quad_step) {
  return sinc_l1_window(kInfinite, alpha, quad_step);
}

SincIntegral sinc_l1_window_dyadic(std::optional<int> log2_n, int log2_alpha) {
  if (log2_n && *log2_n < 0) throw std::invalid_argument("sinc_l1_window_dyadic: n must be >= 1");
  if (std::ldexp(1.0, log2_alpha) <= kDirectWindowLimit) {
    const double n = log2_n && *log2_n < 1000 ? std::ldexp(1.0, *log2_n) : kInfinite;
    return scaled(sinc_detail::direct_half_line(n, std::ldexp(1.0, log2_alpha), 1.0 / 64.0), 4.0);
  }
  const double ln_n = log2_n ? *log2_n * kLn2 : kInfinite;
  return scaled(asymptotic_half_line(ln_n, log2_alpha * kLn2), 4.0);
}

double MassParameters::alpha() const { return std::ldexp(1.0, log2_alpha); }
double MassParameters::n() const { return std::ldexp(1.0, log2_n); }

MassParameters find_mass_parameters(double target, int max_log2) {
  if (!(target > 0.0)) throw std::invalid_argument("find_mass_parameters: B must be positive");
  MassParameters out;
  out.target = target;
  int p = -24;
  for (;; ++p, ++out.steps) {
    out.window = sinc_l1_window_dyadic(std::nullopt, p);
    if (out.window.lower() > 2.0 * target) break;
    if (p >= max_log2) {
      std::ostringstream msg;
      msg << "find_mass_parameters: alpha cap 2^" << max_log2 << " reached with window integral "
          << out.window.value << " <= 2B = " << 2.0 * target;
      throw SearchCapReached(msg.str());
    }
  }
  out.log2_alpha = p;
  // The product integral tends to the window integral as n grows, so the scan
  // terminates; q beyond p + 64 cannot add anything visible in double.
  for (int q = 0;; ++q, ++out.steps) {
    out.product = sinc_l1_window_dyadic(q, p);
    if (out.product.lower() > target) {
      out.log2_n = q;
      return out;
    }
    if (q >= p + 200 || q >= max_log2) {
      std::ostringstream msg;
      msg << "find_mass_parameters: n cap 2^" << q << " reached with product integral "
          << out.product.value << " <= B = " << target;
      throw SearchCapReached(msg.str());
    }
  }
}

int smallest_window_exponent(int log2_n, double target, int min_log2, int max_log2) {
  for (int r = min_log2; r <= max_log2; ++r) {
    if (sinc_l1_window_dyadic(log2_n, r).lower() > target) return r;
  }
  throw SearchCapReached("smallest_window_exponent: no window up to the cap reaches the target");
}

}  // namespace tempered
