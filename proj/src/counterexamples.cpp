#include "tempered/counterexamples.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/prime.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "tempered/numerics.hpp"

namespace tempered {

AtomicMeasure ks_block(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("ks_block: a and b must be positive and finite");
  }
  if (std::abs(a - b) <= kMergeTolerance) throw std::invalid_argument("ks_block: a and b coincide");
  return AtomicMeasure(1, {{{0.0}, 1.0}, {{a}, 1.0}, {{b}, 1.0}, {{a + b}, -1.0}});
}

void KSParameters::validate() const {
  if (n < 1) throw std::invalid_argument("KSParameters: n must be positive");
  if (a.size() != static_cast<std::size_t>(n) || b.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("KSParameters: a and b must have length n");
  }
  const double cap = 1.0 / n;
  std::vector<double> all(a);
  all.insert(all.end(), b.begin(), b.end());
  for (double v : all) {
    if (!(v > 0.0) || v > cap) throw std::invalid_argument("KSParameters: values must lie in (0, 1/n]");
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("KSParameters: values must be pairwise distinct");
  }
}

KSParameters q_independent_sample(int n) {
  if (n < 1) throw std::invalid_argument("q_independent_sample: n must be positive");
  if (2 * static_cast<long>(n) > static_cast<long>(boost::math::max_prime)) {
    throw BudgetExceeded("q_independent_sample: prime table exhausted");
  }
  // boost::math::prime(k) is the (k + 1)-th prime.
  const auto p = [](int k) { return static_cast<std::uint64_t>(boost::math::prime(static_cast<unsigned>(k - 1))); };
  const std::uint64_t top = p(2 * n);
  std::uint64_t c = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(top)));
  while (c * c < top) ++c;
  while (c > 1 && (c - 1) * (c - 1) >= top) --c;
  const double denom = static_cast<double>(c) * n;
  KSParameters out;
  out.n = n;
  out.provenance = KSParameters::Provenance::kSqrtPrimeScaled;
  for (int i = 1; i <= n; ++i) {
    out.a.push_back(std::sqrt(static_cast<double>(p(2 * i - 1))) / denom);
    out.b.push_back(std::sqrt(static_cast<double>(p(2 * i))) / denom);
  }
  out.validate();
  return out;
}

ProductMeasure make_nu(const KSParameters& params) {
  params.validate();
  std::vector<AtomicMeasure> factors;
  factors.reserve(params.a.size());
  for (int i = 0; i < params.n; ++i) factors.push_back(ks_block(params.a[i], params.b[i]));
  ProductMeasure nu(std::move(factors), {0.0});
  if (params.n <= kCertifiedDistinctMax) {
    const DistinctnessReport r = distinctness_check(nu, std::size_t{1} << 20);
    if (r.verdict == DistinctnessReport::Verdict::kCollision) {
      throw VerificationFailure("make_nu: two subset sums coincide");
    }
    if (r.distinct()) return nu.with_distinctness(Distinctness::kCertified);
    return nu;
  }
  if (params.provenance == KSParameters::Provenance::kSqrtPrimeScaled) {
    return nu.with_distinctness(Distinctness::kAssumed);
  }
  return nu;
}

int ks_sign(const std::vector<int>& k, const std::vector<int>& l) {
  if (k.size() != l.size()) throw std::invalid_argument("ks_sign: index lengths differ");
  int count = 0;
  for (std::size_t i = 0; i < k.size(); ++i) count += (k[i] == 1 && l[i] == 1) ? 1 : 0;
  return count % 2 == 0 ? 1 : -1;
}

int omega_minimal_n(int m) {
  if (m < 1) throw std::invalid_argument("omega_minimal_n: m must be positive");
  using boost::multiprecision::cpp_int;
  // 2^{n/2} >= 2^m (m^2+1)^m  <=>  2^n >= 4^m (m^2+1)^{2m}
  const cpp_int rhs = boost::multiprecision::pow(cpp_int(4), static_cast<unsigned>(m)) *
                      boost::multiprecision::pow(cpp_int(m) * m + 1, 2u * static_cast<unsigned>(m));
  int n = 0;
  cpp_int power = 1;
  while (power < rhs) {
    power <<= 1;
    ++n;
  }
  return n;
}

OmegaBlock make_omega(int m, const OmegaOptions& options) {
  if (m < 1) throw std::invalid_argument("make_omega: m must be positive");
  const int n = omega_minimal_n(m);
  if (static_cast<std::size_t>(n) > options.budgets.product_factors) {
    throw BudgetExceeded("make_omega: n = " + std::to_string(n) + " exceeds the product-form budget");
  }
  OmegaBlock out;
  out.m = m;
  out.n = n;
  out.params = q_independent_sample(n);
  out.nu = make_nu(out.params);

  SupOptions sup;
  sup.refine = false;
  sup.max_evaluations = options.budgets.grid_points;
  out.sup_est = sup_norm_estimate(FTEvaluator(out.nu), options.window, options.grid_step, sup);
  out.log2_scale = -m - out.sup_est.log2_lower;
  out.scale = std::exp2(out.log2_scale);
  out.omega = out.nu.with_scale(out.scale);
  out.log2_tv = 2.0 * n + out.log2_scale;
  out.tv = std::exp2(out.log2_tv);

  const double threshold = m + m * std::log2(static_cast<double>(m) * m + 1.0);
  ClaimReport& r = out.report;
  r.at_least("n-threshold", "log2: n/2 >= m + m log2(m^2+1)", n / 2.0, threshold, 1e-12 * threshold);
  r.at_most("n-minimal", "log2: (n-1)/2 < m + m log2(m^2+1)", (n - 1) / 2.0, threshold, 0.0);
  r.at_most("sup-analytic", "log2 sup lower <= 3n/2", out.sup_est.log2_lower, 1.5 * n, 1e-9);
  r.at_least("tv-growth", "log2 TV(omega_m) >= m log2(m^2+1)", out.log2_tv,
             m * std::log2(static_cast<double>(m) * m + 1.0), 1e-9);
  r.at_least("tv-half", "log2 TV(omega_m) >= n/2 - m", out.log2_tv, n / 2.0 - m, 1e-9);
  const double omega_sup = std::exp2(out.sup_est.log2_lower) * out.scale;
  r.equal("omega-sup", "sup on window of omega_m^ = 2^-m", omega_sup, std::exp2(-m), 1e-12 * std::exp2(-m));
  r.equal("bookkeeping", "log2 [TV 2^m lower] = 2n", out.log2_tv + m + out.sup_est.log2_lower, 2.0 * n,
          1e-9 * n);
  r.at_most("support", "supp omega_m within [0, 2]", out.nu.support_radius_bound(), 2.0, 1e-12);
  r.require("make_omega(" + std::to_string(m) + ")");
  return out;
}

namespace {
bool default_omega_options(const OmegaOptions& o) {
  const OmegaOptions d;
  return o.window == d.window && o.grid_step == d.grid_step &&
         o.budgets.product_factors == d.budgets.product_factors &&
         o.budgets.grid_points == d.budgets.grid_points;
}
}  // namespace

const OmegaBlock& omega_block(int m) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<OmegaBlock>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<OmegaBlock>(make_omega(m));
  return *slot;
}

BlockMeasure discrete_counterexample(int M) { return discrete_counterexample(M, OmegaOptions{}); }

BlockMeasure discrete_counterexample(int M, const OmegaOptions& options) {
  if (M < 1) throw std::invalid_argument("discrete_counterexample: M must be positive");
  const bool cached = default_omega_options(options);
  std::vector<BlockPayload> payloads;
  payloads.reserve(static_cast<std::size_t>(M));
  for (int m = 1; m <= M; ++m) {
    payloads.emplace_back(cached ? omega_block(m).omega : make_omega(m, options).omega);
  }
  return BlockMeasure::lattice({8.0}, 2.0, std::move(payloads), 1);
}

// ---------------------------------------------------------------------------
// Continuous pipeline

namespace {

constexpr double kPhiHatEnd = 256.0;
constexpr int kPhiHatPerUnit = 128;

// phi^ on [0, 256] at step 1/128 (phi is real and even, so phi^ is too).
struct PhiHatTable {
  CompactFunction phi;
  std::vector<double> values;
  double step = 1.0 / kPhiHatPerUnit;
  double l1 = 0.0;        // Simpson value of ||phi^||_1
  double l1_upper = 0.0;  // plus quadrature and tail allowances
};

const PhiHatTable& phi_hat_table() {
  static const PhiHatTable table = [] {
    PhiHatTable t;
    const SmoothTestFunction bump = interval_bump();
    t.phi = as_compact_function(bump);
    const TrapezoidTransform transform(t.phi, kPhiHatEnd);
    const auto count = static_cast<std::size_t>(kPhiHatEnd) * kPhiHatPerUnit;
    t.values.resize(count + 1);
    for (std::size_t k = 0; k <= count; ++k) t.values[k] = transform(t.step * k).real();

    // Simpson at steps h and 2h on |phi^| over [0, 256], doubled for the
    // negative half line.
    const auto rule = [&](std::size_t stride) {
      CompensatedSum<double> s;
      const std::size_t last = count / stride;
      for (std::size_t i = 0; i <= last; ++i) {
        const double w = (i == 0 || i == last) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        s.add(w * std::abs(t.values[i * stride]));
      }
      return s.value() * t.step * static_cast<double>(stride) / 3.0;
    };
    const double fine = rule(1), coarse = rule(2);
    const double quad_error = std::abs(fine - coarse) / 15.0;
    const MultiIndex d3 = MultiIndex::unit(1, 0, 3);
    const QuadratureResult third = adaptive_simpson(
        [&](double x) { return std::abs(bump.derivative(d3, {x})); }, -2.0, 2.0, 1e-6, 256, 10'000'000);
    const double d3_l1 = third.value + 10.0 * third.error;
    // integral_{|t| > T} |phi^| <= ||phi'''||_1 / (8 pi^3 T^2)
    const double tail = d3_l1 / (8.0 * kPi * kPi * kPi * kPhiHatEnd * kPhiHatEnd);
    t.l1 = 2.0 * fine;
    t.l1_upper = 2.0 * fine + 20.0 * quad_error + tail + 1e-12;
    return t;
  }();
  return table;
}

// y * 2^e reduced mod 1 into [-1/2, 1/2], exactly.
double scaled_frac(double y, int e) {
  if (y == 0.0 || !std::isfinite(y)) return 0.0;
  int ey = 0;
  std::frexp(y, &ey);
  if (ey - 53 + e >= 0) return 0.0;  // y 2^e is an integer
  const double v = std::ldexp(y, e);
  return v - std::nearbyint(v);
}

// h_1(x) = a f^(a x) f_n^(a x) = 2 a sinc(2 pi a x) sinc(2 pi a x / n),
// with a = 2^r and n = 2^q.
double needle(double x, int r, int q) {
  const double ax = std::ldexp(x, r);
  if (std::abs(ax) < 1e-4) {
    return std::ldexp(2.0 * sinc(kTwoPi * ax) * sinc(kTwoPi * std::ldexp(x, r - q)), r);
  }
  const double s1 = std::sin(kTwoPi * scaled_frac(x, r));
  const double s2 = std::sin(kTwoPi * scaled_frac(x, r - q));
  // 2a sin(2 pi a x) sin(2 pi a x / n) / ((2 pi a x)(2 pi a x / n)) = 2n s1 s2 / (4 pi^2 a x^2)
  return std::ldexp((s1 / (kTwoPi * x)) * (s2 / (kTwoPi * x)), q - r + 1);
}

// h^ restricted to the argument u = s - w: the trapezoid
// (f_n * f)(u / a), equal to 1 for |u| <= a - a/n and 0 for |u| >= a + a/n.
double needle_hat(double u, int r, int q) {
  if (r >= 1000) return 1.0;
  const double a = std::ldexp(1.0, r), an = std::ldexp(1.0, r - q);
  u = std::abs(u);
  if (u <= a - an) return 1.0;
  if (u >= a + an) return 0.0;
  return (a + an - u) / (2.0 * an);
}

}  // namespace

ContinuousG construct_g(double A) {
  if (!(A > 0.0) || !std::isfinite(A)) throw std::invalid_argument("construct_g: A must be positive");
  const PhiHatTable& table = phi_hat_table();
  ContinuousG out;
  out.A = A;
  out.phi = table.phi;
  out.phi_hat_l1 = table.l1;
  out.C = table.l1_upper;
  const double C = out.C;

  out.mass = find_mass_parameters(1.01 * A * C);
  const int q = out.mass.log2_n;
  const int r = smallest_window_exponent(q, A * C, std::min(0, out.mass.log2_alpha), out.mass.log2_alpha);
  out.log2_a = r;
  out.window = sinc_l1_window_dyadic(q, r);
  const SincIntegral outer = sinc_l1_window_dyadic(q, r + 1);
  out.l1_mass = out.window.lower() / C;
  out.l1_upper = outer.upper() / C;
  out.ft_sup = table.l1_upper / C;

  CompactFunction& g = out.g;
  g.name = "g";
  g.support_radius = 2.0;
  g.even = true;
  g.oscillation_scale = std::ldexp(1.0, -r);
  g.l1_norm = Interval{out.l1_mass, out.l1_upper};
  const CompactFunction phi = table.phi;
  g.value = [phi, C, r, q](double x) {
    const double p = phi(x);
    return p == 0.0 ? 0.0 : p * needle(x, r, q) / C;
  };
  // g^ = phi^ * h_1^ / C, integrated over the tabulated band of phi^.
  g.spectral = [&table, C, r, q](double s) -> Complex {
    const std::size_t count = table.values.size() - 1;
    CompensatedSum<double> acc;
    for (std::size_t k = 0; k <= 2 * count; ++k) {
      const double w = table.step * (static_cast<double>(k) - static_cast<double>(count));
      const std::size_t idx = k >= count ? k - count : count - k;
      const double weight = (k == 0 || k == 2 * count) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      acc.add(weight * table.values[idx] * needle_hat(s - w, r, q));
    }
    return acc.value() * table.step / 3.0 / C;
  };

  std::vector<double> samples;
  for (int k = -128; k <= 128; ++k) samples.push_back(k / 16.0);
  if (r < 1000 && q <= 40) {
    const double a = std::ldexp(1.0, r), an = std::ldexp(1.0, r - q);
    for (int k = -64; k <= 64; ++k) samples.push_back(a + an * (k / 32.0));
  }
  for (double s : samples) out.ft_sup_sampled = std::max(out.ft_sup_sampled, std::abs(g.spectral(s)));

  if (q >= 1 && r <= 1070) {
    // a x = 3/4 gives sin(2 pi a x) = -1 while 0 < a x / n < 1/2.
    const double x = std::ldexp(0.75, -r);
    out.negative_witness = std::pair{x, g(x)};
  }

  ClaimReport& rep = out.report;
  rep.at_least("mass-window", "integral_{-alpha}^{alpha} |f^| > 2B", out.mass.window.lower(),
               2.0 * out.mass.target);
  rep.at_least("mass-product", "integral_{-alpha}^{alpha} |f_n^ f^| > B", out.mass.product.lower(),
               out.mass.target);
  rep.at_least("window-mass", "integral_{-a}^{a} |h| > A C", out.window.lower(), A * C);
  rep.at_least("l1-mass", "||g||_1 >= A", out.l1_mass, A);
  rep.at_most("ft-sup", "||g^||_inf <= 1", out.ft_sup, 1.0, 1e-6);
  rep.at_most("ft-sup-sampled", "sampled |g^| <= certified bound", out.ft_sup_sampled, out.ft_sup, 1e-9);
  rep.at_most("support", "supp g within [-2, 2]", g.support_radius, 2.0);
  rep.at_most("phi-hat-l1", "quadrature ||phi^||_1 <= C", out.phi_hat_l1, C);
  if (out.negative_witness) {
    rep.at_most("negative-value", "g takes a negative value", out.negative_witness->second,
                -std::numeric_limits<double>::min());
  }
  rep.require("construct_g");
  return out;
}

double g_n_target(int n) {
  return std::exp2(n) * std::pow(static_cast<double>(n) * n + 1.0, n);
}

GN make_g_n(int n) {
  if (n < 1) throw std::invalid_argument("make_g_n: n must be positive");
  GN out;
  out.n = n;
  out.base = construct_g(g_n_target(n));
  out.gamma = 2.0 * (n + 1);
  out.beta = std::exp2(n - 1) / (n + 1);
  out.g = dilate(out.base.g, out.beta, out.gamma);
  out.g.name = "g_" + std::to_string(n);
  const double bg = out.beta * out.gamma;
  out.l1_mass = out.base.l1_mass / bg;
  out.ft_sup = out.base.ft_sup / bg;

  const double mass = std::pow(static_cast<double>(n) * n + 1.0, n);
  const double ft = std::exp2(-n);
  ClaimReport& r = out.report;
  r.at_most("support", "supp g_n within [-1/(n+1), 1/(n+1)]", out.g.support_radius, 1.0 / (n + 1),
            1e-15);
  r.at_least("l1-mass", "||g_n||_1 >= (n^2+1)^n", out.l1_mass, mass, 1e-6 * mass);
  r.at_most("ft-sup", "||g_n^||_inf <= 2^-n", out.ft_sup, ft, 1e-6 * ft);
  r.require("make_g_n(" + std::to_string(n) + ")");
  return out;
}

const GN& g_n_block(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GN>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GN>(make_g_n(n));
  return *slot;
}

ContinuousCounterexample continuous_counterexample(int N) {
  if (N < 1) throw std::invalid_argument("continuous_counterexample: N must be positive");
  std::vector<Block> blocks;
  std::vector<GN> parts;
  ClaimReport report;
  for (int j = 1; j <= N; ++j) {
    const GN& part = g_n_block(j);
    parts.push_back(part);
    blocks.push_back({{-static_cast<double>(j)}, DensityBlock{part.g}});
    report.append(part.report, "g_" + std::to_string(j) + ".");
  }
  return {BlockMeasure(1, std::move(blocks), 0.5, {-1.0}), std::move(parts), std::move(report)};
}

ContinuousPairing continuous_pairing(const ContinuousCounterexample& mu, const SmoothTestFunction& psi) {
  require_same_dimension(psi.dimension, 1, "continuous_pairing");
  const double lo = psi.support.lower()[0], hi = psi.support.upper()[0];
  const MultiIndex d2 = MultiIndex::unit(1, 0, 2);
  // Composite Simpson with a safety factor; these norms only scale the error bound.
  const auto intervals = static_cast<std::size_t>(std::ceil(512.0 * (hi - lo))) + 8;
  const auto norm = [&](const std::function<double(double)>& f) {
    const QuadratureResult q = simpson(f, lo, hi, intervals);
    return 1.01 * q.value + 10.0 * q.error;
  };
  const double psi_l1 = norm([&](double x) { return std::abs(psi({x})); });
  const double psi_d2_l1 = norm([&](double x) { return std::abs(psi.derivative(d2, {x})); });
  ContinuousPairing out;
  CompensatedSum<double> total;
  for (std::size_t i = 0; i < mu.blocks.size(); ++i) {
    const GN& part = mu.blocks[i];
    const int j = static_cast<int>(i) + 1;
    const double radius = part.g.support_radius;
    if (-j + radius <= lo || -j - radius >= hi) continue;
    out.blocks.push_back(j);
    const ContinuousG& base = part.base;
    const double bgc = part.beta * part.gamma * base.C;
    total.add(psi({-static_cast<double>(j)}) * base.phi(0.0) / bgc);

    // chi(u) = psi(u / gamma - j); the cut-off error only involves frequencies
    // beyond half of a - a/n.
    const int r = base.log2_a, q = base.log2_n();
    if (r >= 1000) continue;
    const double half = 0.5 * (std::ldexp(1.0, r) - std::ldexp(1.0, r - q));
    const double chi_l1 = part.gamma * psi_l1;
    const double chi_d2 = psi_d2_l1 / part.gamma;
    const double chi_hat_l1 = 2.0 * std::sqrt(chi_l1 * chi_d2) / kPi;
    const double chi_tail = chi_d2 / (2.0 * kPi * kPi * half);
    const double phi_tail = *base.phi.second_derivative_l1 / (2.0 * kPi * kPi * half);
    out.error += (base.C * chi_tail + chi_hat_l1 * phi_tail) / bgc;
  }
  out.value = total.value();
  return out;
}

}  // namespace tempered
