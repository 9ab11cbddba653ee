#include "tempered/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "tempered/counterexamples.hpp"
#include "tempered/fourier.hpp"
#include "tempered/numerics.hpp"
#include "tempered/schwartz.hpp"
#include "tempered/sinc_integral.hpp"
#include "tempered/temperedness.hpp"

namespace tempered {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string idx(const std::string& base, int i) { return base + "[" + std::to_string(i) + "]"; }

// ---------------------------------------------------------------- ks

void ks_suite(const SuiteOptions& opt, ClaimReport& r) {
  Rng rng(opt.seed);
  double worst_gap = 0.0, lo = 8.0, hi = 0.0, worst_tv = 0.0;
  for (int pair = 0; pair < 20; ++pair) {
    double a = uniform(rng, 0.05, 3.0), b = uniform(rng, 0.05, 3.0);
    while (std::abs(a - b) < 1e-3) b = uniform(rng, 0.05, 3.0);
    const AtomicMeasure mu = ks_block(a, b);
    worst_tv = std::max(worst_tv, std::abs(mu.total_variation() - 4.0));
    for (int i = 0; i < 1000; ++i) {
      const double t = -50.0 + 100.0 * i / 999.0;
      const double direct = std::norm(ft_eval(mu, {t}));
      const double closed = ks_factor_abs2(a, b, t);
      worst_gap = std::max(worst_gap, std::abs(direct - closed));
      lo = std::min(lo, closed);
      hi = std::max(hi, closed);
    }
  }
  r.at_most("ks.abs2", "|mu_ab^|^2 equals the closed form", worst_gap, 0.0, 1e-12);
  r.at_least("ks.range-low", "|mu_ab^|^2 >= 0", lo, 0.0);
  r.at_most("ks.range-high", "|mu_ab^|^2 <= 8", hi, 8.0, 1e-12);
  r.at_most("ks.tv", "TV(mu_ab) = 4", worst_tv, 0.0);

  // nu_n exactness
  for (int n = 1; n <= opt.n_max; ++n) {
    const KSParameters params = q_independent_sample(n);
    const ProductMeasure nu = make_nu(params);
    const std::vector<Atom> raw = nu.raw_atoms(opt.budgets.atoms);
    std::size_t sign_mismatch = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      std::vector<int> k(n), l(n);
      std::size_t rest = i;
      for (int f = n - 1; f >= 0; --f) {
        const std::size_t digit = rest % 4;
        rest /= 4;
        const AtomicMeasure& factor = nu.factors()[f];
        const double x = factor.atoms()[digit].position[0];
        const double a = params.a[f], b = params.b[f];
        k[f] = (x == a || x == a + b) ? 1 : 0;
        l[f] = (x == b || x == a + b) ? 1 : 0;
      }
      if (raw[i].weight != Complex(ks_sign(k, l), 0.0)) ++sign_mismatch;
    }
    const AtomicMeasure enumerated = nu.enumerate(opt.budgets.atoms);
    const double expect = std::ldexp(1.0, 2 * n);
    r.equal(idx("nu.atoms", n), "nu_n has 4^n atoms", static_cast<double>(enumerated.size()), expect);
    r.equal(idx("nu.signs", n), "weights follow the sign formula", static_cast<double>(sign_mismatch), 0.0);
    r.equal(idx("nu.tv", n), "TV(nu_n) = 4^n", enumerated.total_variation(), expect);
    r.equal(idx("nu.tv-analytic", n), "analytic TV(nu_n) = 4^n", total_variation(nu, opt.budgets.atoms), expect);
    double worst = 0.0;
    Rng trng(opt.seed + static_cast<std::uint64_t>(n));
    for (int i = 0; i < 1000; ++i) {
      const double t = uniform(trng, -100.0, 100.0);
      const Complex e = ft_eval(enumerated, {t});
      const Complex p = ft_product_eval(nu, {t});
      worst = std::max(worst, std::abs(e - p) / std::max(std::abs(e), 1.0));
    }
    r.at_most(idx("nu.ft-product", n), "product transform matches enumeration", worst, 0.0, 1e-9);
  }

  // Certified sups of the product transforms
  const Window window = opt.window.value_or(Window::interval(0.0, 1000.0));
  const double step = opt.grid_step.value_or(0.01);
  for (int n = 1; n <= 12; ++n) {
    const FTEvaluator e(make_nu(q_independent_sample(n)));
    SupOptions so;
    so.max_evaluations = opt.budgets.grid_points;
    so.stop_below = std::exp2(1.5 * n) * (1.0 + 1e-10);
    const SupEstimate s = sup_norm_estimate(e, window, step, so);
    r.at_most(idx("sup.nu-upper", n), "sup on window of |nu_n^| <= 2^{3n/2}", s.log2_upper, 1.5 * n,
              std::log2(1.0 + 1e-9));
  }
  {
    const KSParameters p = q_independent_sample(1);
    const FTEvaluator e(ks_block(p.a[0], p.b[0]));
    SupOptions so;
    so.max_evaluations = opt.budgets.grid_points;
    so.stop_below = 2.0 * std::sqrt(2.0) * (1.0 + 1e-10);
    const SupEstimate s = sup_norm_estimate(e, Window::interval(0.0, 1e4), step, so);
    r.at_least("sup.ks-lower", "window sup of |mu_ab^| approaches 2 sqrt 2", s.lower, 2.8);
    r.at_most("sup.ks-upper", "certified sup of |mu_ab^| <= 2 sqrt 2", s.upper_on_window, 2.0 * std::sqrt(2.0),
              1e-9);
  }

  // Parseval pairing
  {
    const KSParameters p = q_independent_sample(1);
    const ParsevalResult pr =
        parseval_pairing(ks_block(p.a[0], p.b[0]), as_compact_function(interval_bump()), 200.0);
    r.at_most("parseval.gap", "pairing equals its transform-side integral", pr.gap, 0.0, 1e-6);
  }
}

// ---------------------------------------------------------------- omega

void omega_suite(const SuiteOptions& opt, ClaimReport& r) {
  OmegaOptions oo;
  if (opt.window) oo.window = *opt.window;
  if (opt.grid_step) oo.grid_step = *opt.grid_step;
  oo.budgets = opt.budgets;
  const OmegaOptions defaults;
  const bool custom = !(oo.window == defaults.window && oo.grid_step == defaults.grid_step);
  const auto block = [&](int m) -> OmegaBlock { return custom ? make_omega(m, oo) : omega_block(m); };

  for (int m = 1; m <= opt.m_max; ++m) {
    const OmegaBlock b = block(m);
    r.append(b.report, idx("omega", m) + ".");
    const double growth = std::pow(static_cast<double>(m) * m + 1.0, m);
    r.at_least(idx("omega.tv", m), "TV(omega_m) >= (m^2+1)^m", b.tv, growth);
  }

  const int M = 30;
  std::vector<BlockPayload> payloads;
  for (int m = 1; m <= M; ++m) payloads.emplace_back(block(m).omega);
  const BlockMeasure mu = BlockMeasure::lattice({8.0}, 2.0, std::move(payloads), 1);
  for (int p = 1; p <= 6; ++p) {
    const std::vector<double> partials = block_divergence_partials(mu, p, opt.budgets.atoms);
    r.at_least(idx("divergence.total", p), "sum_m TV(omega_m) / (1 + (8m+2)^p) > 1e6", partials.back(), 1e6);
    double worst_step = std::numeric_limits<double>::infinity();
    for (int m = 10; m < M; ++m) worst_step = std::min(worst_step, partials[m] - partials[m - 1]);
    r.at_least(idx("divergence.increasing", p), "partials increase past m = 10", worst_step, 0.0);
    r.at_most(idx("divergence.strict", p), "partials strictly increase", 0.0, worst_step);
  }
}

// ---------------------------------------------------------------- discrete

void discrete_suite(const SuiteOptions& opt, ClaimReport& r) {
  const Window k = Window::interval(6.0, 10.0);
  const AtomicMeasure first = restrict_to(discrete_counterexample(1), k, opt.budgets.atoms);
  const AtomicMeasure expected = translate(omega_block(1).omega.enumerate(opt.budgets.atoms), {8.0});
  r.equal("stabilize.block1", "restriction to [6, 10] is omega_1 shifted by 8",
          first == expected ? 1.0 : 0.0, 1.0);
  for (int M : {2, 3, 5, 10}) {
    const AtomicMeasure other = restrict_to(discrete_counterexample(M), k, opt.budgets.atoms);
    r.equal(idx("stabilize", M), "restriction independent of M", other == first ? 1.0 : 0.0, 1.0);
  }

  const BlockMeasure mu10 = discrete_counterexample(10);
  const GrowthVerdict v = growth_test(dyadic_profile(mu10, 8, opt.budgets.atoms));
  r.equal("growth.verdict", "discrete profile is not polynomially bounded", v.poly_bounded() ? 0.0 : 1.0, 1.0);
  r.at_least("growth.witnesses", "at least three growth witnesses", static_cast<double>(v.witnesses.size()), 3.0);

  // Consecutive truncations differ by one block of transform size 2^{-(M+1)}.
  const double step = 0.1;
  for (int M = 1; M <= 5; ++M) {
    const BlockMeasure a = discrete_counterexample(M), b = discrete_counterexample(M + 1);
    double sup = 0.0;
    for (double t = 0.0; t <= 1000.0; t += step) {
      sup = std::max(sup, std::abs(ft_block_eval(b, {t}) - ft_block_eval(a, {t})));
    }
    const double bound = std::exp2(-(M + 1));
    r.at_most(idx("cauchy", M), "grid sup |mu_{M+1}^ - mu_M^| <= 2^{-(M+1)}", sup, bound, 1e-12 * bound);
  }
}

// ---------------------------------------------------------------- continuous

void continuous_suite(const SuiteOptions&, ClaimReport& r) {
  const ContinuousG g = construct_g(10.0);
  r.append(g.report, "g.");
  r.equal("g.negative", "g takes negative values", g.negative_witness ? 1.0 : 0.0, 1.0);
  for (int n = 1; n <= 3; ++n) r.append(g_n_block(n).report, idx("g_n", n) + ".");
  for (int N : {10, 100, 1000}) {
    const SincIntegral w = f_hat_l1_window(N / 2.0);
    const double bound = harmonic_number(N) / (kPi * kPi);
    r.at_least(idx("harmonic", N), "integral_0^{N/2} |f^| >= H_N / pi^2", w.lower() / 2.0, bound, 1e-6);
  }

  const ContinuousCounterexample mu3 = continuous_counterexample(3);
  r.append(mu3.report, "blocks.");
  const SmoothTestFunction bump = interval_bump();
  for (int j = 1; j <= 3; ++j) {
    // Bump squeezed into (-j - 1/2, -j + 1/2), which avoids the neighbouring
    // blocks of radius 1/(j+2) and 1/j.
    SmoothTestFunction psi = bump;
    psi.value = [bump, j](const Vec& x) { return bump({4.0 * (x[0] + j)}); };
    psi.jet = {};
    psi.support = Window::interval(-j - 0.5, -j + 0.5);
    const ContinuousPairing pr = continuous_pairing(mu3, psi);
    r.equal(idx("pairing.blocks", j), "test function meets only block j",
            pr.blocks == std::vector<int>{j} ? 1.0 : 0.0, 1.0);
    const ContinuousCounterexample wider = continuous_counterexample(j);
    const ContinuousPairing pw = continuous_pairing(wider, psi);
    r.equal(idx("pairing.stable", j), "pairing stabilizes once block j is present", pw.value, pr.value);
    const double mass = std::pow(static_cast<double>(j) * j + 1.0, j);
    const auto& density = std::get<DensityBlock>(mu3.measure.blocks()[j - 1].payload).density;
    r.at_least(idx("block.mass", j), "block j variation >= (j^2+1)^j", density.l1_norm->lower, mass, 1e-6 * mass);
  }
}

// ---------------------------------------------------------------- plateau

void plateau_suite(const SuiteOptions&, ClaimReport& r) {
  std::vector<int> k;
  std::vector<double> c;
  for (int n = 1; n <= 6; ++n) {
    k.push_back(4 * n + 4);
    c.push_back(std::ldexp(1.0, -n * (4 * n + 4)));
  }
  const PlateauSchwartz psi(k, c, 1);
  double worst = 0.0, gap_max = 0.0;
  for (std::size_t n = 0; n < k.size(); ++n) {
    const double lo = std::ldexp(1.0, k[n] - 1), hi = std::ldexp(1.0, k[n] + 1);
    for (int i = 0; i < 100; ++i) {
      const double x = lo + (hi - lo) * i / 99.0;
      worst = std::max(worst, std::abs(plateau_eval(psi, {x}) - c[n]) / c[n]);
    }
    gap_max = std::max(gap_max, std::abs(plateau_eval(psi, {std::ldexp(1.0, k[n] + 2)})));
  }
  for (int i = 0; i < 100; ++i) {
    gap_max = std::max(gap_max, std::abs(plateau_eval(psi, {64.0 * i / 100.0})));
    gap_max = std::max(gap_max, std::abs(plateau_eval(psi, {std::ldexp(1.0 + i / 100.0, 30)})));
  }
  r.at_most("plateau.value", "psi = c_n on the plateau of shell n", worst, 0.0, 1e-15);
  r.equal("plateau.gap", "psi = 0 between and outside the shells", gap_max, 0.0);
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      const MultiIndex alpha({a}), beta({b});
      const double lhs = seminorm_estimate(psi, alpha, beta).value;
      const double base = seminorm_estimate(psi.base(), alpha, beta).value;
      const double rhs = psi.constant(alpha, beta) * base;
      r.at_most("plateau.seminorm[" + std::to_string(a) + "," + std::to_string(b) + "]",
                "||psi||_{a,b} <= C_{a,b} ||phi||_{a,b}", lhs, rhs, 1e-6 * rhs);
    }
  }

  std::vector<Atom> atoms;
  for (int n = 1; n <= 6; ++n) atoms.push_back({{std::ldexp(1.0, k[n - 1])}, std::ldexp(1.0, n * k[n - 1])});
  const PairingResult pr = pairing_partial_sums(AtomicMeasure(1, atoms), psi, 31);
  for (int N = 1; N <= 6; ++N) {
    const double s = N <= static_cast<int>(pr.partials.size()) ? pr.partials[N - 1] : 0.0;
    r.equal(idx("divergent-pairing", N), "S_N = N", s, N, 1e-6 * N);
  }
}

// ---------------------------------------------------------------- growth

void growth_suite(const SuiteOptions& opt, ClaimReport& r) {
  // delta_Z over |x| < 2^12
  std::vector<Atom> lattice;
  for (int x = -(1 << 12) + 1; x < (1 << 12); ++x) lattice.push_back({{static_cast<double>(x)}, 1.0});
  const DyadicProfile profile = dyadic_profile(AtomicMeasure(1, lattice), 12);
  const GrowthVerdict v = growth_test(profile);
  r.equal("growth.delta-z.poly", "delta_Z is polynomially bounded", v.poly_bounded() ? 1.0 : 0.0, 1.0);
  r.equal("growth.delta-z.a", "exponent a = 1", v.a, 1.0);
  r.at_most("growth.delta-z.c", "constant c <= 2", v.c, 2.0);
  const SlowIncrease si = slow_increase_partial(profile, 2);
  r.at_most("growth.delta-z.partials", "partials <= I_0 + c 2^{a+1}", si.partials.back(),
            slow_increase_limit(profile, v), 1e-12);

  Rng rng(opt.seed);
  double recon = 0.0, overlap = 0.0, excess = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const auto d = static_cast<std::size_t>(1 + trial % 3);
    const int count = 1 + static_cast<int>(rng() % 40);
    std::vector<Atom> atoms;
    for (int i = 0; i < count; ++i) {
      Vec x(d);
      for (double& xi : x) xi = uniform(rng, -10.0, 10.0);
      const double re = (rng() % 5 == 0) ? 0.0 : uniform(rng, -1.0, 1.0);
      const double im = (rng() % 3 == 0) ? 0.0 : uniform(rng, -1.0, 1.0);
      atoms.push_back({x, Complex(re, im)});
    }
    const AtomicMeasure mu(d, atoms);
    const HahnJordan parts = hahn_jordan(mu);
    const AtomicMeasure back = recombine(parts);
    if (back.size() != mu.size()) {
      recon = std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (back.atoms()[i].position != mu.atoms()[i].position) recon = std::numeric_limits<double>::infinity();
        recon = std::max(recon, std::abs(back.atoms()[i].weight - mu.atoms()[i].weight));
      }
    }
    const auto shared = [](const AtomicMeasure& p, const AtomicMeasure& q) {
      double n = 0.0;
      for (const Atom& a : p.atoms()) {
        for (const Atom& b : q.atoms()) n += a.position == b.position ? 1.0 : 0.0;
      }
      return n;
    };
    overlap += shared(parts.pos_real, parts.neg_real) + shared(parts.pos_imag, parts.neg_imag);
    const double tv = mu.total_variation();
    for (const AtomicMeasure* p : {&parts.pos_real, &parts.neg_real, &parts.pos_imag, &parts.neg_imag}) {
      excess = std::max(excess, p->total_variation() - tv);
    }
  }
  r.at_most("hahn-jordan.reconstruction", "parts recombine to mu", recon, 0.0, 1e-15);
  r.equal("hahn-jordan.disjoint", "positive and negative parts have disjoint supports", overlap, 0.0);
  r.at_most("hahn-jordan.tv", "TV of each part <= TV(mu)", excess, 0.0);

  double value_err = 0.0, grad_excess = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec> pts;
    const int want = 4 + static_cast<int>(rng() % 12);
    while (static_cast<int>(pts.size()) < want) {
      const Vec x{uniform(rng, -10.0, 10.0)};
      bool ok = true;
      for (const Vec& p : pts) ok = ok && std::abs(p[0] - x[0]) >= 0.2;
      if (ok) pts.push_back(x);
    }
    const std::size_t split = pts.size() / 2;
    const std::vector<Vec> u(pts.begin(), pts.begin() + static_cast<long>(split));
    const std::vector<Vec> v(pts.begin() + static_cast<long>(split), pts.end());
    const SeparationFunction sep = separation_function(u, v);
    for (const Vec& x : u) value_err = std::max(value_err, std::abs(sep.function(x) - 1.0));
    for (const Vec& x : v) value_err = std::max(value_err, std::abs(sep.function(x)));
    double fd = 0.0;
    const double h = 1e-6;
    for (const Vec& x : u) {
      for (int i = -200; i <= 200; ++i) {
        const double y = x[0] + sep.radius * i / 200.0;
        fd = std::max(fd, std::abs(sep.function({y + h}) - sep.function({y - h})) / (2.0 * h));
      }
    }
    grad_excess = std::max(grad_excess, fd - sep.gradient_bound);
  }
  r.equal("separation.values", "f = 1 on U and 0 on V", value_err, 0.0);
  r.at_most("separation.gradient", "finite-difference |f'| <= analytic bound", grad_excess, 0.0, 1e-3);
}

using SuiteFn = std::function<void(const SuiteOptions&, ClaimReport&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"ks", ks_suite},           {"omega", omega_suite},     {"discrete", discrete_suite},
      {"continuous", continuous_suite}, {"plateau", plateau_suite}, {"growth", growth_suite},
  };
  return r;
}

}  // namespace

int SuiteReport::exit_code() const {
  if (budget_exceeded) return 3;
  return pass() ? 0 : 1;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.name = name;
  report.budgets = options.budgets;
  std::vector<std::pair<std::string, SuiteFn>> selected;
  for (const auto& entry : registry()) {
    if (name == "all" || name == entry.first) selected.push_back(entry);
  }
  if (selected.empty()) throw std::invalid_argument("unknown suite: " + name);
  for (const auto& [suite, fn] : selected) {
    ClaimReport part;
    try {
      fn(options, part);
    } catch (const BudgetExceeded& e) {
      report.budget_exceeded = true;
      report.errors.push_back(suite + ": budget exceeded: " + e.what());
    } catch (const std::exception& e) {
      report.errors.push_back(suite + ": " + e.what());
    }
    report.claims.append(part, name == "all" ? suite + "/" : "");
    if (report.budget_exceeded) break;
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json to_json(const SuiteReport& report) {
  Json j;
  j["suite"] = report.name;
  j["status"] = report.pass() ? "pass" : (report.budget_exceeded ? "budget-exceeded" : "fail");
  Json budgets;
  budgets["atoms"] = report.budgets.atoms;
  budgets["product_factors"] = report.budgets.product_factors;
  budgets["quadrature_points"] = report.budgets.quadrature_points;
  budgets["grid_points"] = report.budgets.grid_points;
  j["budgets"] = std::move(budgets);
  j["claims"] = to_json(report.claims);
  j["errors"] = report.errors;
  return j;
}

}  // namespace tempered
