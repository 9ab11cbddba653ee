#include "tempered/temperedness.hpp"

#include <algorithm>
#include <cmath>

#include "tempered/numerics.hpp"

namespace tempered {

int annulus_index(double radius) {
  if (!(radius >= 1.0)) return 0;
  int e = 0;
  std::frexp(radius, &e);  // radius = m 2^e, m in [1/2, 1)
  return e;
}

double PolyDenominator::operator()(const Vec& x) const { return 1.0 + std::pow(norm2(x), p); }

namespace {

void add_mass(std::vector<double>& masses, double radius, double mass) {
  const int j = annulus_index(radius);
  if (j < static_cast<int>(masses.size())) masses[static_cast<std::size_t>(j)] += mass;
}

// Box containing the support of a payload, relative to its block shift.
Window payload_support_box(const BlockPayload& payload) {
  return std::visit(
      [](const auto& p) -> Window {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DensityBlock>) {
          return Window::interval(-p.density.support_radius, p.density.support_radius);
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          Vec lo(p.shift()), hi(p.shift());
          for (const AtomicMeasure& f : p.factors()) {
            for (std::size_t k = 0; k < lo.size(); ++k) {
              double mn = f.atoms().front().position[k], mx = mn;
              for (const Atom& a : f.atoms()) {
                mn = std::min(mn, a.position[k]);
                mx = std::max(mx, a.position[k]);
              }
              lo[k] += mn;
              hi[k] += mx;
            }
          }
          return Window(lo, hi);
        } else {
          if (p.empty()) return Window(Vec(p.dimension(), 0.0), Vec(p.dimension(), 0.0));
          Vec lo(p.atoms().front().position), hi(lo);
          for (const Atom& a : p.atoms()) {
            for (std::size_t k = 0; k < lo.size(); ++k) {
              lo[k] = std::min(lo[k], a.position[k]);
              hi[k] = std::max(hi[k], a.position[k]);
            }
          }
          return Window(lo, hi);
        }
      },
      payload);
}

// Smallest and largest |x|_2 over a box.
std::pair<double, double> radius_range(const Window& box) {
  double near = 0.0, far = 0.0;
  for (std::size_t k = 0; k < box.dimension(); ++k) {
    const double lo = box.lower()[k], hi = box.upper()[k];
    const double n = (lo > 0.0) ? lo : (hi < 0.0 ? -hi : 0.0);
    const double f = std::max(std::abs(lo), std::abs(hi));
    near += n * n;
    far += f * f;
  }
  return {std::sqrt(near), std::sqrt(far)};
}

}  // namespace

DyadicProfile dyadic_profile(const AtomicMeasure& mu, int max_index) {
  if (max_index < 0) throw std::invalid_argument("dyadic_profile: negative index");
  DyadicProfile out;
  out.masses.assign(static_cast<std::size_t>(max_index) + 1, 0.0);
  out.source = "atomic measure, " + std::to_string(mu.size()) + " atoms";
  for (const Atom& a : mu.atoms()) add_mass(out.masses, norm2(a.position), std::abs(a.weight));
  return out;
}

DyadicProfile dyadic_profile(const BlockMeasure& mu, int max_index, std::size_t max_atoms) {
  if (max_index < 0) throw std::invalid_argument("dyadic_profile: negative index");
  DyadicProfile out;
  out.masses.assign(static_cast<std::size_t>(max_index) + 1, 0.0);
  out.source = "block measure, " + std::to_string(mu.blocks().size()) + " blocks";
  for (const Block& b : mu.blocks()) {
    const Window box = payload_support_box(b.payload).shifted(b.shift);
    const auto [rmin, rmax] = radius_range(box);
    if (annulus_index(rmin) > max_index) continue;
    const int ja = annulus_index(rmin), jb = annulus_index(rmax);
    if (ja == jb) {
      add_mass(out.masses, rmin, payload_total_variation(b.payload, max_atoms));
      continue;
    }
    if (const auto* d = std::get_if<DensityBlock>(&b.payload)) {
      // An even density centred on the boundary radius 2^ja splits evenly.
      const double centre = norm2(b.shift);
      if (d->density.even && mu.dimension() == 1 && jb == ja + 1 && centre == std::ldexp(1.0, ja)) {
        const double half = payload_total_variation(b.payload, max_atoms) / 2.0;
        add_mass(out.masses, rmin, half);
        add_mass(out.masses, centre, half);
        continue;
      }
      throw std::invalid_argument("dyadic_profile: density block straddles annuli off its centre");
    }
    const AtomicMeasure local = std::holds_alternative<ProductMeasure>(b.payload)
                                    ? std::get<ProductMeasure>(b.payload).enumerate(max_atoms)
                                    : std::get<AtomicMeasure>(b.payload);
    for (const Atom& a : local.atoms()) {
      add_mass(out.masses, norm2(add(a.position, b.shift)), std::abs(a.weight));
    }
  }
  return out;
}

GrowthVerdict growth_test(const DyadicProfile& profile, int a_max) {
  if (profile.masses.size() < 4) throw std::invalid_argument("growth_test: profile needs at least 4 annuli");
  GrowthVerdict v;
  std::vector<double> m = profile.masses;
  v.truncation = static_cast<int>(m.size()) - 1;
  while (!m.empty() && m.back() == 0.0) m.pop_back();
  double run = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < m.size(); ++j) {
    if (m[j] > 0.0) run = std::max(run, std::log2(m[j]) / static_cast<double>(j));
    v.trend.push_back(run);
  }
  if (m.empty()) return v;  // zero profile: c = 0, a = 0

  const std::size_t len = m.size();
  const std::size_t top = len / 2;
  for (int a = 0; a <= a_max; ++a) {
    // log2 of m_j / 2^{a j}
    std::vector<double> r(len);
    for (std::size_t j = 0; j < len; ++j) {
      r[j] = m[j] > 0.0 ? std::log2(m[j]) - a * static_cast<double>(j)
                        : -std::numeric_limits<double>::infinity();
    }
    bool monotone = true;
    for (std::size_t j = top; j + 1 < len; ++j) {
      if (r[j + 1] > r[j] + 1e-12) {
        monotone = false;
        break;
      }
    }
    if (!monotone) continue;
    v.kind = GrowthVerdict::Kind::kPolyBounded;
    v.a = a;
    v.c = std::exp2(*std::max_element(r.begin(), r.end()));
    return v;
  }
  v.kind = GrowthVerdict::Kind::kSuperpolynomialEvidence;
  std::size_t k = 1;
  for (int l = 1;; ++l) {
    while (k < len && !(m[k] > 0.0 && std::log2(m[k]) > static_cast<double>(l) * k)) ++k;
    if (k >= len) break;
    v.witnesses.push_back(static_cast<int>(k));
    ++k;
  }
  return v;
}

SlowIncrease slow_increase_partial(const DyadicProfile& profile, int p) {
  if (p < 1) throw std::invalid_argument("slow_increase_partial: p must be positive");
  SlowIncrease out;
  CompensatedSum<double> upper, lower;
  for (std::size_t j = 0; j < profile.masses.size(); ++j) {
    const double m = profile.masses[j];
    const double jj = static_cast<double>(j);
    const double up = j == 0 ? m : m / (1.0 + std::exp2((jj - 1.0) * p));
    const double lo = m / (1.0 + std::exp2(jj * p));
    upper.add(up);
    lower.add(lo);
    out.partials.push_back(upper.value());
    out.bound_chain.push_back(lo);
    out.lower_partials.push_back(lower.value());
  }
  return out;
}

double slow_increase_limit(const DyadicProfile& profile, const GrowthVerdict& verdict) {
  if (!verdict.poly_bounded()) return std::numeric_limits<double>::infinity();
  const double i0 = profile.masses.empty() ? 0.0 : profile.masses[0];
  return i0 + verdict.c * std::exp2(verdict.a + 1);
}

std::vector<double> block_divergence_partials(const BlockMeasure& mu, int p, std::size_t max_atoms) {
  std::vector<double> out;
  CompensatedSum<double> s;
  for (const Block& b : mu.blocks()) {
    const double r = norm2(b.shift) + mu.support_radius();
    s.add(payload_total_variation(b.payload, max_atoms) / (1.0 + std::pow(r, p)));
    out.push_back(s.value());
  }
  return out;
}

namespace {

void finish_pairing(PairingResult& r) {
  CompensatedSum<double> s;
  for (double t : r.terms) {
    s.add(t);
    r.partials.push_back(s.value());
  }
  const std::size_t n = r.terms.size();
  if (n == 0) {
    r.converging = true;
    r.tail_estimate = 0.0;
    return;
  }
  const double last = r.terms.back();
  const double total = r.partials.back();
  bool decreasing = true;
  for (std::size_t i = n / 2; i + 1 < n; ++i) decreasing = decreasing && r.terms[i + 1] <= r.terms[i];
  r.converging = last == 0.0 || (decreasing && last <= 1e-3 * std::abs(total));
  if (n >= 2 && r.terms[n - 2] > 0.0 && last >= 0.0) {
    const double q = last / r.terms[n - 2];
    if (q < 1.0) r.tail_estimate = last * q / (1.0 - q);
  }
}

}  // namespace

PairingResult pairing_partial_sums(const AtomicMeasure& mu, const PlateauSchwartz& psi,
                                   int max_index) {
  require_same_dimension(mu.dimension(), psi.dimension(), "pairing_partial_sums");
  PairingResult r;
  r.terms.assign(psi.k().size(), 0.0);
  const double limit = std::ldexp(1.0, max_index);
  for (const Atom& a : mu.atoms()) {
    const double radius = norm2(a.position);
    if (radius >= limit) continue;
    const auto n = psi.shell_of(radius);
    if (!n) continue;
    r.terms[*n] += std::abs(a.weight) * plateau_eval(psi, a.position);
  }
  // Shells entirely beyond the truncation carry no information.
  while (!r.terms.empty() && std::ldexp(1.0, psi.k()[r.terms.size() - 1] - 2) >= limit) r.terms.pop_back();
  finish_pairing(r);
  return r;
}

PairingResult pairing_partial_sums(const AtomicMeasure& mu, const SmoothTestFunction& psi,
                                   int max_index) {
  require_same_dimension(mu.dimension(), psi.dimension, "pairing_partial_sums");
  PairingResult r;
  r.terms.assign(static_cast<std::size_t>(max_index) + 1, 0.0);
  for (const Atom& a : mu.atoms()) {
    const int j = annulus_index(norm2(a.position));
    if (j > max_index) continue;
    r.terms[static_cast<std::size_t>(j)] += std::abs(a.weight) * psi(a.position);
  }
  finish_pairing(r);
  return r;
}

PairingBound pairing_bound_check(const AtomicMeasure& mu, const SmoothTestFunction& psi, int p,
                                 double radius, int samples_per_axis) {
  require_same_dimension(mu.dimension(), psi.dimension, "pairing_bound_check");
  const PolyDenominator den{p};
  PairingBound out;
  CompensatedSum<Complex> pairing;
  CompensatedSum<double> integral;
  for (const Atom& a : mu.atoms()) {
    const double v = psi(a.position);
    pairing.add(a.weight * v);
    integral.add(std::abs(a.weight) / den(a.position));
    out.weighted_sup = std::max(out.weighted_sup, den(a.position) * std::abs(v));
  }
  const std::size_t d = psi.dimension;
  const int n = std::max(2, samples_per_axis);
  std::vector<int> idx(d, 0);
  Vec x(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) x[i] = -radius + 2.0 * radius * idx[i] / (n - 1);
    out.weighted_sup = std::max(out.weighted_sup, den(x) * std::abs(psi(x)));
    std::size_t i = 0;
    while (i < d && ++idx[i] == n) idx[i++] = 0;
    if (i == d) break;
  }
  out.lhs = std::abs(pairing.value());
  out.integral = integral.value();
  out.rhs = out.weighted_sup * out.integral;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-6);
  return out;
}

}  // namespace tempered
