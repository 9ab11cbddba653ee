#include "tempered/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "tempered/numerics.hpp"

namespace tempered {

namespace {

// x t modulo 1, in [-1/2, 1/2]. The product is split exactly with an fma so
// the reduction loses nothing even when x t is in the hundreds.
double frac_product(double x, double t) {
  const double hi = x * t;
  const double lo = std::fma(x, t, -hi);
  double r = (hi - std::nearbyint(hi)) + lo;
  return r - std::nearbyint(r);
}

// Phase of x.t modulo 1.
double reduced_phase(const Vec& x, const Vec& t) {
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r += frac_product(x[i], t[i]);
  return r - std::nearbyint(r);
}

// exp(-2 pi i r) for a phase already reduced modulo 1.
Complex unit_phase_reduced(double r) { return {std::cos(kTwoPi * r), -std::sin(kTwoPi * r)}; }

Complex unit_phase(const Vec& x, const Vec& t) { return unit_phase_reduced(reduced_phase(x, t)); }

Vec bounding_centre(const AtomicMeasure& mu) {
  const std::size_t d = mu.dimension();
  if (mu.empty()) return Vec(d, 0.0);
  Vec lo(mu.atoms().front().position), hi(lo);
  for (const Atom& a : mu.atoms()) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], a.position[k]);
      hi[k] = std::max(hi[k], a.position[k]);
    }
  }
  Vec c(d);
  for (std::size_t k = 0; k < d; ++k) c[k] = 0.5 * (lo[k] + hi[k]);
  return c;
}

// Lipschitz bound of |mu^|, which is translation invariant, so the moments
// are taken about the centre of the bounding box.
double modulus_lipschitz(const AtomicMeasure& mu) {
  const Vec c = bounding_centre(mu);
  CompensatedSum<double> s;
  for (const Atom& a : mu.atoms()) s.add(std::abs(a.weight) * norm2(sub(a.position, c)));
  return kTwoPi * s.value();
}

bool close(const Vec& a, const Vec& b) {
  double scale = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) scale = std::max({scale, std::abs(a[k]), std::abs(b[k])});
  return norm2(sub(a, b)) <= 1e-12 * scale;
}

double l1_upper(const CompactFunction& g) {
  if (g.l1_norm) return g.l1_norm->upper;
  const double r = g.support_radius;
  const std::size_t cells = static_cast<std::size_t>(std::ceil(2.0 * r / g.oscillation_scale)) + 8;
  const QuadratureResult q =
      adaptive_simpson([&](double x) { return std::abs(g(x)); }, -r, r, 1e-10, cells, 10'000'000);
  return q.value * (1.0 + 1e-9) + 10.0 * q.error + 1e-12;
}

struct PayloadBounds {
  double sup = 0.0;        // bound on sup |P^|
  double lipschitz = 0.0;  // bound on |grad P^|
};

PayloadBounds payload_bounds(const BlockPayload& payload) {
  return std::visit(
      [](const auto& p) -> PayloadBounds {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DensityBlock>) {
          const double l1 = l1_upper(p.density);
          return {l1, kTwoPi * p.density.support_radius * l1};
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          // |grad(scale e(shift) prod F_i)| <= scale (2 pi |shift| prod s_i + sum L_i prod_{j != i} s_j)
          double log2_prod = std::log2(p.scale());
          double rel = kTwoPi * norm2(p.shift());
          for (const AtomicMeasure& f : p.factors()) {
            const double s = factor_sup_bound(f);
            log2_prod += std::log2(s);
            rel += lipschitz_bound(f) / s;
          }
          const double prod = std::exp2(log2_prod);
          return {prod, prod * rel};
        } else {
          return {p.total_variation(), lipschitz_bound(p)};
        }
      },
      payload);
}

Complex payload_ft(const BlockPayload& payload, const Vec& t) {
  return std::visit(
      [&](const auto& p) -> Complex {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DensityBlock>) {
          return ft_compact(p.density, t.at(0));
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          return ft_product_eval(p, t);
        } else {
          return ft_eval(p, t);
        }
      },
      payload);
}

}  // namespace

TrapezoidTransform::TrapezoidTransform(const CompactFunction& g, double max_frequency) {
  const double r = g.support_radius;
  const double band = max_frequency + 64.0 / g.oscillation_scale;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * r * band)) + 16;
  h = 2.0 * r / static_cast<double>(n);
  nodes.reserve(n + 1);
  values.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double x = -r + h * static_cast<double>(k);
    const double v = g(x);
    if (v == 0.0) continue;
    nodes.push_back(x);
    values.push_back(v);
  }
}

Complex TrapezoidTransform::operator()(double t) const {
  CompensatedSum<Complex> s;
  for (std::size_t k = 0; k < nodes.size(); ++k) s.add(values[k] * unit_phase_reduced(frac_product(nodes[k], t)));
  return h * s.value();
}

Complex ft_eval(const AtomicMeasure& mu, const Vec& t) {
  require_same_dimension(t.size(), mu.dimension(), "ft_eval");
  CompensatedSum<Complex> s;
  for (const Atom& a : mu.atoms()) s.add(a.weight * unit_phase(a.position, t));
  return s.value();
}

Complex ft_product_eval(const ProductMeasure& p, const Vec& t) {
  require_same_dimension(t.size(), p.dimension(), "ft_product_eval");
  // Accumulate the product in normalized form to keep huge products finite.
  Complex acc = unit_phase(p.shift(), t);
  int exponent = 0;
  for (const AtomicMeasure& f : p.factors()) {
    acc *= ft_eval(f, t);
    int e = 0;
    const double m = std::max(std::abs(acc.real()), std::abs(acc.imag()));
    if (m == 0.0) return 0.0;
    std::frexp(m, &e);
    acc = {std::ldexp(acc.real(), -e), std::ldexp(acc.imag(), -e)};
    exponent += e;
  }
  acc *= p.scale();
  return {std::ldexp(acc.real(), exponent), std::ldexp(acc.imag(), exponent)};
}

Complex ft_block_eval(const BlockMeasure& mu, const Vec& t) {
  require_same_dimension(t.size(), mu.dimension(), "ft_block_eval");
  CompensatedSum<Complex> s;
  for (const Block& b : mu.blocks()) s.add(unit_phase(b.shift, t) * payload_ft(b.payload, t));
  return s.value();
}

double ks_factor_abs2(double a, double b, double t) {
  // (a +- b) t with the rounding error of a +- b carried separately
  const auto c = [t](double x, double y) {
    const double s = x + y;
    const double yy = s - x;
    const double e = (x - (s - yy)) + (y - yy);
    double r = frac_product(s, t) + e * t;
    r -= std::nearbyint(r);
    return std::cos(kTwoPi * r);
  };
  return 4.0 - 2.0 * c(a, b) + 2.0 * c(a, -b);
}

double lipschitz_bound(const AtomicMeasure& mu) {
  CompensatedSum<double> s;
  for (const Atom& a : mu.atoms()) s.add(std::abs(a.weight) * norm2(a.position));
  return kTwoPi * s.value();
}

double factor_sup_bound(const AtomicMeasure& mu) {
  const double tv = mu.total_variation();
  if (mu.size() != 4) return tv;
  int neg = -1;
  int positives = 0;
  for (int i = 0; i < 4; ++i) {
    const Complex w = mu.atoms()[i].weight;
    if (w == Complex(1.0, 0.0)) {
      ++positives;
    } else if (w == Complex(-1.0, 0.0) && neg < 0) {
      neg = i;
    } else {
      return tv;
    }
  }
  if (positives != 3 || neg < 0) return tv;
  std::vector<Vec> p;
  for (int i = 0; i < 4; ++i) {
    if (i != neg) p.push_back(mu.atoms()[i].position);
  }
  const Vec& q = mu.atoms()[neg].position;
  // q must be the vertex opposite some p_i: p_i + q = p_j + p_k.
  for (int i = 0; i < 3; ++i) {
    const Vec& pj = p[(i + 1) % 3];
    const Vec& pk = p[(i + 2) % 3];
    if (close(add(p[i], q), add(pj, pk))) return 2.0 * std::sqrt(2.0);
  }
  return tv;
}

namespace {
// (a, b) when a one-dimensional factor is exactly delta_0 + delta_a + delta_b - delta_{a+b}.
std::optional<std::pair<double, double>> ks_shape(const AtomicMeasure& mu) {
  if (mu.dimension() != 1 || mu.size() != 4) return std::nullopt;
  std::vector<double> pos;
  double neg = 0.0;
  for (const Atom& a : mu.atoms()) {
    if (a.weight == Complex(-1.0, 0.0)) {
      neg = a.position[0];
    } else if (a.position[0] != 0.0) {
      pos.push_back(a.position[0]);
    }
  }
  if (pos.size() != 2 || neg != pos[0] + pos[1]) return std::nullopt;
  return std::pair{pos[0], pos[1]};
}
}  // namespace

FTEvaluator::FTEvaluator(Source source) : source_(std::move(source)) {
  std::visit(
      [this](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          dimension_ = s.dimension();
          normalized_lipschitz_ = tempered::lipschitz_bound(s);
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          dimension_ = s.dimension();
          log2_scale_ = std::log2(s.scale());
          for (const AtomicMeasure& f : s.factors()) {
            const double b = factor_sup_bound(f);
            factor_bounds_.push_back(b);
            ks_shapes_.push_back(b < f.total_variation() ? ks_shape(f) : std::nullopt);
            log2_scale_ += std::log2(b);
            normalized_lipschitz_ += modulus_lipschitz(f) / b;
          }
        } else if constexpr (std::is_same_v<T, BlockMeasure>) {
          dimension_ = s.dimension();
          for (const Block& b : s.blocks()) {
            const PayloadBounds pb = payload_bounds(b.payload);
            normalized_lipschitz_ += kTwoPi * norm2(b.shift) * pb.sup + pb.lipschitz;
          }
        } else {
          dimension_ = 1;
          normalized_lipschitz_ = kTwoPi * s.support_radius * l1_upper(s);
        }
      },
      source_);
}

Complex FTEvaluator::value(const Vec& t) const {
  return std::visit(
      [&](const auto& s) -> Complex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          return ft_eval(s, t);
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          return ft_product_eval(s, t);
        } else if constexpr (std::is_same_v<T, BlockMeasure>) {
          return ft_block_eval(s, t);
        } else {
          return ft_compact(s, t.at(0));
        }
      },
      source_);
}

double FTEvaluator::normalized_modulus(const Vec& t) const {
  if (const auto* p = std::get_if<ProductMeasure>(&source_)) {
    require_same_dimension(t.size(), p->dimension(), "normalized_modulus");
    double m = 1.0;
    for (std::size_t i = 0; i < p->factors().size(); ++i) {
      if (const auto& ks = ks_shapes_[i]) {
        m *= std::sqrt(ks_factor_abs2(ks->first, ks->second, t[0]) / 8.0);
      } else {
        m *= std::abs(ft_eval(p->factors()[i], t)) / factor_bounds_[i];
      }
    }
    return m;
  }
  return std::abs(value(t));
}

double FTEvaluator::lipschitz_bound() const { return normalized_lipschitz_ * std::exp2(log2_scale_); }

double FTEvaluator::analytic_bound() const {
  return std::visit(
      [this](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          return s.total_variation();
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          return std::exp2(log2_scale_);
        } else if constexpr (std::is_same_v<T, BlockMeasure>) {
          double b = 0.0;
          for (const Block& blk : s.blocks()) b += payload_bounds(blk.payload).sup;
          return b;
        } else {
          return l1_upper(s);
        }
      },
      source_);
}

namespace {

// Grid coordinates along one axis: lattice points k*h inside [lo, hi] plus the
// two endpoints. Anchoring at the origin makes grids of nested windows nested.
std::vector<double> axis_points(double lo, double hi, double h) {
  std::vector<double> pts{lo};
  const double k0 = std::ceil(lo / h), k1 = std::floor(hi / h);
  for (double k = k0; k <= k1; k += 1.0) {
    const double x = k * h;
    if (x > pts.back() && x < hi) pts.push_back(x);
  }
  if (hi > pts.back()) pts.push_back(hi);
  return pts;
}

struct Cell1 {
  double a, b, fa, fb, bound;
  bool operator<(const Cell1& o) const { return bound < o.bound; }
};

struct Cell2 {
  double x0, x1, y0, y1;
  double f00, f01, f10, f11;  // f_ij at (x_i, y_j)
  double bound;
  bool operator<(const Cell2& o) const { return bound < o.bound; }
};

struct SearchState {
  double lower = -1.0;
  Vec witness;
  double upper = 0.0;
  double min_step = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;

  void offer(double v, Vec t) {
    if (v > lower) {
      lower = v;
      witness = std::move(t);
    }
  }
};

double stop_level(const SupOptions& opt, const FTEvaluator& e) {
  return opt.stop_below ? *opt.stop_below / std::exp2(e.log2_scale()) : 0.0;
}

void search_1d(const FTEvaluator& e, const Window& w, double h, const SupOptions& opt,
               SearchState& st) {
  const double floor_level = stop_level(opt, e);
  const std::vector<double> xs = axis_points(w.lower()[0], w.upper()[0], h);
  if (xs.size() > opt.max_evaluations) throw BudgetExceeded("sup_norm_estimate: grid over budget");
  const double lip = e.normalized_lipschitz();
  std::vector<double> f(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    f[i] = e.normalized_modulus({xs[i]});
    st.offer(f[i], {xs[i]});
  }
  st.evaluations = xs.size();
  if (xs.size() == 1) {
    st.upper = st.lower;
    st.min_step = 0.0;
    return;
  }
  if (!opt.refine) {
    double widest = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) widest = std::max(widest, xs[i + 1] - xs[i]);
    st.upper = st.lower + lip * widest / 2.0;
    st.min_step = widest;
    return;
  }
  // Best-first branch and bound on Piyavskii cell bounds (fa + fb + L h) / 2.
  std::priority_queue<Cell1> heap;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double len = xs[i + 1] - xs[i];
    st.min_step = std::min(st.min_step, len);
    heap.push({xs[i], xs[i + 1], f[i], f[i + 1], 0.5 * (f[i] + f[i + 1] + lip * len)});
  }
  f.clear();
  f.shrink_to_fit();
  while (!heap.empty()) {
    const Cell1 c = heap.top();
    if (c.bound <= std::max(st.lower * (1.0 + opt.refine_tolerance), floor_level) ||
        st.evaluations >= opt.max_evaluations) {
      st.upper = std::max(st.upper, c.bound);
      break;
    }
    heap.pop();
    const double m = 0.5 * (c.a + c.b);
    if (!(m > c.a && m < c.b)) {
      st.upper = std::max(st.upper, c.bound);
      continue;
    }
    const double fm = e.normalized_modulus({m});
    ++st.evaluations;
    st.offer(fm, {m});
    st.min_step = std::min(st.min_step, m - c.a);
    heap.push({c.a, m, c.fa, fm, 0.5 * (c.fa + fm + lip * (m - c.a))});
    heap.push({m, c.b, fm, c.fb, 0.5 * (fm + c.fb + lip * (c.b - m))});
  }
  st.upper = std::max(st.upper, st.lower);
}

double cell2_bound(const Cell2& c, double lip) {
  const double diag = std::hypot(c.x1 - c.x0, c.y1 - c.y0);
  return std::max({c.f00, c.f01, c.f10, c.f11}) + lip * diag / 2.0;
}

void search_2d(const FTEvaluator& e, const Window& w, double h, const SupOptions& opt,
               SearchState& st) {
  const std::vector<double> xs = axis_points(w.lower()[0], w.upper()[0], h);
  const std::vector<double> ys = axis_points(w.lower()[1], w.upper()[1], h);
  if (xs.size() * ys.size() > opt.max_evaluations) {
    throw BudgetExceeded("sup_norm_estimate: grid over budget");
  }
  const double lip = e.normalized_lipschitz();
  const double floor_level = stop_level(opt, e);
  const auto eval = [&](double x, double y) {
    const double v = e.normalized_modulus({x, y});
    ++st.evaluations;
    st.offer(v, {x, y});
    return v;
  };
  std::vector<double> prev(ys.size()), cur(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) prev[j] = eval(xs[0], ys[j]);
  std::priority_queue<Cell2> heap;
  double widest = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) cur[j] = eval(xs[i], ys[j]);
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      Cell2 c{xs[i - 1], xs[i], ys[j], ys[j + 1], prev[j], prev[j + 1], cur[j], cur[j + 1], 0.0};
      c.bound = cell2_bound(c, lip);
      widest = std::max(widest, std::hypot(c.x1 - c.x0, c.y1 - c.y0));
      st.min_step = std::min({st.min_step, c.x1 - c.x0, c.y1 - c.y0});
      if (opt.refine) {
        if (c.bound > std::max(st.lower * (1.0 + opt.refine_tolerance), floor_level)) {
          heap.push(c);
        } else {
          st.upper = std::max(st.upper, c.bound);
        }
      }
    }
    std::swap(prev, cur);
  }
  if (xs.size() == 1 || ys.size() == 1) {
    // Degenerate window: fall back to the plain grid bound along the segment.
    double step = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) step = std::max(step, xs[i + 1] - xs[i]);
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) step = std::max(step, ys[j + 1] - ys[j]);
    st.upper = st.lower + lip * step / 2.0;
    st.min_step = step;
    return;
  }
  if (!opt.refine) {
    st.upper = st.lower + lip * widest / 2.0;
    return;
  }
  while (!heap.empty()) {
    const Cell2 c = heap.top();
    if (c.bound <= std::max(st.lower * (1.0 + opt.refine_tolerance), floor_level) ||
        st.evaluations + 5 > opt.max_evaluations) {
      st.upper = std::max(st.upper, c.bound);
      break;
    }
    heap.pop();
    const double xm = 0.5 * (c.x0 + c.x1), ym = 0.5 * (c.y0 + c.y1);
    if (!(xm > c.x0 && xm < c.x1 && ym > c.y0 && ym < c.y1)) {
      st.upper = std::max(st.upper, c.bound);
      continue;
    }
    const double fm0 = eval(xm, c.y0), fm1 = eval(xm, c.y1);
    const double f0m = eval(c.x0, ym), f1m = eval(c.x1, ym);
    const double fmm = eval(xm, ym);
    st.min_step = std::min({st.min_step, xm - c.x0, ym - c.y0});
    const Cell2 kids[4] = {
        {c.x0, xm, c.y0, ym, c.f00, f0m, fm0, fmm, 0.0},
        {c.x0, xm, ym, c.y1, f0m, c.f01, fmm, fm1, 0.0},
        {xm, c.x1, c.y0, ym, fm0, fmm, c.f10, f1m, 0.0},
        {xm, c.x1, ym, c.y1, fmm, fm1, f1m, c.f11, 0.0},
    };
    for (Cell2 k : kids) {
      k.bound = cell2_bound(k, lip);
      heap.push(k);
    }
  }
  st.upper = std::max(st.upper, st.lower);
}

}  // namespace

SupEstimate sup_norm_estimate(const FTEvaluator& e, const Window& window, double grid_step,
                              const SupOptions& options) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("sup_norm_estimate: grid_step must be positive");
  require_same_dimension(window.dimension(), e.dimension(), "sup_norm_estimate");
  if (!std::isfinite(e.normalized_lipschitz())) {
    throw std::invalid_argument("sup_norm_estimate: Lipschitz bound is not finite");
  }
  SearchState st;
  if (e.dimension() == 1) {
    search_1d(e, window, grid_step, options, st);
  } else if (e.dimension() == 2) {
    search_2d(e, window, grid_step, options, st);
  } else {
    throw std::invalid_argument("sup_norm_estimate: certified search supports d <= 2");
  }
  SupEstimate out;
  const double s = e.log2_scale();
  out.log2_lower = std::log2(st.lower) + s;
  out.log2_upper = std::log2(st.upper) + s;
  out.lower = std::exp2(out.log2_lower);
  out.upper_on_window = std::exp2(out.log2_upper);
  out.witness = st.witness;
  const double a = e.analytic_bound();
  if (std::isfinite(a)) out.analytic_upper = a;
  out.window = window;
  out.grid_step = grid_step;
  out.min_step = st.min_step;
  out.evaluations = st.evaluations;
  return out;
}

double sinc_ft(SincKind kind, double t, int n) {
  if (kind == SincKind::kF) return 2.0 * sinc(kTwoPi * t);
  if (n < 1) throw std::invalid_argument("sinc_ft: n must be at least 1");
  return sinc(kTwoPi * t / static_cast<double>(n));
}

CompactFunction dilate(const CompactFunction& g, double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("dilate: beta and gamma must be positive");
  CompactFunction h;
  h.name = g.name + "_dilated";
  h.support_radius = g.support_radius / gamma;
  h.oscillation_scale = g.oscillation_scale / gamma;
  h.even = g.even;
  h.value = [g, beta, gamma](double x) { return g(gamma * x) / beta; };
  if (g.first_derivative) {
    h.first_derivative = [f = g.first_derivative, r = g.support_radius, beta, gamma](double x) {
      return std::abs(gamma * x) > r ? 0.0 : gamma / beta * f(gamma * x);
    };
  }
  if (g.second_derivative) {
    h.second_derivative = [f = g.second_derivative, r = g.support_radius, beta, gamma](double x) {
      return std::abs(gamma * x) > r ? 0.0 : gamma * gamma / beta * f(gamma * x);
    };
  }
  if (g.second_derivative_l1) h.second_derivative_l1 = *g.second_derivative_l1 * gamma / beta;
  if (g.spectral) {
    h.spectral = [s = g.spectral, beta, gamma](double t) { return s(t / gamma) / (beta * gamma); };
  }
  if (g.l1_norm) h.l1_norm = Interval{g.l1_norm->lower / (beta * gamma), g.l1_norm->upper / (beta * gamma)};
  return h;
}

Complex ft_compact(const CompactFunction& g, double t, QuadratureMethod method, double tolerance,
                   std::size_t max_evaluations) {
  if (!(g.support_radius > 0.0) || !std::isfinite(g.support_radius)) {
    throw std::invalid_argument("ft_compact: support radius must be finite and positive");
  }
  if (g.spectral) return g.spectral(t);
  if (method == QuadratureMethod::kTrapezoid) return TrapezoidTransform(g, std::abs(t))(t);
  const double r = g.support_radius;
  const double rate = std::abs(t) + 1.0 / g.oscillation_scale;
  const auto cells = static_cast<std::size_t>(std::ceil(4.0 * r * rate)) + 1;
  const auto re = adaptive_simpson(
      [&](double x) { return g(x) * std::cos(kTwoPi * x * t); }, -r, r, tolerance, cells,
      max_evaluations);
  const auto im = adaptive_simpson(
      [&](double x) { return -g(x) * std::sin(kTwoPi * x * t); }, -r, r, tolerance, cells,
      max_evaluations);
  return {re.value, im.value};
}

SupEstimate ft_compact_sup(const CompactFunction& g, const Window& window, double grid_step,
                           const CompactSupOptions& options) {
  SupEstimate s = sup_norm_estimate(FTEvaluator(g), window, grid_step, options.grid);
  if (!options.tail_bound) return s;
  if (!g.second_derivative_l1) {
    throw std::invalid_argument("ft_compact_sup: tail bound needs the L1 norm of g''");
  }
  const double lo = window.lower()[0], hi = window.upper()[0];
  if (lo > 0.0 || hi < 0.0) {
    throw std::invalid_argument("ft_compact_sup: window must contain 0 for the tail bound");
  }
  // g is real, so |g^(-t)| = |g^(t)| and the window covers |t| <= tau.
  const double tau = std::max(-lo, hi);
  if (!(tau > 0.0)) throw std::invalid_argument("ft_compact_sup: degenerate window");
  const double tail = *g.second_derivative_l1 / ((kTwoPi * tau) * (kTwoPi * tau));
  s.upper_on_window = std::max(s.upper_on_window, tail);
  s.log2_upper = std::log2(s.upper_on_window);
  return s;
}

ParsevalResult parseval_pairing(const AtomicMeasure& mu, const CompactFunction& phi,
                                double truncation) {
  require_same_dimension(mu.dimension(), 1, "parseval_pairing");
  if (!(truncation > 0.0)) throw std::invalid_argument("parseval_pairing: truncation must be positive");
  ParsevalResult out;
  CompensatedSum<Complex> lhs;
  double reach = 0.0;
  for (const Atom& a : mu.atoms()) {
    lhs.add(a.weight * phi(a.position[0]));
    reach = std::max(reach, std::abs(a.position[0]));
  }
  out.lhs = lhs.value();

  // t-side trapezoid: the integrand's spatial transform lives in
  // |s| <= reach + support_radius, so a step below the reciprocal of twice
  // that makes the untruncated rule exact.
  const TrapezoidTransform phi_hat(phi, truncation);
  const double ht = 1.0 / (2.0 * (reach + phi.support_radius) + 1.0);
  const auto k = static_cast<std::size_t>(std::ceil(truncation / ht));
  const double step = truncation / static_cast<double>(k);
  CompensatedSum<Complex> rhs;
  for (std::size_t i = 0; i <= 2 * k; ++i) {
    const double t = -truncation + step * static_cast<double>(i);
    const double w = (i == 0 || i == 2 * k) ? 0.5 : 1.0;
    rhs.add(w * phi_hat(-t) * ft_eval(mu, {t}));
  }
  out.rhs = step * rhs.value();
  out.gap = std::abs(out.lhs - out.rhs);
  if (phi.second_derivative_l1) {
    // integral_{|t| > T} |phi^(t)| |mu^(t)| dt <= TV * ||phi''||_1 / (2 pi^2 T)
    out.tail_bound = mu.total_variation() * *phi.second_derivative_l1 / (2.0 * kPi * kPi * truncation);
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace tempered
