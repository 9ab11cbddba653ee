#include "tempered/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "tempered/atomic_measure.hpp"
#include "tempered/numerics.hpp"

namespace tempered {

MultiIndex::MultiIndex(std::vector<int> idx) : index(std::move(idx)) {
  for (int a : index) {
    if (a < 0) throw std::invalid_argument("MultiIndex: negative entry");
  }
}

MultiIndex MultiIndex::unit(std::size_t d, std::size_t i, int order) {
  std::vector<int> v(d, 0);
  v.at(i) = order;
  return MultiIndex(std::move(v));
}

int MultiIndex::order() const {
  int s = 0;
  for (int a : index) s += a;
  return s;
}

bool MultiIndex::le(const MultiIndex& other) const {
  require_same_dimension(dimension(), other.dimension(), "MultiIndex");
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] > other.index[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
  if (!other.le(*this)) throw std::invalid_argument("MultiIndex::minus: not componentwise smaller");
  std::vector<int> v(index);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.index[i];
  return MultiIndex(std::move(v));
}

std::string MultiIndex::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < index.size(); ++i) out << (i ? " " : "") << index[i];
  out << ')';
  return out.str();
}

double binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
  if (!gamma.le(alpha)) return 0.0;
  double b = 1.0;
  for (std::size_t i = 0; i < alpha.dimension(); ++i) {
    const int n = alpha.index[i], k = gamma.index[i];
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    b *= c;
  }
  return b;
}

std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
  std::vector<MultiIndex> out{MultiIndex::zero(alpha.dimension())};
  for (std::size_t i = 0; i < alpha.dimension(); ++i) {
    std::vector<MultiIndex> next;
    for (const MultiIndex& g : out) {
      for (int k = 0; k <= alpha.index[i]; ++k) {
        MultiIndex h = g;
        h.index[i] = k;
        next.push_back(h);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t d, int k) {
  std::vector<MultiIndex> all = sub_indices(MultiIndex(std::vector<int>(d, k)));
  std::vector<MultiIndex> out;
  for (int order = 0; order <= k; ++order) {
    for (const MultiIndex& a : all) {
      if (a.order() == order) out.push_back(a);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double factorial_of(const MultiIndex& a) {
  double f = 1.0;
  for (int v : a.index) {
    for (int j = 2; j <= v; ++j) f *= j;
  }
  return f;
}

struct JetBasis {
  std::vector<MultiIndex> indices;
  // products[i][j] = slot of indices[i] + indices[j], or -1 when the order exceeds 3
  std::vector<std::vector<int>> products;
};

const JetBasis& jet_basis(std::size_t d) {
  static std::mutex mutex;
  static std::map<std::size_t, JetBasis> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  JetBasis b;
  b.indices = indices_up_to(d, kMaxDerivativeOrder);
  const std::size_t n = b.indices.size();
  b.products.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (b.indices[i].order() + b.indices[j].order() > kMaxDerivativeOrder) continue;
      std::vector<int> s(d);
      for (std::size_t k = 0; k < d; ++k) s[k] = b.indices[i].index[k] + b.indices[j].index[k];
      const MultiIndex m(std::move(s));
      b.products[i][j] =
          static_cast<int>(std::find(b.indices.begin(), b.indices.end(), m) - b.indices.begin());
    }
  }
  return cache.emplace(d, std::move(b)).first->second;
}

}  // namespace

Jet::Jet(std::size_t d) : d_(d), c_(jet_basis(d).indices.size(), 0.0) {}

Jet Jet::constant(std::size_t d, double c) {
  Jet j(d);
  j.c_[0] = c;
  return j;
}

Jet Jet::variable(std::size_t d, std::size_t i, double x0) {
  Jet j = constant(d, x0);
  j.c_[j.slot(MultiIndex::unit(d, i))] = 1.0;
  return j;
}

const std::vector<MultiIndex>& Jet::basis() const { return jet_basis(d_).indices; }

std::size_t Jet::slot(const MultiIndex& a) const {
  require_same_dimension(a.dimension(), d_, "Jet");
  if (a.order() > kMaxDerivativeOrder) throw std::invalid_argument("Jet: derivative order above 3");
  const auto& b = basis();
  return static_cast<std::size_t>(std::find(b.begin(), b.end(), a) - b.begin());
}

double Jet::coefficient(const MultiIndex& alpha) const { return c_[slot(alpha)]; }

double Jet::derivative(const MultiIndex& alpha) const {
  return coefficient(alpha) * factorial_of(alpha);
}

Jet Jet::operator+(const Jet& o) const {
  Jet r(*this);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  Jet r(*this);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

Jet Jet::operator*(double s) const {
  Jet r(*this);
  for (double& v : r.c_) v *= s;
  return r;
}

Jet Jet::operator*(const Jet& o) const {
  require_same_dimension(o.d_, d_, "Jet product");
  const JetBasis& b = jet_basis(d_);
  Jet r(d_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0.0) continue;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      const int k = b.products[i][j];
      if (k >= 0) r.c_[static_cast<std::size_t>(k)] += c_[i] * o.c_[j];
    }
  }
  return r;
}

Jet Jet::compose(const std::array<double, 4>& f) const {
  Jet h(*this);
  h.c_[0] = 0.0;
  const Jet h2 = h * h;
  const Jet h3 = h2 * h;
  return constant(d_, f[0]) + h * f[1] + h2 * (f[2] / 2.0) + h3 * (f[3] / 6.0);
}

// ---------------------------------------------------------------------------

double SmoothTestFunction::operator()(const Vec& x) const {
  require_same_dimension(x.size(), dimension, "SmoothTestFunction");
  return support.contains(x) ? value(x) : 0.0;
}

double SmoothTestFunction::derivative(const MultiIndex& alpha, const Vec& x) const {
  require_same_dimension(alpha.dimension(), dimension, "SmoothTestFunction::derivative");
  if (alpha.order() > kMaxDerivativeOrder) {
    throw std::invalid_argument("derivative order above the supported maximum of 3");
  }
  if (jet) {
    if (!support.contains(x)) return 0.0;
    return jet(x).derivative(alpha);
  }
  return finite_difference([this](const Vec& y) { return (*this)(y); }, alpha, x);
}

namespace {

// Central stencils for d^k/dx^k with O(h^2) error: (offset, weight), scale h^-k.
const std::vector<std::pair<int, double>>& stencil(int k) {
  static const std::vector<std::pair<int, double>> s[4] = {
      {{0, 1.0}},
      {{1, 0.5}, {-1, -0.5}},
      {{1, 1.0}, {0, -2.0}, {-1, 1.0}},
      {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}},
  };
  return s[k];
}

double difference(const std::function<double(const Vec&)>& f, const MultiIndex& alpha, Vec x,
                  std::size_t axis, double h) {
  if (axis == alpha.dimension()) return f(x);
  const int k = alpha.index[axis];
  double sum = 0.0;
  const double x0 = x[axis];
  for (const auto& [offset, w] : stencil(k)) {
    x[axis] = x0 + offset * h;
    sum += w * difference(f, alpha, x, axis + 1, h);
  }
  return sum / std::pow(h, k);
}

}  // namespace

double finite_difference(const std::function<double(const Vec&)>& f, const MultiIndex& alpha,
                         const Vec& x, double step) {
  if (alpha.order() > kMaxDerivativeOrder) {
    throw std::invalid_argument("derivative order above the supported maximum of 3");
  }
  if (alpha.order() == 0) return f(x);
  const double coarse = difference(f, alpha, x, 0, step);
  const double fine = difference(f, alpha, x, 0, step / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

// ---------------------------------------------------------------------------

namespace {

// sigma and its derivatives in the radius.
std::array<double, 4> annular_profile(double r) {
  if (r <= 2.0 || r >= 32.0) return {0.0, 0.0, 0.0, 0.0};
  if (r >= 4.0 && r <= 16.0) return {1.0, 0.0, 0.0, 0.0};
  if (r < 4.0) {
    const auto s = smooth_step_derivatives((r - 2.0) / 2.0);
    return {s[0], s[1] / 2.0, s[2] / 4.0, s[3] / 8.0};
  }
  const auto s = smooth_step_derivatives((32.0 - r) / 16.0);
  const double k = -1.0 / 16.0;
  return {s[0], s[1] * k, s[2] * k * k, s[3] * k * k * k};
}

Jet squared_norm_jet(const Vec& x, const Vec& centre) {
  const std::size_t d = x.size();
  Jet q(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Jet xi = Jet::variable(d, i, x[i] - centre[i]);
    q = q + xi * xi;
  }
  return q;
}

}  // namespace

SmoothTestFunction annular_bump(std::size_t d) {
  if (d == 0) throw std::invalid_argument("annular_bump: dimension must be positive");
  SmoothTestFunction f;
  f.name = "annular_bump";
  f.dimension = d;
  f.support = Window::cube(d, -32.0, 32.0);
  f.value = [](const Vec& x) { return annular_profile(norm2(x))[0]; };
  f.jet = [d](const Vec& x) {
    const double r = norm2(x);
    if (r <= 2.0 || r >= 32.0) return Jet::constant(d, 0.0);
    if (d == 1) return Jet::variable(1, 0, x[0]).compose({r, x[0] < 0 ? -1.0 : 1.0, 0.0, 0.0})
                          .compose(annular_profile(r));
    const Jet q = squared_norm_jet(x, Vec(d, 0.0));
    const double s = q.value();
    const Jet radius = q.compose({std::sqrt(s), 0.5 / std::sqrt(s), -0.25 / (s * std::sqrt(s)),
                                  0.375 / (s * s * std::sqrt(s))});
    return radius.compose(annular_profile(r));
  };
  return f;
}

SmoothTestFunction interval_bump() {
  SmoothTestFunction f;
  f.name = "interval_bump";
  f.dimension = 1;
  f.support = Window::interval(-2.0, 2.0);
  f.value = [](const Vec& x) { return smooth_step(2.0 - std::abs(x[0])); };
  f.jet = [](const Vec& x) {
    const double sign = x[0] < 0.0 ? -1.0 : 1.0;
    const auto s = smooth_step_derivatives(2.0 - std::abs(x[0]));
    // d/dx S(2 - |x|) = -sign S'
    return Jet::variable(1, 0, x[0]).compose({s[0], -sign * s[1], s[2], -sign * s[3]});
  };
  return f;
}

CompactFunction as_compact_function(const SmoothTestFunction& f) {
  require_same_dimension(f.dimension, 1, "as_compact_function");
  CompactFunction g;
  g.name = f.name;
  g.support_radius = std::max(std::abs(f.support.lower()[0]), std::abs(f.support.upper()[0]));
  g.value = [f](double x) { return f({x}); };
  const MultiIndex d1 = MultiIndex::unit(1, 0, 1), d2 = MultiIndex::unit(1, 0, 2);
  g.first_derivative = [f, d1](double x) { return f.derivative(d1, {x}); };
  g.second_derivative = [f, d2](double x) { return f.derivative(d2, {x}); };
  g.oscillation_scale = 0.25;
  const double r = g.support_radius;
  const auto cells = static_cast<std::size_t>(std::ceil(16.0 * r)) + 4;
  const QuadratureResult l1 =
      adaptive_simpson([&](double x) { return std::abs(g(x)); }, -r, r, 1e-12, cells, 10'000'000);
  const QuadratureResult l1_d2 = adaptive_simpson(
      [&](double x) { return std::abs(g.second_derivative(x)); }, -r, r, 1e-10, cells, 10'000'000);
  g.l1_norm = Interval{l1.value - 10.0 * l1.error - 1e-12, l1.value + 10.0 * l1.error + 1e-12};
  g.second_derivative_l1 = l1_d2.value * (1.0 + 1e-6) + 10.0 * l1_d2.error;
  return g;
}

// ---------------------------------------------------------------------------

PlateauSchwartz::PlateauSchwartz(std::vector<int> k, std::vector<double> c, std::size_t d)
    : k_(std::move(k)), c_(std::move(c)), d_(d), base_(annular_bump(d)) {
  if (k_.size() != c_.size()) throw std::invalid_argument("PlateauSchwartz: k and c lengths differ");
  if (!k_.empty() && k_[0] < 4) throw std::invalid_argument("PlateauSchwartz: k_1 must be at least 4");
  for (std::size_t n = 0; n + 1 < k_.size(); ++n) {
    if (k_[n + 1] < k_[n] + 4) {
      throw std::invalid_argument("PlateauSchwartz: need k_{n+1} >= k_n + 4");
    }
  }
  for (double v : c_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("PlateauSchwartz: c_n must be positive");
  }
}

std::optional<std::size_t> PlateauSchwartz::shell_of(double radius) const {
  if (!(radius > 0.0)) return std::nullopt;
  // First shell whose outer radius 2^{k_n+2} exceeds r.
  auto it = std::partition_point(k_.begin(), k_.end(),
                                 [radius](int k) { return std::ldexp(1.0, k + 2) <= radius; });
  if (it == k_.end()) return std::nullopt;
  if (!(std::ldexp(1.0, *it - 2) < radius)) return std::nullopt;
  return static_cast<std::size_t>(it - k_.begin());
}

double plateau_eval(const PlateauSchwartz& psi, const Vec& x) {
  require_same_dimension(x.size(), psi.dimension(), "plateau_eval");
  const auto n = psi.shell_of(norm2(x));
  if (!n) return 0.0;
  Vec y(x);
  for (double& v : y) v = std::ldexp(v, -(psi.k()[*n] - 3));
  return psi.c()[*n] * psi.base()(y);
}

double PlateauSchwartz::derivative(const MultiIndex& alpha, const Vec& x) const {
  require_same_dimension(x.size(), d_, "PlateauSchwartz::derivative");
  const auto n = shell_of(norm2(x));
  if (!n) return 0.0;
  const int s = k_[*n] - 3;
  Vec y(x);
  for (double& v : y) v = std::ldexp(v, -s);
  return std::ldexp(c_[*n] * base_.derivative(alpha, y), -s * alpha.order());
}

std::vector<double> PlateauSchwartz::decay_diagnostic() const {
  std::vector<double> out;
  for (int np = 0; np <= 8; ++np) {
    double m = 0.0;
    for (std::size_t n = 0; n < k_.size(); ++n) m = std::max(m, std::ldexp(c_[n], (k_[n] - 3) * np));
    out.push_back(m);
  }
  return out;
}

double PlateauSchwartz::constant(const MultiIndex& alpha, const MultiIndex& beta) const {
  const int e = beta.order() - alpha.order();
  double m = 0.0;
  for (std::size_t n = 0; n < k_.size(); ++n) m = std::max(m, std::ldexp(c_[n], (k_[n] - 3) * e));
  return m;
}

// ---------------------------------------------------------------------------

namespace {

double monomial(const Vec& x, const MultiIndex& beta) {
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int j = 0; j < beta.index[i]; ++j) p *= x[i];
  }
  return p;
}

template <typename Visit>
void for_each_grid_point(std::size_t d, double lo, double hi, int per_axis, Visit&& visit) {
  if (per_axis < 2) per_axis = 2;
  std::vector<int> idx(d, 0);
  Vec x(d);
  const double step = (hi - lo) / (per_axis - 1);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) x[i] = (idx[i] == per_axis - 1) ? hi : lo + step * idx[i];
    visit(x);
    std::size_t i = 0;
    while (i < d && ++idx[i] == per_axis) idx[i++] = 0;
    if (i == d) break;
  }
}

void check_indices(std::size_t d, const MultiIndex& alpha, const MultiIndex& beta) {
  require_same_dimension(alpha.dimension(), d, "seminorm alpha");
  require_same_dimension(beta.dimension(), d, "seminorm beta");
  if (alpha.order() > kMaxDerivativeOrder) {
    throw std::invalid_argument("seminorm_estimate: derivative order above 3");
  }
}

}  // namespace

SeminormEstimate seminorm_estimate(const SmoothTestFunction& f, const MultiIndex& alpha,
                                   const MultiIndex& beta, const SeminormGrid& grid) {
  check_indices(f.dimension, alpha, beta);
  SeminormEstimate out{alpha, beta, 0.0, Vec(f.dimension, 0.0), 0, f.method()};
  double lo = 0.0, hi = 0.0;
  if (grid.radius) {
    lo = -*grid.radius;
    hi = *grid.radius;
  } else {
    for (std::size_t i = 0; i < f.dimension; ++i) {
      lo = std::min(lo, f.support.lower()[i]);
      hi = std::max(hi, f.support.upper()[i]);
    }
  }
  for_each_grid_point(f.dimension, lo, hi, grid.points_per_axis, [&](const Vec& x) {
    const double v = std::abs(monomial(x, beta) * f.derivative(alpha, x));
    ++out.samples;
    if (v > out.value) {
      out.value = v;
      out.argmax = x;
    }
  });
  return out;
}

SeminormEstimate seminorm_estimate(const PlateauSchwartz& psi, const MultiIndex& alpha,
                                   const MultiIndex& beta, const SeminormGrid& grid) {
  check_indices(psi.dimension(), alpha, beta);
  const SmoothTestFunction& phi = psi.base();
  SeminormEstimate out{alpha, beta, 0.0, Vec(psi.dimension(), 0.0), 0, phi.method()};
  const double r = grid.radius.value_or(32.0);
  // Base grid points y mapped to x = 2^{k_n - 3} y on each shell; on the shell
  // psi coincides with c_n phi(x / 2^{k_n - 3}).
  for_each_grid_point(psi.dimension(), -r, r, grid.points_per_axis, [&](const Vec& y) {
    const double dphi = phi.derivative(alpha, y);
    ++out.samples;
    if (dphi == 0.0) return;
    for (std::size_t n = 0; n < psi.k().size(); ++n) {
      const int s = psi.k()[n] - 3;
      Vec x(y);
      for (double& v : x) v = std::ldexp(v, s);
      const double d = std::ldexp(psi.c()[n] * dphi, -s * alpha.order());
      const double v = std::abs(monomial(x, beta) * d);
      if (v > out.value) {
        out.value = v;
        out.argmax = x;
      }
    }
  });
  return out;
}

ReciprocalSelection reciprocal_coefficients(const DyadicProfile& profile, std::size_t max_terms) {
  ReciprocalSelection out;
  const auto& m = profile.masses;
  int next_min = 5;
  for (std::size_t j = 1; j <= max_terms; ++j) {
    int chosen = -1;
    for (int k = next_min; k < static_cast<int>(m.size()); ++k) {
      if (m[k] > 0.0 && std::log2(m[k]) > static_cast<double>(j) * k) {
        chosen = k;
        break;
      }
    }
    if (chosen < 0) break;
    out.k.push_back(chosen);
    out.c.push_back(1.0 / m[chosen]);
    next_min = chosen + 5;
  }
  if (out.k.empty()) {
    throw InsufficientGrowth(
        "reciprocal_coefficients: no annulus with m_k > 2^k beyond k = 4; growth looks polynomial "
        "at this truncation");
  }
  return out;
}

double leibniz_product_bound(const DerivativeSups& f_sups, const SeminormTable& phi_seminorms,
                             const MultiIndex& alpha, const MultiIndex& beta) {
  double total = 0.0;
  for (const MultiIndex& gamma : sub_indices(alpha)) {
    const auto fs = f_sups.find(gamma);
    const auto ps = phi_seminorms.find({alpha.minus(gamma), beta});
    if (fs == f_sups.end() || ps == phi_seminorms.end()) {
      throw std::invalid_argument("leibniz_product_bound: missing entry for gamma = " + gamma.str());
    }
    total += binomial(alpha, gamma) * fs->second * ps->second;
  }
  return total;
}

SeparationFunction separation_function(const std::vector<Vec>& u, const std::vector<Vec>& v) {
  std::vector<Vec> all(u);
  all.insert(all.end(), v.begin(), v.end());
  if (all.empty()) throw std::invalid_argument("separation_function: no points");
  const std::size_t d = all.front().size();
  for (const Vec& p : all) require_same_dimension(p.size(), d, "separation_function");
  double r = 1.0;
  if (all.size() >= 2) {
    const auto gap = minimal_gap(all);
    if (!gap || !(*gap > 0.0)) {
      throw std::invalid_argument("separation_function: U and V are not uniformly discrete (gap 0)");
    }
    r = *gap / 2.0;
  }
  auto centres = std::make_shared<std::vector<Vec>>(u);
  std::sort(centres->begin(), centres->end());
  // Candidates: centres whose first coordinate lies within r of x.
  auto near = [centres, r](const Vec& x) {
    auto lo = std::lower_bound(centres->begin(), centres->end(), x[0] - r,
                               [](const Vec& c, double v) { return c[0] < v; });
    std::vector<const Vec*> out;
    for (auto it = lo; it != centres->end() && (*it)[0] <= x[0] + r; ++it) out.push_back(&*it);
    return out;
  };
  SeparationFunction out;
  out.radius = r;
  out.function.name = "separation";
  out.function.dimension = d;
  out.function.support = Window::everything(d);
  out.function.value = [near, r](const Vec& x) {
    double s = 0.0;
    for (const Vec* c : near(x)) {
      double q = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) q += (x[i] - (*c)[i]) * (x[i] - (*c)[i]);
      s += smooth_step(1.0 - q / (r * r));
    }
    return s;
  };
  out.function.jet = [near, r, d](const Vec& x) {
    Jet s(d);
    for (const Vec* c : near(x)) {
      const Jet q = squared_norm_jet(x, *c);
      const Jet t = Jet::constant(d, 1.0) - q * (1.0 / (r * r));
      s = s + t.compose(smooth_step_derivatives(t.value()));
    }
    return s;
  };
  // sup over s in [0, r] of |S'(1 - s^2/r^2)| 2 s / r^2 on a dense radial grid.
  double best = 0.0;
  const int samples = 200'000;
  for (int i = 1; i < samples; ++i) {
    const double s = r * i / samples;
    const double t = 1.0 - (s / r) * (s / r);
    best = std::max(best, std::abs(smooth_step_derivatives(t)[1]) * 2.0 * s / (r * r));
  }
  out.gradient_bound = best;
  return out;
}

}  // namespace tempered
