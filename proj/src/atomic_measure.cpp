#include "tempered/atomic_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tempered/numerics.hpp"

namespace tempered {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<Atom> normalize_atoms(std::size_t dim, std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    require_same_dimension(a.position.size(), dim, "AtomicMeasure atom");
    for (double c : a.position) {
      if (!std::isfinite(c)) throw std::invalid_argument("AtomicMeasure: non-finite position");
    }
    if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag())) {
      throw std::invalid_argument("AtomicMeasure: non-finite weight");
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return lex_less(a.position, b.position); });
  // Clusters are found by sweeping along the first coordinate, since any two
  // positions within tolerance differ by at most the tolerance there.
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  if (dim > 1) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return atoms[i].position[0] < atoms[j].position[0];
    });
  }
  std::vector<bool> absorbed(atoms.size(), false);
  std::vector<CompensatedSum<Complex>> sums(atoms.size());
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    if (absorbed[i]) continue;
    sums[i].add(atoms[i].weight);
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (atoms[j].position[0] - atoms[i].position[0] > kMergeTolerance) break;
      if (!absorbed[j] && distance(atoms[i].position, atoms[j].position) <= kMergeTolerance) {
        absorbed[j] = true;
        sums[i].add(atoms[j].weight);
      }
    }
  }
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (absorbed[i]) continue;
    const Complex w = sums[i].value();
    if (w == Complex(0.0, 0.0)) continue;
    out.push_back({std::move(atoms[i].position), w});
  }
  return out;
}

}  // namespace

std::optional<double> minimal_gap(std::vector<Vec> positions) {
  if (positions.size() < 2) return std::nullopt;
  std::sort(positions.begin(), positions.end(),
            [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (positions[j][0] - positions[i][0] >= best) break;
      best = std::min(best, distance(positions[i], positions[j]));
    }
  }
  return best;
}

AtomicMeasure::AtomicMeasure(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("AtomicMeasure: dimension must be positive");
}

AtomicMeasure::AtomicMeasure(std::size_t dimension, std::vector<Atom> atoms)
    : AtomicMeasure(dimension) {
  atoms_ = normalize_atoms(dimension, std::move(atoms));
  std::vector<Vec> pos;
  pos.reserve(atoms_.size());
  for (const Atom& a : atoms_) pos.push_back(a.position);
  min_gap_ = minimal_gap(std::move(pos));
}

AtomicMeasure AtomicMeasure::dirac(const Vec& position, Complex weight) {
  return AtomicMeasure(position.size(), {{position, weight}});
}

double AtomicMeasure::total_variation() const {
  CompensatedSum<double> s;
  for (const Atom& a : atoms_) s.add(std::abs(a.weight));
  return s.value();
}

Complex AtomicMeasure::total_mass() const {
  CompensatedSum<Complex> s;
  for (const Atom& a : atoms_) s.add(a.weight);
  return s.value();
}

double AtomicMeasure::support_radius() const {
  double r = 0.0;
  for (const Atom& a : atoms_) r = std::max(r, norm2(a.position));
  return r;
}

AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b) {
  require_same_dimension(a.dimension(), b.dimension(), "convolve");
  std::vector<Atom> out;
  out.reserve(a.size() * b.size());
  for (const Atom& x : a.atoms()) {
    for (const Atom& y : b.atoms()) out.push_back({add(x.position, y.position), x.weight * y.weight});
  }
  return AtomicMeasure(a.dimension(), std::move(out));
}

AtomicMeasure translate(const AtomicMeasure& mu, const Vec& v) {
  require_same_dimension(mu.dimension(), v.size(), "translate");
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const Atom& a : mu.atoms()) out.push_back({add(a.position, v), a.weight});
  return AtomicMeasure(mu.dimension(), std::move(out));
}

AtomicMeasure variation(const AtomicMeasure& mu) {
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const Atom& a : mu.atoms()) out.push_back({a.position, std::abs(a.weight)});
  return AtomicMeasure(mu.dimension(), std::move(out));
}

AtomicMeasure restrict_to(const AtomicMeasure& mu, const Window& window) {
  require_same_dimension(mu.dimension(), window.dimension(), "restrict");
  std::vector<Atom> out;
  for (const Atom& a : mu.atoms()) {
    if (window.contains(a.position)) out.push_back(a);
  }
  return AtomicMeasure(mu.dimension(), std::move(out));
}

AtomicMeasure scale_weights(const AtomicMeasure& mu, Complex factor) {
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const Atom& a : mu.atoms()) out.push_back({a.position, a.weight * factor});
  return AtomicMeasure(mu.dimension(), std::move(out));
}

AtomicMeasure linear_combination(const AtomicMeasure& a, Complex c1,
                                 const AtomicMeasure& b, Complex c2) {
  require_same_dimension(a.dimension(), b.dimension(), "linear_combination");
  std::vector<Atom> out;
  out.reserve(a.size() + b.size());
  for (const Atom& x : a.atoms()) out.push_back({x.position, x.weight * c1});
  for (const Atom& x : b.atoms()) out.push_back({x.position, x.weight * c2});
  return AtomicMeasure(a.dimension(), std::move(out));
}

double total_variation(const AtomicMeasure& mu) { return mu.total_variation(); }

HahnJordan hahn_jordan(const AtomicMeasure& mu) {
  std::vector<Atom> pr, nr, pi, ni;
  for (const Atom& a : mu.atoms()) {
    const double re = a.weight.real(), im = a.weight.imag();
    if (re > 0) pr.push_back({a.position, re});
    if (re < 0) nr.push_back({a.position, -re});
    if (im > 0) pi.push_back({a.position, im});
    if (im < 0) ni.push_back({a.position, -im});
  }
  const std::size_t d = mu.dimension();
  return {AtomicMeasure(d, std::move(pr)), AtomicMeasure(d, std::move(nr)),
          AtomicMeasure(d, std::move(pi)), AtomicMeasure(d, std::move(ni))};
}

AtomicMeasure recombine(const HahnJordan& parts) {
  const AtomicMeasure re = linear_combination(parts.pos_real, 1.0, parts.neg_real, -1.0);
  const AtomicMeasure im = linear_combination(parts.pos_imag, 1.0, parts.neg_imag, -1.0);
  return linear_combination(re, 1.0, im, Complex(0.0, 1.0));
}

ProductMeasure::ProductMeasure(std::vector<AtomicMeasure> factors, Vec shift, double scale,
                               Distinctness distinct)
    : factors_(std::move(factors)), shift_(std::move(shift)), scale_(scale), distinct_(distinct) {
  if (shift_.empty()) throw std::invalid_argument("ProductMeasure: empty shift vector");
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw std::invalid_argument("ProductMeasure: scale must be positive and finite");
  }
  for (const AtomicMeasure& f : factors_) {
    require_same_dimension(f.dimension(), shift_.size(), "ProductMeasure factor");
  }
}

std::size_t ProductMeasure::implicit_size() const {
  std::size_t n = 1;
  for (const AtomicMeasure& f : factors_) {
    if (f.size() == 0) return 0;
    if (n > std::numeric_limits<std::size_t>::max() / f.size()) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= f.size();
  }
  return n;
}

double ProductMeasure::log2_implicit_size() const {
  double s = 0.0;
  for (const AtomicMeasure& f : factors_) {
    if (f.size() == 0) return -std::numeric_limits<double>::infinity();
    s += std::log2(static_cast<double>(f.size()));
  }
  return s;
}

ProductMeasure ProductMeasure::with_distinctness(Distinctness d) const {
  ProductMeasure out(*this);
  out.distinct_ = d;
  return out;
}

ProductMeasure ProductMeasure::with_scale(double scale) const {
  return ProductMeasure(factors_, shift_, scale, distinct_);
}

ProductMeasure ProductMeasure::translated(const Vec& v) const {
  return ProductMeasure(factors_, add(shift_, v), scale_, distinct_);
}

std::vector<Atom> ProductMeasure::raw_atoms(std::size_t max_atoms) const {
  const std::size_t total = implicit_size();
  if (total > max_atoms) {
    throw BudgetExceeded("ProductMeasure: " + std::to_string(total) +
                         " implicit atoms exceed enumeration budget " +
                         std::to_string(max_atoms));
  }
  std::vector<Atom> out;
  out.reserve(total);
  out.push_back({shift_, Complex(scale_, 0.0)});
  for (const AtomicMeasure& f : factors_) {
    std::vector<Atom> next;
    next.reserve(out.size() * f.size());
    for (const Atom& a : out) {
      for (const Atom& b : f.atoms()) next.push_back({add(a.position, b.position), a.weight * b.weight});
    }
    out = std::move(next);
  }
  return out;
}

AtomicMeasure ProductMeasure::enumerate(std::size_t max_atoms) const {
  return AtomicMeasure(dimension(), raw_atoms(max_atoms));
}

double ProductMeasure::log2_total_variation_bound() const {
  double s = std::log2(scale_);
  for (const AtomicMeasure& f : factors_) s += std::log2(f.total_variation());
  return s;
}

double ProductMeasure::support_radius_bound() const {
  double r = norm2(shift_);
  for (const AtomicMeasure& f : factors_) r += f.support_radius();
  return r;
}

ProductMeasure translate(const ProductMeasure& p, const Vec& v) {
  require_same_dimension(p.dimension(), v.size(), "translate");
  return p.translated(v);
}

DistinctnessReport distinctness_check(const ProductMeasure& p, std::size_t max_atoms) {
  DistinctnessReport report;
  if (p.factors().size() == 1) {
    report.verdict = DistinctnessReport::Verdict::kDistinct;
    report.min_gap = p.factors().front().min_gap();
    return report;
  }
  if (p.implicit_size() > max_atoms) return report;
  const std::vector<Atom> atoms = p.raw_atoms(max_atoms);
  std::vector<Vec> pos;
  pos.reserve(atoms.size());
  for (const Atom& a : atoms) pos.push_back(a.position);
  report.min_gap = minimal_gap(std::move(pos));
  const bool distinct = !report.min_gap || *report.min_gap > kMergeTolerance;
  report.verdict = distinct ? DistinctnessReport::Verdict::kDistinct
                            : DistinctnessReport::Verdict::kCollision;
  return report;
}

namespace {
bool analytic_tv_allowed(const ProductMeasure& p, std::size_t max_atoms) {
  switch (p.distinctness()) {
    case Distinctness::kCertified:
    case Distinctness::kAssumed:
      return true;
    case Distinctness::kCollision:
      return false;
    case Distinctness::kUnknown:
      break;
  }
  const DistinctnessReport r = distinctness_check(p, max_atoms);
  if (r.verdict == DistinctnessReport::Verdict::kUncertified) {
    throw BudgetExceeded("total_variation: distinctness uncertified and enumeration over budget");
  }
  return r.distinct();
}
}  // namespace

double total_variation(const ProductMeasure& p, std::size_t max_atoms) {
  if (analytic_tv_allowed(p, max_atoms)) {
    double tv = p.scale();
    for (const AtomicMeasure& f : p.factors()) tv *= f.total_variation();
    return tv;
  }
  return p.enumerate(max_atoms).total_variation();
}

double log2_total_variation(const ProductMeasure& p, std::size_t max_atoms) {
  if (analytic_tv_allowed(p, max_atoms)) return p.log2_total_variation_bound();
  return std::log2(p.enumerate(max_atoms).total_variation());
}

}  // namespace tempered
