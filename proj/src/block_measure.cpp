#include "tempered/block_measure.hpp"

#include <algorithm>
#include <cmath>

namespace tempered {

namespace {

double coordinate_extent(const AtomicMeasure& mu) {
  double r = 0.0;
  for (const Atom& a : mu.atoms()) {
    for (double c : a.position) r = std::max(r, std::abs(c));
  }
  return r;
}

double coordinate_extent(const ProductMeasure& p) {
  double r = 0.0;
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    double s = std::abs(p.shift()[i]);
    for (const AtomicMeasure& f : p.factors()) {
      double m = 0.0;
      for (const Atom& a : f.atoms()) m = std::max(m, std::abs(a.position[i]));
      s += m;
    }
    r = std::max(r, s);
  }
  return r;
}

std::size_t payload_dimension(const BlockPayload& payload) {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DensityBlock>) {
          return 1;
        } else {
          return p.dimension();
        }
      },
      payload);
}

}  // namespace

double payload_radius(const BlockPayload& payload) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DensityBlock>) {
          return p.density.support_radius;
        } else {
          return coordinate_extent(p);
        }
      },
      payload);
}

BlockMeasure::BlockMeasure(std::size_t dimension, std::vector<Block> blocks,
                           double support_radius, Vec spacing)
    : dimension_(dimension),
      blocks_(std::move(blocks)),
      support_radius_(support_radius),
      spacing_(std::move(spacing)) {
  if (!(support_radius_ > 0.0)) throw std::invalid_argument("BlockMeasure: support radius must be positive");
  require_same_dimension(spacing_.size(), dimension_, "BlockMeasure spacing");
  radii_.reserve(blocks_.size());
  for (const Block& b : blocks_) {
    require_same_dimension(b.shift.size(), dimension_, "BlockMeasure shift");
    require_same_dimension(payload_dimension(b.payload), dimension_, "BlockMeasure payload");
    const double r = payload_radius(b.payload);
    if (r > support_radius_ * (1.0 + 1e-15)) {
      throw std::invalid_argument("BlockMeasure: payload support exceeds [-A, A]^d");
    }
    radii_.push_back(r);
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      if (block_box(i).intersects(block_box(j))) {
        throw std::invalid_argument("BlockMeasure: block supports overlap");
      }
    }
  }
}

BlockMeasure BlockMeasure::lattice(const Vec& spacing, double support_radius,
                                   std::vector<BlockPayload> payloads, int first_index) {
  std::vector<Block> blocks;
  blocks.reserve(payloads.size());
  int m = first_index;
  for (BlockPayload& p : payloads) {
    blocks.push_back({scaled(spacing, static_cast<double>(m)), std::move(p)});
    ++m;
  }
  return BlockMeasure(spacing.size(), std::move(blocks), support_radius, spacing);
}

double BlockMeasure::block_radius(std::size_t i) const { return radii_.at(i); }

Window BlockMeasure::block_box(std::size_t i) const {
  const Vec& s = blocks_.at(i).shift;
  const double r = radii_.at(i);
  Vec lo(s), hi(s);
  for (std::size_t k = 0; k < s.size(); ++k) {
    lo[k] -= r;
    hi[k] += r;
  }
  return Window(std::move(lo), std::move(hi));
}

double payload_total_variation(const BlockPayload& payload, std::size_t max_atoms) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DensityBlock>) {
          if (!p.density.l1_norm) {
            throw std::invalid_argument("density block without certified L1 bounds");
          }
          return p.density.l1_norm->lower;
        } else if constexpr (std::is_same_v<T, ProductMeasure>) {
          return total_variation(p, max_atoms);
        } else {
          return p.total_variation();
        }
      },
      payload);
}

double total_variation(const BlockMeasure& mu, std::size_t max_atoms) {
  double tv = 0.0;
  for (const Block& b : mu.blocks()) tv += payload_total_variation(b.payload, max_atoms);
  return tv;
}

AtomicMeasure restrict_to(const BlockMeasure& mu, const Window& window, std::size_t max_atoms) {
  require_same_dimension(window.dimension(), mu.dimension(), "restrict");
  std::vector<Atom> out;
  for (std::size_t i = 0; i < mu.blocks().size(); ++i) {
    if (!mu.block_box(i).intersects(window)) continue;
    const Block& b = mu.blocks()[i];
    AtomicMeasure local = std::visit(
        [&](const auto& p) -> AtomicMeasure {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, DensityBlock>) {
            throw std::invalid_argument("restrict: window meets a density block");
          } else if constexpr (std::is_same_v<T, ProductMeasure>) {
            return p.enumerate(max_atoms);
          } else {
            return p;
          }
        },
        b.payload);
    for (const Atom& a : local.atoms()) {
      Vec x = add(a.position, b.shift);
      if (window.contains(x)) out.push_back({std::move(x), a.weight});
    }
  }
  return AtomicMeasure(mu.dimension(), std::move(out));
}

BlockMeasure truncate(const BlockMeasure& mu, std::size_t count) {
  std::vector<Block> blocks(mu.blocks().begin(),
                            mu.blocks().begin() + std::min(count, mu.blocks().size()));
  return BlockMeasure(mu.dimension(), std::move(blocks), mu.support_radius(), mu.spacing());
}

}  // namespace tempered
