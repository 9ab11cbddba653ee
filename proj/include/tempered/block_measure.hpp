#pragma once

#include <variant>
#include <vector>

#include "tempered/atomic_measure.hpp"
#include "tempered/compact_function.hpp"

namespace tempered {

// Absolutely continuous block g(x) dx on R, centred at the origin.
struct DensityBlock {
  CompactFunction density;
};

using BlockPayload = std::variant<AtomicMeasure, ProductMeasure, DensityBlock>;

struct Block {
  Vec shift;
  BlockPayload payload;
};

// Finite sum of shifted blocks sum_m delta_{shift_m} * payload_m whose
// supports (boxes shift_m + [-r_m, r_m]^d with r_m <= support_radius) are
// pairwise disjoint. `spacing` records the lattice vector used to place the
// blocks; it is informational.
class BlockMeasure {
 public:
  BlockMeasure(std::size_t dimension, std::vector<Block> blocks, double support_radius,
               Vec spacing);

  // Blocks at shifts (first_index + k) * spacing for k = 0, 1, ...
  static BlockMeasure lattice(const Vec& spacing, double support_radius,
                              std::vector<BlockPayload> payloads, int first_index = 1);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  double support_radius() const { return support_radius_; }
  const Vec& spacing() const { return spacing_; }

  // Box containing the support of block i.
  Window block_box(std::size_t i) const;
  double block_radius(std::size_t i) const;

 private:
  std::size_t dimension_;
  std::vector<Block> blocks_;
  double support_radius_;
  Vec spacing_;
  std::vector<double> radii_;
};

double payload_radius(const BlockPayload& payload);

// TV of one payload. Density blocks contribute their certified L1 lower bound.
double payload_total_variation(const BlockPayload& payload, std::size_t max_atoms);
double total_variation(const BlockMeasure& mu, std::size_t max_atoms);

// Atoms of mu inside `window`. Only blocks whose box meets the window are
// expanded; a density block meeting the window is rejected.
AtomicMeasure restrict_to(const BlockMeasure& mu, const Window& window, std::size_t max_atoms);

// Sub-measure made of the first `count` blocks.
BlockMeasure truncate(const BlockMeasure& mu, std::size_t count);

}  // namespace tempered
