#pragma once

#include <map>
#include <stdexcept>

#include "qwalk/types.hpp"

namespace qwalk {

// Position distribution after tracing out the coin. Keys are internal lattice
// points; a key m means physical position m / scale, or m / (scale * steps)
// once the measure has been rescaled (steps > 0 marks the rescaled view).
struct PositionDistribution {
  std::map<PosKey, double> masses;
  int dimension = 1;
  std::int64_t scale = 1;  // internal lattice units per physical unit
  std::int64_t steps = 0;  // 0 while unrescaled

  double total_mass() const {
    double s = 0.0;
    for (const auto& [key, m] : masses) s += m;
    return s;
  }

  double coordinate(const PosKey& key, int axis) const {
    const double divisor = static_cast<double>(scale) * static_cast<double>(steps > 0 ? steps : 1);
    return static_cast<double>(key[axis]) / divisor;
  }
};

// Dilates the measure by 1/n. Purely a change of interpretation: the keys are
// untouched, only the divisor used by coordinate() changes.
inline PositionDistribution rescale(PositionDistribution dist, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("rescale requires n >= 1");
  dist.steps = n;
  return dist;
}

}  // namespace qwalk
