#pragma once

#include <cstddef>

#include "datakit/core/edge_map.hpp"

namespace datakit::lines {

inline constexpr std::size_t kDefaultOutlierThreshold = 32;
inline constexpr int kPassiveDilateMinNeighbors = 4;

/// Clears every 8-connected component of true pixels smaller than
/// `threshold`. Throws RangeError if threshold is 0.
EdgeMap outlier_filter(const EdgeMap& m, std::size_t threshold = kDefaultOutlierThreshold);

/// Turns a false pixel true when at least 4 of its 8 neighbors are true.
/// Each pass reads only its input map; pixels outside the map count as false.
EdgeMap passive_dilate(const EdgeMap& m);
EdgeMap passive_dilate(const EdgeMap& m, int passes);

}  // namespace datakit::lines
