#pragma once

#include "emeval/map.hpp"

namespace emeval {

// Exact Euclidean distance from every pixel to the nearest pixel with value 1
// (zero on foreground pixels). Separable lower-envelope-of-parabolas
// algorithm: one pass over columns, one over rows, O(w*h).
//
// With no foreground pixel at all every entry is +infinity.
PixelMatrix euclidean_distance_to_foreground(const BinaryMap& b);

}  // namespace emeval
