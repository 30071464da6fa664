#pragma once

#include <ostream>
#include <vector>

#include "emeval/classic.hpp"
#include "emeval/map.hpp"

// Deliberately naive reference implementations. They evaluate every formula
// pixel by pixel, straight from its definition, and share no code with the
// optimized measures beyond the map containers.
namespace emeval::oracle {

// Per-pixel bias, alignment, enhancement and mean, with plain double loops.
// Constant GT follows the same documented policy as the library.
double e_measure(const BinaryMap& gt, const BinaryMap& fm);

// Distance to the nearest foreground pixel by exhaustive search.
std::vector<double> distance_to_foreground(const BinaryMap& b);

// Direct 2-D kernel correlation with replicated borders and exhaustive
// distance search.
double fbw(const BinaryMap& gt, const BinaryMap& fm, double beta, const FbwConfig& cfg = {});

// Foreground count of the centred disk, point-in-disk test per pixel.
int circle_pixel_count(int width, int height, double radius_fraction);

// Spearman rho via 1 - 6 sum(d^2) / (n (n^2 - 1)); valid without ties only.
double spearman_no_ties(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace emeval::oracle
