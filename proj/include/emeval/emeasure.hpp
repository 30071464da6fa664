#pragma once

#include "emeval/map.hpp"

namespace emeval {

// Per-pixel deviation from the global mean: I(x,y) - mean(I).
PixelMatrix bias_matrix(const BinaryMap& map);

// Alignment 2ab / (a^2 + b^2) of two bias matrices, a from the ground truth
// and b from the foreground map. Pixels with a^2 + b^2 == 0 get 0. Every
// output lies in [-1, 1] and is >= 0 exactly where a and b do not have
// opposite signs.
PixelMatrix alignment_matrix(const PixelMatrix& bias_gt, const PixelMatrix& bias_fm);

// Quadratic mapping (1 + x)^2 / 4: [-1, 1] -> [0, 1], convex and increasing.
inline double enhance_value(double xi) { return 0.25 * (1.0 + xi) * (1.0 + xi); }

PixelMatrix enhance(const PixelMatrix& alignment);

enum class DegenerateGt {
  kNone,
  kAllZero,  // score = 1 - mean(fm)
  kAllOne,   // score = mean(fm)
};

struct EMeasureResult {
  double score = 0.0;
  DegenerateGt degenerate = DegenerateGt::kNone;
  bool is_degenerate() const { return degenerate != DegenerateGt::kNone; }
};

// Enhanced-alignment measure of `fm` against `gt`, in [0, 1].
//
// A constant ground truth makes the alignment term meaningless (its bias
// matrix is identically zero). For an all-zero gt the enhanced value at each
// pixel is taken as 1 - fm(x,y); for an all-one gt it is fm(x,y). A perfect
// map still scores 1 and its complement 0; `degenerate` records which case
// fired.
EMeasureResult e_measure_detailed(const BinaryMap& gt, const BinaryMap& fm);

inline double e_measure(const BinaryMap& gt, const BinaryMap& fm) {
  return e_measure_detailed(gt, fm).score;
}

// Full intermediate chain, mainly for inspection and tests.
struct EMeasureTrace {
  PixelMatrix bias_gt;
  PixelMatrix bias_fm;
  PixelMatrix alignment;
  PixelMatrix enhanced;
  EMeasureResult result;
};
EMeasureTrace e_measure_trace(const BinaryMap& gt, const BinaryMap& fm);

}  // namespace emeval
