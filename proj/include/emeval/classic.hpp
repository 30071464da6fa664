#pragma once

#include <cmath>
#include <cstdint>

#include "emeval/map.hpp"

namespace emeval {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts confusion(const BinaryMap& gt, const BinaryMap& fm);

// A ratio paired with whether a 0/0 fallback produced it.
struct Score {
  double value = 0.0;
  bool degenerate = false;
};

// Precision and recall are 0 on a zero denominator, and so is F_beta when
// beta^2 * p + r == 0.
Score f_beta_detailed(const ConfusionCounts& c, double beta);
inline double f_beta(const ConfusionCounts& c, double beta) {
  return f_beta_detailed(c, beta).value;
}
inline double f1(const ConfusionCounts& c) { return f_beta(c, 1.0); }

// tp / (tp + fn + fp); 1 when both maps are empty.
Score iou_detailed(const ConfusionCounts& c);
inline double iou_ji(const ConfusionCounts& c) { return iou_detailed(c).value; }

// Weighting applied by the weighted F-measure. The defaults follow the usual
// construction: a 7x7 Gaussian (sigma 5) spreads errors inside the object,
// and background false positives are amplified by 2 - exp(alpha * d) where d
// is the distance to the object.
struct FbwConfig {
  double sigma = 5.0;
  int kernel_size = 7;
  double alpha = std::log(0.5) / 5.0;
  // false => every pixel weight is 1 and fbw reduces to f_beta.
  bool weighted = true;
};

// Normalized (sum 1) square Gaussian kernel, row-major, size k*k.
std::vector<double> gaussian_kernel(int size, double sigma);

Score fbw_detailed(const BinaryMap& gt, const BinaryMap& fm, double beta,
                   const FbwConfig& cfg = {});
inline double fbw(const BinaryMap& gt, const BinaryMap& fm, double beta,
                  const FbwConfig& cfg = {}) {
  return fbw_detailed(gt, fm, beta, cfg).value;
}

// The per-pixel weighted error field used by fbw (exposed for tests).
PixelMatrix fbw_weighted_error(const BinaryMap& gt, const BinaryMap& fm,
                               const FbwConfig& cfg = {});

}  // namespace emeval
