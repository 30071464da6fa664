#include "emeval/emeasure.hpp"

#include <array>

#include "emeval/summation.hpp"

namespace emeval {
namespace {

double alignment_value(double a, double b) {
  const double denom = a * a + b * b;
  if (denom == 0.0) return 0.0;
  const double xi = 2.0 * a * b / denom;
  // |2ab| <= a^2 + b^2 analytically; clamp away rounding overshoot.
  return xi > 1.0 ? 1.0 : (xi < -1.0 ? -1.0 : xi);
}

DegenerateGt classify_gt(const BinaryMap& gt) {
  if (gt.all_zero()) return DegenerateGt::kAllZero;
  if (gt.all_one()) return DegenerateGt::kAllOne;
  return DegenerateGt::kNone;
}

double degenerate_score(DegenerateGt kind, const BinaryMap& fm) {
  return kind == DegenerateGt::kAllZero ? 1.0 - mean_value(fm) : mean_value(fm);
}

}  // namespace

PixelMatrix bias_matrix(const BinaryMap& map) {
  const double mu = mean_value(map);
  PixelMatrix out(map.dims());
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x) out.at(x, y) = map(x, y) - mu;
  return out;
}

PixelMatrix alignment_matrix(const PixelMatrix& bias_gt, const PixelMatrix& bias_fm) {
  require_same_dims(bias_gt.dims(), bias_fm.dims(), "alignment_matrix");
  PixelMatrix out(bias_gt.dims());
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      out.at(x, y) = alignment_value(bias_gt(x, y), bias_fm(x, y));
  return out;
}

PixelMatrix enhance(const PixelMatrix& alignment) {
  PixelMatrix out(alignment.dims());
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) out.at(x, y) = enhance_value(alignment(x, y));
  return out;
}

EMeasureResult e_measure_detailed(const BinaryMap& gt, const BinaryMap& fm) {
  require_same_dims(gt.dims(), fm.dims(), "e_measure");

  EMeasureResult result;
  result.degenerate = classify_gt(gt);
  if (result.is_degenerate()) {
    result.score = degenerate_score(result.degenerate, fm);
    return result;
  }

  // Both maps are binary, so each bias matrix takes two values and the
  // enhanced matrix takes at most four. Count the (gt, fm) pixel pairs and
  // weight the four enhanced values by their counts.
  std::array<std::size_t, 4> counts{};
  const auto g = gt.values();
  const auto f = fm.values();
  for (std::size_t i = 0; i < g.size(); ++i) ++counts[g[i] * 2 + f[i]];

  const double mu_gt = mean_value(gt);
  const double mu_fm = mean_value(fm);
  CompensatedSum sum;
  for (int gv = 0; gv < 2; ++gv) {
    for (int fv = 0; fv < 2; ++fv) {
      const auto n = counts[gv * 2 + fv];
      if (n == 0) continue;
      const double phi = enhance_value(alignment_value(gv - mu_gt, fv - mu_fm));
      sum.add(phi * static_cast<double>(n));
    }
  }
  const double q = sum.value() / static_cast<double>(gt.size());
  result.score = q > 1.0 ? 1.0 : (q < 0.0 ? 0.0 : q);
  return result;
}

EMeasureTrace e_measure_trace(const BinaryMap& gt, const BinaryMap& fm) {
  require_same_dims(gt.dims(), fm.dims(), "e_measure");
  EMeasureTrace t;
  t.bias_gt = bias_matrix(gt);
  t.bias_fm = bias_matrix(fm);
  t.alignment = alignment_matrix(t.bias_gt, t.bias_fm);
  t.enhanced = enhance(t.alignment);
  t.result = e_measure_detailed(gt, fm);
  return t;
}

}  // namespace emeval
