#include "emeval/classic.hpp"

#include <algorithm>
#include <vector>

#include "emeval/distance_transform.hpp"
#include "emeval/summation.hpp"

namespace emeval {
namespace {

Score ratio(double num, double den) {
  if (den == 0.0) return {0.0, true};
  return {num / den, false};
}

Score combine_f(double precision, double recall, double beta, bool degenerate) {
  const double b2 = beta * beta;
  Score f = ratio((1.0 + b2) * precision * recall, b2 * precision + recall);
  f.degenerate = f.degenerate || degenerate;
  f.value = std::clamp(f.value, 0.0, 1.0);
  return f;
}

// Separable convolution with a normalized 1-D Gaussian, replicating edge
// pixels at the border.
PixelMatrix smooth_replicate(const PixelMatrix& in, int size, double sigma) {
  std::vector<double> k(size);
  const double c = (size - 1) / 2.0;
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    k[i] = std::exp(-(i - c) * (i - c) / (2.0 * sigma * sigma));
    total += k[i];
  }
  for (double& v : k) v /= total;

  const int w = in.width();
  const int h = in.height();
  const int r = size / 2;
  PixelMatrix tmp(in.dims());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = 0; i < size; ++i) s += k[i] * in(std::clamp(x + i - r, 0, w - 1), y);
      tmp.at(x, y) = s;
    }
  }
  PixelMatrix out(in.dims());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int i = 0; i < size; ++i) s += k[i] * tmp(x, std::clamp(y + i - r, 0, h - 1));
      out.at(x, y) = s;
    }
  }
  return out;
}

}  // namespace

ConfusionCounts confusion(const BinaryMap& gt, const BinaryMap& fm) {
  require_same_dims(gt.dims(), fm.dims(), "confusion");
  ConfusionCounts c;
  const auto g = gt.values();
  const auto f = fm.values();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i]) {
      f[i] ? ++c.tp : ++c.fn;
    } else {
      f[i] ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

Score f_beta_detailed(const ConfusionCounts& c, double beta) {
  const Score p = ratio(double(c.tp), double(c.tp + c.fp));
  const Score r = ratio(double(c.tp), double(c.tp + c.fn));
  return combine_f(p.value, r.value, beta, p.degenerate || r.degenerate);
}

Score iou_detailed(const ConfusionCounts& c) {
  const auto den = c.tp + c.fn + c.fp;
  if (den == 0) return {1.0, true};
  return {double(c.tp) / double(den), false};
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  if (size < 1 || size % 2 == 0) throw EvalError("kernel size must be odd and positive");
  std::vector<double> k(static_cast<std::size_t>(size) * size);
  const double c = (size - 1) / 2.0;
  double total = 0.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double d2 = (x - c) * (x - c) + (y - c) * (y - c);
      k[y * size + x] = std::exp(-d2 / (2.0 * sigma * sigma));
      total += k[y * size + x];
    }
  }
  for (double& v : k) v /= total;
  return k;
}

PixelMatrix fbw_weighted_error(const BinaryMap& gt, const BinaryMap& fm,
                               const FbwConfig& cfg) {
  require_same_dims(gt.dims(), fm.dims(), "fbw");
  if (cfg.kernel_size < 1 || cfg.kernel_size % 2 == 0) {
    throw EvalError("fbw kernel size must be odd and positive");
  }
  PixelMatrix err(gt.dims());
  for (int y = 0; y < gt.height(); ++y)
    for (int x = 0; x < gt.width(); ++x) err.at(x, y) = gt(x, y) != fm(x, y) ? 1.0 : 0.0;
  if (!cfg.weighted) return err;

  const PixelMatrix smoothed = smooth_replicate(err, cfg.kernel_size, cfg.sigma);
  const PixelMatrix dist = euclidean_distance_to_foreground(gt);
  PixelMatrix out(gt.dims());
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const double e = err(x, y);
      if (gt(x, y)) {
        out.at(x, y) = std::min(e, smoothed(x, y));
      } else {
        out.at(x, y) = e == 0.0 ? 0.0 : e * (2.0 - std::exp(cfg.alpha * dist(x, y)));
      }
    }
  }
  return out;
}

Score fbw_detailed(const BinaryMap& gt, const BinaryMap& fm, double beta,
                   const FbwConfig& cfg) {
  require_same_dims(gt.dims(), fm.dims(), "fbw");
  if (gt.all_zero()) return {0.0, true};

  const PixelMatrix ew = fbw_weighted_error(gt, fm, cfg);
  CompensatedSum err_in_gt;
  CompensatedSum err_in_bg;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    (gt[i] ? err_in_gt : err_in_bg).add(ew[i]);
  }
  const double positives = static_cast<double>(gt.count_ones());
  const double tpw = std::max(0.0, positives - err_in_gt.value());
  const double fpw = err_in_bg.value();

  const Score recall = ratio(tpw, positives);
  const Score precision = ratio(tpw, tpw + fpw);
  return combine_f(precision.value, recall.value, beta,
                   precision.degenerate || recall.degenerate);
}

}  // namespace emeval
