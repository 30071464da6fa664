#include "emeval/oracle/naive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace emeval::oracle {

double e_measure(const BinaryMap& gt, const BinaryMap& fm) {
  const int w = gt.width();
  const int h = gt.height();
  const double n = double(w) * h;

  double mu_gt = 0.0, mu_fm = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      mu_gt += gt(x, y);
      mu_fm += fm(x, y);
    }
  }
  mu_gt /= n;
  mu_fm /= n;

  double total = 0.0;
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      double phi;
      if (mu_gt == 0.0) {
        phi = 1.0 - fm(x, y);
      } else if (mu_gt == 1.0) {
        phi = fm(x, y);
      } else {
        const double a = gt(x, y) - mu_gt;
        const double b = fm(x, y) - mu_fm;
        const double xi = (a * a + b * b) == 0.0 ? 0.0 : (2.0 * a * b) / (a * a + b * b);
        phi = (1.0 + xi) * (1.0 + xi) / 4.0;
      }
      total += phi;
    }
  }
  return total / n;
}

std::vector<double> distance_to_foreground(const BinaryMap& b) {
  const int w = b.width();
  const int h = b.height();
  std::vector<double> out(std::size_t(w) * h, std::numeric_limits<double>::infinity());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u)
          if (b(u, v)) best = std::min(best, std::hypot(double(u - x), double(v - y)));
      out[std::size_t(y) * w + x] = best;
    }
  }
  return out;
}

double fbw(const BinaryMap& gt, const BinaryMap& fm, double beta, const FbwConfig& cfg) {
  const int w = gt.width();
  const int h = gt.height();
  double positives = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) positives += gt(x, y);
  if (positives == 0.0) return 0.0;

  const int k = cfg.kernel_size;
  const int r = k / 2;
  const double c = (k - 1) / 2.0;
  std::vector<double> kernel(std::size_t(k) * k);
  double ksum = 0.0;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      kernel[j * k + i] =
          std::exp(-((i - c) * (i - c) + (j - c) * (j - c)) / (2.0 * cfg.sigma * cfg.sigma));
      ksum += kernel[j * k + i];
    }
  for (double& v : kernel) v /= ksum;

  auto err = [&](int x, int y) { return gt(x, y) != fm(x, y) ? 1.0 : 0.0; };
  const auto dist = distance_to_foreground(gt);

  double err_in_gt = 0.0, err_in_bg = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double e = err(x, y);
      double ew = e;
      if (cfg.weighted) {
        if (gt(x, y)) {
          double s = 0.0;
          for (int j = 0; j < k; ++j)
            for (int i = 0; i < k; ++i) {
              const int xx = std::clamp(x + i - r, 0, w - 1);
              const int yy = std::clamp(y + j - r, 0, h - 1);
              s += kernel[j * k + i] * err(xx, yy);
            }
          ew = std::min(e, s);
        } else {
          ew = e * (2.0 - std::exp(cfg.alpha * dist[std::size_t(y) * w + x]));
        }
      }
      (gt(x, y) ? err_in_gt : err_in_bg) += ew;
    }
  }
  const double tpw = std::max(0.0, positives - err_in_gt);
  const double recall = tpw / positives;
  const double precision = (tpw + err_in_bg) == 0.0 ? 0.0 : tpw / (tpw + err_in_bg);
  const double b2 = beta * beta;
  const double den = b2 * precision + recall;
  return den == 0.0 ? 0.0 : (1.0 + b2) * precision * recall / den;
}

int circle_pixel_count(int width, int height, double radius_fraction) {
  const double r = std::min(width, height) * radius_fraction;
  int count = 0;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const double dx = x + 0.5 - width / 2.0;
      const double dy = y + 0.5 - height / 2.0;
      if (std::sqrt(dx * dx + dy * dy) <= r) ++count;
    }
  return count;
}

double spearman_no_ties(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  auto rank_of = [](const std::vector<double>& v, std::size_t i) {
    double r = 1.0;
    for (double x : v)
      if (x > v[i]) r += 1.0;
    return r;
  };
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rank_of(a, i) - rank_of(b, i);
    d2 += d * d;
  }
  const double nn = double(n);
  return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
}

}  // namespace emeval::oracle
