#include "emeval/distance_transform.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace emeval {
namespace {

constexpr double kFar = 1e20;

// 1-D squared distance transform of sampled function f (Felzenszwalb &
// Huttenlocher). d[q] = min_p (q - p)^2 + f[p].
void transform_1d(const std::vector<double>& f, std::vector<double>& d,
                  std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    auto intersect = [&](int p) {
      return ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
    };
    double s = intersect(v[k]);
    // z[0] is -inf, so this never pops the last parabola.
    while (s <= z[k]) {
      --k;
      s = intersect(v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

PixelMatrix euclidean_distance_to_foreground(const BinaryMap& b) {
  const int w = b.width();
  const int h = b.height();
  PixelMatrix out(b.dims());
  if (b.all_zero()) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(x, y) = std::numeric_limits<double>::infinity();
    return out;
  }

  const int n = std::max(w, h);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);

  // Columns.
  f.resize(h);
  d.resize(h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = b(x, y) ? 0.0 : kFar;
    transform_1d(f, d, v, z);
    for (int y = 0; y < h; ++y) out.at(x, y) = d[y];
  }

  // Rows.
  f.resize(w);
  d.resize(w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[x] = out(x, y);
    transform_1d(f, d, v, z);
    for (int x = 0; x < w; ++x) out.at(x, y) = std::sqrt(d[x]);
  }
  return out;
}

}  // namespace emeval
