#include "emeval/map.hpp"

#include <algorithm>
#include <cmath>

#include "emeval/summation.hpp"

namespace emeval {

Dimensions::Dimensions(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw EvalError("map dimensions must be positive, got " + to_string());
  }
}

std::string Dimensions::to_string() const {
  return std::to_string(width) + "x" + std::to_string(height);
}

void require_same_dims(Dimensions a, Dimensions b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch " +
                            a.to_string() + " vs " + b.to_string());
  }
}

GrayMap::GrayMap(Dimensions d, double fill) : Grid(d, fill) {
  if (!(fill >= 0.0 && fill <= 1.0)) throw EvalError("gray value outside [0,1]");
}

GrayMap::GrayMap(Dimensions d, std::vector<double> values) : Grid(d, std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw EvalError("gray value " + std::to_string(v) + " outside [0,1]");
    }
  }
}

BinaryMap::BinaryMap(Dimensions d, std::uint8_t fill) : Grid(d, fill) {
  if (fill > 1) throw EvalError("binary value must be 0 or 1");
}

BinaryMap::BinaryMap(Dimensions d, std::vector<std::uint8_t> values)
    : Grid(d, std::move(values)) {
  for (auto v : values_) {
    if (v > 1) throw EvalError("binary value must be 0 or 1, got " + std::to_string(v));
  }
}

BinaryMap::BinaryMap(Dimensions d, std::initializer_list<int> values)
    : BinaryMap(d, std::vector<std::uint8_t>(values.begin(), values.end())) {
  for (int v : values) {
    if (v != 0 && v != 1) throw EvalError("binary value must be 0 or 1");
  }
}

std::size_t BinaryMap::count_ones() const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), 1));
}

bool BinaryMap::is_constant() const {
  const auto ones = count_ones();
  return ones == 0 || ones == size();
}

BinaryMap binarize_fixed(const GrayMap& g, double threshold) {
  std::vector<std::uint8_t> out(g.size());
  const auto in = g.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = in[i] >= threshold ? 1 : 0;
  return BinaryMap(g.dims(), std::move(out));
}

double adaptive_threshold(const GrayMap& g) {
  return std::min(2.0 * mean_value(g), 1.0 - kAdaptiveEpsilon);
}

BinaryMap binarize_adaptive(const GrayMap& g) {
  const auto vals = g.values();
  if (std::all_of(vals.begin(), vals.end(), [](double v) { return v == 0.0; })) {
    return BinaryMap(g.dims(), std::uint8_t{0});
  }
  return binarize_fixed(g, adaptive_threshold(g));
}

BinaryMap complement(const BinaryMap& b) {
  std::vector<std::uint8_t> out(b.size());
  const auto in = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(1 - in[i]);
  return BinaryMap(b.dims(), std::move(out));
}

BinaryMap resize_nn(const BinaryMap& b, Dimensions d) {
  if (d == b.dims()) return b;
  std::vector<std::uint8_t> out(d.area());
  const auto sw = static_cast<long long>(b.width());
  const auto sh = static_cast<long long>(b.height());
  for (int y = 0; y < d.height; ++y) {
    const int sy = static_cast<int>(y * sh / d.height);
    for (int x = 0; x < d.width; ++x) {
      const int sx = static_cast<int>(x * sw / d.width);
      out[static_cast<std::size_t>(y) * d.width + x] = b(sx, sy);
    }
  }
  return BinaryMap(d, std::move(out));
}

double mean_value(const GrayMap& m) {
  return compensated_sum(m.values()) / static_cast<double>(m.size());
}

double mean_value(const BinaryMap& m) {
  // k/n rounded half-to-even onto the 2^-53 grid. On that grid 1 - v is
  // exact, so mean(complement(b)) == 1 - mean(b) holds bit-for-bit.
  using u128 = unsigned __int128;
  constexpr u128 kScale = u128{1} << 53;
  const u128 k = m.count_ones();
  const u128 n = m.size();
  u128 q = (k * kScale) / n;
  const u128 r = (k * kScale) % n;
  if (2 * r > n || (2 * r == n && (q & 1) != 0)) ++q;
  return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(q)), -53);
}

GrayMap to_gray(const BinaryMap& b) {
  std::vector<double> out(b.values().begin(), b.values().end());
  return GrayMap(b.dims(), std::move(out));
}

}  // namespace emeval
