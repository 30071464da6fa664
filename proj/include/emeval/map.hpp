#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace emeval {

// Thrown for every contract violation surfaced by the library: bad
// dimensions, out-of-range pixel values, unreadable files, malformed
// manifests.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public EvalError {
 public:
  using EvalError::EvalError;
};

struct Dimensions {
  int width = 1;
  int height = 1;

  Dimensions() = default;
  Dimensions(int w, int h);

  std::size_t area() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool operator==(const Dimensions&) const = default;
  std::string to_string() const;
};

// Row-major pixel grid. Pixel (x, y) is column x, row y and lives at
// index y * width + x.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  explicit Grid(Dimensions d, T fill = T{})
      : dims_(d), values_(d.area(), fill) {}

  Dimensions dims() const { return dims_; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }
  std::size_t size() const { return values_.size(); }

  T operator()(int x, int y) const { return values_[index(x, y)]; }
  T operator[](std::size_t i) const { return values_[i]; }

  std::span<const T> values() const { return values_; }

  bool operator==(const Grid&) const = default;

 protected:
  Grid(Dimensions d, std::vector<T> values) : dims_(d), values_(std::move(values)) {
    if (values_.size() != dims_.area()) {
      throw EvalError("pixel buffer holds " + std::to_string(values_.size()) +
                      " values, expected " + std::to_string(dims_.area()) +
                      " for " + dims_.to_string());
    }
  }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  Dimensions dims_;
  std::vector<T> values_;
};

// Real-valued map with every pixel in [0, 1].
class GrayMap : public Grid<double> {
 public:
  GrayMap() = default;
  explicit GrayMap(Dimensions d, double fill = 0.0);
  GrayMap(Dimensions d, std::vector<double> values);
};

// Map restricted to {0, 1}.
class BinaryMap : public Grid<std::uint8_t> {
 public:
  BinaryMap() = default;
  explicit BinaryMap(Dimensions d, std::uint8_t fill = 0);
  BinaryMap(Dimensions d, std::vector<std::uint8_t> values);
  // Convenience for literals in tests and fixtures.
  BinaryMap(Dimensions d, std::initializer_list<int> values);

  void set(int x, int y, bool on) { values_[index(x, y)] = on ? 1 : 0; }

  std::size_t count_ones() const;
  bool is_constant() const;
  bool all_zero() const { return count_ones() == 0; }
  bool all_one() const { return count_ones() == size(); }
};

// Unconstrained real-valued grid holding per-pixel intermediates.
class PixelMatrix : public Grid<double> {
 public:
  PixelMatrix() = default;
  explicit PixelMatrix(Dimensions d, double fill = 0.0) : Grid(d, fill) {}
  PixelMatrix(Dimensions d, std::vector<double> values) : Grid(d, std::move(values)) {}

  double& at(int x, int y) { return values_[index(x, y)]; }
  using Grid::operator();
};

// Pixel = 1 iff value >= threshold.
BinaryMap binarize_fixed(const GrayMap& g, double threshold);

inline constexpr double kAdaptiveEpsilon = 1e-9;

// Threshold at min(2 * mean, 1 - eps). An all-zero map yields an all-zero
// binary map.
BinaryMap binarize_adaptive(const GrayMap& g);
double adaptive_threshold(const GrayMap& g);

BinaryMap complement(const BinaryMap& b);

// Nearest-neighbour resampling: source index floor(x * src / dst).
BinaryMap resize_nn(const BinaryMap& b, Dimensions d);

double mean_value(const GrayMap& m);
double mean_value(const BinaryMap& m);

GrayMap to_gray(const BinaryMap& b);

void require_same_dims(Dimensions a, Dimensions b, const char* what);

}  // namespace emeval
