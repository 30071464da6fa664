#include "emeval/image_io.hpp"

#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace emeval {
namespace {

// Returns the per-pixel channel sum and the channel count.
struct RawImage {
  Dimensions dims;
  std::vector<int> channel_sum;
  int channels = 1;
};

RawImage read_raw(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw EvalError("file not found: " + path.string());
  }
  const cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (img.empty()) {
    throw EvalError("unsupported or unreadable image: " + path.string());
  }
  if (img.depth() != CV_8U) {
    throw EvalError("unsupported bit depth (need 8-bit): " + path.string());
  }
  const int ch = img.channels();
  if (ch != 1 && ch != 3) {
    throw EvalError("unsupported channel count " + std::to_string(ch) + ": " +
                    path.string());
  }
  if (img.cols < 1 || img.rows < 1) {
    throw EvalError("zero-dimension image: " + path.string());
  }

  RawImage raw;
  raw.dims = Dimensions(img.cols, img.rows);
  raw.channels = ch;
  raw.channel_sum.resize(raw.dims.area());
  for (int y = 0; y < img.rows; ++y) {
    const std::uint8_t* row = img.ptr<std::uint8_t>(y);
    for (int x = 0; x < img.cols; ++x) {
      int s = 0;
      for (int c = 0; c < ch; ++c) s += row[x * ch + c];
      raw.channel_sum[static_cast<std::size_t>(y) * img.cols + x] = s;
    }
  }
  return raw;
}

void write_bytes(const cv::Mat& img, const std::filesystem::path& path) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), img);
  } catch (const cv::Exception& e) {
    throw EvalError("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw EvalError("cannot write " + path.string());
}

}  // namespace

GrayMap load_gray(const std::filesystem::path& path) {
  const RawImage raw = read_raw(path);
  std::vector<double> values(raw.channel_sum.size());
  const double scale = 255.0 * raw.channels;
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = raw.channel_sum[i] / scale;
  }
  return GrayMap(raw.dims, std::move(values));
}

BinaryMap load_binary(const std::filesystem::path& path) {
  const RawImage raw = read_raw(path);
  std::vector<std::uint8_t> values(raw.channel_sum.size());
  const int cut = 128 * raw.channels;
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = raw.channel_sum[i] >= cut ? 1 : 0;
  }
  return BinaryMap(raw.dims, std::move(values));
}

void save_binary(const BinaryMap& b, const std::filesystem::path& path) {
  cv::Mat img(b.height(), b.width(), CV_8UC1);
  for (int y = 0; y < b.height(); ++y) {
    auto* row = img.ptr<std::uint8_t>(y);
    for (int x = 0; x < b.width(); ++x) row[x] = b(x, y) ? 255 : 0;
  }
  write_bytes(img, path);
}

void save_gray(const GrayMap& g, const std::filesystem::path& path) {
  cv::Mat img(g.height(), g.width(), CV_8UC1);
  for (int y = 0; y < g.height(); ++y) {
    auto* row = img.ptr<std::uint8_t>(y);
    for (int x = 0; x < g.width(); ++x) {
      row[x] = static_cast<std::uint8_t>(std::lround(g(x, y) * 255.0));
    }
  }
  write_bytes(img, path);
}

}  // namespace emeval
