#pragma once

#include <filesystem>

#include "emeval/map.hpp"

namespace emeval {

// 8-bit grayscale or RGB raster (PNG, BMP, PGM, ...). RGB pixels are reduced
// to the average of their channels; bytes are scaled by 1/255.
GrayMap load_gray(const std::filesystem::path& path);

// Same decoding as load_gray, but any averaged byte >= 128 becomes 1.
BinaryMap load_binary(const std::filesystem::path& path);

// Writes 0/255 bytes as an 8-bit single-channel image.
void save_binary(const BinaryMap& b, const std::filesystem::path& path);

// Writes round(v * 255) bytes.
void save_gray(const GrayMap& g, const std::filesystem::path& path);

}  // namespace emeval
